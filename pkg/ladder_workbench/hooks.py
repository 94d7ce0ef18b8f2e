"""
Hook registry for Ladder Workbench.

This file contains ONLY registry dictionaries - no business logic.
All functions referenced here must be defined in commands/, report/ or
problems.py.
"""

app_name = "ladder_workbench"
app_title = "Ladder Workbench"
app_description = "Numerical workbench for quantum query lower bounds"
app_version = "0.1.0"
app_license = "MIT"

# Subcommand handlers: each takes a RunConfig and returns (payload, exit status)
subcommands = {
    "bound": "ladder_workbench.commands.bound.cmd_bound",
    "verify": "ladder_workbench.commands.verify.cmd_verify",
    "reduce": "ladder_workbench.commands.reduce.cmd_reduce",
    "report": "ladder_workbench.report.bound_sweep.bound_sweep.cmd_report",
}

# bound --method <name>
bound_methods = {
    "comp": "ladder_workbench.commands.bound.bound_comp",
    "mladv": "ladder_workbench.commands.bound.bound_mladv",
    "madv": "ladder_workbench.commands.bound.bound_madv",
    "sdpt": "ladder_workbench.commands.bound.bound_sdpt",
    "poly": "ladder_workbench.commands.bound.bound_poly",
    "perm": "ladder_workbench.commands.bound.bound_perm",
}

# verify --suite <name>; "all" runs every entry in this order
verify_suites = {
    "space": "ladder_workbench.commands.verify.suite_space",
    "ladder": "ladder_workbench.commands.verify.suite_ladder",
    "reduction": "ladder_workbench.commands.verify.suite_reduction",
    "sdpt": "ladder_workbench.commands.verify.suite_sdpt",
    "poly": "ladder_workbench.commands.verify.suite_poly",
    "perm": "ladder_workbench.commands.verify.suite_perm",
}

# --problem <name>
problems = {
    "collision": "ladder_workbench.problems.collision",
    "preimage": "ladder_workbench.problems.preimage",
    "perm": "ladder_workbench.problems.permutation_inversion",
    "parity": "ladder_workbench.problems.boolean_function",
    "or": "ladder_workbench.problems.boolean_function",
    "and": "ladder_workbench.problems.boolean_function",
    "majority": "ladder_workbench.problems.boolean_function",
    "constant": "ladder_workbench.problems.boolean_function",
    "table": "ladder_workbench.problems.boolean_function",
}
