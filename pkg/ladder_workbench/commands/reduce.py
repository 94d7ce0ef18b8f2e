"""
`reduce` subcommand: compare the compressed and ladder bounds on one instance.
"""

from ladder_workbench.commands import envelope, require
from ladder_workbench.problems import get_problem, get_property
from ladder_workbench.reductions import reduction_factor_check
from ladder_workbench.utils.config import RunConfig
from ladder_workbench.utils.errors import WorkbenchError
from ladder_workbench.utils.logging import log_error


def cmd_reduce(cfg: RunConfig):
    """
    Run reduction_factor_check for --problem at --n, --m and --eps.

    Returns:
        tuple: (payload, 0 if the check passes else 1)
    """
    problem = cfg.problem or "collision"
    n = require(cfg.n, "n", "reduce")
    m = require(cfg.m, "m", "reduce")
    eps = require(cfg.eps, "eps", "reduce")
    try:
        report = reduction_factor_check(
            get_problem(problem, n, m), get_property(problem, n, m), eps
        )
    except WorkbenchError as e:
        log_error(f"reduce {problem} N={n} M={m} eps={eps}: {e}", title="Reduction Rejected")
        raise
    return envelope(cfg, report), 0 if report.passed else 1
