"""
Command-line front end: `ladder-workbench {bound,verify,reduce,report}`.

Exit status: 0 success or all checks pass, 1 computation or check failure,
2 parameter or size error.
"""

import argparse
import sys

from ladder_workbench import __version__, hooks
from ladder_workbench.commands import dumps, resolve_hook, write_output
from ladder_workbench.utils.config import load_config, resolve_run_config, set_active
from ladder_workbench.utils.errors import WorkbenchError
from ladder_workbench.utils.logging import configure_cli_logging, log_error


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", help=f"bound method: {', '.join(hooks.bound_methods)}")
    common.add_argument("--problem", help=f"problem name: {', '.join(hooks.problems)}")
    common.add_argument("--n", type=int, help="N = |X| (or n bits, or permutation size)")
    common.add_argument("--m", type=int, help="M = |Y|")
    common.add_argument("--k", type=int, help="property arity, or number of copies for sdpt")
    common.add_argument("--eps", type=float, help="allowed error")
    common.add_argument("--kappa", type=float, help="ladder ratio")
    common.add_argument("--lambda", dest="lam", type=float, help="good-subspace threshold")
    common.add_argument("--eta", type=float, help="overlap bound")
    common.add_argument("--t", type=int, help="number of queries")
    common.add_argument("--suite", help=f"verify suite: {', '.join(hooks.verify_suites)}, all")
    common.add_argument("--mode", choices=["numeric", "analytic"], help="comp step evaluation")
    common.add_argument("--truth-table", dest="truth_table", help="bitstring or 0x-hex table")
    common.add_argument("--input", help="directory of JSON reports (report)")
    common.add_argument("--tol", type=float, help="check tolerance")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--config", help="JSON config file; flags win on conflict")
    common.add_argument(
        "--no-timestamp",
        dest="no_timestamp",
        action="store_const",
        const=True,
        help="omit the timestamp so identical runs give identical files",
    )
    common.add_argument("--verbose", action="store_true", help="debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladder-workbench",
        description="Numerical workbench for quantum query lower bounds",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()
    sub.add_parser("bound", parents=[common], help="compute one lower bound")
    sub.add_parser("verify", parents=[common], help="run an invariant suite")
    sub.add_parser("reduce", parents=[common], help="compressed versus ladder bound")
    sub.add_parser("report", parents=[common], help="collate bound reports into CSV")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_cli_logging(args.verbose)
    flags = {k: v for k, v in vars(args).items() if k not in ("config", "verbose")}

    try:
        cfg = resolve_run_config(load_config(args.config), flags)
        set_active(cfg.settings)
        handler = resolve_hook(hooks.subcommands, cfg.command, "subcommand")
        payload, status = handler(cfg)
        if payload is not None:
            write_output(dumps(payload), cfg.out)
        return status
    except WorkbenchError as e:
        log_error(str(e), title=f"{type(e).__name__} in {args.command}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
