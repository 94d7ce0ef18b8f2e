"""
`bound` subcommand: compute one lower bound and emit its report.
"""

from ladder_workbench import hooks
from ladder_workbench.commands import envelope, require, resolve_hook
from ladder_workbench.compressed import check_comp_eps, collision_step_formula, comp_lower_bound
from ladder_workbench.ladder import eta_for, madv_lower_bound, mladv_lower_bound, space_chain
from ladder_workbench.oracle import InputDistribution
from ladder_workbench.perm import PermSpec, perm_chains, perm_mla, perm_success_bound
from ladder_workbench.poly import BooleanFunction, parity_ladder_gamma, poly_reduction_bound
from ladder_workbench.problems import boolean_function, get_problem, get_property
from ladder_workbench.reductions import (
    gamma_from_property,
    property_spec,
    reduction_kappa,
    sdpt_bound_report,
)
from ladder_workbench.utils.config import RunConfig
from ladder_workbench.utils.errors import ParameterError, WorkbenchError
from ladder_workbench.utils.logging import log_error, log_info

PROPERTY_ARITY = {"collision": 2, "preimage": 1}


def _property_problem(cfg: RunConfig) -> str:
    problem = cfg.problem or "collision"
    if problem not in PROPERTY_ARITY:
        raise ParameterError(
            f"problem '{problem}' has no success property, expected one of {sorted(PROPERTY_ARITY)}"
        )
    return problem


def bound_comp(cfg: RunConfig):
    """Compressed-oracle bound; analytic mode uses the collision closed form √((t−1)/M)."""
    problem = _property_problem(cfg)
    arity = PROPERTY_ARITY[problem]
    if cfg.k is not None and cfg.k != arity:
        raise ParameterError(f"the {problem} property has arity k = {arity}, got --k {cfg.k}")
    m = require(cfg.m, "m", "comp bound")
    eps = require(cfg.eps, "eps", "comp bound")
    check_comp_eps(arity, m, eps)
    n = require(cfg.n, "n", "comp bound")

    step_bound = None
    if cfg.mode == "analytic":
        if problem != "collision":
            raise ParameterError("analytic mode has a closed form for the collision property only")
        step_bound = collision_step_formula(m)
    spec = get_problem(problem, n, m)
    return comp_lower_bound(spec, get_property(problem, n, m), eps, cfg.mode, step_bound)


def ladder_instance(cfg: RunConfig):
    """
    (Γ, chain, problem, λ) for the ladder bounds; λ defaults to κ.

    Collision and preimage use the property Γ (κ defaults to the reduction's
    1 + (e−1)/(√(1−ε) − √(2k/M))²), parity the parity ladder and perm the
    two-level permutation Γ; the last two need --kappa.
    """
    problem = cfg.problem or "collision"
    n = require(cfg.n, "n", f"{problem} ladder")
    if problem in PROPERTY_ARITY:
        m = require(cfg.m, "m", f"{problem} ladder")
        eps = require(cfg.eps, "eps", f"{problem} ladder")
        kappa = cfg.kappa or reduction_kappa(eps, 2 * PROPERTY_ARITY[problem] / m)
        spec = get_problem(problem, n, m)
        prop = get_property(problem, n, m)
        gamma = gamma_from_property(spec, prop, kappa)
        chain = space_chain(InputDistribution.uniform(spec), spec)
        search = property_spec(spec, prop)
    elif problem == "parity":
        kappa = require(cfg.kappa, "kappa", "parity ladder")
        search = BooleanFunction.parity(n).to_spec()
        gamma = parity_ladder_gamma(n, kappa)
        chain = space_chain(InputDistribution.uniform(search), search)
    elif problem == "perm":
        kappa = require(cfg.kappa, "kappa", "permutation ladder")
        perm = PermSpec(n)
        chains = perm_chains(perm)
        gamma = perm_mla(perm, kappa, chains)
        chain, search = chains.space_chain, perm.problem
    else:
        raise ParameterError(f"no ladder adversary for problem '{problem}'")
    return gamma, chain, search, cfg.lam or gamma.kappa


def bound_mladv(cfg: RunConfig):
    gamma, chain, spec, lam = ladder_instance(cfg)
    eps = require(cfg.eps, "eps", "mladv bound")
    return mladv_lower_bound(gamma, chain, spec, lam, cfg.eta, eps)


def bound_madv(cfg: RunConfig):
    gamma, _, spec, lam = ladder_instance(cfg)
    eps = require(cfg.eps, "eps", "madv bound")
    eta = cfg.eta if cfg.eta is not None else eta_for(gamma, lam, spec)
    return madv_lower_bound(gamma.dense(), spec, lam, eta, eps)


def bound_sdpt(cfg: RunConfig):
    """(k/10)·T_MLADV for the k-fold problem; --k is the number of copies."""
    k = require(cfg.k, "k", "sdpt bound")
    return sdpt_bound_report(bound_mladv(cfg), k)


def bound_poly(cfg: RunConfig):
    f = boolean_function(cfg.problem or "parity", cfg.n, cfg.truth_table)
    return poly_reduction_bound(f, require(cfg.eps, "eps", "poly bound"))


def bound_perm(cfg: RunConfig):
    n = require(cfg.n, "n", "perm bound")
    return perm_success_bound(n, require(cfg.t, "t", "perm bound"))


def cmd_bound(cfg: RunConfig):
    """
    Dispatch --method to its bound and wrap the report.

    Returns:
        tuple: (payload, exit status 0)

    Raises:
        WorkbenchError: Parameter, size and contract failures propagate to the CLI
    """
    method = require(cfg.method, "method", "bound")
    handler = resolve_hook(hooks.bound_methods, method, "bound method")
    log_info(f"bound --method {method} --problem {cfg.problem}")
    try:
        report = handler(cfg)
    except WorkbenchError as e:
        log_error(f"{method} bound failed: {e}", title="Bound Failed")
        raise
    return envelope(cfg, report), 0
