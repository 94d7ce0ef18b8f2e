"""
`verify` subcommand: named invariant suites over small explicit instances.

Every suite returns a list of CheckReports; numeric failures become report
entries, never exceptions.
"""

import itertools
import math

from ladder_workbench import hooks
from ladder_workbench.commands import envelope, require, resolve_hook
from ladder_workbench.compressed import (
    collision_step_check,
    compressed_oracle_check,
    space_equivalence_check,
)
from ladder_workbench.ladder import (
    BoundParams,
    eta_for,
    gen_feasible_gram,
    label_gram,
    monotonicity_check,
    one_query_check,
    output_condition_check,
    progress_soundness_check,
    space_chain,
    validate_mla,
)
from ladder_workbench.oracle import (
    InputDistribution,
    fourier_query_check,
    oracle_reconstruction_check,
    random_algorithm,
)
from ladder_workbench.perm import (
    PermSpec,
    b_slot_check,
    check_perm_proj,
    perm_chains,
    perm_eta,
    perm_lookup_success,
    perm_mla,
    perm_step_report,
    perm_subset_check,
    perm_success_bound,
)
from ladder_workbench.poly import (
    BooleanFunction,
    approx_degree,
    exact_degree,
    magnin_fact_spotcheck,
    parity_ladder_check,
    parity_ladder_gamma,
    poly_reduction_bound,
    target_gram,
)
from ladder_workbench.problems import (
    collision,
    collision_property,
    get_problem,
    get_property,
    preimage,
    preimage_property,
)
from ladder_workbench.reductions import (
    check_equal_proj,
    eta_bound_check,
    gamma_from_property,
    property_spec,
    reduction_factor_check,
    reduction_kappa,
    sdpt_scalar_checks,
    tensor_power_check,
)
from ladder_workbench.utils.config import RunConfig
from ladder_workbench.utils.errors import SizeError
from ladder_workbench.utils.logging import log_info
from ladder_workbench.utils.results import CheckReport

SMALL_SIZES = ((3, 2), (2, 3))
COLLISION_STEP_SIZES = tuple((4, m) for m in (2, 3, 4))
SOUNDNESS_ALGORITHMS = 50
OUTPUT_CONDITION_SAMPLES = 100
SDPT_GRID = tuple(itertools.product((361, 400, 1000), (0.5, 0.25)))
PERM_SIZES = (3, 4, 5, 6)


def suite_space(cfg: RunConfig) -> list:
    """
    Oracle identities, the Comp isometry, Space_t = Comp† P_{D≤t} Comp and the
    collision per-step bound at N = 4.
    """
    sizes = [(cfg.n, cfg.m)] if cfg.n and cfg.m else list(SMALL_SIZES)
    reports = []
    for n, m in sizes:
        spec = get_problem(cfg.problem or "collision", n, m)
        chain = space_chain(InputDistribution.uniform(spec), spec)
        ranks = [p.rank for p in chain.projectors]
        nesting = CheckReport("chain_nesting", info={**spec.describe(), "ranks": ranks})
        nesting.add("nested", chain.nesting_error(), 1e-10)
        reports += [
            oracle_reconstruction_check(spec),
            fourier_query_check(spec),
            compressed_oracle_check(spec),
            space_equivalence_check(spec, chain, tol=cfg.tol),
            nesting,
        ]
    for n, m in COLLISION_STEP_SIZES:
        reports.append(collision_step_check(collision(n, m), collision_property(n, m), 4))
    return reports


def _output_condition_sweep(name, gamma, params, spec, target, eps, seed) -> CheckReport:
    """Worst violation of every output-condition check over seeded feasible Grams."""
    worst: dict = {}
    for s in range(OUTPUT_CONDITION_SAMPLES):
        gram = gen_feasible_gram(spec, eps, seed=seed + s)
        for check in output_condition_check(gamma, params, gram, target).checks:
            if check.name not in worst or check.max_violation > worst[check.name].max_violation:
                worst[check.name] = check
    info = {"samples": OUTPUT_CONDITION_SAMPLES, "eps": eps, "target": params.target}
    report = CheckReport(name, info=info)
    for check in worst.values():
        report.add(check.name, check.max_violation, check.tol)
    return report


def output_condition_reports(seed: int) -> list:
    """The output condition on the 2-bit parity ladder and the N = 2, M = 2 collision Γ."""
    parity = BooleanFunction.parity(2)
    kappa = 4.0
    gamma = parity_ladder_gamma(2, kappa)
    params = BoundParams.from_gamma(gamma, kappa, 0.5, 0.3)
    spec, target = parity.to_spec(), target_gram(parity)
    reports = [
        _output_condition_sweep(
            "output_condition_parity2", gamma, params, spec, target, 0.3, seed
        )
    ]

    spec, prop, eps = collision(2, 2), collision_property(2, 2), 0.2
    eta = eta_for(gamma_from_property(spec, prop, 2.0), 2.0, spec)
    kappa = reduction_kappa(eps, eta)
    gamma = gamma_from_property(spec, prop, kappa)
    params = BoundParams.from_gamma(gamma, kappa, eta, eps)
    reports.append(
        _output_condition_sweep(
            "output_condition_collision", gamma, params, spec, label_gram(spec), eps, seed
        )
    )
    return reports


def suite_ladder(cfg: RunConfig) -> list:
    """
    One-query relation, monotonicity and MLA validity at each size; progress
    soundness at the first.
    """
    sizes = [(cfg.n or 3, cfg.m or 2)] if cfg.n or cfg.m else list(SMALL_SIZES)
    problem = cfg.problem or "collision"
    kappa = cfg.kappa or 2.0
    lam = cfg.lam or kappa
    reports = []
    for index, (n, m) in enumerate(sizes):
        spec, prop = get_problem(problem, n, m), get_property(problem, n, m)
        gamma = gamma_from_property(spec, prop, kappa)
        chain = space_chain(InputDistribution.uniform(spec), spec)
        search = property_spec(spec, prop)
        reports += [
            one_query_check(chain, search),
            monotonicity_check(gamma, chain, search),
            validate_mla(gamma, chain, search, tol=cfg.tol),
        ]
        if index == 0:
            algorithms = [
                random_algorithm(search, cfg.t or 3, seed=cfg.seed + i)
                for i in range(SOUNDNESS_ALGORITHMS)
            ]
            reports.append(progress_soundness_check(gamma, chain, search, algorithms, lam))
    return [*reports, *output_condition_reports(cfg.seed)]


def suite_reduction(cfg: RunConfig) -> list:
    """Property Γ projector identities, η bounds, the factor six and tensor powers."""
    n, m = cfg.n or 3, cfg.m or 4
    reports = []
    for problem in ("collision", "preimage"):
        spec, prop = get_problem(problem, n, m), get_property(problem, n, m)
        chain = space_chain(InputDistribution.uniform(spec), spec)
        reports.append(check_equal_proj(spec, prop, chain, tol=cfg.tol))
        reports.append(validate_mla(gamma_from_property(spec, prop, 2.0), chain, spec, tol=cfg.tol))
        reports.append(eta_bound_check(spec, prop, min(prop.tuples)))

    reports.append(reduction_factor_check(preimage(3, 4), preimage_property(3, 4), 0.1))
    reports.append(reduction_factor_check(collision(2, 14), collision_property(2, 14), 0.1))

    bases = (
        (collision(2, 2), collision_property(2, 2)),
        (preimage(1, 3), preimage_property(1, 3)),
    )
    for spec, prop in bases:
        base = gamma_from_property(spec, prop, 2.0)
        for k in (2, 3):
            reports.append(tensor_power_check(spec, base, k))
    return reports


def suite_sdpt(cfg: RunConfig) -> list:
    """Scalar inequalities of the direct product theorem in log space."""
    if cfg.k is not None or cfg.eta is not None:
        grid = [(cfg.k or 361, cfg.eta or 0.5)]
    else:
        grid = list(SDPT_GRID)
    lams = [cfg.lam] if cfg.lam else [2.0, 10.0]
    reports = []
    for (k, eta), lam in itertools.product(grid, lams):
        eps = cfg.eps if cfg.eps is not None else (1 - eta) / 2
        reports.append(sdpt_scalar_checks(lam, eps, eta, k, tol=cfg.tol))
    if cfg.k is None and cfg.eta is None:
        for lam in lams:
            reports.append(sdpt_scalar_checks(lam, 0.5, 0.125, 361, tol=cfg.tol))
    return reports


def _all_functions(n: int) -> list:
    return [
        BooleanFunction(n, tuple(bits), "table")
        for bits in itertools.product((0, 1), repeat=2**n)
    ]


def suite_poly(cfg: RunConfig) -> list:
    """Approximate against exact degree, parity degrees, the parity ladder and the output fact."""
    degree = CheckReport("degrees")
    mismatches = [
        f.truth_table for f in _all_functions(2) if approx_degree(f, 0)[0] != exact_degree(f)
    ]
    degree.add("approx_zero_is_exact", len(mismatches), 0, mismatches=mismatches)
    parity_off = {
        n: approx_degree(BooleanFunction.parity(n), 1 / 3)[0] for n in range(1, 5)
    }
    degree.add(
        "parity_third", sum(d != n for n, d in parity_off.items()), 0, degrees=parity_off
    )

    bound = poly_reduction_bound(BooleanFunction.parity(2), 1 / 3)
    replay = CheckReport("poly_reduction", info=bound.to_dict())
    replay.add("verdicts", sum(not v for v in bound.verdicts.values()), 0)

    return [
        degree,
        *(parity_ladder_check(n, tol=cfg.tol) for n in range(1, 4)),
        replay,
        magnin_fact_spotcheck(BooleanFunction.parity(2), 1 / 3, samples=200, seed=cfg.seed),
    ]


def suite_perm(cfg: RunConfig) -> list:
    """Subset chain, projector identities, the two-level Γ, η and the success bounds."""
    reports = []
    for n in [cfg.n] if cfg.n else PERM_SIZES:
        spec = PermSpec(n)
        chains = perm_chains(spec)
        gamma = perm_mla(spec, cfg.kappa or 2.0, chains)
        reports += [
            perm_subset_check(chains),
            check_perm_proj(spec, chains, tol=cfg.tol),
            validate_mla(gamma, chains.space_chain, spec.problem, tol=cfg.tol),
            perm_step_report(spec, chains),
        ]
        if n == 4:
            reports.append(b_slot_check(spec, chains))
        reports += [perm_eta(spec, t, chains) for t in (1, 2) if n > 2 * t]
        for t in (0, 1):
            try:
                reports.append(perm_lookup_success(spec, t))
            except SizeError as e:
                log_info(f"perm lookup N={n} T={t} skipped: {e}")

    cited = perm_success_bound(1000, 10).value
    reference = (1 + 2 * math.sqrt(2) * 10) ** 2 / 960
    arithmetic = CheckReport("perm_success_bound", info={"cited": cited})
    arithmetic.add("cited_reference", abs(cited - reference), 1e-12)
    grid = [perm_success_bound(1000, t) for t in range(1, 11)]
    failures = sum(not r.verdicts["derived_at_least_cited"] for r in grid)
    arithmetic.add("derived_at_least_cited", failures, 0)
    reports.append(arithmetic)
    return reports


def cmd_verify(cfg: RunConfig):
    """
    Run one suite, or every suite for --suite all.

    Returns:
        tuple: (payload, 0 if every check passes else 1)
    """
    suite = require(cfg.suite, "suite", "verify")
    names = list(hooks.verify_suites) if suite == "all" else [suite]
    results, passed = {}, True
    for name in names:
        runner = resolve_hook(hooks.verify_suites, name, "suite")
        log_info(f"verify --suite {name}")
        reports = runner(cfg)
        results[name] = [r.to_dict() for r in reports]
        suite_passed = all(r.passed for r in reports)
        passed = passed and suite_passed
        log_info(f"suite {name}: {'pass' if suite_passed else 'FAIL'}")
    payload = envelope(cfg, {"suites": results, "pass": passed})
    return payload, 0 if passed else 1
