"""Feasibility verdict pipeline.

``feasibility_report`` chains every decision layer on one configuration:

1. necessary counting checks (stream support, antenna budget, properness
   via max-flow), stopping at the first violation;
2. closed-form families (symmetric, divisible) that settle feasibility
   exactly on their domains;
3. an allocation certificate: a capacity-respecting, stream-uniform
   constraint allocation, taken from the flow solution or rebuilt by the
   bundled transfer engine;
4. the randomized rank test on the alignment system's coefficient matrix,
   which certifies generic feasibility when any trial has full row rank.

The rank test always runs, even on an already-decided configuration, so
every report carries a soundness bit: a violated necessary condition next
to a full-rank coefficient matrix (or a sufficiency certificate next to a
rank-deficient one) would expose a defect, and sweeps count such events.
Numerical solvers can be attached as corroboration but never decide.
"""

from __future__ import annotations

from dataclasses import dataclass

from .allocation import (
    AllocationPolicy,
    AllocationReport,
    flow_feasibility,
    run_ptt_symmetric,
    verify_allocation,
)
from .conditions import (
    BUDGET_CHECK,
    MAX_BUDGET_PAIRS,
    PROPERNESS_CHECK,
    STREAM_CHECK,
    ClosedForm,
    NecessaryReport,
    check_antenna_budget,
    check_stream_support,
    divisible_feasible,
    symmetric_feasible,
)
from .config import NetworkConfig, config_to_dict, system_shape
from .channels import sample_channels
from .rank import DEFAULT_PRIME, DEFAULT_TRIALS, RankVerdict, generic_full_row_rank
from .solver import alt_min, gauss_newton_multistart
from .witnesses import SubsetWitness

FEASIBLE = "FEASIBLE"
INFEASIBLE = "INFEASIBLE"
UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class VerdictReport:
    """Everything the pipeline concluded about one configuration."""

    cfg: NetworkConfig
    verdict: str
    rule: str
    witness: SubsetWitness | None
    necessary: NecessaryReport
    closed_forms: tuple
    allocation: AllocationPolicy | None
    allocation_report: AllocationReport | None
    allocation_source: str | None
    rank: RankVerdict
    sound: bool
    solver: dict | None = None

    def to_dict(self) -> dict:
        c, v = system_shape(self.cfg)
        alloc = None
        if self.allocation is not None or self.allocation_report is not None:
            alloc = {
                "source": self.allocation_source,
                "certificate": (
                    None
                    if self.allocation_report is None
                    else self.allocation_report.certificate
                ),
                "report": (
                    None
                    if self.allocation_report is None
                    else self.allocation_report.to_dict()
                ),
                "policy": (
                    None if self.allocation is None else self.allocation.to_json_dict()
                ),
            }
        return {
            "config": config_to_dict(self.cfg),
            "label": self.cfg.describe(),
            "shape": {"constraints": c, "variables": v},
            "verdict": self.verdict,
            "rule": self.rule,
            "sound": self.sound,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "necessary": self.necessary.to_dict(),
            "closed_forms": [cf.to_dict() for cf in self.closed_forms],
            "allocation": alloc,
            "rank": self.rank.to_dict(),
            "solver": self.solver,
        }


def _necessary_with_policy(cfg: NetworkConfig):
    """Necessary chain that also hands back the flow policy when it ran."""
    checks = []
    skipped = []
    policy = None

    checks.append(STREAM_CHECK)
    w = check_stream_support(cfg)
    if w is not None:
        skipped.extend((BUDGET_CHECK, PROPERNESS_CHECK))
        return NecessaryReport(False, w, tuple(checks), tuple(skipped)), None

    if cfg.K > MAX_BUDGET_PAIRS:
        skipped.append(BUDGET_CHECK)
    else:
        checks.append(BUDGET_CHECK)
        w = check_antenna_budget(cfg)
        if w is not None:
            skipped.append(PROPERNESS_CHECK)
            return NecessaryReport(False, w, tuple(checks), tuple(skipped)), None

    checks.append(PROPERNESS_CHECK)
    policy, w = flow_feasibility(cfg)
    if w is not None:
        return NecessaryReport(False, w, tuple(checks), tuple(skipped)), None
    return NecessaryReport(True, None, tuple(checks), tuple(skipped)), policy


def _closed_forms(cfg: NetworkConfig) -> tuple:
    return (symmetric_feasible(cfg), divisible_feasible(cfg))


def _symmetric_variant_applies(cfg: NetworkConfig) -> bool:
    ds = {cfg.d(k) for k in range(1, cfg.K + 1)}
    if len(ds) != 1:
        return False
    d = ds.pop()
    return all(cfg.N(k) % d == 0 for k in range(1, cfg.K + 1)) or all(
        cfg.M(k) % d == 0 for k in range(1, cfg.K + 1)
    )


def _solver_section(cfg, seed, tol, verdict) -> dict:
    channels = sample_channels(cfg, seed=seed, include_direct=True)
    am = alt_min(cfg, channels, tol=1e-10)
    gn = gauss_newton_multistart(cfg, channels, seed=seed, tol=tol)
    solved = am.converged or gn.converged
    if verdict == FEASIBLE:
        agrees = solved
    elif verdict == INFEASIBLE:
        agrees = not solved
    else:
        agrees = None
    return {
        "alt_min": {
            "converged": am.converged,
            "iterations": am.iterations,
            "leakage": am.leakage,
            "margin": am.direct_rank_margin,
        },
        "gauss_newton": {
            "converged": gn.converged,
            "iterations": gn.iterations,
            "residual_norm": gn.residual_norm,
            "margin": gn.direct_rank_margin,
        },
        "agrees": agrees,
    }


def feasibility_report(
    cfg: NetworkConfig,
    seed: int = 0,
    mode: str = "gf",
    trials: int = DEFAULT_TRIALS,
    p: int = DEFAULT_PRIME,
    solve: bool = False,
    tol: float = 1e-9,
) -> VerdictReport:
    """Full verdict on one configuration.

    Verdict precedence: a violated necessary condition is INFEASIBLE; an
    applicable closed form or an allocation certificate is FEASIBLE; a
    full-rank trial is FEASIBLE by the generic rank argument; otherwise
    UNDETERMINED. ``seed`` drives both the rank trials and the solvers,
    and reports contain no volatile data, so reruns are bit-identical.
    """
    necessary, policy = _necessary_with_policy(cfg)

    closed: tuple = ()
    alloc = None
    alloc_report = None
    alloc_source = None
    if necessary.passed:
        closed = _closed_forms(cfg)
        if policy is not None:
            alloc = policy
            alloc_source = "flow"
            alloc_report = verify_allocation(cfg, alloc)
            if not alloc_report.certificate and _symmetric_variant_applies(cfg):
                ptt = run_ptt_symmetric(cfg, seed=seed)
                if ptt.balanced:
                    candidate = verify_allocation(cfg, ptt.alloc)
                    if candidate.certificate:
                        alloc = ptt.alloc
                        alloc_report = candidate
                        alloc_source = "symmetric-transfer"

    rank = generic_full_row_rank(cfg, trials=trials, mode=mode, seed=seed, p=p)

    closed_yes = next(
        (cf for cf in closed if cf.applicable and cf.feasible), None
    )
    certificate = alloc_report is not None and alloc_report.certificate

    if not necessary.passed:
        verdict = INFEASIBLE
        rule = f"necessary:{necessary.witness.kind}"
        witness = necessary.witness
    elif closed_yes is not None:
        verdict = FEASIBLE
        rule = f"closed-form-{closed_yes.family}"
        witness = None
    elif certificate:
        verdict = FEASIBLE
        rule = "allocation-certificate"
        witness = None
    elif rank.full_row_rank:
        verdict = FEASIBLE
        rule = "rank-test"
        witness = None
    else:
        verdict = UNDETERMINED
        rule = "inconclusive"
        witness = None

    claims_feasible = verdict == FEASIBLE and rule != "rank-test"
    sound = not (
        (not necessary.passed and rank.full_row_rank)
        or (claims_feasible and not rank.full_row_rank)
    )

    solver = None
    if solve:
        if check_stream_support(cfg) is None:
            solver = _solver_section(cfg, seed, tol, verdict)
        else:
            solver = {"skipped": "stream support fails; solvers need d <= min(M, N)"}

    return VerdictReport(
        cfg=cfg,
        verdict=verdict,
        rule=rule,
        witness=witness,
        necessary=necessary,
        closed_forms=closed,
        allocation=alloc,
        allocation_report=alloc_report,
        allocation_source=alloc_source,
        rank=rank,
        sound=sound,
        solver=solver,
    )
