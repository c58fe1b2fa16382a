"""Rank tests for the alignment coefficient matrix.

Two engines decide whether the C x V coefficient matrix has full row rank
at a random channel draw:

* ``numeric``: singular values of the complex matrix against an SVD
  tolerance, fast but subject to conditioning.
* ``gf``: exact Gaussian elimination over a prime field. A random integer
  specialization can only underestimate the generic rank, never exceed it,
  so a single full-rank draw is a certificate while a deficient draw is
  wrong with probability at most C/p. The prime-field verdict is treated
  as authoritative whenever the two engines disagree.

Full row rank of one generic draw implies the constraint system is solvable
for almost every channel realization; the converse does not hold in
general, so a deficient verdict alone never proves infeasibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import sample_channels
from .config import NetworkConfig, system_shape
from .fields import COMPLEX, DEFAULT_PRIME, validate_field
from .jacobian import build_jacobian

#: default number of independent draws in generic rank tests
DEFAULT_TRIALS = 3


def numeric_tolerance(shape: tuple[int, int], sigma_max: float) -> float:
    """Default SVD cutoff: max(rows, cols) * machine eps * sigma_max."""
    return max(shape) * np.finfo(np.float64).eps * sigma_max


def numeric_rank(matrix, rel_factor: float | None = None) -> int:
    """Numerical rank via singular values.

    Singular values above ``rel_factor * sigma_max`` count toward the rank;
    the default factor is ``max(rows, cols) * eps``, which can be widened
    for ill-conditioned near-boundary systems.
    """
    rank, _ = _svd_rank(matrix, rel_factor)
    return rank


def _svd_rank(matrix, rel_factor: float | None) -> tuple[int, float]:
    A = np.asarray(matrix)
    if A.ndim != 2:
        raise ValueError("rank needs a 2-d matrix")
    if min(A.shape) == 0:
        return 0, 0.0
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    sigma = np.linalg.svd(A, compute_uv=False)
    if rel_factor is None:
        tol = numeric_tolerance(A.shape, float(sigma[0]))
    else:
        tol = rel_factor * float(sigma[0])
    return int(np.count_nonzero(sigma > tol)), tol


def gf_rank(matrix, p: int = DEFAULT_PRIME) -> int:
    """Exact rank over the prime field GF(p).

    Plain Gaussian elimination with vectorized row updates. All residues
    stay below p < 2**31, so every intermediate product fits in int64 and
    the result is exact.
    """
    p = validate_field(p)
    if p == COMPLEX:
        raise ValueError("gf_rank needs a prime modulus")
    A = np.asarray(matrix)
    if A.ndim != 2:
        raise ValueError("rank needs a 2-d matrix")
    if A.dtype.kind not in "iuO":
        raise ValueError("gf_rank needs an integer matrix")
    A = np.mod(A, p).astype(np.int64)
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    r = 0
    for c in range(n):
        pivots = np.nonzero(A[r:, c])[0]
        if pivots.size == 0:
            continue
        i = r + int(pivots[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = np.nonzero(A[r + 1 :, c])[0]
        if below.size:
            rows = below + r + 1
            A[rows] = (A[rows] - A[rows, c][:, None] * A[r][None, :]) % p
        r += 1
        if r == m:
            break
    return r


@dataclass(frozen=True)
class RankVerdict:
    """Outcome of a generic full-row-rank test.

    ``rank`` is the best rank seen across trials (None when the test was
    decided without building a matrix). ``trial_seeds`` and ``trial_ranks``
    record the per-draw outcomes. ``tolerance`` is set in numeric mode,
    ``modulus`` in prime-field mode, where ``error_bound`` additionally
    bounds the probability that a deficient verdict is a sampling artifact.
    """

    mode: str
    C: int
    V: int
    full_row_rank: bool
    rank: int | None
    trials: int
    trial_seeds: tuple[int, ...]
    trial_ranks: tuple[int, ...]
    tolerance: float | None = None
    modulus: int | None = None
    error_bound: float | None = None
    note: str = ""

    @property
    def status(self) -> str:
        return "feasible-sufficient" if self.full_row_rank else "rank-deficient"

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "C": self.C,
            "V": self.V,
            "full_row_rank": self.full_row_rank,
            "status": self.status,
            "rank": self.rank,
            "trials": self.trials,
            "trial_seeds": list(self.trial_seeds),
            "trial_ranks": list(self.trial_ranks),
        }
        if self.mode == "numeric":
            out["tolerance"] = self.tolerance
        else:
            out["modulus"] = self.modulus
            out["error_bound"] = self.error_bound
        if self.note:
            out["note"] = self.note
        return out


def _trial_seeds(seed: int, trials: int) -> tuple[int, ...]:
    state = np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)
    return tuple(int(s) for s in state)


def generic_full_row_rank(
    cfg: NetworkConfig,
    trials: int = DEFAULT_TRIALS,
    mode: str = "gf",
    seed: int = 0,
    p: int = DEFAULT_PRIME,
    rel_factor: float | None = None,
) -> RankVerdict:
    """Decide whether the coefficient matrix generically has full row rank.

    Draws up to ``trials`` independent channel realizations (seeds derived
    deterministically from ``seed``) and ranks each matrix. The first
    full-rank draw settles the verdict, since a specialization can never
    exceed the generic rank; repeated deficient draws shrink the chance
    that deficiency is bad luck rather than structure.

    Shortcuts: C > V is deficient without sampling (more constraints than
    variables), and C == 0 is trivially full.
    """
    if mode not in ("numeric", "gf"):
        raise ValueError(f"mode must be 'numeric' or 'gf', got {mode!r}")
    if trials < 1:
        raise ValueError("need at least one trial")
    C, V = system_shape(cfg)
    modulus = validate_field(p) if mode == "gf" else None

    if C == 0:
        return RankVerdict(
            mode=mode, C=C, V=V, full_row_rank=True, rank=0, trials=0,
            trial_seeds=(), trial_ranks=(), modulus=modulus,
            note="no cross constraints",
        )
    if C > V:
        return RankVerdict(
            mode=mode, C=C, V=V, full_row_rank=False, rank=None, trials=0,
            trial_seeds=(), trial_ranks=(), modulus=modulus,
            note="more constraints than variables",
        )

    seeds = _trial_seeds(seed, trials)
    ranks = []
    used = []
    tol = None
    for ts in seeds:
        field = COMPLEX if mode == "numeric" else modulus
        ch = sample_channels(cfg, ts, field=field)
        A = build_jacobian(cfg, ch).matrix
        if mode == "numeric":
            r, tol = _svd_rank(A, rel_factor)
        else:
            r = gf_rank(A, modulus)
        ranks.append(r)
        used.append(ts)
        if r == C:
            break

    full = ranks[-1] == C
    error_bound = None
    if mode == "gf" and not full:
        error_bound = float(min(1.0, (C / modulus) ** len(ranks)))
    return RankVerdict(
        mode=mode,
        C=C,
        V=V,
        full_row_rank=full,
        rank=max(ranks),
        trials=len(ranks),
        trial_seeds=tuple(used),
        trial_ranks=tuple(ranks),
        tolerance=tol,
        modulus=modulus,
        error_bound=error_bound,
    )
