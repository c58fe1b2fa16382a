"""The alignment coefficient matrix and the constraint residual map.

Every zero-forcing constraint, one per (receiver k, transmitter j, receive
stream p, transmit stream q) with k != j, is a polynomial in the reduced
transceiver variables. Collecting the linear-term coefficients of all C
constraints over all V variables gives a C x V matrix: the Jacobian of the
residual map at the identity-pinned origin. Its generic row rank decides
whether the constraints are independent enough to be solvable, which is
what the rank engine tests.

Row order: constraints sorted by (k, j, p, q) with the transmit stream q
fastest. Column order: all decorrelator blocks first (pair ascending,
antenna index fastest within a stream column), then all precoder blocks in
the same discipline. Public index maps are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelSet
from .config import NetworkConfig, system_shape
from .fields import COMPLEX, field_token
from .transceivers import ReducedTransceivers


# ---------------------------------------------------------------------------
# index maps
# ---------------------------------------------------------------------------


def _row_offsets(cfg: NetworkConfig) -> dict:
    offs = {}
    pos = 0
    for k, j in cfg.cross_pairs():
        offs[(k, j)] = pos
        pos += cfg.d(k) * cfg.d(j)
    return offs


def _u_offsets(cfg: NetworkConfig) -> tuple[dict, int]:
    offs = {}
    pos = 0
    for k in range(1, cfg.K + 1):
        offs[k] = pos
        pos += (cfg.N(k) - cfg.d(k)) * cfg.d(k)
    return offs, pos


def _v_offsets(cfg: NetworkConfig, base: int) -> dict:
    offs = {}
    pos = base
    for j in range(1, cfg.K + 1):
        offs[j] = pos
        pos += (cfg.M(j) - cfg.d(j)) * cfg.d(j)
    return offs


def row_index(cfg: NetworkConfig, k: int, j: int, p: int, q: int) -> int:
    """1-based row of constraint (k, j, p, q)."""
    if k == j:
        raise ValueError("constraints only exist for k != j")
    for name, idx in (("k", k), ("j", j)):
        if not 1 <= idx <= cfg.K:
            raise ValueError(f"{name}={idx} out of range 1..{cfg.K}")
    if not 1 <= p <= cfg.d(k):
        raise ValueError(f"p={p} out of range 1..{cfg.d(k)}")
    if not 1 <= q <= cfg.d(j):
        raise ValueError(f"q={q} out of range 1..{cfg.d(j)}")
    return _row_offsets(cfg)[(k, j)] + (p - 1) * cfg.d(j) + q


def col_index(cfg: NetworkConfig, var) -> int:
    """1-based column of a reduced variable.

    ``var`` is ``("u", k, n, p)`` for the decorrelator coefficient of
    receive antenna d_k + n in stream column p, or ``("v", j, m, q)`` for
    the precoder entry of transmit antenna d_j + m in stream column q.
    """
    try:
        side, a, b, c = var
    except (TypeError, ValueError):
        raise ValueError(f"variable designator must have 4 fields, got {var!r}")
    if side not in ("u", "v"):
        raise ValueError(f"variable side must be 'u' or 'v', got {side!r}")
    if not 1 <= a <= cfg.K:
        raise ValueError(f"pair index {a} out of range 1..{cfg.K}")
    uoffs, du = _u_offsets(cfg)
    if side == "u":
        k, n, p = a, b, c
        rows = cfg.N(k) - cfg.d(k)
        if not 1 <= n <= rows:
            raise ValueError(f"n={n} out of range 1..{rows} for pair {k}")
        if not 1 <= p <= cfg.d(k):
            raise ValueError(f"p={p} out of range 1..{cfg.d(k)}")
        return uoffs[k] + (p - 1) * rows + n
    j, m, q = a, b, c
    rows = cfg.M(j) - cfg.d(j)
    if not 1 <= m <= rows:
        raise ValueError(f"m={m} out of range 1..{rows} for pair {j}")
    if not 1 <= q <= cfg.d(j):
        raise ValueError(f"q={q} out of range 1..{cfg.d(j)}")
    voffs = _v_offsets(cfg, du)
    return voffs[j] + (q - 1) * rows + m


# ---------------------------------------------------------------------------
# matrix construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlignmentJacobian:
    """The C x V linear coefficient matrix of the alignment constraints.

    ``matrix`` is complex128 for complex channels and int64 (entries
    reduced modulo the prime) for prime-field channels. Dense storage;
    :meth:`triplets` provides a sparse view for dumps and golden tests.
    """

    cfg: NetworkConfig
    field: object
    matrix: np.ndarray

    @property
    def C(self) -> int:
        return self.matrix.shape[0]

    @property
    def V(self) -> int:
        return self.matrix.shape[1]

    def triplets(self):
        """Yield (row, col, value) for every nonzero entry, 1-based,
        row-major order."""
        rows, cols = np.nonzero(self.matrix)
        for r, c in zip(rows, cols):
            yield (int(r) + 1, int(c) + 1, self.matrix[r, c])

    def dump(self, fh) -> None:
        """Write the text dump: a ``C V field`` header line, then one
        ``row col value`` line per nonzero. Complex values are written as
        two floats (real part, imaginary part)."""
        fh.write(f"{self.C} {self.V} {field_token(self.field)}\n")
        for r, c, v in self.triplets():
            if self.field == COMPLEX:
                fh.write(f"{r} {c} {float(v.real)!r} {float(v.imag)!r}\n")
            else:
                fh.write(f"{r} {c} {int(v)}\n")


def _check_channels(cfg: NetworkConfig, channels: ChannelSet) -> None:
    if channels.cfg != cfg:
        raise ValueError("channel set was sampled for a different configuration")


def build_jacobian(cfg: NetworkConfig, channels: ChannelSet) -> AlignmentJacobian:
    """Assemble the coefficient matrix from sampled channels.

    Works for complex and prime-field channels alike; placement only reads
    channel entries, never the field. Each row touches two column blocks:
    the decorrelator block of its receiver and the precoder block of its
    transmitter.
    """
    _check_channels(cfg, channels)
    C, V = system_shape(cfg)
    dtype = np.complex128 if channels.is_complex else np.int64
    A = np.zeros((C, V), dtype=dtype)

    rowoffs = _row_offsets(cfg)
    uoffs, du = _u_offsets(cfg)
    voffs = _v_offsets(cfg, du)

    for k, j in cfg.cross_pairs():
        H = channels.cross[(k, j)]
        dk, dj = cfg.d(k), cfg.d(j)
        un = cfg.N(k) - dk
        vm = cfg.M(j) - dj
        base = rowoffs[(k, j)]
        for p in range(1, dk + 1):
            for q in range(1, dj + 1):
                r = base + (p - 1) * dj + (q - 1)
                ucol = uoffs[k] + (p - 1) * un
                A[r, ucol : ucol + un] = H[dk:, q - 1]
                vcol = voffs[j] + (q - 1) * vm
                A[r, vcol : vcol + vm] = H[p - 1, dj:]
    return AlignmentJacobian(cfg=cfg, field=channels.field, matrix=A)


def residuals(
    cfg: NetworkConfig, channels: ChannelSet, tilde: ReducedTransceivers
) -> np.ndarray:
    """Evaluate all C constraint polynomials at a reduced point.

    Each value is constant + decorrelator term + precoder term + bilinear
    term, evaluated blockwise. At the all-zeros point this leaves just the
    constant, the direct channel coefficient h_kj(p, q). The result at row
    (k, j, p, q) equals entry (p, q) of U_k^H H_kj V_j for the
    reconstructed beamformers.
    """
    _check_channels(cfg, channels)
    channels.require_complex()
    C, _ = system_shape(cfg)
    F = np.zeros(C, dtype=np.complex128)
    rowoffs = _row_offsets(cfg)
    for k, j in cfg.cross_pairs():
        H = channels.cross[(k, j)]
        dk, dj = cfg.d(k), cfg.d(j)
        W = tilde.u[k - 1]
        T = tilde.v[j - 1]
        block = (
            H[:dk, :dj]
            + W.T @ H[dk:, :dj]
            + H[:dk, dj:] @ T
            + W.T @ H[dk:, dj:] @ T
        )
        base = rowoffs[(k, j)]
        F[base : base + dk * dj] = block.ravel(order="C")
    return F


def residual_jacobian(
    cfg: NetworkConfig, channels: ChannelSet, tilde: ReducedTransceivers
) -> np.ndarray:
    """Jacobian of :func:`residuals` at a reduced point (complex C x V).

    The residual is a polynomial in the stored variables, so this is an
    exact derivative, not a numerical estimate. At the all-zeros point it
    coincides with ``build_jacobian(cfg, channels).matrix``.
    """
    _check_channels(cfg, channels)
    channels.require_complex()
    C, V = system_shape(cfg)
    J = np.zeros((C, V), dtype=np.complex128)
    rowoffs = _row_offsets(cfg)
    uoffs, du = _u_offsets(cfg)
    voffs = _v_offsets(cfg, du)
    for k, j in cfg.cross_pairs():
        H = channels.cross[(k, j)]
        dk, dj = cfg.d(k), cfg.d(j)
        un = cfg.N(k) - dk
        vm = cfg.M(j) - dj
        W = tilde.u[k - 1]
        T = tilde.v[j - 1]
        # U_k^H H_kj and H_kj V_j for the current point
        UH = H[:dk, :] + W.T @ H[dk:, :]
        HV = H[:, :dj] + H[:, dj:] @ T
        base = rowoffs[(k, j)]
        for p in range(1, dk + 1):
            for q in range(1, dj + 1):
                r = base + (p - 1) * dj + (q - 1)
                ucol = uoffs[k] + (p - 1) * un
                J[r, ucol : ucol + un] = HV[dk:, q - 1]
                vcol = voffs[j] + (q - 1) * vm
                J[r, vcol : vcol + vm] = UH[p - 1, dj:]
    return J


def parse_dump(text: str):
    """Parse the :meth:`AlignmentJacobian.dump` text format.

    Returns (C, V, field_token, triplets) with 1-based (row, col, value)
    triplets; complex values come back as Python complex numbers.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dump")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"malformed header: {lines[0]!r}")
    C, V, token = int(head[0]), int(head[1]), head[2]
    out = []
    for ln in lines[1:]:
        parts = ln.split()
        r, c = int(parts[0]), int(parts[1])
        if token == COMPLEX:
            if len(parts) != 4:
                raise ValueError(f"malformed complex triplet: {ln!r}")
            out.append((r, c, complex(float(parts[2]), float(parts[3]))))
        else:
            if len(parts) != 3:
                raise ValueError(f"malformed triplet: {ln!r}")
            out.append((r, c, int(parts[2])))
    return C, V, token, out
