"""Shared test utilities: random configurations and brute-force oracles."""

import numpy as np

from iafeas import NetworkConfig, ReducedTransceivers, residuals, system_shape


def random_config(rng, k_lo=2, k_hi=4, mn_hi=6, d_hi=2):
    """Random stream-admissible configuration (d_k <= min(M_k, N_k))."""
    K = int(rng.integers(k_lo, k_hi + 1))
    pairs = []
    for _ in range(K):
        M = int(rng.integers(1, mn_hi + 1))
        N = int(rng.integers(1, mn_hi + 1))
        d = int(rng.integers(1, min(M, N, d_hi) + 1))
        pairs.append((M, N, d))
    return NetworkConfig.from_tuples(pairs)


def cross_products(cfg, channels, tilde):
    """Reference computation of every U_k^H H_kj V_j via full matrices."""
    tx = tilde.reconstruct()
    out = {}
    for k, j in cfg.cross_pairs():
        out[(k, j)] = tx.U[k - 1].conj().T @ channels.cross[(k, j)] @ tx.V[j - 1]
    return out


def stacked_residual_oracle(cfg, channels, tilde):
    """Row-ordered residual vector assembled from the reference products."""
    prods = cross_products(cfg, channels, tilde)
    rows = []
    for k, j in cfg.cross_pairs():
        rows.append(prods[(k, j)].ravel())
    return np.concatenate(rows) if rows else np.zeros(0, dtype=complex)


def fd_jacobian(cfg, channels, tilde, h=1e-4):
    """Central-difference Jacobian of the residual map.

    The residual is polynomial in the stored variables (holomorphic), so a
    real step recovers the complex derivative up to O(h^2) rounding.
    """
    x0 = tilde.to_vector()
    C, V = system_shape(cfg)
    J = np.zeros((C, V), dtype=complex)
    for i in range(V):
        e = np.zeros_like(x0)
        e[i] = h
        fp = residuals(cfg, channels, ReducedTransceivers.from_vector(cfg, x0 + e))
        fm = residuals(cfg, channels, ReducedTransceivers.from_vector(cfg, x0 - e))
        J[:, i] = (fp - fm) / (2 * h)
    return J
