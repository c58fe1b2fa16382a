import numpy as np
import pytest

from iafeas import NetworkConfig, sample_channels

PRIME = (1 << 31) - 1


def test_shapes_and_keys():
    cfg = NetworkConfig.from_tuples([(2, 3, 1), (4, 5, 2), (3, 2, 1)])
    ch = sample_channels(cfg, seed=0, include_direct=True)
    assert set(ch.cross) == {(k, j) for k in (1, 2, 3) for j in (1, 2, 3) if k != j}
    for (k, j), H in ch.cross.items():
        assert H.shape == (cfg.N(k), cfg.M(j))
        assert H.dtype == np.complex128
    assert set(ch.direct) == {1, 2, 3}
    for k, H in ch.direct.items():
        assert H.shape == (cfg.N(k), cfg.M(k))


def test_seed_determinism():
    cfg = NetworkConfig.symmetric(3, 4, 4, 2)
    a = sample_channels(cfg, seed=42)
    b = sample_channels(cfg, seed=42)
    c = sample_channels(cfg, seed=43)
    for key in a.cross:
        assert np.array_equal(a.cross[key], b.cross[key])
    assert any(not np.array_equal(a.cross[key], c.cross[key]) for key in a.cross)


def test_cross_draw_independent_of_direct_flag():
    # adding direct channels must not shift the cross-channel stream
    cfg = NetworkConfig.symmetric(3, 3, 3, 1)
    plain = sample_channels(cfg, seed=9, include_direct=False)
    with_direct = sample_channels(cfg, seed=9, include_direct=True)
    for key in plain.cross:
        assert np.array_equal(plain.cross[key], with_direct.cross[key])
    assert plain.direct == {}


def test_complex_entries_unit_variance():
    cfg = NetworkConfig.from_tuples([(40, 40, 1), (40, 40, 1)])
    ch = sample_channels(cfg, seed=5)
    samples = np.concatenate([H.ravel() for H in ch.cross.values()])
    # CN(0,1): unit total variance, split evenly across re and im
    assert abs(np.mean(np.abs(samples) ** 2) - 1.0) < 0.05
    assert abs(np.var(samples.real) - 0.5) < 0.05
    assert abs(np.var(samples.imag) - 0.5) < 0.05


def test_prime_field_entries():
    cfg = NetworkConfig.symmetric(3, 4, 4, 1)
    ch = sample_channels(cfg, seed=1, field=PRIME)
    for H in ch.cross.values():
        assert H.dtype == np.int64
        assert H.min() >= 0
        assert H.max() < PRIME
    with pytest.raises(ValueError):
        ch.require_complex()


def test_require_direct():
    cfg = NetworkConfig.symmetric(2, 2, 2, 1)
    ch = sample_channels(cfg, seed=0)
    with pytest.raises(ValueError):
        ch.require_direct()
    sample_channels(cfg, seed=0, include_direct=True).require_direct()


def test_rejects_bad_seed_and_field():
    cfg = NetworkConfig.symmetric(2, 2, 2, 1)
    with pytest.raises(ValueError):
        sample_channels(cfg, seed=-1)
    with pytest.raises(ValueError):
        sample_channels(cfg, seed=0, field=10)  # not a prime in range
