"""Scalar field descriptors shared by channel sampling and exact rank tests."""

from __future__ import annotations

COMPLEX = "complex"

#: smallest prime modulus accepted for exact-rank sampling
MIN_PRIME = 1 << 20

#: default exact-arithmetic modulus, the Mersenne prime 2**31 - 1
DEFAULT_PRIME = (1 << 31) - 1

# Moduli at or above 2**31 would let a product of two residues overflow int64,
# which the elimination kernel relies on, so they are rejected outright.
_PRIME_CEILING = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for moduli below 2**31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def validate_field(field):
    """Normalize a scalar field descriptor.

    Accepts the string ``"complex"`` or an integer prime modulus in
    ``[2**20, 2**31)``. Returns the normalized descriptor or raises
    ``ValueError``. The JSON spelling ``{"prime": p}`` is unwrapped by the
    config loader before it reaches this point.
    """
    if field == COMPLEX:
        return COMPLEX
    if isinstance(field, bool) or not isinstance(field, int):
        raise ValueError(f"field must be 'complex' or a prime modulus, got {field!r}")
    if field >= _PRIME_CEILING:
        raise ValueError("prime moduli must stay below 2**31 for exact int64 products")
    if field < MIN_PRIME:
        raise ValueError(f"prime modulus must be at least 2**20, got {field}")
    if not is_prime(field):
        raise ValueError(f"{field} is not prime")
    return field


def field_token(field) -> str:
    """One-token spelling used in matrix dumps: "complex" or "prime:p"."""
    return COMPLEX if field == COMPLEX else f"prime:{field}"
