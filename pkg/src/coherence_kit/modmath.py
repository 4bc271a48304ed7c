"""Modular arithmetic over Z_d and the exponent-injectivity oracle.

Z_d elements are plain Python ints in ``[0, d)``; the lift into Z is implicit
(``int`` arithmetic), so the shifted-square exponents below are exact integers.
Floating point only enters when a caller exponentiates them into unit-modulus
phases, which keeps the injectivity statement exact.
"""

from __future__ import annotations

import numpy as np

from .kernels import MAX_SAFE_DIM, injectivity_counterexample


def _check_element(value: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError(f"modulus must be at least 2, got {modulus}")
    value = int(value)
    if not 0 <= value < modulus:
        raise ValueError(f"value {value} outside Z_{modulus}")
    return value


def mod_add(a: int, b: int, modulus: int) -> int:
    """Addition modulo ``modulus`` on ring elements in [0, modulus)."""
    return (_check_element(a, modulus) + _check_element(b, modulus)) % modulus


def mod_sub(a: int, b: int, modulus: int) -> int:
    """Subtraction modulo ``modulus`` on ring elements in [0, modulus)."""
    return (_check_element(a, modulus) - _check_element(b, modulus)) % modulus


def shifted_square_exponent(j: int, x: int, modulus: int) -> int:
    """The exact integer ((j+x) mod d)^2 - j^2, with no modular reduction.

    These integers parametrize the phases of the reconstruction nodes; their
    pairwise distinctness (for x != 0) is what keeps the node sets collision
    free.
    """
    j = _check_element(j, modulus)
    x = _check_element(x, modulus)
    return ((j + x) % modulus) ** 2 - j**2


def exponent_table(x: int, modulus: int) -> np.ndarray:
    """All shifted-square exponents for a fixed shift, as an int64 vector."""
    if modulus > MAX_SAFE_DIM:
        raise ValueError(f"modulus {modulus} exceeds the int64-safe bound {MAX_SAFE_DIM}")
    x = _check_element(x, modulus)
    j = np.arange(modulus, dtype=np.int64)
    return ((j + x) % modulus) ** 2 - j**2


def proposition_counterexample(d: int) -> tuple[int, int, int] | None:
    """First (x, i, j) violating exponent injectivity, or None if none exists."""
    return injectivity_counterexample(d)


def proposition_holds(d: int) -> bool:
    """Brute-force check that every nonzero shift has pairwise distinct exponents.

    True for every tested dimension; a False here would break the node
    distinctness that the reconstruction relies on.
    """
    return proposition_counterexample(d) is None
