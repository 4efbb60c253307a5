"""Exact modular arithmetic and multiplicative orders.

Residues are plain Python integers kept in [0, n).  Python's integers are
arbitrary precision, so products and exponents never overflow; moduli as
large as squares of 10-digit primes cost nothing special.  All functions
here are pure and safe to call from concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DomainError, NotInvertibleError

if TYPE_CHECKING:
    from .roots import CyclicGroupSpec


def mul_mod(a: int, b: int, n: int) -> int:
    """Return (a * b) mod n exactly.

    No floating point is involved anywhere; the product is formed at full
    width before reduction.
    """
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    return a * b % n


def pow_mod(a: int, e: int, n: int) -> int:
    """Return a**e mod n by square-and-multiply (a**0 == 1 for n > 1)."""
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    if e < 0:
        raise DomainError(f"exponent must be >= 0, got {e}")
    return pow(a, e, n)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def inv_mod(a: int, n: int) -> int:
    """Return b with a*b == 1 (mod n), via the extended Euclidean algorithm."""
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    g, x, _ = egcd(a % n, n)
    if g != 1:
        raise NotInvertibleError(f"{a} is not invertible mod {n} (gcd = {g})")
    return x % n


@dataclass(frozen=True)
class OrderResult:
    """Multiplicative order of `element` in the unit group mod `modulus`.

    Invariant: element**order == 1 and element**(order // q) != 1 for every
    prime q dividing order.
    """

    element: int
    modulus: int
    order: int


def multiplicative_order(a: int, spec: "CyclicGroupSpec") -> OrderResult:
    """Least t >= 1 with a**t == 1 (mod spec.modulus).

    Starts from the full group order m and, for each prime q | m, divides t
    by q as long as a**(t/q) stays 1.  Requires gcd(a, modulus) = 1.
    """
    n = spec.modulus
    a = a % n
    if math.gcd(a, n) != 1:
        raise NotInvertibleError(f"{a} is not a unit mod {n}")
    t = spec.group_order
    for q, _ in spec.order_factorization.factors:
        while t % q == 0 and pow(a, t // q, n) == 1:
            t //= q
    return OrderResult(element=a, modulus=n, order=t)
