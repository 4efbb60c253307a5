"""Shared naive oracles: straight-line reference implementations.

Everything here avoids the library's fast paths on purpose (no witness sets,
no factored orders, no lifting shortcuts) so tests compare two genuinely
different routes to the same numbers.
"""

import math


def naive_primes(limit: int) -> list[int]:
    """Trial-division prime list."""
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def naive_order(a: int, n: int) -> int:
    """Multiply until 1 reappears."""
    a %= n
    x = a
    t = 1
    while x != 1:
        x = x * a % n
        t += 1
    return t


def naive_phi(n: int) -> int:
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def naive_is_primitive_root(g: int, n: int) -> bool:
    if math.gcd(g, n) != 1:
        return False
    return naive_order(g, n) == naive_phi(n)


def naive_repetend_length(modulus: int, base: int) -> int:
    """Cycle length of the remainder sequence of 1/modulus in `base`."""
    seen = {}
    r = 1 % modulus
    pos = 0
    while r not in seen:
        seen[r] = pos
        r = r * base % modulus
        pos += 1
    return pos - seen[r]


def naive_classify_counts(p: int, z: int) -> tuple[int, int, int]:
    """Survey-row recount with order loops only: (n_pr, n_s, n_n).

    A root mod p has order p-1 or p(p-1) mod p^2; multiplying through the
    first p-1 powers mod p^2 settles which, with no exponentiation shortcut.
    """
    n_s = n_n = 0
    p2 = p * p
    for g in range(2, 2 * z + 1):
        if g % p == 0:
            continue
        if naive_order(g, p) != p - 1:
            continue
        x = g % p2
        reached_one = x == 1
        for _ in range(p - 2):
            if reached_one:
                break
            x = x * g % p2
            reached_one = x == 1
        if reached_one:
            n_n += 1
        else:
            n_s += 1
    return n_s + n_n, n_s, n_n
