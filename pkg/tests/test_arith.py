import math
import random

import pytest

from conftest import naive_is_prime, naive_primes
from primroot.arith import (
    euler_phi,
    factorization_times_prime,
    factorize,
    first_primes,
    is_prime,
    is_prime_info,
    mobius,
    mobius_table,
    omega,
    omega_table,
    phi_table,
    primes_in_range,
    primes_upto,
    squarefree_divisors,
)
from primroot.errors import ContractError, ResourceLimitError

CARMICHAELS = (561, 1105, 1729, 41041, 512461)
STRONG_PSEUDOPRIMES = (3215031751, 3825123056546413051)


def test_is_prime_catalogued_primes():
    assert is_prime(40487)
    assert is_prime(6692367337)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(40487 * 40487)


def test_is_prime_matches_trial_division():
    for n in range(10**4):
        assert is_prime(n) == naive_is_prime(n), n


def test_is_prime_hard_composites():
    for n in CARMICHAELS + STRONG_PSEUDOPRIMES:
        assert not is_prime(n)


def test_is_prime_near_word_size():
    assert is_prime(18446744073709551557)  # largest prime below 2^64
    assert not is_prime(2**64 - 1)
    info = is_prime_info(18446744073709551557)
    assert info.deterministic


def test_is_prime_above_certificate_bound():
    m89 = 2**89 - 1  # Mersenne prime
    info = is_prime_info(m89)
    assert info.probably_prime
    assert not info.deterministic
    assert info.rounds > 12
    assert not is_prime(m89 + 2)


def test_primes_in_range_examples():
    assert list(primes_in_range(2, 10).primes) == [2, 3, 5, 7]
    # trial division finds exactly 40483 and 40487 in this window
    assert list(primes_in_range(40480, 40490).primes) == [
        n for n in range(40480, 40491) if naive_is_prime(n)
    ]
    assert 40487 in primes_in_range(40480, 40490).primes
    window = primes_in_range(10**6, 10**6 + 100).primes
    assert list(window) == [n for n in range(10**6, 10**6 + 101) if naive_is_prime(n)]


def test_primes_in_range_segment_boundaries():
    want = primes_in_range(900, 1200).primes
    for seg in (64, 97, 1024):
        assert primes_in_range(900, 1200, segment_size=seg).primes == want


def test_primes_in_range_guards():
    with pytest.raises(ContractError):
        primes_in_range(10, 5)
    with pytest.raises(ResourceLimitError):
        primes_in_range(0, 10**12)


def test_segment_size_env_override(monkeypatch):
    monkeypatch.setenv("PRIMROOT_SEGMENT_SIZE", "128")
    assert list(primes_in_range(2, 1000).primes) == naive_primes(1000)
    monkeypatch.setenv("PRIMROOT_SEGMENT_SIZE", "1")
    with pytest.raises(ContractError):
        primes_in_range(2, 100)


def test_primes_upto_complete():
    assert primes_upto(10**5) == naive_primes(10**5)


def test_first_primes():
    assert first_primes(5) == [2, 3, 5, 7, 11]
    ps = first_primes(10**4)
    assert len(ps) == 10**4
    assert ps[-1] == 104729


def test_factorize_examples():
    assert factorize(40486).factors == ((2, 1), (31, 1), (653, 1))
    assert factorize(1).factors == ()
    assert factorize(1639197169).factors == ((40487, 2),)


def test_factorize_structure():
    f = factorize(2**10 * 3**5 * 101)
    assert f.factors == ((2, 10), (3, 5), (101, 1))
    primes = [p for p, _ in f.factors]
    assert primes == sorted(primes)
    assert all(is_prime(p) for p in primes)


def test_factorize_recomposes_random():
    rng = random.Random(12)
    for _ in range(100000):
        n = rng.randrange(1, 10**18)
        f = factorize(n)
        assert f.recompose() == n
        assert all(is_prime(p) for p, _ in f.factors)


def test_factorize_deterministic():
    semiprime = 1000003 * 999983
    assert factorize(semiprime).factors == factorize(semiprime).factors


def test_factorization_times_prime():
    f = factorize(40486)
    g = factorization_times_prime(f, 40487)
    assert g.n == 40486 * 40487
    assert g.factors == ((2, 1), (31, 1), (653, 1), (40487, 1))
    assert factorization_times_prime(f, 2, 2).factors[0] == (2, 3)


def test_euler_phi():
    assert euler_phi(factorize(1)) == 1
    assert euler_phi(factorize(41)) == 40
    assert euler_phi(factorize(40487 * 40487)) == 40487 * 40486


def test_phi_of_prime_powers():
    for p in primes_upto(1000):
        if p == 2:
            continue
        for k in range(1, 5):
            phi_pk = euler_phi(factorize(p**k))
            assert phi_pk == p ** (k - 1) * (p - 1)
            assert euler_phi(factorize(2 * p**k)) == phi_pk


def test_omega_mobius():
    assert omega(factorize(40486)) == 3
    assert mobius(factorize(1)) == 1
    assert mobius(factorize(12)) == 0
    assert mobius(factorize(30)) == -1
    assert mobius(factorize(6)) == 1


def test_squarefree_divisors_examples():
    assert squarefree_divisors(factorize(1)) == [(1, 1)]
    assert squarefree_divisors(factorize(30)) == [
        (1, 1), (2, -1), (3, -1), (5, -1), (6, 1), (10, 1), (15, 1), (30, -1),
    ]
    assert len(squarefree_divisors(factorize(40486))) == 8


def test_squarefree_divisor_count_is_two_to_omega():
    for n in range(1, 10**4 + 1):
        f = factorize(n)
        divs = squarefree_divisors(f)
        assert len(divs) == 2 ** omega(f)
        assert [d for d, _ in divs] == sorted(d for d, _ in divs)
        assert all(n % d == 0 for d, _ in divs)


def test_tables_match_pointwise_functions():
    n = 3000
    phi = phi_table(n)
    w = omega_table(n)
    mu = mobius_table(n)
    for m in range(1, n + 1):
        f = factorize(m)
        assert phi[m] == euler_phi(f)
        assert w[m] == omega(f)
        assert mu[m] == mobius(f)
