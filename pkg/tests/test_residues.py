import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockprimes.polynomial import IntPolynomial, enumerate_pairs, family
from blockprimes.primes import is_prime, sieve_upto
from blockprimes.residues import (
    BRUTEFORCE_GUARD,
    IdenticallyZeroModP,
    jacobi,
    jacobi_array,
    legendre,
    legendre_euler,
    mod_array,
    omega_bruteforce,
    omega_product,
    omega_quadratic,
    roots_mod_p,
    sqrt_mod,
)

ODD_PRIMES_1000 = [int(p) for p in sieve_upto(1000).primes[1:]]
PRIMES_2000 = [int(p) for p in sieve_upto(2000).primes]
odd_primes = st.sampled_from([int(p) for p in sieve_upto(10**4).primes[1:]])


def test_legendre_matches_euler_exhaustively():
    for p in ODD_PRIMES_1000:
        for q in range(-2 * p, 2 * p + 1):
            assert legendre(q, p) == legendre_euler(q, p), (q, p)


def test_residues_mod_17_and_41():
    assert {q % 17 for q in range(1, 17) if legendre(q, 17) == 1} == {q % 17 for q in (1, -1, 2, -2, 4, -4, 8, -8)}
    qr41 = [1, 2, 4, 5, 8, 9, 10, 16, 18, 20]
    assert {q for q in range(1, 41) if legendre_euler(q, 41) == 1} == {s % 41 for q in qr41 for s in (q, -q)}


def test_legendre_examples():
    assert legendre(105, 53) == 1
    assert legendre(0, 7) == 0 and legendre(14, 7) == 0
    assert legendre_euler(2, 7) == 1
    assert legendre_euler(3, 7) == -1


def test_legendre_rejects_bad_moduli():
    for p in (2, 9, 15, 1, -7, 1003 * 1009):
        with pytest.raises(ValueError):
            legendre(1, p)


@settings(max_examples=200)
@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), odd_primes)
def test_multiplicative(q1, q2, p):
    assert legendre(q1 * q2, p) == legendre(q1, p) * legendre(q2, p)


@given(st.integers(-10**12, 10**12), odd_primes)
def test_periodic(q, p):
    assert legendre(q, p) == legendre(q + p, p)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**5).map(lambda n: 2 * n + 1))
def test_jacobi_is_product_of_legendre(q, n):
    # Jacobi symbol over the factorisation of n, by trial division
    expected, m, d = 1, n, 3
    while m > 1 and d * d <= m:
        while m % d == 0:
            expected *= legendre_euler(q, d)
            m //= d
        d += 2
    if m > 1:
        expected *= legendre_euler(q, m)
    assert jacobi(q, n) == expected


def test_jacobi_array_matches_scalar():
    rng = np.random.default_rng(7)
    n = rng.integers(1, 10**9, size=5000) | 1
    q = rng.integers(-10**12, 10**12, size=5000)
    got = jacobi_array(q, n)
    assert got.tolist() == [jacobi(int(a), int(b)) for a, b in zip(q, n)]


def test_mod_array_big_integers():
    primes = sieve_upto(10**5).primes
    for v in (0, 7, -7, 2**70 + 12345, -(3**90), 4 * 9 * 13**30):
        assert mod_array(v, primes).tolist() == [v % int(p) for p in primes]


@given(odd_primes, st.integers(0, 10**6))
def test_sqrt_mod(p, q):
    s = q * q % p
    r = sqrt_mod(s, p)
    assert r * r % p == s


def test_omega_fast_vs_bruteforce_table2_and_triangular():
    for fp in enumerate_pairs(9):
        f = family(fp.n, fp.r)[0]
        for p in PRIMES_2000:
            assert omega_quadratic(f, p) == omega_bruteforce(f, p), (fp, p)


def test_omega_lemma_consequences():
    for fp in enumerate_pairs(9, include_triangular=False):
        f = family(fp.n, fp.r)[0]
        for p in PRIMES_2000:
            if (2 * fp.n) % p == 0:
                assert omega_quadratic(f, p) == 0
            elif (8 * fp.n + 1) % p == 0:
                assert omega_quadratic(f, p) == 1


def test_omega_examples():
    for r in (3, 6):
        f = family(2, r)[0]
        assert omega_quadratic(f, 17) == 1
        assert omega_quadratic(f, 2) == 0
    for r in (7, 10):
        f = family(4, r)[0]
        assert omega_quadratic(f, 3) == omega_quadratic(f, 11) == 1
    assert omega_bruteforce(family(2, 3)[0], 13) == 2
    for r in (4, 9, 12, 17):
        f = family(5, r)[0]
        assert omega_bruteforce(f, 5) == omega_bruteforce(f, 2) == 0


def test_omega_quadratic_degree_reduction():
    # 2t^2 + 3t + 1 mod 2 is t + 1: one root
    assert omega_quadratic(IntPolynomial([1, 3, 2]), 2) == 1
    # 3t^2 + 3t + 1 mod 3 is the constant 1
    assert omega_quadratic(IntPolynomial([1, 3, 3]), 3) == 0
    # 5t^2 + 5t + 5 vanishes identically mod 5
    assert omega_quadratic(IntPolynomial([5, 5, 5]), 5) == 5
    with pytest.raises(ValueError):
        omega_quadratic(IntPolynomial([1, 1]), 3)


def test_bruteforce_guard():
    with pytest.raises(ValueError):
        omega_bruteforce(IntPolynomial([1, 0, 1]), BRUTEFORCE_GUARD + 3)


def test_roots_mod_p():
    f = family(2, 3)[0]
    for p in PRIMES_2000:
        assert roots_mod_p(f, p) == [t for t in range(p) if f(t) % p == 0]
    with pytest.raises(IdenticallyZeroModP):
        roots_mod_p(IntPolynomial([3, 3]), 3)


def test_omega_product():
    assert omega_product([family(2, 3)[0]], 17) == 1
    assert omega_product([IntPolynomial([0, 1]), IntPolynomial([2, 1])], 5) == 2
    # twin-prime pair: at p = 2 the two root sets coincide
    assert omega_product([IntPolynomial([0, 1]), IntPolynomial([2, 1])], 2) == 1
    # f_{9,5} is 1 mod 3 since 3 divides 2n = 18
    assert omega_product([family(9, 5)[0]], 3) == 0
    with pytest.raises(ValueError):
        omega_product([family(9, 5)[0]], 105)
    # t and t + 1 cover every residue mod 2
    with pytest.raises(IdenticallyZeroModP):
        omega_product([IntPolynomial([0, 1]), IntPolynomial([1, 1])], 2)


def test_omega_product_single_matches_quadratic():
    f = family(7, 13)[0]
    for p in PRIMES_2000[:100]:
        assert omega_product([f], p) == omega_quadratic(f, p)
        assert is_prime(p)
