from fractions import Fraction

import pytest

from braidarr import (
    IntPolynomial,
    OffsetSet,
    SignPatternError,
    abs_coefficients,
    chi_exponential,
    chi_finite_field,
    count_points,
    region_count,
)
from braidarr.charpoly import _interpolate, admissible_primes
from braidarr.offsets import braid, catalan, linial, semiorder, shi

from oracles import falling_factorial_coeffs, naive_count_points

EMPTY = OffsetSet(())


# ---------------------------------------------------------------------------
# polynomial type


def test_polynomial_basics():
    p = IntPolynomial((0, 9, -6, 1))
    assert p.degree == 3
    assert p(7) == 7**3 - 6 * 49 + 63
    assert p(-1) == -16
    assert str(p) == "t^3 - 6*t^2 + 9*t"
    assert p == IntPolynomial([0, 9, -6, 1])
    assert p.to_json() == {"n": 3, "coeffs": ["0", "9", "-6", "1"]}
    assert IntPolynomial.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        IntPolynomial.from_json({"n": 2, "coeffs": ["0", "1"]})


# ---------------------------------------------------------------------------
# point counting


def test_count_points_examples():
    assert count_points(braid(), 2, 5) == 20
    assert count_points(EMPTY, 3, 7) == 343
    assert count_points(shi(1), 3, 7) == 7 * (7 - 3) ** 2  # 112


def test_count_points_against_naive_scan():
    cases = [
        (braid(), 2, 5),
        (shi(1), 3, 7),
        (linial(1), 2, 5),
        (semiorder(1), 3, 7),
        (catalan(1), 3, 11),
        (EMPTY, 3, 7),
    ]
    for offsets, n, q in cases:
        expected = naive_count_points(offsets.elements, n, q)
        assert count_points(offsets, n, q) == expected
        assert count_points(offsets, n, q, quotient=True) == expected


def test_quotient_equals_full():
    for offsets in (braid(), shi(1), linial(1), semiorder(1), catalan(1), shi(2)):
        gen = admissible_primes(offsets, 3)
        for q in (next(gen), next(gen)):
            for n in (1, 2, 3):
                assert count_points(offsets, n, q) == count_points(
                    offsets, n, q, quotient=True
                ), (offsets.spec(), n, q)


def test_count_points_jobs():
    q = 13
    assert count_points(shi(1), 3, q, jobs=3) == count_points(shi(1), 3, q)


def test_count_points_validation():
    with pytest.raises(ValueError):
        count_points(shi(1), 3, 8)  # not prime
    with pytest.raises(ValueError):
        count_points(shi(1), 3, 5)  # too small: need q > (m+1)n = 6
    with pytest.raises(ValueError):
        count_points(shi(1), 0, 7)


def test_admissible_primes_bound():
    gen = admissible_primes(shi(1), 3)
    first = [next(gen) for _ in range(5)]
    assert first == [7, 11, 13, 17, 19]


# ---------------------------------------------------------------------------
# interpolation


def test_interpolate_exact():
    pts = [(1, 1), (2, 8), (3, 27), (4, 64)]
    assert _interpolate(pts) == [Fraction(0), Fraction(0), Fraction(0), Fraction(1)]


def test_chi_finite_field_values():
    assert chi_finite_field(shi(1), 3).coeffs == (0, 9, -6, 1)
    assert chi_finite_field(linial(1), 3).coeffs == (0, 3, -3, 1)
    assert chi_finite_field(EMPTY, 4).coeffs == (0, 0, 0, 0, 1)
    assert chi_finite_field(braid(), 4).coeffs == tuple(falling_factorial_coeffs(4))
    assert chi_finite_field(shi(1), 0).coeffs == (1,)


def test_chi_finite_field_prime_window_stability():
    # interpolation through a shifted window of admissible primes agrees
    offsets, n = shi(1), 3
    gen = admissible_primes(offsets, n)
    primes = [next(gen) for _ in range(n + 3)]
    values = {q: count_points(offsets, n, q) for q in primes}
    lo = _interpolate([(q, values[q]) for q in primes[: n + 1]])
    hi = _interpolate([(q, values[q]) for q in primes[2 : n + 3]])
    assert lo == hi
    assert [c.denominator for c in lo] == [1] * (n + 1)


def test_chi_exponential_values():
    assert [p.coeffs for p in chi_exponential(braid(), 3)] == [
        (0, 1),
        (0, -1, 1),
        (0, 2, -3, 1),
    ]
    assert [p.coeffs for p in chi_exponential(EMPTY, 3)] == [
        (0, 1),
        (0, 0, 1),
        (0, 0, 0, 1),
    ]
    assert chi_exponential(shi(1), 3)[2].coeffs == (0, 9, -6, 1)


def test_chi_exponential_requires_transitive():
    with pytest.raises(ValueError):
        chi_exponential(OffsetSet((0, 2)), 3)


def test_methods_agree():
    for offsets in (braid(), shi(1), linial(1), semiorder(1), catalan(1), EMPTY):
        polys = chi_exponential(offsets, 4)
        for n in range(1, 5):
            assert polys[n - 1] == chi_finite_field(offsets, n), (offsets.spec(), n)
    # the braid family stays in lockstep further out
    polys = chi_exponential(braid(), 6)
    for n in (5, 6):
        assert polys[n - 1] == chi_finite_field(braid(), n, quotient=True)


# ---------------------------------------------------------------------------
# coefficient views


def test_region_count():
    assert region_count(IntPolynomial((0, 9, -6, 1))) == 16
    assert region_count(IntPolynomial((0, 3, -3, 1))) == 7
    assert region_count(IntPolynomial((0, 0, 0, 1))) == 1
    assert region_count(chi_finite_field(shi(1), 3)) == 16


def test_regions_match_tree_counts():
    from braidarr import count_admissible

    for offsets in (braid(), shi(1), linial(1), catalan(1)):
        for n in (1, 2, 3, 4):
            assert region_count(chi_finite_field(offsets, n)) == count_admissible(
                offsets, n
            )


def test_abs_coefficients():
    assert abs_coefficients(IntPolynomial((0, 9, -6, 1))) == (0, 9, 6, 1)
    assert abs_coefficients(IntPolynomial((0, 0, 0, 1))) == (0, 0, 0, 1)
    assert abs_coefficients(IntPolynomial((0, 20, -9, 1))) == (0, 20, 9, 1)
    with pytest.raises(SignPatternError):
        abs_coefficients(IntPolynomial((0, 9, 6, 1)))
    with pytest.raises(SignPatternError):
        abs_coefficients(IntPolynomial((1, 1)))
