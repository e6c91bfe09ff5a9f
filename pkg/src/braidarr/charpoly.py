"""Characteristic polynomials by two independent exact methods.

The finite-field route counts points of the arrangement complement over
Z/q for primes q > (m+1)*n and reconstructs the polynomial by Lagrange
interpolation; one extra prime acts as a consistency guard on the prime
bound.  The exponential route turns admissible tree counts r_1, r_2, ...
into the alternating exponential series F(x) = sum (-1)^k r_k x^k / k!
and reads chi_n off F(x)^(-t).  Both routes work in exact integer or
rational arithmetic; a non-integer final coefficient is a hard error,
never rounded.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterator, List, Sequence

import numpy as np

from .enumeration import count_admissible
from .offsets import OffsetSet


class InterpolationGuardError(ArithmeticError):
    """The guard prime disagreed with the interpolated polynomial.

    This signals that the prime bound was insufficient for the given
    offsets; retry with larger primes.
    """


class SignPatternError(ValueError):
    """Coefficient signs do not alternate the way a characteristic
    polynomial's must."""


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients indexed by degree (low to high)."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[int]):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            var = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(mag) if (i == 0 or mag != 1) else ""
            body = f"{coef}{'*' if coef and var else ''}{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"n": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, payload: dict) -> "IntPolynomial":
        coeffs = [int(c) for c in payload["coeffs"]]
        if len(coeffs) != payload["n"] + 1:
            raise ValueError("coefficient count does not match degree")
        return cls(coeffs)


# ---------------------------------------------------------------------------
# finite-field point counting


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def admissible_primes(offsets: OffsetSet, n: int) -> Iterator[int]:
    """Primes q > (m+1)*n in increasing order."""
    q = (offsets.m + 1) * n + 1
    while True:
        if _is_prime(q):
            yield q
        q += 1


def _pair_table(offsets: OffsetSet, q: int) -> np.ndarray:
    """ok[u, v] says whether x_i = u, x_j = v (i < j) violates no offset."""
    residues = sorted({k % q for k in offsets})
    u = np.arange(q)
    diffs = (u[:, None] - u[None, :]) % q
    return ~np.isin(diffs, residues)


_GRID_CELL_LIMIT = 1 << 23


def _count_grid(ok: np.ndarray, nfree: int, jobs: int = 1) -> int:
    """Count tuples (y_0..y_{nfree-1}) with ok[y_i, y_j] for all i < j.

    The leading coordinates are fixed by an explicit loop, enough of them
    to keep the broadcast tensor under the cell limit; work shards across
    threads by the first coordinate.
    """
    size = int(ok.shape[0])
    if nfree == 0:
        return 1
    if nfree == 1:
        return size
    fixed_count = 1
    while fixed_count < nfree - 1 and size ** (nfree - fixed_count) > _GRID_CELL_LIMIT:
        fixed_count += 1
    inner = nfree - fixed_count
    shapes = []
    for axis in range(inner):
        sh = [1] * inner
        sh[axis] = size
        shapes.append(tuple(sh))
    idx = [np.arange(size).reshape(sh) for sh in shapes]
    base = np.ones((size,) * inner, dtype=bool)
    for i in range(inner):
        for j in range(i + 1, inner):
            base &= ok[idx[i], idx[j]]

    def tail_count(first: int) -> int:
        total = 0
        for rest in product(range(size), repeat=fixed_count - 1):
            fixed = (first,) + rest
            if not all(
                ok[fixed[a], fixed[b]]
                for a in range(fixed_count)
                for b in range(a + 1, fixed_count)
            ):
                continue
            acc = base
            for v in fixed:
                row = ok[v]
                for sh in shapes:
                    acc = acc & row.reshape(sh)
            total += int(np.count_nonzero(acc))
        return total

    if jobs <= 1:
        return sum(tail_count(v) for v in range(size))
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(tail_count, range(size)))


def count_points(
    offsets: OffsetSet, n: int, q: int, quotient: bool = False, jobs: int = 1
) -> int:
    """Points x in (Z/q)^n with x_i - x_j != k (mod q) for all k in S, i < j.

    For prime q > (m+1)*n this equals the characteristic polynomial
    evaluated at q.  The default iterates the full grid; with
    ``quotient=True`` the count fixes x_n = 0 and multiplies by q, which
    is exact because translating all coordinates preserves every
    constraint (the two modes are cross-checked in the test suite).
    """
    if not _is_prime(q):
        raise ValueError(f"q={q} is not prime")
    if q <= (offsets.m + 1) * n:
        raise ValueError(f"q={q} too small; need q > (m+1)*n = {(offsets.m + 1) * n}")
    if n < 1:
        raise ValueError("n must be >= 1")
    ok = _pair_table(offsets, q)
    if not quotient:
        return _count_grid(ok, n, jobs=jobs)
    allowed = np.flatnonzero(ok[:, 0])
    sub = ok[np.ix_(allowed, allowed)]
    return q * _count_grid(sub, n - 1, jobs=jobs)


def _interpolate(points: Sequence[tuple]) -> List[Fraction]:
    """Exact Lagrange interpolation; coefficients low to high."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            shifted = [Fraction(0)] + num
            scaled = [-xj * c for c in num] + [Fraction(0)]
            num = [a + b for a, b in zip(shifted, scaled)]
            denom *= xi - xj
        scale = Fraction(yi, denom)
        for d, c in enumerate(num):
            coeffs[d] += scale * c
    return coeffs


def chi_finite_field(
    offsets: OffsetSet, n: int, quotient: bool = False, jobs: int = 1
) -> IntPolynomial:
    """Characteristic polynomial from point counts at n+2 admissible primes.

    The first n+1 primes determine the polynomial by interpolation; the
    last one must agree with it, else :class:`InterpolationGuardError`.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return IntPolynomial((1,))
    primes = []
    gen = admissible_primes(offsets, n)
    while len(primes) < n + 2:
        primes.append(next(gen))
    values = [count_points(offsets, n, q, quotient=quotient, jobs=jobs) for q in primes]
    coeffs = _interpolate(list(zip(primes[: n + 1], values[: n + 1])))
    ints = []
    for c in coeffs:
        if c.denominator != 1:
            raise InterpolationGuardError(
                f"non-integer coefficient {c} interpolating at primes {primes[:-1]}"
            )
        ints.append(int(c))
    poly = IntPolynomial(ints)
    guard_q, guard_v = primes[-1], values[-1]
    if poly(guard_q) != guard_v:
        raise InterpolationGuardError(
            f"guard prime {guard_q}: counted {guard_v}, polynomial gives {poly(guard_q)}"
        )
    return poly


# ---------------------------------------------------------------------------
# exponential-sequence route


def _series_mul(a: List[Fraction], b: List[Fraction], order: int) -> List[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, av in enumerate(a):
        if av == 0:
            continue
        for j, bv in enumerate(b):
            if i + j > order:
                break
            out[i + j] += av * bv
    return out


def chi_exponential(offsets: OffsetSet, n_max: int) -> List[IntPolynomial]:
    """Characteristic polynomials for n = 1..n_max from tree counts alone.

    Requires a transitive offset set, since the tree count is the region
    count only then.  Builds F(x) = sum (-1)^k r_k x^k / k!, takes
    G = log F, and expands F^(-t) = exp(-t G); the coefficient of t^i in
    chi_n is n! [x^n] (-G)^i / i!, which must clear to an integer.
    """
    if not offsets.is_transitive():
        raise ValueError(f"offset set {offsets} is not transitive")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    order = n_max
    r = [1] + [count_admissible(offsets, k) for k in range(1, order + 1)]
    f = [Fraction((-1) ** k * r[k], factorial(k)) for k in range(order + 1)]
    u = [Fraction(0)] + f[1:]

    log_f = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for i in range(1, order + 1):
        power = _series_mul(power, u, order)
        sign = 1 if i % 2 == 1 else -1
        for d in range(order + 1):
            log_f[d] += Fraction(sign, i) * power[d]

    neg_g = [-c for c in log_f]
    powers = [[Fraction(1)] + [Fraction(0)] * order]
    for _ in range(order):
        powers.append(_series_mul(powers[-1], neg_g, order))

    out = []
    for n in range(1, n_max + 1):
        coeffs = []
        for i in range(n + 1):
            val = powers[i][n] * factorial(n) / factorial(i)
            if val.denominator != 1:
                raise ArithmeticError(
                    f"non-integer coefficient {val} for t^{i} at n={n}"
                )
            coeffs.append(int(val))
        out.append(IntPolynomial(coeffs))
    return out


# ---------------------------------------------------------------------------
# coefficient views


def region_count(poly: IntPolynomial) -> int:
    """Number of regions: (-1)^n chi(-1), the sum of absolute coefficients."""
    return (-1) ** poly.degree * poly(-1)


def abs_coefficients(poly: IntPolynomial) -> tuple:
    """Absolute coefficients (c_0..c_n), checking the alternating sign rule.

    The coefficient of t^i must be zero or carry sign (-1)^(n-i); anything
    else raises :class:`SignPatternError`.
    """
    n = poly.degree
    out = []
    for i, c in enumerate(poly.coeffs):
        expected = (-1) ** (n - i)
        if c != 0 and (c > 0) != (expected > 0):
            raise SignPatternError(
                f"coefficient {c} of t^{i} violates the sign pattern for degree {n}"
            )
        out.append(abs(c))
    return tuple(out)
