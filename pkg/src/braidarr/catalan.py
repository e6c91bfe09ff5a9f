"""Closed-form coefficient machinery for the extended Catalan family.

For S = {-m, ..., m} every (m+1)-ary labeled tree is admissible, and the
absolute coefficients C(m, n, j) of the characteristic polynomial admit
two closed forms: a sum over trunk lengths and an alternating inversion
through forest counts.  For general transitive offset sets, coefficients
are taken operationally from the branch distribution, which lets the
entire inequality suite run beyond the Catalan family.

All arithmetic is exact; divisions demanded by the formulas must come out
even, and a remainder raises immediately instead of rounding (this is the
cheapest transcription-bug detector there is).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb, factorial
from typing import Dict, List, Optional, Union

from . import enumeration
from .offsets import OffsetSet

FIXTURE_NAME = "catalan_m1_triangle.csv"


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"inexact division {a} / {b}")
    return q


# ---------------------------------------------------------------------------
# Stirling numbers


@lru_cache(maxsize=None)
def stirling_first(k: int, j: int) -> int:
    """Permutations of [k] with j right-to-left maxima (unsigned, 1st kind)."""
    if k < 0 or j < 0:
        raise ValueError(f"need k, j >= 0, got k={k}, j={j}")
    if j > k:
        return 0
    if k == 0:
        return 1
    if j == 0:
        return 0
    return stirling_first(k - 1, j - 1) + (k - 1) * stirling_first(k - 1, j)


@lru_cache(maxsize=None)
def stirling_second(i: int, k: int) -> int:
    """Partitions of [i] into k nonempty blocks (2nd kind)."""
    if i < 0 or k < 0:
        raise ValueError(f"need i, k >= 0, got i={i}, k={k}")
    if k > i:
        return 0
    if i == 0:
        return 1
    if k == 0:
        return 0
    return stirling_second(i - 1, k - 1) + k * stirling_second(i - 1, k)


# ---------------------------------------------------------------------------
# closed forms


def trunk_shape_count(m: int, n: int, k: int) -> int:
    """Unlabeled (m+1)-ary shapes with n nodes, k of them on the trunk:
    mk/((m+1)n - k) * binom((m+1)n - k, n - k).  Needs m >= 1."""
    _check_mnk(m, n, k)
    return _exact_div(m * k * comb((m + 1) * n - k, n - k), (m + 1) * n - k)


def forest_count(m: int, n: int, k: int) -> int:
    """Ways to partition [n] into k blocks, each carrying an (m+1)-ary
    labeled tree: (n-1)!/(k-1)! * binom((m+1)n, n - k)."""
    _check_mnk(m, n, k)
    return _exact_div(factorial(n - 1), factorial(k - 1)) * comb((m + 1) * n, n - k)


def coeff_trunk(m: int, n: int, j: int) -> int:
    """C(m, n, j) as a sum over trunk lengths k: shapes with a k-trunk,
    label choices, trunk orderings with j right-to-left maxima, and free
    labels elsewhere."""
    _check_mnk(m, n, j)
    return sum(
        trunk_shape_count(m, n, k)
        * comb(n, k)
        * stirling_first(k, j)
        * factorial(n - k)
        for k in range(j, n + 1)
    )


def coeff_moebius(m: int, n: int, j: int) -> int:
    """C(m, n, j) by inverting the forest counts:
    sum_k (-1)^(k-j) B_m(n, k) c(k, j)."""
    _check_mnk(m, n, j)
    return sum(
        (-1) ** (k - j) * forest_count(m, n, k) * stirling_first(k, j)
        for k in range(j, n + 1)
    )


def total_trees(m: int, n: int) -> int:
    """Number of (m+1)-ary labeled trees with n nodes:
    n!/(mn+1) * binom((m+1)n, n)."""
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got m={m}, n={n}")
    return _exact_div(factorial(n) * comb((m + 1) * n, n), m * n + 1)


def _check_mnk(m: int, n: int, k: int) -> None:
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


# ---------------------------------------------------------------------------
# triangles


@dataclass
class Triangle:
    """Rows n -> (C(n,1), ..., C(n,n)) of absolute coefficients."""

    descriptor: str
    rows: Dict[int, tuple] = field(default_factory=dict)

    def row(self, n: int) -> tuple:
        return self.rows[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "j", "count"])
        for n in sorted(self.rows):
            for j, c in enumerate(self.rows[n], start=1):
                writer.writerow([n, j, str(c)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, descriptor: str = "") -> "Triangle":
        cells: Dict[int, Dict[int, int]] = {}
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != ["n", "j", "count"]:
            raise ValueError(f"unexpected triangle header {header!r}")
        for row in reader:
            if not row:
                continue
            n, j, c = int(row[0]), int(row[1]), int(row[2])
            cells.setdefault(n, {})[j] = c
        rows = {}
        for n, by_j in cells.items():
            if sorted(by_j) != list(range(1, n + 1)):
                raise ValueError(f"row {n} has holes: {sorted(by_j)}")
            rows[n] = tuple(by_j[j] for j in range(1, n + 1))
        return cls(descriptor, rows)

    def to_json(self) -> dict:
        return {
            "family": self.descriptor,
            "rows": {
                str(n): [str(c) for c in self.rows[n]] for n in sorted(self.rows)
            },
        }


def triangle(family: Union[int, OffsetSet], n_max: int) -> Triangle:
    """Coefficient triangle for n = 1..n_max.

    An integer m selects the extended Catalan closed form; an offset set
    falls back to exhaustive branch counting.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if isinstance(family, int):
        rows = {
            n: tuple(coeff_trunk(family, n, j) for j in range(1, n + 1))
            for n in range(1, n_max + 1)
        }
        return Triangle(f"catalan:{family}", rows)
    rows = {}
    for n in range(1, n_max + 1):
        dist = enumeration.branch_distribution(family, n)
        rows[n] = tuple(dist.get(j, 0) for j in range(1, n + 1))
    return Triangle(family.spec(), rows)


def bundled_m1_triangle() -> Triangle:
    """The vendored m=1 triangle fixture (rows up to n=7)."""
    text = resources.files("braidarr.data").joinpath(FIXTURE_NAME).read_text()
    return Triangle.from_csv(text, "catalan:1")


# ---------------------------------------------------------------------------
# inequality suite


def _is_catalan_set(offsets: OffsetSet) -> Optional[int]:
    m = offsets.m
    if m >= 1 and offsets.elements == tuple(range(-m, m + 1)):
        return m
    return None


def _has_symmetric_pair(offsets: OffsetSet) -> bool:
    return 0 in offsets and any(k >= 1 and -k in offsets for k in offsets)


def _row_value(rows: Dict[int, tuple], n: int, j: int) -> int:
    if not 1 <= j <= n:
        return 0
    return rows[n][j - 1]


def verify_inequalities(offsets: OffsetSet, n_max: int) -> List[dict]:
    """Check the coefficient inequalities and the branch-count recurrence.

    Every check reports pass, fail (with the first counterexample), or
    skipped when its hypotheses do not apply to `offsets`.  Shift
    inequalities compare rows n and n+1, so they run for n < n_max; the
    suite never reaches past row n_max.
    """
    tri = triangle(_is_catalan_set(offsets) or offsets, n_max)
    rows = tri.rows
    checks: List[dict] = []

    def add(name: str, status: str, detail: str = "", counterexample=None) -> None:
        entry = {"name": name, "status": status}
        if detail:
            entry["detail"] = detail
        if counterexample is not None:
            entry["counterexample"] = counterexample
        checks.append(entry)

    # 1. monotone in the offset set: C(S', n, j) <= C(S, n, j)
    subs = []
    elems = offsets.elements
    for mask in range(1 << len(elems)):
        chosen = OffsetSet(e for i, e in enumerate(elems) if mask >> i & 1)
        if chosen.elements != elems and chosen.is_transitive():
            subs.append(chosen)
    bad = None
    for sub in subs:
        sub_rows = triangle(_is_catalan_set(sub) or sub, n_max).rows
        for n in range(1, n_max + 1):
            for j in range(1, n + 1):
                if _row_value(sub_rows, n, j) > _row_value(rows, n, j):
                    bad = {"subset": sub.spec(), "n": n, "j": j}
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        add("subset-monotone", "fail", counterexample=bad)
    else:
        add(
            "subset-monotone",
            "pass",
            detail=f"{len(subs)} transitive proper subsets, n <= {n_max}",
        )

    # 2./3. shifting a tree into one more node
    for name, dj in (("shift-n+1-j+1", 1), ("shift-n+1-j", 0)):
        bad = None
        for n in range(1, n_max):
            for j in range(1, n + 1):
                if _row_value(rows, n, j) > _row_value(rows, n + 1, j + dj):
                    bad = {"n": n, "j": j}
                    break
            if bad:
                break
        if bad:
            add(name, "fail", counterexample=bad)
        elif n_max < 2:
            add(name, "skipped", detail="needs n_max >= 2")
        else:
            add(name, "pass", detail=f"n < {n_max}")

    # 4./5. need 0 in S and a symmetric pair
    if not _has_symmetric_pair(offsets):
        reason = "needs 0 in S and some k with k, -k in S"
        add("first-coefficient-dominates", "skipped", detail=reason)
        add("monotone-in-j", "skipped", detail=reason)
    else:
        bad = None
        for n in range(1, n_max + 1):
            lead = _row_value(rows, n, 1)
            rest = sum(_row_value(rows, n, j) for j in range(2, n + 1))
            if lead < rest:
                bad = {"n": n, "lhs": str(lead), "rhs": str(rest)}
                break
        if bad:
            add("first-coefficient-dominates", "fail", counterexample=bad)
        else:
            add("first-coefficient-dominates", "pass", detail=f"n <= {n_max}")

        bad = None
        for n in range(1, n_max + 1):
            for j in range(1, n):
                if _row_value(rows, n, j) < _row_value(rows, n, j + 1):
                    bad = {"n": n, "j": j}
                    break
            if bad:
                break
        if bad:
            add("monotone-in-j", "fail", counterexample=bad)
        else:
            add("monotone-in-j", "pass", detail=f"n <= {n_max}")

    # 6./7. totals against one-branch counts, Catalan family only
    m = _is_catalan_set(offsets)
    if m is None:
        reason = "needs S = {-m..m}"
        add("total-vs-wider-family", "skipped", detail=reason)
        add("total-vs-next-size", "skipped", detail=reason)
    else:
        bad = None
        for n in range(1, n_max + 1):
            if total_trees(m, n) > coeff_trunk(m + 1, n, 1):
                bad = {"n": n}
                break
        add(
            "total-vs-wider-family",
            "fail" if bad else "pass",
            detail="" if bad else f"n <= {n_max}",
            counterexample=bad,
        )
        bad = None
        for n in range(1, n_max + 1):
            if total_trees(m, n) > coeff_trunk(m, n + 1, 1):
                bad = {"n": n}
                break
        add(
            "total-vs-next-size",
            "fail" if bad else "pass",
            detail="" if bad else f"n <= {n_max}",
            counterexample=bad,
        )

    # convolution recurrence over the branch containing the largest label
    bad = None
    for n in range(2, n_max + 1):
        for j in range(2, n + 1):
            expected = sum(
                comb(n - 1, k - 1)
                * _row_value(rows, k, 1)
                * _row_value(rows, n - k, j - 1)
                for k in range(1, n)
            )
            if _row_value(rows, n, j) != expected:
                bad = {"n": n, "j": j, "expected": str(expected)}
                break
        if bad:
            break
    if bad:
        add("branch-recurrence", "fail", counterexample=bad)
    elif n_max < 2:
        add("branch-recurrence", "skipped", detail="needs n_max >= 2")
    else:
        add("branch-recurrence", "pass", detail=f"2 <= n <= {n_max}")

    return checks
