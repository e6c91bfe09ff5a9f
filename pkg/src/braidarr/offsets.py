"""Finite integer offset sets and the named arrangement families.

An offset set S describes the arrangement with hyperplanes
x_i - x_j = k for k in S and 1 <= i < j <= n.  The derived bound
m = max{|s| : s in S} (0 for the empty set) fixes the arity m+1 of the
associated trees.  The named families are

    braid          {0}
    catalan, m     {-m, ..., m}
    shi, m         {-m+1, ..., m}
    linial, m      {-m+1, ..., m} \\ {0}
    semiorder, m   {-m, ..., m} \\ {0}

The CLI spelling for a set is a comma-separated integer list such as
``-1,0,1`` (empty string for the empty set) or a family spec such as
``shi:2``; ``braid`` needs no parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

FAMILY_NAMES = ("braid", "catalan", "shi", "linial", "semiorder")


@dataclass(frozen=True)
class OffsetSet:
    """A sorted finite set of integer offsets."""

    elements: tuple

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(set(int(e) for e in elements)))
        object.__setattr__(self, "elements", elems)

    @property
    def m(self) -> int:
        """Largest absolute offset; 0 for the empty set."""
        if not self.elements:
            return 0
        return max(abs(self.elements[0]), abs(self.elements[-1]))

    def __contains__(self, value: int) -> bool:
        return value in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    def spec(self) -> str:
        """The CLI spelling, e.g. ``-1,0,1`` (empty string for the empty set)."""
        return ",".join(str(e) for e in self.elements)

    def is_transitive(self) -> bool:
        """Whether the offset set is closed under the two sum conditions.

        S is transitive when for all integers s, t outside S:
        s*t > 0 implies s+t is outside S, and s > 0 >= t implies both s-t
        and t-s are outside S.  Only witnesses with |s|, |t| <= m can ever
        land inside S (any larger s or t pushes every combination outside
        [-m, m]), so the scan over the window [-m, m] is exhaustive.
        """
        m = self.m
        outside = [v for v in range(-m, m + 1) if v not in self]
        for s, t in product(outside, repeat=2):
            if s * t > 0 and (s + t) in self:
                return False
            if s > 0 >= t and ((s - t) in self or (t - s) in self):
                return False
        return True


def braid() -> OffsetSet:
    return OffsetSet((0,))


def catalan(m: int) -> OffsetSet:
    _check_m(m)
    return OffsetSet(range(-m, m + 1))


def shi(m: int) -> OffsetSet:
    _check_m(m)
    return OffsetSet(range(-m + 1, m + 1))


def linial(m: int) -> OffsetSet:
    _check_m(m)
    return OffsetSet(k for k in range(-m + 1, m + 1) if k != 0)


def semiorder(m: int) -> OffsetSet:
    _check_m(m)
    return OffsetSet(k for k in range(-m, m + 1) if k != 0)


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"family parameter m must be >= 1, got {m}")


def family(name: str, m: int = 1) -> OffsetSet:
    """Construct a named family; `m` is ignored for the braid family."""
    if name == "braid":
        return braid()
    if name == "catalan":
        return catalan(m)
    if name == "shi":
        return shi(m)
    if name == "linial":
        return linial(m)
    if name == "semiorder":
        return semiorder(m)
    raise ValueError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")


def parse_spec(text: str) -> OffsetSet:
    """Parse the CLI set spelling: ``-1,0,1``, ``""``, ``shi:2`` or ``braid``."""
    text = text.strip()
    if text == "":
        return OffsetSet(())
    head = text.split(":", 1)[0].strip().lower()
    if head in FAMILY_NAMES:
        if ":" in text:
            arg = text.split(":", 1)[1].strip()
            try:
                m = int(arg)
            except ValueError:
                raise ValueError(f"bad family parameter {arg!r} in {text!r}") from None
            if head != "braid":
                _check_m(m)
            return family(head, m)
        if head == "braid":
            return braid()
        raise ValueError(f"family {head!r} needs a parameter, e.g. {head}:2")
    try:
        return OffsetSet(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse offset set {text!r}") from None
