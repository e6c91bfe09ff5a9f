"""Labeled m-Dyck paths and their compartment / maxima statistics.

A labeled m-Dyck path on [n] has n up-steps worth +m, each carrying a
distinct label from [n], and mn down-steps worth -1, with every prefix sum
nonnegative.  Steps are stored as a tuple of ints: a positive value is an
up-step's label, -1 is a down-step.

The trees of the enumeration module map bijectively onto these paths: a
node emits its label as an up-step, then its non-leftmost subtrees left to
right, then its leftmost subtree; leaves emit down-steps and the final
down-step is dropped.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import Iterator, List, Optional, Sequence

from .trees import Tree

DOWN = -1


class DyckPath:
    """An immutable labeled m-Dyck path."""

    __slots__ = ("m", "steps")

    def __init__(self, m: int, steps: Sequence[int]):
        steps = tuple(steps)
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        ups = [s for s in steps if s != DOWN]
        downs = len(steps) - len(ups)
        if any(s <= 0 for s in ups):
            raise ValueError("up-step labels must be positive")
        if len(set(ups)) != len(ups):
            raise ValueError("up-step labels must be distinct")
        if downs != m * len(ups):
            raise ValueError(
                f"need {m * len(ups)} down-steps for {len(ups)} up-steps, got {downs}"
            )
        height = 0
        for s in steps:
            height += m if s != DOWN else -1
            if height < 0:
                raise ValueError("a prefix dips below the axis")
        self.m = m
        self.steps = steps

    @property
    def n(self) -> int:
        return sum(1 for s in self.steps if s != DOWN)

    def labels(self) -> frozenset:
        return frozenset(s for s in self.steps if s != DOWN)

    def is_standard(self) -> bool:
        """Whether the labels are exactly 1..n."""
        return self.labels() == frozenset(range(1, self.n + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyckPath):
            return NotImplemented
        return self.m == other.m and self.steps == other.steps

    def __hash__(self) -> int:
        return hash((self.m, self.steps))

    def __repr__(self) -> str:
        return f"DyckPath(m={self.m}, {to_text(self)!r})"


def to_text(path: DyckPath) -> str:
    """Compact text form, e.g. ``+4 +7 +2 - - +6 - -``."""
    return " ".join("-" if s == DOWN else f"+{s}" for s in path.steps)


def from_text(text: str, m: int) -> DyckPath:
    steps = []
    for tok in text.split():
        if tok == "-":
            steps.append(DOWN)
        elif tok.startswith("+"):
            steps.append(int(tok[1:]))
        else:
            raise ValueError(f"bad step token {tok!r}")
    return DyckPath(m, steps)


def path_to_json(path: DyckPath) -> dict:
    return {
        "m": path.m,
        "n": path.n,
        "steps": ["down" if s == DOWN else {"up": s} for s in path.steps],
    }


def path_from_json(payload: dict) -> DyckPath:
    steps = [DOWN if s == "down" else int(s["up"]) for s in payload["steps"]]
    return DyckPath(payload["m"], steps)


# ---------------------------------------------------------------------------
# enumeration


def _step_patterns(m: int, n: int) -> Iterator[tuple]:
    """Up/down patterns (True = up) with nonnegative prefixes, up first."""

    def rec(prefix: list, ups_left: int, downs_left: int, height: int):
        if not ups_left and not downs_left:
            yield tuple(prefix)
            return
        if ups_left:
            prefix.append(True)
            yield from rec(prefix, ups_left - 1, downs_left, height + m)
            prefix.pop()
        if downs_left and height > 0:
            prefix.append(False)
            yield from rec(prefix, ups_left, downs_left - 1, height - 1)
            prefix.pop()

    yield from rec([], n, m * n, 0)


def enumerate_paths(m: int, n: int) -> Iterator[DyckPath]:
    """All labeled m-Dyck paths on [n], deterministically ordered."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    for pattern in _step_patterns(m, n):
        for labs in permutations(range(1, n + 1)):
            it = iter(labs)
            steps = tuple(next(it) if up else DOWN for up in pattern)
            yield DyckPath(m, steps)


def count_paths(m: int, n: int) -> int:
    return sum(1 for _ in enumerate_paths(m, n))


# ---------------------------------------------------------------------------
# statistics


def primitive_parts(path: DyckPath) -> List[DyckPath]:
    """Maximal sub-paths between consecutive returns to height zero."""
    parts = []
    height = 0
    start = 0
    for i, s in enumerate(path.steps):
        height += path.m if s != DOWN else -1
        if height == 0:
            parts.append(DyckPath(path.m, path.steps[start : i + 1]))
            start = i + 1
    return parts


def path_compartments(path: DyckPath) -> int:
    """Group primitive parts left to right, cutting after the part that
    carries the largest label not yet consumed."""
    groups = [p.labels() for p in primitive_parts(path)]
    remaining = set(path.labels())
    idx = 0
    count = 0
    while idx < len(groups):
        target = max(remaining)
        j = next(i for i in range(idx, len(groups)) if target in groups[i])
        for g in groups[idx : j + 1]:
            remaining -= g
        idx = j + 1
        count += 1
    return count


def path_rl_maxima(path: DyckPath) -> int:
    """Right-to-left maxima of the label run before the first down-step."""
    run = []
    for s in path.steps:
        if s == DOWN:
            break
        run.append(s)
    count = 0
    mx = 0
    for lab in reversed(run):
        if lab > mx:
            count += 1
            mx = lab
    return count


def statistic_distribution(m: int, n: int, stat: str) -> dict:
    """Distribution of ``compartments`` or ``rl-maxima`` over all paths."""
    fn = {"compartments": path_compartments, "rl-maxima": path_rl_maxima}[stat]
    counts: Counter = Counter()
    for path in enumerate_paths(m, n):
        counts[fn(path)] += 1
    return dict(counts)


# ---------------------------------------------------------------------------
# bijection with labeled trees


def tree_to_path(tree: Tree) -> DyckPath:
    """Encode a labeled tree as a labeled m-Dyck path.

    Each node emits its label, then its children in slots 1..m, then
    slot 0; leaves emit down-steps, and the trailing down-step of the
    full word is dropped.
    """
    steps: List[int] = []

    def emit(v: Optional[Tree]) -> None:
        if v is None:
            steps.append(DOWN)
            return
        steps.append(v.label)
        for c in v.children[1:]:
            emit(c)
        emit(v.children[0])

    emit(tree)
    assert steps[-1] == DOWN
    return DyckPath(tree.m, steps[:-1])


def path_to_tree(path: DyckPath, m: Optional[int] = None) -> Tree:
    """Decode a labeled m-Dyck path back into a labeled tree."""
    if m is not None and m != path.m:
        raise ValueError(f"path has m={path.m}, asked to decode with m={m}")
    m = path.m
    steps = path.steps + (DOWN,)
    pos = [0]

    def read() -> Optional[Tree]:
        s = steps[pos[0]]
        pos[0] += 1
        if s == DOWN:
            return None
        rest = [read() for _ in range(m)]
        first = read()
        return Tree(s, (first, *rest))

    root = read()
    if root is None or pos[0] != len(steps):
        raise ValueError("steps do not encode a single tree")
    return root
