"""Exhaustive enumeration of admissible labeled trees and their statistics.

An offset set S with bound m admits the (m+1)-ary labeled trees in which
every node i with cadet j (rightmost node child, sitting in slot lsib(j))
satisfies:

    lsib(j) outside S and lsib(j) != 0   =>  i < j
    -lsib(j) outside S                   =>  i > j

For transitive S these trees are counted by the regions of the associated
arrangement, and the branch statistic below matches the absolute
coefficients of its characteristic polynomial.

Enumeration walks unlabeled shapes first and interleaves label assignment
with the cadet ordering constraints, so sparse sets (such as the Linial
family) never see the full n! labelings of a shape.  Shapes whose cadet
slots demand both orderings at once are dropped before labeling.  All
outputs are deterministic; `jobs` only shards work, never changes results.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Iterator, Optional, Sequence

from .offsets import OffsetSet
from .trees import (
    Tree,
    leftmost_leaf_path,
    node_labels,
    replace_at,
    path_to_label,
    serialize,
    trunk,
    trunk_nodes,
    twigs,
    vertex_at,
)

# ---------------------------------------------------------------------------
# shapes


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _shapes(arity: int, n: int) -> tuple:
    """All shapes with `n` nodes; a shape is a nested tuple, None = leaf."""
    if n == 0:
        return (None,)
    out = []
    for parts in _compositions(n - 1, arity):
        for kids in product(*(_shapes(arity, p) for p in parts)):
            out.append(kids)
    return tuple(out)


def tree_shapes(m: int, n: int) -> Iterator:
    """Unlabeled (m+1)-ary trees with `n` nodes, each exactly once.

    A shape is a nested tuple of children with ``None`` marking leaves;
    ``tree_shapes(m, 0)`` yields the bare leaf.  The total count is the
    Fuss-Catalan number binom((m+1)n, n) / (mn + 1).
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    return iter(_shapes(m + 1, n))


def _shape_info(shape) -> tuple:
    """Preorder structure of a shape.

    Returns (n, trunk_len, cadet_edges) where positions are preorder
    indices (the trunk occupies positions 0 .. trunk_len-1, because the
    walk descends slot 0 first) and cadet_edges lists
    (parent_pos, child_pos, child_slot) for every node whose rightmost
    node child exists.
    """
    edges = []
    counter = [0]

    def walk(nd) -> int:
        pos = counter[0]
        counter[0] += 1
        rightmost = None
        for slot, child in enumerate(nd):
            if child is not None:
                rightmost = (pos, walk(child), slot)
        if rightmost is not None:
            edges.append(rightmost)
        return pos

    walk(shape)
    k = 1
    nd = shape
    while nd[0] is not None:
        k += 1
        nd = nd[0]
    return counter[0], k, edges


def _edge_rule(slot: int, offsets: OffsetSet) -> tuple:
    need_lt = slot != 0 and slot not in offsets
    need_gt = (-slot) not in offsets
    return need_lt, need_gt


def _constraints(edges, offsets: OffsetSet) -> Optional[dict]:
    """Map child_pos -> (parent_pos, rel); rel +1 parent>child, -1 parent<child.

    Returns None when some edge demands both orderings, which no labeling
    can satisfy.
    """
    cons = {}
    for parent, child, slot in edges:
        need_lt, need_gt = _edge_rule(slot, offsets)
        if need_lt and need_gt:
            return None
        if need_lt:
            cons[child] = (parent, -1)
        elif need_gt:
            cons[child] = (parent, +1)
    return cons


def _labelings(
    n: int, cons: dict, labels: Sequence[int], first: Optional[int] = None
) -> Iterator[tuple]:
    """All label assignments (by preorder position) satisfying `cons`."""
    if not cons:
        if first is None:
            yield from permutations(labels)
        else:
            rest = [x for x in labels if x != first]
            for perm in permutations(rest):
                yield (first,) + perm
        return

    labs = [0] * n
    avail = list(labels)

    def rec(pos: int) -> Iterator[tuple]:
        if pos == n:
            yield tuple(labs)
            return
        edge = cons.get(pos)
        for i, lab in enumerate(avail):
            if lab == 0:
                continue
            if edge is not None:
                p, rel = edge
                if rel > 0:
                    if labs[p] < lab:
                        continue
                else:
                    if labs[p] > lab:
                        continue
            labs[pos] = lab
            avail[i] = 0
            yield from rec(pos + 1)
            avail[i] = lab

    if first is not None:
        labs[0] = first
        avail[avail.index(first)] = 0
        yield from rec(1)
    else:
        yield from rec(0)


def _build(shape, labs: Sequence[int]) -> Tree:
    pos = [0]

    def rec(nd) -> Tree:
        lab = labs[pos[0]]
        pos[0] += 1
        return Tree(lab, tuple(rec(c) if c is not None else None for c in nd))

    return rec(shape)


# ---------------------------------------------------------------------------
# admissibility and enumeration


def is_admissible(tree: Tree, offsets: OffsetSet) -> bool:
    """Whether `tree` satisfies the cadet ordering rule for `offsets`."""
    if tree.m != offsets.m:
        raise ValueError(
            f"tree arity {tree.arity} does not match offsets (m={offsets.m})"
        )
    todo = [tree]
    while todo:
        v = todo.pop()
        cadet_child = None
        for slot, c in enumerate(v.children):
            if c is not None:
                todo.append(c)
                cadet_child = (slot, c)
        if cadet_child is None:
            continue
        slot, c = cadet_child
        need_lt, need_gt = _edge_rule(slot, offsets)
        if need_lt and not v.label < c.label:
            return False
        if need_gt and not v.label > c.label:
            return False
    return True


def _resolve_labels(n: int, labels: Optional[Iterable[int]]) -> tuple:
    if labels is None:
        return tuple(range(1, n + 1))
    labs = tuple(sorted(labels))
    if len(labs) != n or len(set(labs)) != n or (labs and labs[0] <= 0):
        raise ValueError(f"need {n} distinct positive labels, got {labs}")
    return labs


def _iter_trees(
    offsets: OffsetSet, n: int, labels: Optional[Iterable[int]] = None
) -> Iterator[Tree]:
    labs = _resolve_labels(n, labels)
    for shape in _shapes(offsets.m + 1, n):
        _, _, edges = _shape_info(shape)
        cons = _constraints(edges, offsets)
        if cons is None:
            continue
        for assignment in _labelings(n, cons, labs):
            yield _build(shape, assignment)


def admissible_trees(
    offsets: OffsetSet, n: int, labels: Optional[Iterable[int]] = None
) -> list:
    """All admissible labeled trees, sorted by their serialization.

    `labels` defaults to 1..n; pass any set of distinct positive integers
    to relabel.  For transitive offset sets the length of this list equals
    the number of regions of the arrangement in dimension n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return sorted(_iter_trees(offsets, n, labels), key=serialize)


def count_admissible(offsets: OffsetSet, n: int) -> int:
    """Number of admissible trees on labels 1..n, without materializing them."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    total = 0
    for shape in _shapes(offsets.m + 1, n):
        _, _, edges = _shape_info(shape)
        cons = _constraints(edges, offsets)
        if cons is None:
            continue
        if not cons:
            total += factorial(n)
        else:
            total += sum(1 for _ in _labelings(n, cons, range(1, n + 1)))
    return total


# ---------------------------------------------------------------------------
# branch statistic


def branch_nodes(tree: Tree) -> list:
    """Trunk labels that exceed every later trunk label, in trunk order."""
    seq = trunk(tree)
    out = []
    mx = 0
    for lab in reversed(seq):
        if lab > mx:
            out.append(lab)
            mx = lab
    out.reverse()
    return out


def _rl_maxima_count(seq: Sequence[int]) -> int:
    cnt = 0
    mx = 0
    for lab in reversed(seq):
        if lab > mx:
            cnt += 1
            mx = lab
    return cnt


def _distribution_shard(args) -> dict:
    elements, n, labels, first = args
    offsets = OffsetSet(elements)
    counts: Counter = Counter()
    for shape in _shapes(offsets.m + 1, n):
        _, k, edges = _shape_info(shape)
        cons = _constraints(edges, offsets)
        if cons is None:
            continue
        for assignment in _labelings(n, cons, labels, first=first):
            counts[_rl_maxima_count(assignment[:k])] += 1
    return dict(counts)


def branch_distribution(offsets: OffsetSet, n: int, jobs: int = 1) -> dict:
    """Count admissible trees on 1..n by number of branches.

    Returns a map j -> count whose values sum to the total number of
    admissible trees.  With jobs > 1 the work is sharded by root label;
    the result does not depend on `jobs`.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    labels = tuple(range(1, n + 1))
    if jobs <= 1:
        return _distribution_shard((offsets.elements, n, labels, None))
    tasks = [(offsets.elements, n, labels, first) for first in labels]
    merged: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for shard in pool.map(_distribution_shard, tasks):
            merged.update(shard)
    return dict(merged)


# ---------------------------------------------------------------------------
# branches as connected components


def decompose_branches(tree: Tree) -> list:
    """Split a tree into its branches, each a standalone one-branch tree.

    The trunk is cut after every branch node; each cut slot is refilled
    with a leaf.  Label sets of the pieces partition the tree's labels.
    """
    spine = trunk_nodes(tree)
    seq = [v.label for v in spine]
    k = len(seq)
    maxima = [i for i in range(k) if all(seq[i] > seq[j] for j in range(i + 1, k))]
    pieces = []
    start = 0
    for idx in maxima:
        source = spine[start]
        if idx + 1 < k:
            piece = replace_at(source, (0,) * (idx - start + 1), None)
        else:
            piece = source
        pieces.append(piece)
        start = idx + 1
    return pieces


def glue_branches(parts: Sequence[Tree]) -> Tree:
    """Reassemble one-branch trees with disjoint labels into a single tree.

    The part whose trunk carries the largest remaining trunk label is
    appended at the current leftmost leaf, repeatedly; input order is
    irrelevant.  Decomposing the result returns the parts.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("need at least one part")
    arity = parts[0].arity
    seen: set = set()
    for p in parts:
        if p.arity != arity:
            raise ValueError("parts have mixed arities")
        labs = node_labels(p)
        if labs & seen:
            raise ValueError(f"duplicate labels across parts: {sorted(labs & seen)}")
        seen |= labs
        if len(branch_nodes(p)) != 1:
            raise ValueError(f"part {serialize(p)} has more than one branch")
    ordered = sorted(parts, key=lambda p: max(trunk(p)), reverse=True)
    acc = ordered[0]
    for nxt in ordered[1:]:
        acc = replace_at(acc, leftmost_leaf_path(acc), nxt)
    return acc


# ---------------------------------------------------------------------------
# compartments


def compartments(tree: Tree) -> int:
    """Number of compartments: twigs grouped left to right, cutting after
    the twig that carries the largest label not yet consumed."""
    groups = twigs(tree)
    remaining = set()
    for g in groups:
        remaining |= g
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


def compartment_distribution(
    offsets: OffsetSet, n: int, labels: Optional[Iterable[int]] = None
) -> dict:
    """Count admissible trees on 1..n by number of compartments."""
    counts: Counter = Counter()
    for t in _iter_trees(offsets, n, labels):
        counts[compartments(t)] += 1
    return dict(counts)


# ---------------------------------------------------------------------------
# disconnected -> connected surgery


def _qualifying_k(offsets: OffsetSet, k: Optional[int]) -> int:
    if 0 not in offsets:
        raise ValueError("surgery requires 0 in the offset set")
    if k is None:
        for j in offsets:
            if j >= 1 and -j in offsets:
                return j
        raise ValueError("surgery requires some k >= 1 with k and -k in the set")
    if k < 1 or k not in offsets or -k not in offsets:
        raise ValueError(f"k={k} must be >= 1 with k and -k in the set")
    return k


def _graft_at_leftmost(tree: Tree, anchor: tuple, piece: Tree) -> Tree:
    """Replace the leftmost leaf of the subtree at `anchor` with `piece`.

    When the anchor slot itself holds a leaf, the piece takes its place.
    """
    target = vertex_at(tree, anchor)
    rel = leftmost_leaf_path(target) if target is not None else ()
    return replace_at(tree, anchor + rel, piece)


def lift_disconnected(tree: Tree, offsets: OffsetSet, k: Optional[int] = None) -> Tree:
    """Map a disconnected tree (2+ compartments) to a connected one.

    Requires 0 in the offset set and some k >= 1 with both k and -k in it
    (the smallest such k is used when none is given).  The largest label's
    subtree is re-hung below the (k+1)-th child of its trunk parent; when
    the largest label sits in the first twig, the whole first twig moves
    below the (k+1)-th child of the last trunk node.  The map is injective
    and :func:`invert_lift` undoes it.
    """
    k = _qualifying_k(offsets, k)
    groups = twigs(tree)
    top = max(max(g) for g in groups)
    i_pos = next(i for i, g in enumerate(groups) if top in g)
    if i_pos == len(groups) - 1:
        raise ValueError("tree is already connected (largest label in last twig)")
    spine = trunk_nodes(tree)
    if i_pos > 0:
        moved = spine[i_pos]
        pruned = replace_at(tree, (0,) * i_pos, None)
        anchor = (0,) * (i_pos - 1) + (k,)
        return _graft_at_leftmost(pruned, anchor, moved)
    piece = Tree(tree.label, (None,) + tree.children[1:])
    base = tree.children[0]
    anchor = (0,) * (len(spine) - 2) + (k,)
    return _graft_at_leftmost(base, anchor, piece)


def invert_lift(tree: Tree, offsets: OffsetSet, k: Optional[int] = None) -> Tree:
    """Inverse of :func:`lift_disconnected` on its image.

    The moved subtree's root is the vertex with drift exactly k that sits
    furthest from the root on the path to the largest label; whether its
    leftmost child is a node or a leaf tells which surgery to undo.
    """
    k = _qualifying_k(offsets, k)
    top = max(node_labels(tree))
    path = path_to_label(tree, top)
    depth = None
    for d in range(1, len(path) + 1):
        if sum(path[:d]) == k:
            depth = d
    if depth is None:
        raise ValueError("tree is not in the image of the surgery")
    path_i = path[:depth]
    moved = vertex_at(tree, path_i)
    assert moved is not None
    pruned = replace_at(tree, path_i, None)
    if moved.children[0] is not None:
        return replace_at(pruned, leftmost_leaf_path(pruned), moved)
    return Tree(moved.label, (pruned,) + moved.children[1:])


# ---------------------------------------------------------------------------
# JSON emission


def distribution_json(offsets: OffsetSet, n: int, stat: str, counts: dict) -> dict:
    """Distribution payload with counts as decimal strings."""
    return {
        "S": list(offsets.elements),
        "n": n,
        "stat": stat,
        "counts": {str(j): str(c) for j, c in sorted(counts.items())},
    }
