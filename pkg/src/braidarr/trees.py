"""Labeled (m+1)-ary rooted plane trees and their primitive statistics.

A tree is built from `Tree` nodes.  Every node carries a positive integer
label and a tuple of exactly m+1 children, each of which is either another
`Tree` node or ``None`` (a leaf).  Leaves are kept explicit so that the
position of every child is well defined.  A tree with n nodes therefore has
exactly n*m + 1 leaves.  Label sets are plain sets of distinct positive
integers; ``{1, ..., n}`` is the canonical one.

Vertices are addressed either by node label (an ``int``) or by the slot path
from the root (a tuple of child indices, ``()`` being the root itself).
Paths are the only way to address a leaf.

All values are immutable after construction and safe to share between
workers.  The text format produced by :func:`serialize` and read by
:func:`parse` is the on-disk and CLI representation:

    node  =  "(" label ":" child "," ... "," child ")"
    leaf  =  "*"

Serialization is canonical, so two trees are equal exactly when their
serializations are equal.
"""

from __future__ import annotations

from typing import Iterator, Optional, Tuple, Union

Vertex = Union[int, Tuple[int, ...]]


class TreeFormatError(ValueError):
    """Base class for malformed tree text or structure."""


class TreeSyntaxError(TreeFormatError):
    """The text does not match the tree grammar."""


class ArityError(TreeFormatError):
    """A node does not have the expected number of children."""


class DuplicateLabelError(TreeFormatError):
    """Two nodes carry the same label."""


class Tree:
    """A node of a labeled (m+1)-ary rooted plane tree.

    `children` is a tuple of length m+1 whose entries are `Tree` nodes or
    ``None`` for leaves.  Instances are treated as immutable; structural
    surgery always builds new nodes.
    """

    __slots__ = ("label", "children")

    def __init__(self, label: int, children: tuple):
        if not isinstance(children, tuple):
            children = tuple(children)
        self.label = label
        self.children = children

    @property
    def arity(self) -> int:
        return len(self.children)

    @property
    def m(self) -> int:
        return len(self.children) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.label == other.label and self.children == other.children

    def __hash__(self) -> int:
        return hash((self.label, self.children))

    def __repr__(self) -> str:
        return f"Tree[{serialize(self)}]"


def nodes(tree: Tree) -> Iterator[Tree]:
    """All nodes of `tree` in preorder (parent first, children left to right)."""
    stack = [tree]
    while stack:
        v = stack.pop()
        yield v
        stack.extend(c for c in reversed(v.children) if c is not None)


def node_labels(tree: Tree) -> frozenset:
    return frozenset(v.label for v in nodes(tree))


def node_count(tree: Tree) -> int:
    return sum(1 for _ in nodes(tree))


def leaf_count(tree: Tree) -> int:
    return sum(sum(1 for c in v.children if c is None) for v in nodes(tree))


def vertex_at(tree: Tree, path: Tuple[int, ...]) -> Optional[Tree]:
    """The vertex reached by following `path` slots from the root.

    Returns the `Tree` node, or ``None`` when the path ends on a leaf.
    Raises ``ValueError`` if the path walks past a leaf or out of range.
    """
    v: Optional[Tree] = tree
    for depth, slot in enumerate(path):
        if v is None:
            raise ValueError(f"path {path!r} descends below a leaf at depth {depth}")
        if not 0 <= slot < len(v.children):
            raise ValueError(f"slot {slot} out of range at depth {depth}")
        v = v.children[slot]
    return v


def path_to_label(tree: Tree, label: int) -> Tuple[int, ...]:
    """Slot path from the root to the node carrying `label`."""
    todo = [(tree, ())]
    while todo:
        v, path = todo.pop()
        if v.label == label:
            return path
        todo.extend(
            (c, path + (slot,))
            for slot, c in enumerate(v.children)
            if c is not None
        )
    raise KeyError(f"no node labeled {label}")


def subtree(tree: Tree, label: int) -> Tree:
    """The subtree rooted at the node carrying `label`."""
    v = vertex_at(tree, path_to_label(tree, label))
    assert v is not None
    return v


def replace_at(tree: Tree, path: Tuple[int, ...], replacement: Optional[Tree]) -> Tree:
    """A copy of `tree` with the vertex at `path` replaced by `replacement`.

    `replacement` may be ``None`` to punch a leaf into a node position.
    The root itself (empty path) cannot be replaced this way.
    """
    if not path:
        raise ValueError("cannot replace the root in place")
    vertex_at(tree, path)  # validate

    def rebuild(v: Tree, depth: int) -> Tree:
        slot = path[depth]
        if depth == len(path) - 1:
            child = replacement
        else:
            cur = v.children[slot]
            assert cur is not None
            child = rebuild(cur, depth + 1)
        cs = v.children
        return Tree(v.label, cs[:slot] + (child,) + cs[slot + 1 :])

    return rebuild(tree, 0)


def _resolve(tree: Tree, v: Vertex) -> Tuple[Tuple[int, ...], Optional[Tree]]:
    if isinstance(v, int):
        path = path_to_label(tree, v)
        return path, vertex_at(tree, path)
    path = tuple(v)
    return path, vertex_at(tree, path)


def lsib(tree: Tree, v: Vertex) -> int:
    """Number of siblings strictly to the left of vertex `v`.

    `v` is a node label or a slot path; leaves can only be addressed by
    path.  The root has no siblings and raises ``ValueError``.
    """
    path, _ = _resolve(tree, v)
    if not path:
        raise ValueError("the root has no siblings")
    return path[-1]


def drift(tree: Tree, v: Vertex) -> int:
    """Sum of lsib along the path from the root to vertex `v` (0 for the root)."""
    path, _ = _resolve(tree, v)
    return sum(path)


def cadet(tree: Tree, i: Union[int, Tree]) -> Optional[int]:
    """Label of the rightmost child of node `i` that is itself a node.

    Returns ``None`` when every child of `i` is a leaf.
    """
    node = subtree(tree, i) if isinstance(i, int) else i
    for c in reversed(node.children):
        if c is not None:
            return c.label
    return None


def trunk_nodes(tree: Tree) -> list:
    """The `Tree` nodes on the path from the root to the leftmost leaf."""
    out = [tree]
    while out[-1].children[0] is not None:
        out.append(out[-1].children[0])
    return out


def trunk(tree: Tree) -> list:
    """Labels along the trunk: root, then leftmost children until a leaf."""
    return [v.label for v in trunk_nodes(tree)]


def twigs(tree: Tree) -> list:
    """Label sets of the twigs, one per trunk node, left to right.

    Twig i consists of trunk node v_i and all its descendants except the
    subtree rooted at v_{i+1}; together the twigs partition the nodes.
    """
    spine = trunk_nodes(tree)
    out = []
    for idx, v in enumerate(spine):
        labels = {v.label}
        rest = v.children[1:] if idx + 1 < len(spine) else v.children
        for c in rest:
            if c is not None:
                labels.update(node_labels(c))
        out.append(frozenset(labels))
    return out


def leftmost_leaf_path(tree: Tree) -> Tuple[int, ...]:
    """Path of the leftmost leaf, i.e. slot 0 below the last trunk node."""
    return (0,) * len(trunk_nodes(tree))


def serialize(tree: Tree) -> str:
    """Canonical text form of `tree`."""
    parts = []

    def emit(v: Optional[Tree]) -> None:
        if v is None:
            parts.append("*")
            return
        parts.append(f"({v.label}:")
        for slot, c in enumerate(v.children):
            if slot:
                parts.append(",")
            emit(c)
        parts.append(")")

    emit(tree)
    return "".join(parts)


def validate(tree: Tree, m: Optional[int] = None) -> None:
    """Check arity uniformity and label sanity, raising TreeFormatError."""
    arity = m + 1 if m is not None else tree.arity
    seen = set()
    for v in nodes(tree):
        if v.arity != arity:
            raise ArityError(
                f"node {v.label} has {v.arity} children, expected {arity}"
            )
        if not isinstance(v.label, int) or v.label <= 0:
            raise TreeSyntaxError(f"label {v.label!r} is not a positive integer")
        if v.label in seen:
            raise DuplicateLabelError(f"label {v.label} appears more than once")
        seen.add(v.label)


def parse(text: str, m: Optional[int] = None) -> Tree:
    """Parse the canonical text form back into a `Tree`.

    When `m` is given, every node must have exactly m+1 children; otherwise
    the root's child count is enforced everywhere.
    """
    pos = 0

    def error(msg: str) -> TreeSyntaxError:
        return TreeSyntaxError(f"{msg} at position {pos}")

    def read_vertex() -> Optional[Tree]:
        nonlocal pos
        if pos >= len(text):
            raise error("unexpected end of input")
        if text[pos] == "*":
            pos += 1
            return None
        if text[pos] != "(":
            raise error(f"expected '(' or '*', found {text[pos]!r}")
        pos += 1
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise error("expected a label")
        label = int(text[start:pos])
        if pos >= len(text) or text[pos] != ":":
            raise error("expected ':' after label")
        pos += 1
        children = [read_vertex()]
        while pos < len(text) and text[pos] == ",":
            pos += 1
            children.append(read_vertex())
        if pos >= len(text) or text[pos] != ")":
            raise error("expected ')'")
        pos += 1
        if label <= 0:
            raise TreeSyntaxError(f"label {label} is not positive")
        return Tree(label, tuple(children))

    root = read_vertex()
    if pos != len(text):
        raise error("trailing characters")
    if root is None:
        raise TreeSyntaxError("a tree needs at least one node")
    validate(root, m)
    return root
