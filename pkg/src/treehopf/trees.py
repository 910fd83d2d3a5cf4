"""Canonical rooted trees and forests.

A tree is written in bracket notation: ``[]`` is the one-vertex tree and
``[t1 t2 ... tk]`` is a root whose children are the subtrees ``t1..tk``.
Every tree is canonicalised by sorting children on ``(size, text)``, so
``[[[]][]]`` and ``[[][[]]]`` both become ``[[][[]]]``.  Trees are interned
on that canonical string: two isomorphic trees are the same Python object.
"""
from __future__ import annotations

import math
import threading
from functools import lru_cache
from typing import Any, Iterable, Iterator, Sequence

from .errors import ConsistencyError, ResourceLimitError, TreeSyntaxError

#: Maximum number of objects a single enumeration call may return.
#: With the default, trees are enumerable up to grade 14 (87811 trees).
ENUMERATION_CAP = 100_000


def _tree_key(t: "RootedTree") -> tuple[int, str]:
    return t.key


class RootedTree:
    """An isomorphism class of finite rooted trees.

    Construct from an iterable of child trees; order does not matter.
    ``size`` is the vertex count, ``symmetry_order`` is ``|SG(t)|`` and
    ``tree_factorial`` is the product of all subtree sizes.
    """

    __slots__ = ("children", "size", "text", "key", "symmetry_order", "tree_factorial", "_hash")

    _interned: dict[str, "RootedTree"] = {}
    _lock = threading.Lock()

    children: tuple["RootedTree", ...]
    size: int
    text: str
    key: tuple[int, str]
    symmetry_order: int
    tree_factorial: int

    def __new__(cls, children: Iterable["RootedTree"] = ()) -> "RootedTree":
        kids = tuple(sorted(children, key=_tree_key))
        text = "[" + "".join(c.text for c in kids) + "]"
        found = cls._interned.get(text)
        if found is not None:
            return found
        with cls._lock:
            found = cls._interned.get(text)
            if found is not None:
                return found
            self = object.__new__(cls)
            self.children = kids
            self.text = text
            self.size = 1 + sum(c.size for c in kids)
            self.key = (self.size, text)
            self._hash = hash(text)
            sym = 1
            fact = self.size
            i = 0
            while i < len(kids):
                j = i
                while j < len(kids) and kids[j] is kids[i]:
                    j += 1
                mult = j - i
                sym *= math.factorial(mult) * kids[i].symmetry_order ** mult
                fact *= kids[i].tree_factorial ** mult
                i = j
            self.symmetry_order = sym
            self.tree_factorial = fact
            cls._interned[text] = self
            return self

    @property
    def grade(self) -> int:
        """Grade in the vector space of trees: the number of non-root vertices."""
        return self.size - 1

    @property
    def is_primitive(self) -> bool:
        return len(self.children) == 1

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "RootedTree") -> bool:
        return self.key < other.key

    def __le__(self, other: "RootedTree") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "RootedTree") -> bool:
        return self.key > other.key

    def __ge__(self, other: "RootedTree") -> bool:
        return self.key >= other.key

    def __reduce__(self):
        return (parse, (self.text,))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self) -> str:
        return f"RootedTree({self.text!r})"

    def __str__(self) -> str:
        return self.text


BULLET = RootedTree()


def chain(n: int) -> RootedTree:
    """The ladder with ``n`` vertices."""
    if n < 1:
        raise ValueError("a tree has at least one vertex")
    t = BULLET
    for _ in range(n - 1):
        t = RootedTree([t])
    return t


def star(k: int) -> RootedTree:
    """Root with ``k`` terminal children."""
    return RootedTree([BULLET] * k)


class Forest:
    """A monomial of the Kreimer algebra: a multiset of trees.

    The empty forest is the unit ``1``.  Multiplication is multiset union.
    """

    __slots__ = ("trees", "degree", "key", "_hash")

    trees: tuple[RootedTree, ...]
    degree: int

    def __init__(self, trees: Iterable[RootedTree] = ()):
        ts = tuple(sorted(trees, key=_tree_key))
        self.trees = ts
        self.degree = sum(t.size for t in ts)
        self.key = (self.degree, len(ts), tuple(t.key for t in ts))
        self._hash = hash(ts)

    @property
    def grade(self) -> int:
        return self.degree

    @property
    def text(self) -> str:
        return " ".join(t.text for t in self.trees) if self.trees else "1"

    def __mul__(self, other: "Forest") -> "Forest":
        if not isinstance(other, Forest):
            return NotImplemented
        if not other.trees:
            return self
        if not self.trees:
            return other
        return Forest(self.trees + other.trees)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Forest) and self.trees == other.trees

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Forest") -> bool:
        return self.key < other.key

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[RootedTree]:
        return iter(self.trees)

    def __bool__(self) -> bool:
        return bool(self.trees)

    def count(self, t: RootedTree) -> int:
        return self.trees.count(t)

    def without(self, t: RootedTree) -> "Forest":
        """Remove one copy of ``t``."""
        i = self.trees.index(t)
        return Forest(self.trees[:i] + self.trees[i + 1:])

    def distinct(self) -> list[tuple[RootedTree, int]]:
        """Distinct factors with multiplicities, in canonical order."""
        out: list[tuple[RootedTree, int]] = []
        for t in self.trees:
            if out and out[-1][0] is t:
                out[-1] = (t, out[-1][1] + 1)
            else:
                out.append((t, 1))
        return out

    def __repr__(self) -> str:
        return f"Forest({self.text!r})"

    def __str__(self) -> str:
        return self.text


UNIT = Forest()


def b_plus(u: Forest) -> RootedTree:
    """Graft the trees of ``u`` onto a new common root; ``b_plus(1)`` is the bullet."""
    return RootedTree(u.trees)


def b_minus(t: RootedTree) -> Forest:
    return Forest(t.children)


# -- text and JSON forms ------------------------------------------------------

def _parse_sequence(text: str) -> list[tuple[RootedTree, int]]:
    # returns top-level trees with the byte offset where each starts
    data = text.encode("utf-8")
    stack: list[list[RootedTree]] = [[]]
    opened: list[int] = []
    top: list[tuple[RootedTree, int]] = []
    for pos, byte in enumerate(data):
        if byte == 0x5B:  # [
            stack.append([])
            opened.append(pos)
        elif byte == 0x5D:  # ]
            if not opened:
                raise TreeSyntaxError("unmatched ']'", pos)
            start = opened.pop()
            node = RootedTree(stack.pop())
            if opened:
                stack[-1].append(node)
            else:
                top.append((node, start))
        elif byte in b" \t\r\n":
            continue
        elif byte < 128:
            raise TreeSyntaxError(f"unexpected character {chr(byte)!r}", pos)
        else:
            raise TreeSyntaxError("unexpected non-ASCII character", pos)
    if opened:
        raise TreeSyntaxError("unclosed '['", opened[-1])
    return top


def parse(text: str) -> RootedTree:
    """Parse one tree in bracket notation."""
    trees = _parse_sequence(text)
    if not trees:
        raise TreeSyntaxError("empty input", 0)
    if len(trees) > 1:
        raise TreeSyntaxError("trailing input after tree", trees[1][1])
    return trees[0][0]


def to_text(t: RootedTree) -> str:
    return t.text


def parse_forest(text: str) -> Forest:
    """Parse a forest: whitespace-separated trees, or ``1`` for the empty forest."""
    if text.strip() == "1":
        return UNIT
    trees = _parse_sequence(text)
    if not trees:
        raise TreeSyntaxError("empty forest must be written '1'", 0)
    return Forest(t for t, _ in trees)


def forest_to_text(u: Forest) -> str:
    return u.text


def tree_to_json(t: RootedTree) -> list:
    return [tree_to_json(c) for c in t.children]


def tree_from_json(obj: Any) -> RootedTree:
    if not isinstance(obj, list):
        raise ValueError(f"tree JSON must be an array, got {type(obj).__name__}")
    return RootedTree(tree_from_json(c) for c in obj)


def forest_to_json(u: Forest) -> list:
    return [tree_to_json(t) for t in u.trees]


def forest_from_json(obj: Any) -> Forest:
    if not isinstance(obj, list):
        raise ValueError("forest JSON must be an array of trees")
    return Forest(tree_from_json(t) for t in obj)


# -- counting and enumeration -------------------------------------------------

def tree_counts(n: int) -> list[int]:
    """``[T_0, ..., T_n]`` from the product formula prod_m (1 - x^m)^(-T_{m-1})."""
    series = [1] + [0] * n
    for m in range(1, n + 1):
        exponent = series[m - 1]  # final: later factors only touch x^m and up
        new = series[:]
        for i in range(m, n + 1):
            # multiply by sum_j C(exponent + j - 1, j) x^(m j)
            acc = 0
            for j in range(1, i // m + 1):
                acc += math.comb(exponent + j - 1, j) * series[i - m * j]
            new[i] = series[i] + acc
        series = new
    return series


def _check_cap(n: int) -> None:
    if n < 0:
        raise ValueError("grade must be nonnegative")
    count = tree_counts(n)[n]
    if count > ENUMERATION_CAP:
        raise ResourceLimitError(
            f"grade {n} has {count} trees/forests, above the cap of {ENUMERATION_CAP}")


@lru_cache(maxsize=None)
def _trees_with_size(size: int) -> tuple[RootedTree, ...]:
    return tuple(sorted(RootedTree(u) for u in _forests_of_degree(size - 1)))


@lru_cache(maxsize=None)
def _trees_up_to(size: int) -> tuple[RootedTree, ...]:
    out: list[RootedTree] = []
    for s in range(1, size + 1):
        out.extend(_trees_with_size(s))
    return tuple(out)


@lru_cache(maxsize=None)
def _multisets(total: int, start: int, pool_size: int) -> tuple[tuple[RootedTree, ...], ...]:
    # multisets of trees drawn from pool[start:] with sizes summing to total
    if total == 0:
        return ((),)
    pool = _trees_up_to(pool_size)
    out = []
    for i in range(start, len(pool)):
        t = pool[i]
        if t.size > total:
            break
        for rest in _multisets(total - t.size, i, pool_size):
            out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _forests_of_degree(d: int) -> tuple[Forest, ...]:
    if d == 0:
        return (UNIT,)
    return tuple(sorted(Forest(ms) for ms in _multisets(d, 0, d)))


def enumerate_trees(n: int) -> list[RootedTree]:
    """All trees with ``n + 1`` vertices, each once, in canonical order."""
    _check_cap(n)
    return list(_trees_with_size(n + 1))


def enumerate_forests(d: int) -> list[Forest]:
    """All forests of total degree ``d``, each once, in canonical order."""
    _check_cap(d)
    return list(_forests_of_degree(d))


def trees_up_to_size(size: int) -> list[RootedTree]:
    """All trees with at most ``size`` vertices."""
    _check_cap(max(size - 1, 0))
    return list(_trees_up_to(size))


def symmetry_order(t: RootedTree) -> int:
    return t.symmetry_order


def labelling_count(t: RootedTree) -> int:
    """Number of decreasing labellings of ``t`` (hook-length formula)."""
    return math.factorial(t.size) // t.tree_factorial


def cm_weight(t: RootedTree) -> int:
    """Connes-Moscovici weight: labellings modulo the symmetry group."""
    q, r = divmod(labelling_count(t), t.symmetry_order)
    if r:
        raise ConsistencyError(f"|SG| does not divide the labelling count of {t.text}")
    return q


# -- structural edits used by the operators ----------------------------------

@lru_cache(maxsize=None)
def graft_each_vertex(t: RootedTree, s: RootedTree) -> tuple[RootedTree, ...]:
    """Attach ``s`` by a new edge to each vertex of ``t`` (canonical preorder)."""
    out = [RootedTree(t.children + (s,))]
    kids = t.children
    for i, c in enumerate(kids):
        rest = kids[:i] + kids[i + 1:]
        for r in graft_each_vertex(c, s):
            out.append(RootedTree(rest + (r,)))
    return tuple(out)


@lru_cache(maxsize=None)
def remove_each_leaf(t: RootedTree) -> tuple[RootedTree, ...]:
    """Delete each terminal edge of ``t`` in turn; empty for the bullet."""
    out = []
    kids = t.children
    for i, c in enumerate(kids):
        rest = kids[:i] + kids[i + 1:]
        if c.size == 1:
            out.append(RootedTree(rest))
        else:
            for r in remove_each_leaf(c):
                out.append(RootedTree(rest + (r,)))
    return tuple(out)


@lru_cache(maxsize=None)
def elementary_cuts(t: RootedTree) -> tuple[tuple[RootedTree, RootedTree], ...]:
    """``(pruned, root part)`` for each single-edge cut of ``t``."""
    out = []
    kids = t.children
    for i, c in enumerate(kids):
        rest = kids[:i] + kids[i + 1:]
        out.append((c, RootedTree(rest)))
        for p, r in elementary_cuts(c):
            out.append((p, RootedTree(rest + (r,))))
    return tuple(out)


@lru_cache(maxsize=None)
def preorder(t: RootedTree) -> tuple[tuple[RootedTree, ...], tuple[int, ...]]:
    """Vertices of ``t`` in canonical preorder, as (subtrees, parent indices).

    The root has parent ``-1``.  This fixes the vertex and edge numbering
    used by cuts and grafting maps; an edge is named by its child vertex.
    """
    subtrees: list[RootedTree] = []
    parents: list[int] = []

    def walk(node: RootedTree, parent: int) -> None:
        me = len(subtrees)
        subtrees.append(node)
        parents.append(parent)
        for c in node.children:
            walk(c, me)

    walk(t, -1)
    return tuple(subtrees), tuple(parents)


def from_children(children: Sequence[Sequence[int]], root: int,
                  extra: dict[int, Sequence[RootedTree]] | None = None) -> RootedTree:
    """Build a canonical tree from explicit child lists, rooted at ``root``.

    ``extra`` optionally maps a vertex to additional subtrees hung below it.
    """
    def build(v: int) -> RootedTree:
        kids = [build(c) for c in children[v]]
        if extra and v in extra:
            kids.extend(extra[v])
        return RootedTree(kids)

    return build(root)
