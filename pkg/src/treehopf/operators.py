"""Growth and pruning on the vector space of rooted trees.

``grow`` adds a terminal edge at every vertex, ``prune`` deletes every
terminal edge; equal results are merged and the merge counts are the
covering multiplicities n(t; t') and m(t; t').  Iterating gives the k-step
multiplicities.  Words in the two operators act right to left.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ArgumentOrderError, InvalidWordError, ResourceLimitError
from .linspace import LinComb, apply_linear, as_lincomb, inner_tree
from .trees import (BULLET, RootedTree, cm_weight, enumerate_trees, graft_each_vertex,
                    labelling_count, remove_each_leaf)

#: Largest k accepted by ``involution_sum``.
INVOLUTION_MAX = 12


@lru_cache(maxsize=None)
def grow(t: RootedTree) -> LinComb[RootedTree]:
    """Sum over covers t ⊲ t' of n(t; t') t'."""
    return LinComb(Counter(graft_each_vertex(t, BULLET)))


@lru_cache(maxsize=None)
def prune(t: RootedTree) -> LinComb[RootedTree]:
    """Sum over covers t' ⊲ t of m(t'; t) t'.  Zero on the bullet."""
    return LinComb(Counter(remove_each_leaf(t)))


def grade_op(t: RootedTree) -> LinComb[RootedTree]:
    """Multiply a tree by its vertex count."""
    return LinComb({t: t.size})


def grow_lin(x: LinComb[RootedTree]) -> LinComb[RootedTree]:
    return apply_linear(grow, as_lincomb(x))


def prune_lin(x: LinComb[RootedTree]) -> LinComb[RootedTree]:
    return apply_linear(prune, as_lincomb(x))


@lru_cache(maxsize=None)
def grow_power(t: RootedTree, k: int) -> LinComb[RootedTree]:
    if k == 0:
        return LinComb({t: 1})
    return grow_lin(grow_power(t, k - 1))


@lru_cache(maxsize=None)
def prune_power(t: RootedTree, k: int) -> LinComb[RootedTree]:
    if k == 0:
        return LinComb({t: 1})
    return prune_lin(prune_power(t, k - 1))


def _steps(t: RootedTree, tp: RootedTree) -> int:
    if t.size > tp.size:
        raise ArgumentOrderError(f"need |t| <= |t'|, got {t.size} > {tp.size}")
    return tp.size - t.size


def n_mult(t: RootedTree, tp: RootedTree) -> int:
    """Coefficient of ``tp`` in grow^(|tp|-|t|)(t)."""
    return grow_power(t, _steps(t, tp))[tp]


def m_mult(t: RootedTree, tp: RootedTree) -> int:
    """Coefficient of ``t`` in prune^(|tp|-|t|)(tp)."""
    return prune_power(tp, _steps(t, tp))[t]


@dataclass(frozen=True)
class WordNP:
    """A word ``w1 w2 ... wr`` in N (grow) and P (prune); ``wr`` acts first."""

    letters: str

    def __post_init__(self):
        bad = set(self.letters) - {"N", "P"}
        if bad:
            raise InvalidWordError(f"word letters must be N or P, got {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def net(self) -> int:
        return self.letters.count("N") - self.letters.count("P")

    def is_valid(self, grade: int) -> bool:
        """True when every suffix has no more P than N and N - P equals ``grade``."""
        balance = 0
        for ch in reversed(self.letters):
            balance += 1 if ch == "N" else -1
            if balance < 0:
                return False
        return balance == grade

    def __str__(self) -> str:
        return self.letters


def apply_word(w: WordNP | str, x: LinComb[RootedTree] | RootedTree) -> LinComb[RootedTree]:
    w = WordNP(w) if isinstance(w, str) else w
    y = as_lincomb(x)
    for ch in reversed(w.letters):
        y = grow_lin(y) if ch == "N" else prune_lin(y)
    return y


def stanley_word_value(w: WordNP | str, x: RootedTree) -> int:
    """Closed form of ``(w •, x)`` for a valid x-word.

    For each P at position i: a_i counts P's at positions >= i, b_i counts
    N's at positions > i, and the factor is C(b_i - a_i + 2, 2).
    """
    w = WordNP(w) if isinstance(w, str) else w
    if not w.is_valid(x.grade):
        raise InvalidWordError(f"{w} is not a valid word for a tree of grade {x.grade}")
    letters = w.letters
    value = labelling_count(x)
    for i, ch in enumerate(letters):
        if ch != "P":
            continue
        a = letters[i:].count("P")
        b = letters[i + 1:].count("N")
        value *= math.comb(b - a + 2, 2)
    return value


def word_inner_product(w: WordNP | str, x: RootedTree):
    """``(w •, x)`` computed by applying the operators."""
    return inner_tree(apply_word(w, BULLET), x)


def binomial_sum_check(x: RootedTree, a: int) -> tuple[int, int]:
    """Both sides of sum_{|t|=k+a+1} m(x;t) n(•;t) = n(•;x) prod_{i=2}^{a+1} C(k+i, 2)."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    k = x.grade
    lhs = sum(m_mult(x, t) * cm_weight(t) for t in enumerate_trees(k + a))
    rhs = cm_weight(x)
    for i in range(2, a + 2):
        rhs *= math.comb(k + i, 2)
    return lhs, rhs


def involutions(k: int) -> Iterator[tuple[int, ...]]:
    """Involutions of {1..k} in one-line notation (1-based values)."""
    def rec(perm: list[int], free: list[int]) -> Iterator[tuple[int, ...]]:
        if not free:
            yield tuple(perm)
            return
        i = free[0]
        rest = free[1:]
        perm[i] = i
        yield from rec(perm, rest)
        for j in rest:
            perm[i], perm[j] = j, i
            yield from rec(perm, [f for f in rest if f != j])
        perm[i] = 0

    yield from (tuple(v + 1 for v in p) for p in rec([0] * k, list(range(k))))


def involution_sum(k: int) -> int:
    """Sum over involutions s of prod over weak excedances i of (eta(s, i) + 1).

    eta(s, i) counts j < i with s(j) < s(i).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > INVOLUTION_MAX:
        raise ResourceLimitError(f"involution_sum is limited to k <= {INVOLUTION_MAX}")
    total = 0
    for s in involutions(k):
        term = 1
        for i in range(k):
            if s[i] >= i + 1:
                eta = sum(1 for j in range(i) if s[j] < s[i])
                term *= eta + 1
        total += term
    return total
