"""Kreimer's Hopf algebra of forests and its graded dual.

Elements are ``LinComb[Forest]``: the product is disjoint union of forests,
the coproduct comes from admissible cuts (or the grafting recursion), and
N, P, D are the derivations extending grow, prune and vertex count, with
the convention P(•) = 1.

The graded dual uses the same forest-indexed basis, read as the functionals
Z_u with <Z_u, v> = δ(u, v); its product is the transpose of the coproduct.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .errors import ResourceLimitError
from .linalg import char_poly, matrix_of, poly_from_roots, rank
from .linspace import LinComb, Tensor, apply_linear
from .operators import grow, prune
from .trees import (BULLET, UNIT, Forest, RootedTree, b_minus, b_plus, enumerate_forests,
                    from_children, preorder, tree_counts)

__all__ = [
    "DualElem", "Cut", "b_plus", "b_minus", "product", "coproduct_recursive", "coproduct_cuts",
    "admissible_cuts", "all_cuts", "counit", "derivation_N", "derivation_P", "derivation_D",
    "m_bullet", "d_bullet", "pn_matrix", "char_poly", "pn_char_poly_predicted",
    "pn_rank_checks", "naturally_grown", "z", "pairing", "dual_product", "dual_N_star", "dual_P_star",
    "dual_d_bullet", "n_star_closed", "p_star_closed",
]

#: Largest degree accepted by ``pn_matrix`` (T_9 = 719 rows).
PN_MAX = 9

BULLET_FOREST = Forest([BULLET])


def forest(x) -> Forest:
    """Coerce a tree or forest to a forest."""
    return Forest([x]) if isinstance(x, RootedTree) else x


def forests(x) -> LinComb[Forest]:
    """Coerce a tree, forest, or combination of either to a combination of forests."""
    if isinstance(x, LinComb):
        return LinComb._wrap({forest(b): c for b, c in x.as_dict().items()})
    return LinComb({forest(x): 1})


def _single_trees(x: LinComb[RootedTree]) -> LinComb[Forest]:
    return LinComb._wrap({Forest([t]): c for t, c in x.as_dict().items()})


class DualElem(LinComb[Forest]):
    """Element of the graded dual, as coefficients on the basis Z_u."""

    __slots__ = ()


def z(u) -> DualElem:
    """The dual basis element Z_u (``u`` a forest or a tree)."""
    return DualElem({forest(u): 1})


def pairing(w: DualElem, x) -> Fraction | int:
    """<w, x> with <Z_u, v> = δ(u, v) on forests."""
    x = forests(x)
    total = 0
    for u, c in w.as_dict().items():
        total += c * x[u]
    return total


# -- algebra ------------------------------------------------------------------

def product(x, y) -> LinComb[Forest]:
    x, y = forests(x), forests(y)
    acc: dict = {}
    for a, ca in x.as_dict().items():
        for b, cb in y.as_dict().items():
            k = a * b
            acc[k] = acc.get(k, 0) + ca * cb
    return LinComb._wrap(acc)


def counit(x) -> Fraction | int:
    return forests(x)[UNIT]


def tensor_product(x: LinComb, y: LinComb) -> LinComb:
    """Product in the tensor square: (a ⊗ b)(c ⊗ d) = ac ⊗ bd."""
    acc: dict = {}
    for s, cs in x.as_dict().items():
        for t, ct in y.as_dict().items():
            k = Tensor(s.left * t.left, s.right * t.right)
            acc[k] = acc.get(k, 0) + cs * ct
    return LinComb._wrap(acc)


@lru_cache(maxsize=None)
def _coproduct_tree(t: RootedTree) -> LinComb:
    # Δ(t) = t ⊗ 1 + (id ⊗ B+) Δ(B-(t))
    acc: dict = {Tensor(Forest([t]), UNIT): 1}
    for s, c in _coproduct_forest(b_minus(t)).as_dict().items():
        k = Tensor(s.left, Forest([b_plus(s.right)]))
        acc[k] = acc.get(k, 0) + c
    return LinComb._wrap(acc)


@lru_cache(maxsize=None)
def _coproduct_forest(u: Forest) -> LinComb:
    out = LinComb({Tensor(UNIT, UNIT): 1})
    for t in u.trees:
        out = tensor_product(out, _coproduct_tree(t))
    return out


def coproduct_recursive(x) -> LinComb:
    """Coproduct of a forest combination, by the grafting recursion."""
    return apply_linear(_coproduct_forest, forests(x))


@dataclass(frozen=True)
class Cut:
    """A set of edges of ``tree``; an edge is named by the preorder index of its child vertex."""

    tree: RootedTree
    edges: frozenset[int]

    def _children(self) -> list[list[int]]:
        _, parents = preorder(self.tree)
        kids: list[list[int]] = [[] for _ in parents]
        for v, p in enumerate(parents):
            if p >= 0 and v not in self.edges:
                kids[p].append(v)
        return kids

    @property
    def order(self) -> int:
        """Largest number of cut edges on a path from the root to a terminal vertex."""
        _, parents = preorder(self.tree)
        depth = [0] * len(parents)
        for v in range(1, len(parents)):
            depth[v] = depth[parents[v]] + (v in self.edges)
        return max(depth)

    @property
    def is_admissible(self) -> bool:
        return self.order <= 1

    def root_part(self) -> RootedTree:
        return from_children(self._children(), 0)

    def pruned(self) -> Forest:
        kids = self._children()
        return Forest(from_children(kids, v) for v in sorted(self.edges))


def all_cuts(t: RootedTree) -> Iterator[Cut]:
    n = t.size
    for mask in range(1 << (n - 1)):
        yield Cut(t, frozenset(v for v in range(1, n) if mask >> (v - 1) & 1))


def admissible_cuts(t: RootedTree) -> list[Cut]:
    """All cuts of order at most one, the empty cut included."""
    _, parents = preorder(t)
    kids: list[list[int]] = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p >= 0:
            kids[p].append(v)

    def below(v: int) -> list[frozenset[int]]:
        # antichains of edges strictly below v
        options = [frozenset()]
        for c in kids[v]:
            here = [frozenset([c])] + below(c)
            options = [a | b for a in options for b in here]
        return options

    return [Cut(t, e) for e in below(0)]


@lru_cache(maxsize=None)
def coproduct_cuts(t: RootedTree) -> LinComb:
    """t ⊗ 1 + sum over admissible cuts C of P^C(t) ⊗ R^C(t)."""
    acc: dict = {Tensor(Forest([t]), UNIT): 1}
    for cut in admissible_cuts(t):
        k = Tensor(cut.pruned(), Forest([cut.root_part()]))
        acc[k] = acc.get(k, 0) + 1
    return LinComb._wrap(acc)


# -- derivations --------------------------------------------------------------

def _derivation(u: Forest, on_tree: Callable[[RootedTree], LinComb]) -> LinComb:
    acc: dict = {}
    for t, mult in u.distinct():
        rest = u.without(t)
        for s, c in on_tree(t).as_dict().items():
            k = rest * s
            acc[k] = acc.get(k, 0) + mult * c
    return LinComb._wrap(acc)


@lru_cache(maxsize=None)
def _n_tree(t: RootedTree) -> LinComb:
    return _single_trees(grow(t))


@lru_cache(maxsize=None)
def _p_tree(t: RootedTree) -> LinComb:
    if t.size == 1:
        return LinComb({UNIT: 1})
    return _single_trees(prune(t))


@lru_cache(maxsize=None)
def _n_forest(u: Forest) -> LinComb:
    return _derivation(u, _n_tree)


@lru_cache(maxsize=None)
def _p_forest(u: Forest) -> LinComb:
    return _derivation(u, _p_tree)


def derivation_N(x) -> LinComb[Forest]:
    """Growth extended as a derivation."""
    return apply_linear(_n_forest, forests(x))


def derivation_P(x) -> LinComb[Forest]:
    """Pruning extended as a derivation, with P(•) = 1."""
    return apply_linear(_p_forest, forests(x))


def derivation_D(x) -> LinComb[Forest]:
    """Multiply each forest by its degree."""
    x = forests(x)
    return LinComb._wrap({u: c * u.degree for u, c in x.as_dict().items()})


def m_bullet(x) -> LinComb[Forest]:
    """Multiply by the one-vertex tree."""
    x = forests(x)
    return LinComb._wrap({u * BULLET_FOREST: c for u, c in x.as_dict().items()})


def d_bullet(x) -> LinComb[Forest]:
    """Formal partial derivative with respect to the generator •."""
    x = forests(x)
    acc: dict = {}
    for u, c in x.as_dict().items():
        k = u.count(BULLET)
        if k:
            v = u.without(BULLET)
            acc[v] = acc.get(v, 0) + k * c
    return LinComb._wrap(acc)


# -- spectrum of PN -----------------------------------------------------------

def pn_matrix(k: int) -> list[list[int]]:
    """Matrix of P∘N on degree-k forests; entry [i][j] is the coefficient of
    basis[i] in PN(basis[j]), with basis = ``enumerate_forests(k)``."""
    if k < 1:
        raise ValueError("degree must be positive")
    if k > PN_MAX:
        raise ResourceLimitError(f"pn_matrix is limited to degree <= {PN_MAX}")
    basis = enumerate_forests(k)
    return matrix_of(lambda u: derivation_P(derivation_N(u)), basis, basis)


def pn_char_poly_predicted(k: int) -> list[Fraction]:
    """(x - C(k+1,2)) * prod_{r<k} (x - sum_{j<=r} (k-j))^(T_{k-r} - T_{k-r-1})."""
    T = tree_counts(k)
    roots: dict[int, int] = defaultdict(int)
    roots[math.comb(k + 1, 2)] += 1
    for r in range(k):
        e = T[k - r] - T[k - r - 1]
        if e:
            roots[sum(k - j for j in range(r + 1))] += e
    return poly_from_roots(dict(roots))


def pn_rank_checks(k: int) -> tuple[bool, bool]:
    """(N injective on degree k, P surjective from degree k onto degree k-1)."""
    src = enumerate_forests(k)
    up = enumerate_forests(k + 1)
    down = enumerate_forests(k - 1)
    n_mat = matrix_of(derivation_N, src, up)
    p_mat = matrix_of(derivation_P, src, down)
    return rank(n_mat) == len(src), rank(p_mat) == len(down)


def naturally_grown(k: int) -> LinComb[Forest]:
    """f_k = N^(k-1)(•)."""
    if k < 1:
        raise ValueError("k must be positive")
    x = forests(BULLET)
    for _ in range(k - 1):
        x = derivation_N(x)
    return x


# -- graded dual --------------------------------------------------------------

_transpose_cache: dict = {}


def _transpose_table(name: str, op: Callable, source_degree: int) -> dict:
    key = (name, source_degree)
    table = _transpose_cache.get(key)
    if table is None:
        table = defaultdict(list)
        for u in enumerate_forests(source_degree):
            for v, c in op(u).as_dict().items():
                table[v].append((u, c))
        _transpose_cache[key] = table = dict(table)
    return table


def _transpose(name: str, op: Callable, shift: int, w: DualElem) -> DualElem:
    # <op^T w, u> = <w, op(u)>, op raising degree by ``shift``
    acc: dict = {}
    for v, c in w.as_dict().items():
        src = v.degree - shift
        if src < 0:
            continue
        for u, d in _transpose_table(name, op, src).get(v, ()):
            acc[u] = acc.get(u, 0) + c * d
    return DualElem._wrap(acc)


def _coproduct_table(degree: int) -> dict:
    key = ("coproduct", degree)
    table = _transpose_cache.get(key)
    if table is None:
        table = defaultdict(list)
        for u in enumerate_forests(degree):
            for s, c in _coproduct_forest(u).as_dict().items():
                table[(s.left, s.right)].append((u, c))
        _transpose_cache[key] = table = dict(table)
    return table


def dual_product(w: DualElem, v: DualElem) -> DualElem:
    """Product on the dual: <w v, u> = <w ⊗ v, Δu>."""
    acc: dict = {}
    for a, ca in w.as_dict().items():
        for b, cb in v.as_dict().items():
            for u, c in _coproduct_table(a.degree + b.degree).get((a, b), ()):
                acc[u] = acc.get(u, 0) + ca * cb * c
    return DualElem._wrap(acc)


def dual_N_star(w: DualElem) -> DualElem:
    """Transpose of N."""
    return _transpose("N", derivation_N, 1, w)


def dual_P_star(w: DualElem) -> DualElem:
    """Transpose of P."""
    return _transpose("P", derivation_P, -1, w)


def dual_d_bullet(w: DualElem) -> DualElem:
    """Transpose of multiplication by •: Z_u ↦ Z_{u/•} when u contains •."""
    acc: dict = {}
    for u, c in w.as_dict().items():
        if u.count(BULLET):
            v = u.without(BULLET)
            acc[v] = acc.get(v, 0) + c
    return DualElem._wrap(acc)


def dual_degree(w: DualElem) -> DualElem:
    return DualElem._wrap({u: c * u.degree for u, c in w.as_dict().items()})


@lru_cache(maxsize=None)
def _n_star_closed_basis(u: Forest) -> DualElem:
    if not u:
        return DualElem()
    if len(u) == 1:
        t = u.trees[0]
        if t.size == 1:
            return DualElem()
        # N*(Z_t) = sum over covers t' ⊲ t of n(t'; t) Z_t'
        acc: dict = {}
        for tp in set(_prune_support(t)):
            acc[Forest([tp])] = grow(tp)[t]
        return DualElem._wrap(acc)
    # Z_t Z_rest = c Z_u + (terms Z_v with fewer trees); solve for N*(Z_u).
    t = u.trees[0]
    rest = u.without(t)
    zt, zr = z(Forest([t])), z(rest)
    nt, nr = _n_star_closed_basis(Forest([t])), _n_star_closed_basis(rest)
    lhs = (dual_product(nt, zr) + dual_product(zt, nr)
           + dual_product(dual_d_bullet(zt), dual_degree(zr)))
    expansion = dual_product(zt, zr)
    lead = expansion[u]
    for v, c in expansion.as_dict().items():
        if v != u:
            lhs = lhs - _n_star_closed_basis(v) * c
    return DualElem._wrap((lhs / lead).as_dict())


def _prune_support(t: RootedTree):
    return prune(t).support()


def n_star_closed(w: DualElem) -> DualElem:
    """N* from its value on single trees and the twisted Leibniz rule
    N*(wv) = (N*w)v + w(N*v) + (∂w/∂Z_•)|v|v."""
    return apply_linear(_n_star_closed_basis, w, DualElem)


def p_star_closed(w: DualElem) -> DualElem:
    """P*(w) = Z_• w."""
    return dual_product(z(BULLET), w)
