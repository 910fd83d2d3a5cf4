"""The Grossman-Larson Hopf algebra on the vector space of rooted trees.

``t ∘ t'`` attaches each branch of ``t`` (the trees of B-(t)) to some
vertex of ``t'`` in every possible way and sums the results.  The coproduct
splits the branches of a tree into two complementary sets.  ``chi`` maps
this algebra isomorphically onto the graded dual of the Kreimer algebra,
sending a tree t to |SG(t)| Z_{B-(t)}.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegreeMismatchError
from .kreimer import DualElem, d_bullet, dual_product, z
from .linspace import LinComb, Tensor, apply_linear, as_lincomb, inner_forest
from .operators import grow, prune
from .trees import (Forest, RootedTree, b_minus, b_plus, elementary_cuts, enumerate_forests,
                    enumerate_trees, from_children, graft_each_vertex, preorder)


@lru_cache(maxsize=None)
def gl_product(t: RootedTree, tp: RootedTree) -> LinComb[RootedTree]:
    """``t ∘ tp``: sum over all |tp|^k ways of hanging the k branches of t on tp."""
    branches = t.children
    if not branches:
        return LinComb({tp: 1})
    _, parents = preorder(tp)
    kids: list[list[int]] = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p >= 0:
            kids[p].append(v)
    counts: Counter = Counter()
    for targets in itertools.product(range(len(parents)), repeat=len(branches)):
        extra: dict[int, list[RootedTree]] = {}
        for b, v in zip(branches, targets):
            extra.setdefault(v, []).append(b)
        counts[from_children(kids, 0, extra)] += 1
    return LinComb(counts)


def gl_mul(x, y) -> LinComb[RootedTree]:
    """Bilinear extension of ``gl_product``."""
    x, y = as_lincomb(x), as_lincomb(y)
    acc: dict = {}
    for a, ca in x.as_dict().items():
        for b, cb in y.as_dict().items():
            for t, c in gl_product(a, b).as_dict().items():
                acc[t] = acc.get(t, 0) + ca * cb * c
    return LinComb._wrap(acc)


@lru_cache(maxsize=None)
def gl_coproduct(t: RootedTree) -> LinComb:
    """Sum over complementary (I, J) of B+(t_I) ⊗ B+(t_J)."""
    branches = t.children
    k = len(branches)
    acc: Counter = Counter()
    for mask in range(1 << k):
        left = [b for i, b in enumerate(branches) if mask >> i & 1]
        right = [b for i, b in enumerate(branches) if not mask >> i & 1]
        acc[Tensor(RootedTree(left), RootedTree(right))] += 1
    return LinComb(acc)


def gl_coproduct_lin(x) -> LinComb:
    return apply_linear(gl_coproduct, as_lincomb(x))


def gl_tensor_mul(x: LinComb, y: LinComb) -> LinComb:
    """Factor-wise product on the tensor square: (a ⊗ b) ∘ (c ⊗ d) = (a∘c) ⊗ (b∘d)."""
    acc: dict = {}
    for s, cs in x.as_dict().items():
        for t, ct in y.as_dict().items():
            left = gl_product(s.left, t.left)
            right = gl_product(s.right, t.right)
            for a, ca in left.as_dict().items():
                for b, cb in right.as_dict().items():
                    k = Tensor(a, b)
                    acc[k] = acc.get(k, 0) + cs * ct * ca * cb
    return LinComb._wrap(acc)


def primitive_basis(n: int) -> list[RootedTree]:
    """Primitive trees of grade n: B+(t) for every t with |t| = n."""
    if n < 1:
        return []
    return [RootedTree([t]) for t in enumerate_trees(n - 1)]


def _check_sizes(t1: RootedTree, t2: RootedTree, t3: RootedTree) -> None:
    if t1.size + t2.size != t3.size:
        raise DegreeMismatchError(f"need |t1| + |t2| = |t3|, got {t1.size} + {t2.size} != {t3.size}")


def triple_m(t1: RootedTree, t2: RootedTree, t3: RootedTree) -> int:
    """Number of single-edge cuts of t3 with pruned part t1 and root part t2."""
    _check_sizes(t1, t2, t3)
    return sum(1 for p, r in elementary_cuts(t3) if p is t1 and r is t2)


def triple_n(t1: RootedTree, t2: RootedTree, t3: RootedTree) -> int:
    """Number of vertices of t2 at which hanging t1 gives t3."""
    _check_sizes(t1, t2, t3)
    return sum(1 for s in graft_each_vertex(t2, t1) if s is t3)


# -- the isomorphism onto the graded dual ----------------------------------------

def chi(x) -> DualElem:
    """χ(t) = |SG(t)| Z_{B-(t)}, extended linearly."""
    x = as_lincomb(x)
    return DualElem._wrap({b_minus(t): c * t.symmetry_order for t, c in x.as_dict().items()})


def chi_by_pairing(t: RootedTree) -> DualElem:
    """χ(t) from its defining pairing <χ(t), u> = (B-(t), u) over all forests u."""
    bt = b_minus(t)
    return DualElem({u: inner_forest(bt, u) for u in enumerate_forests(bt.degree)})


def chi_inverse(w: DualElem) -> LinComb[RootedTree]:
    """Z_u ↦ B+(u) / |SG(B+(u))|."""
    acc: dict = {}
    for u, c in w.as_dict().items():
        t = b_plus(u)
        acc[t] = acc.get(t, 0) + Fraction(c) / t.symmetry_order
    return LinComb._wrap(acc)


def naive_map(w: DualElem) -> LinComb[RootedTree]:
    """Z_t ↦ B+(t) on single-tree basis elements (the uncorrected identification)."""
    acc: dict = {}
    for u, c in w.as_dict().items():
        if len(u) != 1:
            raise ValueError(f"naive map is defined on Z_t for trees t, got Z({u.text})")
        t = RootedTree([u.trees[0]])
        acc[t] = acc.get(t, 0) + c
    return LinComb._wrap(acc)


def n_star_via_gl(t: RootedTree) -> LinComb[RootedTree]:
    """prune(t) - B+(∂/∂• B-(t))."""
    correction = apply_linear(lambda u: LinComb({b_plus(u): 1}), d_bullet(b_minus(t)))
    return prune(t) - correction


def p_star_via_gl(t: RootedTree) -> LinComb[RootedTree]:
    """grow(t), which equals B+(•) ∘ t."""
    return grow(t)


@dataclass(frozen=True)
class PanaiteReport:
    """Both brackets of a pair of trees and how the two identifications treat them."""

    t1: RootedTree
    t2: RootedTree
    z_bracket: DualElem          # [Z_t1, Z_t2] in the graded dual
    z_expansion: DualElem        # sum of (m(t1,t2;t3) - m(t2,t1;t3)) Z_t3
    gl_bracket: LinComb          # B+(t1)∘B+(t2) - B+(t2)∘B+(t1)
    gl_expansion: LinComb        # sum of (n(t1,t2;t3) - n(t2,t1;t3)) B+(t3)
    naive_image: LinComb         # z_bracket under Z_t ↦ B+(t)
    chi_image: DualElem          # χ(gl_bracket)

    @property
    def lhs(self) -> LinComb:
        return self.naive_image

    @property
    def rhs(self) -> LinComb:
        return self.gl_bracket

    @property
    def expansions_hold(self) -> bool:
        return self.z_bracket == self.z_expansion and self.gl_bracket == self.gl_expansion

    @property
    def naive_identifies(self) -> bool:
        return self.naive_image == self.gl_bracket

    @property
    def chi_intertwines(self) -> bool:
        scale = self.t1.symmetry_order * self.t2.symmetry_order
        return self.chi_image == self.z_bracket * scale


def panaite_bracket_check(t1: RootedTree, t2: RootedTree) -> PanaiteReport:
    z1, z2 = z(t1), z(t2)
    z_bracket = dual_product(z1, z2) - dual_product(z2, z1)
    p1, p2 = RootedTree([t1]), RootedTree([t2])
    gl_bracket = gl_product(p1, p2) - gl_product(p2, p1)
    size = t1.size + t2.size
    z_terms: dict = {}
    gl_terms: dict = {}
    for t3 in enumerate_trees(size - 1):
        dm = triple_m(t1, t2, t3) - triple_m(t2, t1, t3)
        dn = triple_n(t1, t2, t3) - triple_n(t2, t1, t3)
        if dm:
            z_terms[Forest([t3])] = dm
        if dn:
            gl_terms[RootedTree([t3])] = dn
    return PanaiteReport(
        t1=t1, t2=t2,
        z_bracket=z_bracket, z_expansion=DualElem(z_terms),
        gl_bracket=gl_bracket, gl_expansion=LinComb(gl_terms),
        naive_image=naive_map(z_bracket), chi_image=chi(gl_bracket),
    )


def find_panaite_witness(max_total_size: int = 5) -> PanaiteReport | None:
    """First pair (by total size, then canonical order) where Z_t ↦ B+(t) fails."""
    for total in range(2, max_total_size + 1):
        for s1 in range(1, total):
            for t1 in enumerate_trees(s1 - 1):
                for t2 in enumerate_trees(total - s1 - 1):
                    report = panaite_bracket_check(t1, t2)
                    if not report.naive_identifies:
                        return report
    return None
