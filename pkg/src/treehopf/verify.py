"""Exhaustive identity checks behind ``treehopf verify``.

Each identity is a generator of cases ``(inputs, lhs, rhs)`` for a degree
bound; a case fails when the two sides differ.  ``inputs`` are element texts
that ``treehopf apply`` accepts, so every counterexample can be replayed.

What the bound means depends on the identity (see ``Identity.bound``).
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from . import grossman_larson as gl
from . import kreimer as k
from .linalg import char_poly, matrix_of, rank
from .linspace import LinComb, Tensor, apply_linear, inner_forest, inner_tree, tensor_map
from .operators import (binomial_sum_check, grow, grow_lin, involution_sum, m_mult, n_mult, prune,
                        prune_lin, stanley_word_value, word_inner_product, WordNP)
from .trees import (BULLET, Forest, RootedTree, b_plus, cm_weight, enumerate_forests,
                    enumerate_trees, labelling_count, parse, preorder, remove_each_leaf, tree_counts,
                    trees_up_to_size)

Case = tuple[tuple[str, ...], Any, Any]

#: Failures kept in a report; the total is always counted.
MAX_FAILURES_SHOWN = 25


@dataclass
class VerifyReport:
    identity: str
    max_degree: int
    checked: int = 0
    failed: int = 0
    failures: list[dict] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self, timing: bool = False) -> dict:
        out = {"identity": self.identity, "max_degree": self.max_degree, "checked": self.checked,
               "failed": self.failed, "failures": self.failures}
        if timing and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out


@dataclass(frozen=True)
class Identity:
    name: str
    statement: str
    bound: str
    cases: Callable[[int], Iterable[Case]]


def _show(x: Any) -> str:
    if isinstance(x, LinComb):
        return x.text
    if isinstance(x, (RootedTree, Forest)):
        return x.text
    return str(x)


def _forest_text(u: Forest) -> str:
    return u.text


def _trees(max_size: int) -> list[RootedTree]:
    return trees_up_to_size(max_size) if max_size >= 1 else []


def _forests(max_degree: int) -> Iterator[Forest]:
    for d in range(max_degree + 1):
        yield from enumerate_forests(d)


# -- tree core ------------------------------------------------------------------

def _series_counts(n: int) -> list[int]:
    # coefficients of prod_{j>=1} (1 - x^j)^(-T_{j-1}), built degree by degree
    counts = [1]
    for m in range(1, n + 1):
        poly = [1] + [0] * m
        for j in range(1, m + 1):
            a = counts[j - 1]
            factor = [0] * (m + 1)
            for i in range(0, m // j + 1):
                factor[i * j] = math.comb(a + i - 1, i)
            poly = [sum(poly[s] * factor[r - s] for s in range(r + 1)) for r in range(m + 1)]
        counts.append(poly[m])
    return counts


def _cases_counts(d: int) -> Iterator[Case]:
    expected = _series_counts(d)
    for n in range(d + 1):
        yield (str(n),), (len(enumerate_trees(n)), len(enumerate_forests(n)), tree_counts(n)[n]), \
            (expected[n],) * 3


def _shuffled_text(t: RootedTree, salt: int) -> str:
    kids = [_shuffled_text(c, salt + i + 1) for i, c in enumerate(t.children)]
    if kids:
        r = salt % len(kids)
        kids = list(reversed(kids[r:] + kids[:r]))
    return "[" + "".join(kids) + "]"


def _cases_canonical(d: int) -> Iterator[Case]:
    for size in range(1, d + 1):
        ts = enumerate_trees(size - 1)
        yield (str(size - 1),), len(set(ts)), len(ts)
        for t in ts:
            for salt in range(3):
                yield (t.text,), parse(_shuffled_text(t, salt)), t


def _adjacency(t: RootedTree) -> tuple[int, list[int]]:
    _, parents = preorder(t)
    return len(parents), list(parents)


def _brute_labellings(t: RootedTree) -> int:
    n, parents = _adjacency(t)
    return sum(1 for lab in itertools.permutations(range(n))
               if all(p < 0 or lab[p] > lab[v] for v, p in enumerate(parents)))


def _brute_automorphisms(t: RootedTree) -> int:
    n, parents = _adjacency(t)
    edges = {(v, p) for v, p in enumerate(parents) if p >= 0}
    return sum(1 for s in itertools.permutations(range(n))
               if s[0] == 0 and all((s[v], s[p]) in edges for v, p in edges))


def _cases_labellings(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (t.text,), labelling_count(t), _brute_labellings(t)


def _cases_symmetry(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (t.text,), t.symmetry_order, _brute_automorphisms(t)


def _cases_bullet_weights(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (t.text,), m_mult(BULLET, t), t.symmetry_order * n_mult(BULLET, t)


def _cases_pairing(d: int) -> Iterator[Case]:
    for n in range(d + 1):
        fs = enumerate_forests(n)
        for u, v in itertools.product(fs, repeat=2):
            want = RootedTree(u.trees).symmetry_order if u == v else 0
            yield (u.text, v.text), inner_forest(u, v), want
        if n < d:
            for u in fs:
                for v in enumerate_forests(n + 1):
                    yield (u.text, v.text), inner_forest(u, v), 0


# -- growth and pruning ---------------------------------------------------------

def _cases_commutator(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (t.text,), prune_lin(grow(t)) - grow_lin(prune(t)), LinComb({t: t.size})


def _cases_adjoint(d: int) -> Iterator[Case]:
    for size in range(1, d):
        for t in enumerate_trees(size - 1):
            for tp in enumerate_trees(size):
                yield (t.text, tp.text), inner_tree(grow(t), tp), inner_tree(t, prune(tp))


def _cases_cover_balance(d: int) -> Iterator[Case]:
    for t in _trees(d):
        up = sum(c * m_mult(t, s) for s, c in grow(t).items())
        down = sum(c * n_mult(s, t) for s, c in prune(t).items())
        yield (t.text,), up - down, t.size


def _cases_symmetry_relation(d: int) -> Iterator[Case]:
    ts = _trees(d)
    for t in ts:
        for tp in ts:
            if t.size <= tp.size:
                yield (t.text, tp.text), t.symmetry_order * m_mult(t, tp), n_mult(t, tp) * tp.symmetry_order


def _cases_multiplicity_chain(d: int) -> Iterator[Case]:
    ts = _trees(d)
    for t in ts:
        for tp in ts:
            if t.size > tp.size:
                continue
            for mid in range(t.size, tp.size + 1):
                mids = enumerate_trees(mid - 1)
                yield (t.text, tp.text, f"n via {mid}"), n_mult(t, tp), \
                    sum(n_mult(t, s) * n_mult(s, tp) for s in mids)
                yield (t.text, tp.text, f"m via {mid}"), m_mult(t, tp), \
                    sum(m_mult(t, s) * m_mult(s, tp) for s in mids)


def _below(tp: RootedTree) -> set[RootedTree]:
    # every tree obtainable by deleting terminal vertices, as a plain set search
    seen = {tp}
    frontier = [tp]
    while frontier:
        nxt = []
        for s in frontier:
            for r in set(remove_each_leaf(s)):
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def _cases_order(d: int) -> Iterator[Case]:
    ts = _trees(d)
    for tp in ts:
        below = _below(tp)
        for t in ts:
            if t.size <= tp.size:
                yield (t.text, tp.text), (n_mult(t, tp) != 0, m_mult(t, tp) != 0), (t in below,) * 2


def _valid_words(length: int, grade: int) -> Iterator[str]:
    for letters in itertools.product("NP", repeat=length):
        w = WordNP("".join(letters))
        if w.is_valid(grade):
            yield w.letters


def _cases_word_formula(d: int) -> Iterator[Case]:
    for length in range(d + 1):
        for grade in range(length % 2, length + 1, 2):
            xs = enumerate_trees(grade)
            for w in _valid_words(length, grade):
                for x in xs:
                    yield (w, x.text), stanley_word_value(w, x), word_inner_product(w, x)


def _cases_binomial_sum(d: int) -> Iterator[Case]:
    for x in _trees(d):
        for a in range(0, d - x.size + 1):
            lhs, rhs = binomial_sum_check(x, a)
            yield (x.text, str(a)), lhs, rhs


def _cases_involution_sum(d: int) -> Iterator[Case]:
    for kk in range(1, d):
        yield (str(kk),), involution_sum(kk), sum(labelling_count(t) for t in enumerate_trees(kk))


def _cases_factorial_sum(d: int) -> Iterator[Case]:
    for kk in range(d):
        yield (str(kk),), sum(cm_weight(t) for t in enumerate_trees(kk)), math.factorial(kk)


def _cases_square_sum(d: int) -> Iterator[Case]:
    for a in range(d):
        lhs = sum(labelling_count(t) * cm_weight(t) for t in enumerate_trees(a))
        yield (str(a),), lhs, math.prod(math.comb(i, 2) for i in range(2, a + 2))


# -- Kreimer algebra ------------------------------------------------------------

def _cases_cut_coproduct(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (t.text,), k.coproduct_cuts(t), k.coproduct_recursive(t)


def _cases_coassociativity(d: int) -> Iterator[Case]:
    delta = k.coproduct_recursive
    ident = k.forests
    for u in _forests(d):
        first = delta(u)
        lhs = tensor_map(delta, ident, first)
        rhs = tensor_map(ident, delta, first)
        # both sides as ((a ⊗ b) ⊗ c) versus (a ⊗ (b ⊗ c)); flatten to triples
        flat_l = LinComb._wrap({(s.left.left, s.left.right, s.right): c for s, c in lhs.as_dict().items()})
        flat_r = LinComb._wrap({(s.left, s.right.left, s.right.right): c for s, c in rhs.as_dict().items()})
        yield (_forest_text(u),), flat_l, flat_r


def _cases_counit(d: int) -> Iterator[Case]:
    for u in _forests(d):
        cop = k.coproduct_recursive(u)
        left = LinComb._wrap({})
        right = LinComb._wrap({})
        for s, c in cop.as_dict().items():
            if not s.left:
                left = left + LinComb({s.right: c})
            if not s.right:
                right = right + LinComb({s.left: c})
        yield (_forest_text(u), "left"), left, k.forests(u)
        yield (_forest_text(u), "right"), right, k.forests(u)


def _cases_derivation_commutator(d: int) -> Iterator[Case]:
    for u in _forests(d):
        lhs = k.derivation_P(k.derivation_N(u)) - k.derivation_N(k.derivation_P(u))
        yield (_forest_text(u),), lhs, k.derivation_D(u)


def _bplus_lin(x: LinComb) -> LinComb:
    return apply_linear(lambda u: LinComb({b_plus(u): 1}), x)


def _cases_graft_intertwining(d: int) -> Iterator[Case]:
    for u in _forests(d):
        t = b_plus(u)
        yield (_forest_text(u), "P"), _bplus_lin(k.derivation_P(u)), prune(t)
        yield (_forest_text(u), "N"), _bplus_lin(k.derivation_N(u)), grow(t) - LinComb({b_plus(u * Forest([BULLET])): 1})


def _cases_derivation_adjoint(d: int) -> Iterator[Case]:
    for n in range(d):
        for u in enumerate_forests(n):
            nu = k.derivation_N(u) + k.m_bullet(u)
            for v in enumerate_forests(n + 1):
                yield (_forest_text(u), _forest_text(v)), inner_forest(u, k.derivation_P(v)), inner_forest(nu, v)


def _cases_pn_spectrum(d: int) -> Iterator[Case]:
    for kk in range(1, d + 1):
        yield (str(kk),), char_poly(k.pn_matrix(kk)), k.pn_char_poly_predicted(kk)
        yield (str(kk), "ranks"), k.pn_rank_checks(kk), (True, True)


def _cases_pn_eigenvector(d: int) -> Iterator[Case]:
    for kk in range(1, d + 1):
        f = k.naturally_grown(kk)
        yield (str(kk),), k.derivation_P(k.derivation_N(f)), f * math.comb(kk + 1, 2)


def _cases_coderivation(d: int) -> Iterator[Case]:
    ident = k.forests
    for u in _forests(d):
        lhs = k.coproduct_recursive(k.derivation_N(u))
        cop = k.coproduct_recursive(u)
        rhs = (tensor_map(k.derivation_N, ident, cop) + tensor_map(ident, k.derivation_N, cop)
               + tensor_map(k.m_bullet, k.derivation_D, cop))
        yield (_forest_text(u),), lhs, rhs


def _cases_dual_operators(d: int) -> Iterator[Case]:
    for u in _forests(d):
        w = k.z(u)
        yield (_forest_text(u), "N*"), k.dual_N_star(w), k.n_star_closed(w)
        yield (_forest_text(u), "P*"), k.dual_P_star(w), k.p_star_closed(w)


# -- Grossman-Larson algebra ----------------------------------------------------

def _tree_pairs_by_grade(d: int) -> Iterator[tuple[RootedTree, RootedTree]]:
    ts = _trees(d + 1)
    for a in ts:
        for b in ts:
            if a.grade + b.grade <= d:
                yield a, b


def _cases_gl_assoc(d: int) -> Iterator[Case]:
    ts = _trees(d + 1)
    for a in ts:
        for b in ts:
            if a.grade + b.grade > d:
                continue
            ab = gl.gl_product(a, b)
            for c in ts:
                if a.grade + b.grade + c.grade <= d:
                    yield (a.text, b.text, c.text), gl.gl_mul(ab, c), gl.gl_mul(a, gl.gl_product(b, c))


def _cases_gl_unit(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (BULLET.text, t.text), gl.gl_product(BULLET, t), LinComb({t: 1})
        yield (t.text, BULLET.text), gl.gl_product(t, BULLET), LinComb({t: 1})


def _cases_gl_hopf(d: int) -> Iterator[Case]:
    for a, b in _tree_pairs_by_grade(d):
        lhs = gl.gl_coproduct_lin(gl.gl_product(a, b))
        yield (a.text, b.text), lhs, gl.gl_tensor_mul(gl.gl_coproduct(a), gl.gl_coproduct(b))


def _cases_gl_cocomm(d: int) -> Iterator[Case]:
    for t in _trees(d + 1):
        cop = gl.gl_coproduct(t)
        yield (t.text,), cop, LinComb._wrap({s.swap(): c for s, c in cop.as_dict().items()})


def _cases_gl_primitive(d: int) -> Iterator[Case]:
    for t in _trees(d):
        p = RootedTree([t])
        yield (p.text,), gl.gl_coproduct(p), LinComb({Tensor(p, BULLET): 1, Tensor(BULLET, p): 1})


def _triples(d: int) -> Iterator[tuple[RootedTree, RootedTree, RootedTree]]:
    for n3 in range(2, d + 1):
        for t3 in enumerate_trees(n3 - 1):
            for s1 in range(1, n3):
                for t1 in enumerate_trees(s1 - 1):
                    for t2 in enumerate_trees(n3 - s1 - 1):
                        yield t1, t2, t3


def _cases_triple_symmetry(d: int) -> Iterator[Case]:
    for t1, t2, t3 in _triples(d):
        yield (t1.text, t2.text, t3.text), \
            t1.symmetry_order * t2.symmetry_order * gl.triple_m(t1, t2, t3), \
            gl.triple_n(t1, t2, t3) * t3.symmetry_order


def _cases_triple_graft(d: int) -> Iterator[Case]:
    for t1, t2, t3 in _triples(d):
        yield (t1.text, t2.text, t3.text), gl.gl_product(RootedTree([t1]), t2)[t3], gl.triple_n(t1, t2, t3)


def _cases_chi_homomorphism(d: int) -> Iterator[Case]:
    for a, b in _tree_pairs_by_grade(d):
        yield (a.text, b.text), gl.chi(gl.gl_product(a, b)), k.dual_product(gl.chi(a), gl.chi(b))
    for n in range(d + 1):
        ts = enumerate_trees(n)
        mat = matrix_of(gl.chi, ts, enumerate_forests(n))
        yield (str(n), "rank"), rank(mat), len(ts)


def _cases_chi_operators(d: int) -> Iterator[Case]:
    for t in _trees(d):
        yield (t.text, "chi of B+"), gl.chi(RootedTree([t])), k.z(t) * t.symmetry_order
        yield (t.text, "chi by pairing"), gl.chi_by_pairing(t), gl.chi(t)
        yield (t.text, "P*"), gl.chi_inverse(k.dual_P_star(gl.chi(t))), gl.gl_product(RootedTree([BULLET]), t)
        yield (t.text, "P* grow"), gl.p_star_via_gl(t), grow(t)
        yield (t.text, "N*"), gl.chi_inverse(k.dual_N_star(gl.chi(t))), gl.n_star_via_gl(t)


def _cases_bracket(d: int) -> Iterator[Case]:
    witness = None
    for t1 in _trees(d - 1):
        for t2 in _trees(d - t1.size):
            r = gl.panaite_bracket_check(t1, t2)
            yield (t1.text, t2.text, "Z expansion"), r.z_bracket, r.z_expansion
            yield (t1.text, t2.text, "GL expansion"), r.gl_bracket, r.gl_expansion
            yield (t1.text, t2.text, "chi"), r.chi_image, r.z_bracket * (t1.symmetry_order * t2.symmetry_order)
            if witness is None and not r.naive_identifies:
                witness = r
    if d >= 3:
        yield ("naive witness",), witness is not None, True


IDENTITIES: dict[str, Identity] = {i.name: i for i in [
    Identity("tree-counts", "enumerated tree and forest counts equal the product-formula series",
             "n <= d", _cases_counts),
    Identity("canonical-form", "enumerated trees are distinct and child-order shuffles re-parse identically",
             "|t| <= d", _cases_canonical),
    Identity("labelling-count", "hook-length labelling count equals brute-force decreasing labellings",
             "|t| <= d", _cases_labellings),
    Identity("symmetry-order", "symmetry order equals brute-force automorphism count", "|t| <= d",
             _cases_symmetry),
    Identity("bullet-weights", "m(•;t) = |SG(t)| n(•;t)", "|t| <= d", _cases_bullet_weights),
    Identity("pairing-diagonal", "forest pairing is diagonal, positive, and zero across degrees",
             "forest degree <= d", _cases_pairing),
    Identity("commutator", "prune∘grow - grow∘prune = |t| t", "|t| <= d", _cases_commutator),
    Identity("adjoint", "(grow t, t') = (t, prune t')", "|t'| <= d", _cases_adjoint),
    Identity("cover-balance", "sum over covers of n·m above minus below equals |t|", "|t| <= d",
             _cases_cover_balance),
    Identity("symmetry-relation", "|SG(t)| m(t;t') = n(t;t') |SG(t')|", "|t'| <= d",
             _cases_symmetry_relation),
    Identity("multiplicity-chain", "n and m factor through every intermediate size", "|t'| <= d",
             _cases_multiplicity_chain),
    Identity("order-equivalence", "n != 0 iff m != 0 iff t is obtained from t' by deleting leaves",
             "|t'| <= d", _cases_order),
    Identity("word-formula", "closed-form word value equals the operator inner product", "word length <= d",
             _cases_word_formula),
    Identity("binomial-sum", "sum of m(x;t) n(•;t) over |t| = |x|+a matches the binomial product",
             "|x| + a <= d", _cases_binomial_sum),
    Identity("involution-sum", "involution statistic sum equals the sum of m(•;t) over |t| = k+1",
             "k + 1 <= d", _cases_involution_sum),
    Identity("factorial-sum", "sum of n(•;t) over |t| = k+1 equals k!", "k + 1 <= d", _cases_factorial_sum),
    Identity("square-sum", "sum of m(•;t) n(•;t) over |t| = a+1 equals prod C(i,2)", "a + 1 <= d",
             _cases_square_sum),
    Identity("cut-coproduct", "admissible-cut coproduct equals the grafting recursion", "|t| <= d",
             _cases_cut_coproduct),
    Identity("coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", "forest degree <= d", _cases_coassociativity),
    Identity("counit", "counit laws on both sides", "forest degree <= d", _cases_counit),
    Identity("derivation-commutator", "PN - NP = D", "forest degree <= d", _cases_derivation_commutator),
    Identity("graft-intertwining", "B+ P = prune B+ and B+ N = grow B+ - B+(• ·)", "forest degree <= d",
             _cases_graft_intertwining),
    Identity("derivation-adjoint", "(u, P v) = ((N + M•) u, v)", "deg v <= d", _cases_derivation_adjoint),
    Identity("pn-spectrum", "char poly of PN_k matches the factorization; N_k injective, P_k surjective",
             "k <= d", _cases_pn_spectrum),
    Identity("pn-eigenvector", "PN f_k = C(k+1,2) f_k", "k <= d", _cases_pn_eigenvector),
    Identity("coderivation", "ΔN = (N⊗id + id⊗N + M•⊗D)Δ", "forest degree <= d", _cases_coderivation),
    Identity("dual-operators", "transposed N*, P* equal their closed forms", "forest degree <= d",
             _cases_dual_operators),
    Identity("gl-associativity", "(a∘b)∘c = a∘(b∘c)", "grade sum <= d", _cases_gl_assoc),
    Identity("gl-unit", "• is a two-sided unit", "|t| <= d", _cases_gl_unit),
    Identity("gl-hopf", "Δ(a∘b) = Δ(a)∘Δ(b)", "grade sum <= d", _cases_gl_hopf),
    Identity("gl-cocommutative", "Δ is invariant under swapping factors", "grade <= d", _cases_gl_cocomm),
    Identity("gl-primitive", "B+(t) is primitive", "|t| <= d", _cases_gl_primitive),
    Identity("triple-symmetry", "|SG(t1)||SG(t2)| m(t1,t2;t3) = n(t1,t2;t3) |SG(t3)|", "|t3| <= d",
             _cases_triple_symmetry),
    Identity("triple-graft", "coefficient of t3 in B+(t1)∘t2 equals n(t1,t2;t3)", "|t3| <= d",
             _cases_triple_graft),
    Identity("chi-homomorphism", "chi(a∘b) = chi(a) chi(b); chi injective per grade", "grade sum <= d",
             _cases_chi_homomorphism),
    Identity("chi-operators", "chi conjugates P* to B+(•)∘ and N* to prune minus the B+ correction",
             "|t| <= d", _cases_chi_operators),
    Identity("bracket-comparison", "both bracket expansions hold, chi intertwines them, and Z_t ↦ B+(t) fails",
             "|t1| + |t2| <= d", _cases_bracket),
]}


def run_identity(name: str, max_degree: int) -> VerifyReport:
    if name not in IDENTITIES:
        raise KeyError(name)
    report = VerifyReport(name, max_degree)
    start = time.perf_counter()
    for inputs, lhs, rhs in IDENTITIES[name].cases(max_degree):
        report.checked += 1
        if lhs != rhs:
            report.failed += 1
            if len(report.failures) < MAX_FAILURES_SHOWN:
                report.failures.append({"input": list(inputs), "lhs": _show(lhs), "rhs": _show(rhs)})
    report.wall_time = time.perf_counter() - start
    return report


def run_all(max_degree: int) -> list[VerifyReport]:
    return [run_identity(name, max_degree) for name in sorted(IDENTITIES)]
