"""Independent brute-force oracles.

Everything here works on plain parent arrays (vertex 0 is the root,
``parents[v] < v`` is not assumed) and its own canonical string, built with
round brackets and plain lexicographic sorting, so nothing is shared with
the library's canonicalization.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import sympy


def from_brackets(text: str) -> list[int]:
    parents: list[int] = []
    stack: list[int] = []
    for ch in text:
        if ch == "[":
            parents.append(stack[-1] if stack else -1)
            stack.append(len(parents) - 1)
        elif ch == "]":
            stack.pop()
    return parents


def children_of(parents: list[int]) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p >= 0:
            kids[p].append(v)
    return kids


def canon(parents: list[int], root: int = 0) -> str:
    kids = children_of(parents)

    def rec(v: int) -> str:
        return "(" + "".join(sorted(rec(c) for c in kids[v])) + ")"

    return rec(root)


def canon_of(tree) -> str:
    return canon(from_brackets(tree.text))


def subtree(parents: list[int], root: int) -> list[int]:
    kids = children_of(parents)
    order, index, out = [root], {root: 0}, [-1]
    i = 0
    while i < len(order):
        v = order[i]
        for c in kids[v]:
            index[c] = len(order)
            order.append(c)
            out.append(index[v])
        i += 1
    return out


def without(parents: list[int], removed: set[int]) -> list[int]:
    keep = [v for v in range(len(parents)) if v not in removed]
    index = {v: i for i, v in enumerate(keep)}
    return [index[parents[v]] if parents[v] >= 0 else -1 for v in keep]


def descendants(parents: list[int], v: int) -> set[int]:
    kids = children_of(parents)
    out, stack = set(), [v]
    while stack:
        w = stack.pop()
        out.add(w)
        stack.extend(kids[w])
    return out


# -- shapes ---------------------------------------------------------------------

def recursive_tree_shapes(n: int) -> Counter:
    """Count of increasing-labelled trees on n vertices per shape (parent of i is < i)."""
    out: Counter = Counter()
    for choice in itertools.product(*[range(i) for i in range(1, n)]):
        out[canon([-1, *choice])] += 1
    return out


def automorphisms(parents: list[int]) -> int:
    n = len(parents)
    edges = {(v, p) for v, p in enumerate(parents) if p >= 0}
    return sum(1 for s in itertools.permutations(range(n))
               if s[0] == 0 and all((s[v], s[p]) in edges for v, p in edges))


def decreasing_labellings(parents: list[int]) -> int:
    n = len(parents)
    return sum(1 for lab in itertools.permutations(range(n))
               if all(p < 0 or lab[p] > lab[v] for v, p in enumerate(parents)))


# -- operators ------------------------------------------------------------------

def grow(parents: list[int]) -> Counter:
    return Counter(canon(parents + [v]) for v in range(len(parents)))


def prune(parents: list[int]) -> Counter:
    kids = children_of(parents)
    return Counter(canon(without(parents, {v})) for v in range(1, len(parents)) if not kids[v])


def admissible_coproduct(parents: list[int]) -> Counter:
    """Counter over (pruned forest, root part) of canonical-string tuples, plus t ⊗ 1."""
    n = len(parents)
    out: Counter = Counter()
    out[((canon(parents),), ())] += 1
    for r in range(n):
        for cut in itertools.combinations(range(1, n), r):
            below = [descendants(parents, v) for v in cut]
            if any(u != v and u in below[j] for j, v in enumerate(cut) for u in cut):
                continue
            pruned = tuple(sorted(canon(subtree(parents, v)) for v in cut))
            removed = set().union(*below) if below else set()
            out[(pruned, (canon(without(parents, removed)),))] += 1
    return out


def gl_product(t: list[int], tp: list[int]) -> Counter:
    branches = [subtree(t, c) for c in children_of(t)[0]]
    out: Counter = Counter()
    for targets in itertools.product(range(len(tp)), repeat=len(branches)):
        parents = list(tp)
        for b, v in zip(branches, targets):
            offset = len(parents)
            parents.extend(v if p < 0 else p + offset for p in b)
        out[canon(parents)] += 1
    return out


# -- conversion of library values ----------------------------------------------

def tree_counter(x) -> Counter:
    return Counter({canon_of(t): c for t, c in x.items()})


def forest_key(u) -> tuple[str, ...]:
    return tuple(sorted(canon_of(t) for t in u.trees))


def tensor_counter(x) -> Counter:
    return Counter({(forest_key(s.left), forest_key(s.right)): c for s, c in x.items()})


# -- symbolic -------------------------------------------------------------------

def series_tree_counts(n: int) -> list[int]:
    """T_0..T_n from the product formula.

    The denominator prod (1 - x^j)^(T_{j-1}) is multiplied out with sympy
    polynomials truncated at degree m, then its reciprocal series is read off.
    """
    x = sympy.symbols("x")
    counts = [1]
    for m in range(1, n + 1):
        denom = sympy.Poly(1, x)
        for j in range(1, m + 1):
            for _ in range(counts[j - 1]):
                denom = sympy.Poly(sum(c * x ** e for (e,), c in (denom * sympy.Poly(1 - x ** j, x)).terms()
                                       if e <= m), x)
        d = [denom.coeff_monomial(x ** i) for i in range(m + 1)]
        inv = [sympy.Integer(1)]
        for i in range(1, m + 1):
            inv.append(-sum(d[r] * inv[i - r] for r in range(1, i + 1)))
        counts.append(int(inv[m]))
    return counts


def charpoly(rows) -> list[Fraction]:
    """Constant term first, via sympy."""
    coeffs = sympy.Matrix(rows).charpoly().all_coeffs()
    return [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(coeffs)]
