"""Exact dense linear algebra over the rationals.

Matrices are lists of rows; polynomials are coefficient lists with the
constant term first.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _square(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    return [[Fraction(c) for c in row] for row in m]


def hessenberg(m: Sequence[Sequence]) -> Matrix:
    """Upper Hessenberg form similar to ``m`` (Gaussian similarity transforms)."""
    h = _square(m)
    n = len(h)
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        p = h[j + 1][j]
        for r in range(j + 2, n):
            f = h[r][j] / p
            if f == 0:
                continue
            hr, hp = h[r], h[j + 1]
            for c in range(n):
                hr[c] -= f * hp[c]
            for row in h:
                row[j + 1] += f * row[r]
    return h


def char_poly(m: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients of det(x I - m), constant term first."""
    h = hessenberg(m)
    n = len(h)
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 1):
        # p_k = (x - h[k-1][k-1]) p_{k-1} - sum_i h[i-1][k-1] * prod(subdiag) * p_{i-1}
        prev = polys[k - 1]
        cur = [Fraction(0)] + prev
        for i, c in enumerate(prev):
            cur[i] -= h[k - 1][k - 1] * c
        prod = Fraction(1)
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            if prod == 0:
                break
            coef = h[i - 1][k - 1] * prod
            for j, c in enumerate(polys[i - 1]):
                cur[j] -= coef * c
        polys.append(cur)
    return polys[n]


def poly_mul(p: Sequence, q: Sequence) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_from_roots(roots: dict) -> list[Fraction]:
    """Expand prod (x - r)^e from ``{r: e}``."""
    out = [Fraction(1)]
    for r, e in sorted(roots.items()):
        for _ in range(e):
            out = poly_mul(out, [Fraction(-r), Fraction(1)])
    return out


def rank(m: Sequence[Sequence]) -> int:
    rows = [[Fraction(c) for c in row] for row in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def matrix_of(op, domain: Sequence, codomain: Sequence) -> list[list]:
    """Matrix with ``[i][j]`` = coefficient of ``codomain[i]`` in ``op(domain[j])``."""
    index = {b: i for i, b in enumerate(codomain)}
    out = [[0] * len(domain) for _ in codomain]
    for j, b in enumerate(domain):
        for c, coeff in op(b).items():
            out[index[c]][j] = coeff
    return out
