"""Finite formal linear combinations with exact rational coefficients.

Basis elements are any hashable objects carrying a sortable ``key``
(trees, forests, tensors).  Coefficients are kept as ``int`` when integral
and ``fractions.Fraction`` otherwise; floats are rejected.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Generic, Iterable, Iterator, Mapping, TypeVar, Union

from .trees import Forest, RootedTree

B = TypeVar("B")
C = TypeVar("C")
Coeff = Union[int, Fraction]


def as_rational(c: Any) -> Coeff:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_rational(Fraction(c))
    if isinstance(c, numbers.Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True, slots=True)
class Tensor(Generic[B]):
    """Basis element ``left ⊗ right`` of a tensor square."""

    left: B
    right: B

    @property
    def key(self):
        return (self.left.key, self.right.key)

    @property
    def grade(self) -> int:
        return self.left.grade + self.right.grade

    def swap(self) -> "Tensor[B]":
        return Tensor(self.right, self.left)

    @property
    def text(self) -> str:
        return f"{self.left.text} ⊗ {self.right.text}"

    def __str__(self) -> str:
        return self.text


class LinComb(Generic[B]):
    """Immutable finite sum of basis elements; zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[B, Any] | Iterable[tuple[B, Any]] | None = None):
        acc: dict[B, Coeff] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for b, c in items:
                acc[b] = acc.get(b, 0) + as_rational(c)
        self._terms = {b: _norm(c) for b, c in acc.items() if c != 0}

    @classmethod
    def _wrap(cls, terms: dict) -> "LinComb":
        # trusted constructor: terms already normalised, but zeros may remain
        self = object.__new__(cls)
        self._terms = {b: _norm(c) for b, c in terms.items() if c != 0}
        return self

    @classmethod
    def of(cls, basis: B, coeff: Any = 1) -> "LinComb[B]":
        return cls({basis: coeff})

    @classmethod
    def zero(cls) -> "LinComb[B]":
        return cls()

    # -- access ---------------------------------------------------------------
    def __getitem__(self, b: B) -> Coeff:
        return self._terms.get(b, 0)

    coeff = __getitem__

    def __contains__(self, b: object) -> bool:
        return b in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[B]:
        return iter(self.support())

    def support(self) -> list[B]:
        return sorted(self._terms, key=lambda b: b.key)

    def items(self) -> list[tuple[B, Coeff]]:
        return [(b, self._terms[b]) for b in self.support()]

    def as_dict(self) -> dict[B, Coeff]:
        return dict(self._terms)

    def component(self, grade: int) -> "LinComb[B]":
        """Homogeneous part of the given grade."""
        return type(self)._wrap({b: c for b, c in self._terms.items() if b.grade == grade})

    def grades(self) -> list[int]:
        return sorted({b.grade for b in self._terms})

    # -- vector space ---------------------------------------------------------
    def __add__(self, other: "LinComb[B]") -> "LinComb[B]":
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LinComb):
            return NotImplemented
        acc = dict(self._terms)
        for b, c in other._terms.items():
            acc[b] = acc.get(b, 0) + c
        return type(self)._wrap(acc)

    __radd__ = __add__

    def __neg__(self) -> "LinComb[B]":
        return type(self)._wrap({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "LinComb[B]") -> "LinComb[B]":
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int) and other == 0:
            return -self
        return NotImplemented

    def __mul__(self, scalar: Any) -> "LinComb[B]":
        if isinstance(scalar, LinComb):
            return NotImplemented
        s = as_rational(scalar)
        return type(self)._wrap({b: c * s for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Any) -> "LinComb[B]":
        s = Fraction(as_rational(scalar))
        return type(self)._wrap({b: c / s for b, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.text!r})"

    @property
    def text(self) -> str:
        from .serialize import lincomb_to_text
        return lincomb_to_text(self)

    def __str__(self) -> str:
        return self.text


def accumulate(acc: dict, x: LinComb | Mapping, scale: Coeff = 1) -> None:
    """In-place ``acc += scale * x`` on a raw term dictionary."""
    terms = x._terms if isinstance(x, LinComb) else x
    for b, c in terms.items():
        acc[b] = acc.get(b, 0) + scale * c


def _image(f: Callable, b) -> LinComb:
    y = f(b)
    return y if isinstance(y, LinComb) else LinComb({y: 1})


def apply_linear(f: Callable[[B], "LinComb[C] | C"], x: LinComb[B], cls: type | None = None) -> LinComb[C]:
    """Extend ``f`` linearly.  ``f`` may return a combination or a bare basis element."""
    acc: dict = {}
    for b, c in x._terms.items():
        accumulate(acc, _image(f, b), c)
    return (cls or LinComb)._wrap(acc)


def apply_bilinear(f: Callable[[B, B], Any], x: LinComb, y: LinComb, cls: type | None = None) -> LinComb:
    acc: dict = {}
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            accumulate(acc, as_lincomb(f(a, b)), ca * cb)
    return (cls or LinComb)._wrap(acc)


def add(*xs: LinComb) -> LinComb:
    acc: dict = {}
    for x in xs:
        accumulate(acc, x)
    return (type(xs[0]) if xs else LinComb)._wrap(acc)


def scale(c: Any, x: LinComb) -> LinComb:
    return x * c


def tensor(x: LinComb, y: LinComb) -> LinComb:
    """``x ⊗ y`` as a combination of ``Tensor`` basis elements."""
    return LinComb._wrap({Tensor(a, b): ca * cb
                          for a, ca in x._terms.items() for b, cb in y._terms.items()})


def tensor_map(f: Callable, g: Callable, x: LinComb) -> LinComb:
    """``(f ⊗ g)(x)`` for linear maps given on basis elements."""
    acc: dict = {}
    for t, c in x._terms.items():
        accumulate(acc, tensor(_image(f, t.left), _image(g, t.right)), c)
    return LinComb._wrap(acc)


def as_lincomb(x: Any) -> LinComb:
    return x if isinstance(x, LinComb) else LinComb({x: 1})


def inner_tree(x: LinComb[RootedTree] | RootedTree, y: LinComb[RootedTree] | RootedTree) -> Coeff:
    """``(t, t') = |SG(t)| δ(t, t')`` extended bilinearly."""
    x, y = as_lincomb(x), as_lincomb(y)
    if len(y) < len(x):
        x, y = y, x
    total: Coeff = 0
    for t, c in x._terms.items():
        d = y._terms.get(t)
        if d is not None:
            total += c * d * t.symmetry_order
    return _norm(total)


def inner_forest(u: LinComb[Forest] | Forest, v: LinComb[Forest] | Forest) -> Coeff:
    """Pairing of forests through grafting: ``(u, v) = (B+(u), B+(v))``."""
    u, v = as_lincomb(u), as_lincomb(v)
    if len(v) < len(u):
        u, v = v, u
    total: Coeff = 0
    for f, c in u._terms.items():
        d = v._terms.get(f)
        if d is not None:
            total += c * d * RootedTree(f.trees).symmetry_order
    return _norm(total)
