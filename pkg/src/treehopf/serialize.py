"""Text and JSON forms for trees, forests, tensors and linear combinations.

Text: trees in bracket notation, forests as space-separated trees (``1`` when
empty), tensors as ``a ⊗ b``, dual basis elements as ``Z(forest)``.  A
combination is written ``2*[[]] + [[][]] - 1/2*([] [])``.

JSON: a tree is the array of its children's JSON forms, a forest the array
of its trees, a tensor ``{"left": .., "right": ..}``; a combination is an
array of ``{"coeff": "p/q", "basis": ..}`` in canonical basis order.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Callable

from .errors import TreeSyntaxError
from .linspace import LinComb, Tensor, as_rational
from .trees import (Forest, RootedTree, forest_to_json, parse,
                    parse_forest, tree_from_json, tree_to_json)


def basis_to_text(b: Any, dual: bool = False) -> str:
    if isinstance(b, Tensor):
        return f"{basis_to_text(b.left, dual)} ⊗ {basis_to_text(b.right, dual)}"
    if isinstance(b, Forest):
        if dual:
            return f"Z({b.text})"
        return f"({b.text})" if len(b) > 1 else b.text
    return b.text


def coeff_to_text(c) -> str:
    return str(c)


def lincomb_to_text(x: LinComb) -> str:
    from .kreimer import DualElem
    dual = isinstance(x, DualElem)
    items = x.items()
    if not items:
        return "0"
    parts = []
    for i, (b, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = basis_to_text(b, dual) if mag == 1 else f"{coeff_to_text(mag)}*{basis_to_text(b, dual)}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def coeff_to_json(c) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def basis_to_json(b: Any) -> Any:
    if isinstance(b, Tensor):
        return {"left": basis_to_json(b.left), "right": basis_to_json(b.right)}
    if isinstance(b, Forest):
        return forest_to_json(b)
    if isinstance(b, RootedTree):
        return tree_to_json(b)
    raise TypeError(f"no JSON form for {type(b).__name__}")


def lincomb_to_json(x: LinComb) -> list[dict]:
    return [{"coeff": coeff_to_json(c), "basis": basis_to_json(b)} for b, c in x.items()]


def lincomb_from_json(obj: Any, basis: Callable[[Any], Any] = tree_from_json, cls: type = LinComb) -> LinComb:
    if not isinstance(obj, list):
        raise ValueError("linear combination JSON must be an array")
    return cls((basis(term["basis"]), as_rational(str(term["coeff"]))) for term in obj)


def tensor_from_json(part: Callable[[Any], Any]) -> Callable[[Any], Tensor]:
    return lambda obj: Tensor(part(obj["left"]), part(obj["right"]))


def matrix_to_json(rows) -> list[list[str]]:
    return [[coeff_to_json(c) for c in row] for row in rows]


def poly_to_json(coeffs) -> list[str]:
    return [coeff_to_json(c) for c in coeffs]


_TERM = re.compile(r"^\s*(?:(?P<coeff>\d+(?:/\d+)?)\s*\*)?\s*(?P<body>.*?)\s*$", re.S)


def _split_terms(text: str) -> list[tuple[int, str, int]]:
    # split on + and - outside brackets; returns (sign, chunk, char offset)
    out = []
    depth = 0
    start = 0
    sign = 1
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch in "+-" and depth == 0:
            chunk = text[start:i]
            if chunk.strip():
                out.append((sign, chunk, start))
            elif i > 0 and text[:i].strip():
                raise TreeSyntaxError("empty term", len(text[:i].encode()))
            sign = 1 if ch == "+" else -1
            start = i + 1
    chunk = text[start:]
    if not chunk.strip():
        raise TreeSyntaxError("empty term", len(text.encode()))
    out.append((sign, chunk, start))
    return out


def parse_lincomb(text: str, basis: str = "tree") -> LinComb:
    """Parse a combination of trees (``basis="tree"``) or forests (``"forest"``)."""
    if text.strip() == "0":
        return LinComb()
    terms = []
    for sign, chunk, offset in _split_terms(text):
        m = _TERM.match(chunk)
        body = m.group("body")
        body_start = offset + m.start("body")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
            body_start += 1
        try:
            b = parse(body) if basis == "tree" else parse_forest(body)
        except TreeSyntaxError as e:
            raise TreeSyntaxError(str(e).rsplit(" at byte", 1)[0],
                                  len(text[:body_start].encode()) + e.offset) from None
        terms.append((b, sign * coeff))
    return LinComb(terms)
