"""Parser for ring expressions such as ``t1^-2*a1 + 3/2*a2^2``.

Names: ``a1..ar`` (coroot variables), ``t1..tr`` (fundamental characters, only
in the torus ring) and the generator names of a quotient ring.  Operators:
``+ - * ^`` and division by rational constants.  ``**`` is accepted too.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .ambient import AlgebraPresentation
from .polyalg import MixedElem, PolyElem


class ParseError(ValueError):
    pass


def _variables(ring: AlgebraPresentation) -> dict:
    rs = ring.rs
    out = {}
    for j in range(rs.rank):
        out[f"a{j + 1}"] = ring.embed(PolyElem.var(j, rs.rank))
    if ring.kind == "torus":
        for j in range(rs.rank):
            lam = tuple(int(i == j) for i in range(rs.rank))
            out[f"t{j + 1}"] = MixedElem({(lam, (0,) * rs.rank): 1}, rs.rank, rs.rank)
    names = getattr(ring, "names", None)
    if names:
        for k, n in enumerate(names):
            out[n] = ring.reduce(PolyElem.var(k, ring.nvars))
    return out


def _invert_character(u):
    if isinstance(u, MixedElem) and len(u.terms) == 1:
        (lam, e), c = next(iter(u.terms.items()))
        if not any(e):
            return MixedElem({(tuple(-x for x in lam), e): 1 / c}, u.rank, u.nvars)
    raise ParseError("negative exponents are only allowed on torus characters")


def parse_expr(text: str, ring: AlgebraPresentation):
    """Parse ``text`` into an element of ``ring``."""
    return _evaluate(text, _variables(ring), ring.one(), ring.mul, ring.reduce)


def parse_poly(text: str, names) -> PolyElem:
    """Parse a plain polynomial in the variables ``names``."""
    n = len(names)
    env = {v: PolyElem.var(k, n) for k, v in enumerate(names)}
    return _evaluate(text, env, PolyElem.const(1, n), lambda a, b: a * b, lambda u: u)


def _evaluate(text, env, one, mul, reduce):
    src = text.replace("^", "**").strip()
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as err:
        raise ParseError(f"cannot parse {text!r}: {err.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ParseError(f"unknown variable {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                if isinstance(left, Fraction) or isinstance(right, Fraction):
                    return left * right
                return mul(left, right)
            if isinstance(node.op, ast.Div):
                if not isinstance(right, Fraction):
                    raise ParseError("division is only allowed by rational constants")
                if right == 0:
                    raise ParseError("division by zero")
                return left * (1 / right)
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, Fraction) or right.denominator != 1:
                    raise ParseError("exponents must be integers")
                k = int(right)
                if isinstance(left, Fraction):
                    return left ** k
                base = left if k >= 0 else _invert_character(left)
                out = one
                for _ in range(abs(k)):
                    out = mul(out, base)
                return out
        raise ParseError(f"unsupported syntax in {text!r}")

    value = ev(tree)
    if isinstance(value, Fraction):
        return one * value
    return reduce(value)
