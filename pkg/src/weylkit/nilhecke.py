"""Demazure operators and the nil-Hecke algebra.

``D_s(u) = (u - s(u)) / a_s`` where ``a_s`` is the simple coroot.  On
``Sym(t)`` the quotient is again a polynomial; on other ambient rings the
result is a :class:`RatElem` with a Delta-power denominator.

Nil-Hecke elements are kept in right normal form ``sum_w D_w * p_w``.
Moving a polynomial to the right uses ``p * D_s = D_s * s(p) + D_s(p)``.
"""

from __future__ import annotations

from functools import lru_cache

from .ambient import AlgebraPresentation, SymAlgebra
from .polyalg import (
    NotDivisibleError,
    PolyElem,
    Q,
    RatElem,
    divide_exact,
    from_json,
    monomials_upto,
    to_json,
)
from .rootsys import RootSystem, WeylElement, act_on_poly


class ExactnessError(ArithmeticError):
    """A division that must be exact left a remainder."""


def _coroot(rs: RootSystem, i: int) -> PolyElem:
    return PolyElem.var(i, rs.rank)


@lru_cache(maxsize=None)
def _delta_over_coroot(rs: RootSystem, i: int) -> PolyElem:
    return divide_exact(rs.delta, _coroot(rs, i))


def demazure_simple(ring: AlgebraPresentation, i: int, u):
    """``D_{s_i}(u)``.

    Polynomials in :class:`SymAlgebra` map to polynomials; anything else maps
    to a :class:`RatElem`.
    """
    rs = ring.rs
    if not 0 <= i < rs.rank:
        raise ValueError(f"simple reflection index {i + 1} out of range")
    s = rs.simple(i)
    if isinstance(ring, SymAlgebra) and isinstance(u, PolyElem):
        diff = u - act_on_poly(s, u)
        try:
            return divide_exact(diff, _coroot(rs, i))
        except NotDivisibleError as err:
            raise ExactnessError(f"u - s{i + 1}(u) is not divisible by a{i + 1}") from err
    r = RatElem.lift(u, ring)
    num, k = r.numerator, r.delta_power
    # s(Delta) = -Delta, so s(num / Delta^k) = (-1)^k s(num) / Delta^k
    img = ring.act(s, num)
    diff = num - img if k % 2 == 0 else num + img
    q = ring.try_divide(diff, _coroot(rs, i))
    if q is not None:
        return RatElem(q, k, ring)
    return RatElem(ring.mul(diff, ring.embed(_delta_over_coroot(rs, i))), k + 1, ring)


def demazure_word(ring: AlgebraPresentation, word, u):
    """``D_{i_1} ... D_{i_l}(u)``; the rightmost operator acts first."""
    for i in reversed(list(word)):
        u = demazure_simple(ring, i, u)
    return u


def demazure_w0_direct(ring: AlgebraPresentation, u):
    """``(1/Delta) sum_w (-1)^l(w) w(u)``."""
    rs = ring.rs
    if isinstance(ring, SymAlgebra) and isinstance(u, PolyElem):
        total = PolyElem.zero(rs.rank)
        for w in rs.weyl:
            img = act_on_poly(w, u)
            total = total + (img if w.sign > 0 else -img)
        try:
            return divide_exact(total, rs.delta)
        except NotDivisibleError as err:
            raise ExactnessError("alternating sum is not divisible by Delta") from err
    r = RatElem.lift(u, ring)
    k = r.delta_power
    total = ring.zero()
    for w in rs.weyl:
        img = ring.act(w, r.numerator)
        # w(num / Delta^k) = sign(w)^k w(num) / Delta^k
        sgn = w.sign ** (k + 1)
        total = total + (img if sgn > 0 else -img)
    return RatElem(total, k + 1, ring)


def all_reduced_words(rs: RootSystem, w: WeylElement | int) -> list[tuple[int, ...]]:
    """Every reduced word of ``w`` (0-based letters), sorted."""
    idx = w.index if isinstance(w, WeylElement) else w
    return sorted(_reduced_words(rs, idx))


@lru_cache(maxsize=None)
def _reduced_words(rs: RootSystem, idx: int) -> frozenset:
    w = rs.weyl[idx]
    if w.length == 0:
        return frozenset({()})
    out = set()
    for i in range(rs.rank):
        v = rs.mul(w, rs.simple(i))
        if v.length < w.length:
            out.update(word + (i,) for word in _reduced_words(rs, v.index))
    return frozenset(out)


# --------------------------------------------------------------------------
# nil-Hecke algebra
# --------------------------------------------------------------------------


class NilHeckeElem:
    """``sum_w D_w * p_w`` with polynomial coefficients on the right."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict | None = None):
        self.rs = rs
        clean = {}
        for w, p in (terms or {}).items():
            idx = w.index if isinstance(w, WeylElement) else int(w)
            if not p.is_zero():
                clean[idx] = clean[idx] + p if idx in clean else p
        self.terms = {k: v for k, v in sorted(clean.items()) if not v.is_zero()}

    @classmethod
    def D(cls, rs: RootSystem, w: WeylElement | int | tuple | list) -> "NilHeckeElem":
        """``D_w`` for an element, an index, or a word (a non-reduced word gives 0)."""
        if isinstance(w, (tuple, list)):
            out = cls.poly(rs, PolyElem.const(1, rs.rank))
            for i in w:
                out = out * cls.D(rs, rs.simple(i))
            return out
        return cls(rs, {w: PolyElem.const(1, rs.rank)})

    @classmethod
    def poly(cls, rs: RootSystem, p: PolyElem) -> "NilHeckeElem":
        return cls(rs, {0: p})

    @classmethod
    def from_left(cls, rs: RootSystem, terms: dict) -> "NilHeckeElem":
        """Convert a left form ``sum_w p_w * D_w``."""
        out = cls(rs)
        for w, p in terms.items():
            out = out + cls.poly(rs, p) * cls.D(rs, w)
        return out

    def _wrap(self, other):
        if isinstance(other, NilHeckeElem):
            if other.rs is not self.rs:
                raise ValueError("nil-Hecke elements over different root systems")
            return other
        if isinstance(other, PolyElem):
            return NilHeckeElem.poly(self.rs, other)
        return NilHeckeElem.poly(self.rs, PolyElem.const(other, self.rs.rank))

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return NilHeckeElem(self.rs, out)

    __radd__ = __add__

    def __neg__(self):
        return NilHeckeElem(self.rs, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        return nilhecke_mul(self, self._wrap(other))

    def __rmul__(self, other):
        return nilhecke_mul(self._wrap(other), self)

    def __eq__(self, other):
        if not isinstance(other, NilHeckeElem):
            try:
                other = self._wrap(other)
            except TypeError:
                return NotImplemented
        return self.rs is other.rs and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, p in self.terms.items():
            word = "".join(str(i + 1) for i in self.rs.weyl[k].reduced_word)
            parts.append(f"D[{word}]*({p})")
        return " + ".join(parts)

    def __repr__(self):
        return f"NilHeckeElem({self})"

    def to_json(self) -> list:
        return [{"weyl_id": k, "word": [i + 1 for i in self.rs.weyl[k].reduced_word], "poly": to_json(p)}
                for k, p in self.terms.items()]

    @classmethod
    def from_json(cls, rs: RootSystem, data: list) -> "NilHeckeElem":
        return cls(rs, {t["weyl_id"]: from_json(t["poly"]) for t in data})


def _left_D(rs: RootSystem, i: int, terms: dict) -> dict:
    """``D_{s_i} * (sum_v D_v q_v)`` using the length-additivity rule."""
    out: dict = {}
    s = rs.simple(i)
    for v, q in terms.items():
        sv = rs.mul(s, v)
        if sv.length > rs.weyl[v].length:
            out[sv.index] = out[sv.index] + q if sv.index in out else q
    return out


@lru_cache(maxsize=None)
def _poly_past_word(rs: RootSystem, p: PolyElem, word: tuple) -> tuple:
    """Normal form of ``p * D_word`` as a sorted tuple of ``(w, coefficient)``."""
    if not word:
        return ((0, p),)
    i, rest = word[0], word[1:]
    ring = _sym(rs)
    # p D_i = D_i s_i(p) + D_i(p)
    left = _left_D(rs, i, dict(_poly_past_word(rs, act_on_poly(rs.simple(i), p), rest)))
    dp = demazure_simple(ring, i, p)
    out = dict(left)
    if not dp.is_zero():
        for w, q in _poly_past_word(rs, dp, rest):
            out[w] = out[w] + q if w in out else q
    return tuple(sorted((w, q) for w, q in out.items() if not q.is_zero()))


@lru_cache(maxsize=None)
def _sym(rs: RootSystem) -> SymAlgebra:
    return SymAlgebra(rs)


def nilhecke_mul(x: NilHeckeElem, y: NilHeckeElem) -> NilHeckeElem:
    """Product in right normal form."""
    if x.rs is not y.rs:
        raise ValueError("nil-Hecke elements over different root systems")
    rs = x.rs
    out: dict = {}
    for v, p in x.terms.items():
        for u, q in y.terms.items():
            # D_v * p * D_u * q
            pushed = dict(_poly_past_word(rs, p, rs.weyl[u].reduced_word))
            for w, r in pushed.items():
                vw = rs.mul(v, w)
                if vw.length != rs.weyl[v].length + rs.weyl[w].length:
                    continue
                term = r * q
                out[vw.index] = out[vw.index] + term if vw.index in out else term
    return NilHeckeElem(rs, out)


def nilhecke_act(ring: AlgebraPresentation, x: NilHeckeElem, u):
    """``sum_w D_w(p_w * u)``."""
    rs = ring.rs
    if x.rs is not rs:
        raise ValueError("nil-Hecke element and ring use different root systems")
    total = None
    for w, p in x.terms.items():
        if isinstance(ring, SymAlgebra) and isinstance(u, PolyElem):
            pu = p * u
        else:
            pu = RatElem.lift(u, ring) * RatElem(ring.embed(p), 0, ring)
        img = demazure_word(ring, rs.weyl[w].reduced_word, pu)
        total = img if total is None else total + img
    if total is None:
        return ring.zero() if not isinstance(u, RatElem) else RatElem(ring.zero(), 0, ring)
    return total


def endomorphism_matrix(rs: RootSystem, x: NilHeckeElem, degree_bound: int, target_bound: int | None = None):
    """Matrix of ``x`` acting on the degree-``<= degree_bound`` slice of ``Sym(t)``.

    Returns ``(row_keys, col_keys, rows)``; column ``j`` holds the coordinates
    of ``x(col_keys[j])`` on the monomials ``row_keys``.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    if target_bound is None:
        target_bound = degree_bound + max((p.degree() for p in x.terms.values()), default=0)
    ring = _sym(rs)
    cols = monomials_upto(rs.rank, degree_bound)
    rows = monomials_upto(rs.rank, target_bound)
    pos = {k: r for r, k in enumerate(rows)}
    mat = [[Q(0)] * len(cols) for _ in rows]
    for j, m in enumerate(cols):
        img = nilhecke_act(ring, x, PolyElem.monomial(m))
        for k, c in img.terms.items():
            if k not in pos:
                raise ValueError(f"image leaves the target slice (degree {sum(k)})")
            mat[pos[k]][j] = c
    return rows, cols, mat


def commutator(rs: RootSystem, i: int, lam: PolyElem, twisted: bool = True) -> NilHeckeElem:
    """Either ``D_s*lam - s(lam)*D_s`` (``twisted``) or ``D_s*s(lam) - lam*D_s``."""
    Ds = NilHeckeElem.D(rs, rs.simple(i))
    slam = act_on_poly(rs.simple(i), lam)
    if twisted:
        return Ds * lam - NilHeckeElem.poly(rs, slam) * Ds
    return Ds * slam - NilHeckeElem.poly(rs, lam) * Ds


def root_pairing(rs: RootSystem, i: int, lam: PolyElem) -> PolyElem:
    """``alpha_i(lam)`` for ``lam`` linear in the coroot variables, as a constant."""
    if lam.degree() > 1 or not lam.is_homogeneous():
        raise ValueError("expected a linear form")
    c = rs.cartan_matrix
    val = sum((coef * c[k.index(1)][i] for k, coef in lam.terms.items()), Q(0))
    return PolyElem.const(val, rs.rank)


__all__ = [
    "ExactnessError", "demazure_simple", "demazure_word", "demazure_w0_direct", "all_reduced_words",
    "NilHeckeElem", "nilhecke_mul", "nilhecke_act", "endomorphism_matrix", "commutator",
    "root_pairing",
]
