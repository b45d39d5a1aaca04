"""Exact sparse elements of the ambient rings.

Three value types share one sparse-dictionary implementation:

* ``PolyElem``  -- polynomials over Q; exponent tuples as keys.
* ``TorusElem`` -- group-algebra elements of a lattice; integer vectors as keys.
* ``MixedElem`` -- elements of O(T) (x) Sym(t); keys are ``(lattice, exponents)``.

``RatElem`` is a numerator divided by a power of the root-system discriminant
``Delta``; it needs an ambient ring (see :mod:`weylkit.ambient`) to normalise.

Coefficients are ``gmpy2.mpq`` and are never rounded.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def as_q(value) -> mpq:
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value).numerator, Fraction(value).denominator)
    return mpq(value)


class NotDivisibleError(ArithmeticError):
    """Raised by exact division; ``remainder`` is the non-zero witness."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class _Sparse:
    """Sparse map key -> nonzero rational, stored in sorted key order."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_q(c)
                if c != 0:
                    clean[k] = c
        self.terms = dict(sorted(clean.items()))

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = dict(sorted((k, c) for k, c in terms.items() if c != 0))
        return obj

    def _like(self, terms):
        out = self._raw(terms)
        out._copy_shape(self)
        return out

    def _copy_shape(self, other):
        pass

    @staticmethod
    def _key_mul(a, b):
        raise NotImplementedError

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, type(ZERO), Fraction)):
            return self.const(as_q(other), *self._shape())
        return NotImplemented

    def _shape(self):
        return ()

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(ZERO), Fraction)):
            c = as_q(other)
            return self._like({k: v * c for k, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        key_mul = self._key_mul
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = key_mul(k1, k2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.const(ONE, *self._shape())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return self * as_q(c)

    # comparison --------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, type(ZERO), Fraction)):
            other = self.const(as_q(other), *self._shape())
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


def _add_tuples(a, b):
    return tuple(x + y for x, y in zip(a, b))


class PolyElem(_Sparse):
    """Polynomial over Q in ``nvars`` variables."""

    __slots__ = ("nvars",)

    def __init__(self, terms=None, nvars: int | None = None):
        super().__init__(terms)
        if nvars is None:
            if not self.terms:
                raise ValueError("nvars required for the zero polynomial")
            nvars = len(next(iter(self.terms)))
        self.nvars = nvars
        for k in self.terms:
            if len(k) != nvars or min(k, default=0) < 0:
                raise ValueError(f"bad exponent {k} for {nvars} variables")

    def _copy_shape(self, other):
        self.nvars = other.nvars

    def _shape(self):
        return (self.nvars,)

    def _coerce(self, other):
        if isinstance(other, PolyElem) and other.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")
        return super()._coerce(other)

    _key_mul = staticmethod(_add_tuples)

    @classmethod
    def const(cls, c, nvars: int) -> "PolyElem":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "PolyElem":
        return cls({}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "PolyElem":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): ONE}, nvars)

    @classmethod
    def monomial(cls, exps, c=1) -> "PolyElem":
        return cls({tuple(exps): c}, len(exps))

    @classmethod
    def linear(cls, coeffs) -> "PolyElem":
        n = len(coeffs)
        return cls({tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}, n)

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def components(self) -> dict[int, "PolyElem"]:
        comps: dict[int, dict] = {}
        for k, c in self.terms.items():
            comps.setdefault(sum(k), {})[k] = c
        return {d: PolyElem(t, self.nvars) for d, t in sorted(comps.items())}

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def leading(self):
        """Leading (exponent, coefficient) under graded lexicographic order."""
        k = max(self.terms, key=lambda e: (sum(e), e))
        return k, self.terms[k]

    def substitute(self, images: list["PolyElem"]) -> "PolyElem":
        """Algebra map sending variable ``j`` to ``images[j]``."""
        if len(images) != self.nvars:
            raise ValueError("dimension mismatch in substitution")
        target = images[0].nvars if images else 0
        powers: list[list[PolyElem]] = [[PolyElem.const(ONE, target)] for _ in images]
        out: dict = {}
        for k, c in self.terms.items():
            term = None
            for j, e in enumerate(k):
                if e == 0:
                    continue
                pj = powers[j]
                while len(pj) <= e:
                    pj.append(pj[-1] * images[j])
                term = pj[e] if term is None else term * pj[e]
            if term is None:
                key = (0,) * target
                out[key] = out.get(key, ZERO) + c
                continue
            for k2, c2 in term.terms.items():
                out[k2] = out.get(k2, ZERO) + c * c2
        return PolyElem(out, target)

    def divide_exact(self, q: "PolyElem") -> "PolyElem":
        return divide_exact(self, q)

    def __str__(self):
        return render_poly(self)


def divide_exact(p, q: PolyElem):
    """Exact quotient ``r`` with ``r * q == p``.

    ``p`` may be a :class:`PolyElem` or a :class:`MixedElem` (divided
    coefficient-wise along each lattice point).  Raises
    :class:`NotDivisibleError` carrying the remainder otherwise.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if isinstance(p, MixedElem):
        out: dict = {}
        for lam, coeff in p.coefficients().items():
            try:
                r = divide_exact(coeff, q)
            except NotDivisibleError as err:
                rem = MixedElem.from_parts({lam: err.remainder}, p.rank, p.nvars)
                raise NotDivisibleError(f"{p} is not divisible by {q}", rem) from None
            for k, c in r.terms.items():
                out[(lam, k)] = c
        return MixedElem(out, p.rank, p.nvars)
    if p.nvars != q.nvars:
        raise ValueError("dimension mismatch in division")
    lead_k, lead_c = q.leading()
    rem = dict(p.terms)
    quot: dict = {}
    bad: dict = {}
    order = lambda e: (sum(e), e)  # noqa: E731
    while rem:
        k = max(rem, key=order)
        c = rem.pop(k)
        diff = tuple(a - b for a, b in zip(k, lead_k))
        if min(diff) < 0:
            bad[k] = c
            continue
        f = c / lead_c
        quot[diff] = quot.get(diff, ZERO) + f
        for k2, c2 in q.terms.items():
            if k2 == lead_k:
                continue
            kk = _add_tuples(diff, k2)
            v = rem.get(kk, ZERO) - f * c2
            if v == 0:
                rem.pop(kk, None)
            else:
                rem[kk] = v
    if bad:
        raise NotDivisibleError(f"{p} is not divisible by {q}", PolyElem(bad, p.nvars))
    return PolyElem(quot, p.nvars)


# --------------------------------------------------------------------------
# lattice group algebra and O(T) (x) Sym(t)
# --------------------------------------------------------------------------


class TorusElem(_Sparse):
    """Finite Q-combination of lattice points ``e^lambda``."""

    __slots__ = ("rank",)

    def __init__(self, terms=None, rank: int | None = None):
        super().__init__(terms)
        if rank is None:
            if not self.terms:
                raise ValueError("rank required for the zero element")
            rank = len(next(iter(self.terms)))
        self.rank = rank

    def _copy_shape(self, other):
        self.rank = other.rank

    def _shape(self):
        return (self.rank,)

    def _coerce(self, other):
        if isinstance(other, TorusElem) and other.rank != self.rank:
            raise ValueError("lattice-rank mismatch")
        return super()._coerce(other)

    _key_mul = staticmethod(_add_tuples)

    @classmethod
    def const(cls, c, rank: int) -> "TorusElem":
        return cls({(0,) * rank: c}, rank)

    @classmethod
    def char(cls, lam, c=1) -> "TorusElem":
        return cls({tuple(lam): c}, len(lam))

    def __str__(self):
        return render_mixed(MixedElem.from_torus(self, 0))


def _add_pairs(a, b):
    return (_add_tuples(a[0], b[0]), _add_tuples(a[1], b[1]))


class MixedElem(_Sparse):
    """Element of O(T) (x) Sym(t): keys ``(lattice point, exponent tuple)``."""

    __slots__ = ("rank", "nvars")

    def __init__(self, terms=None, rank: int = 0, nvars: int = 0):
        super().__init__(terms)
        self.rank = rank
        self.nvars = nvars
        for lam, e in self.terms:
            if len(lam) != rank or len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad key {(lam, e)}")

    def _copy_shape(self, other):
        self.rank = other.rank
        self.nvars = other.nvars

    def _shape(self):
        return (self.rank, self.nvars)

    def _coerce(self, other):
        if isinstance(other, MixedElem) and (other.rank, other.nvars) != (self.rank, self.nvars):
            raise ValueError("lattice-rank mismatch")
        if isinstance(other, PolyElem):
            return MixedElem.from_poly(other, self.rank)
        if isinstance(other, TorusElem):
            return MixedElem.from_torus(other, self.nvars)
        return super()._coerce(other)

    _key_mul = staticmethod(_add_pairs)

    @classmethod
    def const(cls, c, rank: int, nvars: int) -> "MixedElem":
        return cls({((0,) * rank, (0,) * nvars): c}, rank, nvars)

    @classmethod
    def from_poly(cls, p: PolyElem, rank: int) -> "MixedElem":
        zero = (0,) * rank
        return cls({(zero, k): c for k, c in p.terms.items()}, rank, p.nvars)

    @classmethod
    def from_torus(cls, f: TorusElem, nvars: int) -> "MixedElem":
        zero = (0,) * nvars
        return cls({(k, zero): c for k, c in f.terms.items()}, f.rank, nvars)

    @classmethod
    def from_parts(cls, parts: dict, rank: int, nvars: int) -> "MixedElem":
        """Build from ``{lattice point: PolyElem}``."""
        out = {}
        for lam, p in parts.items():
            for k, c in p.terms.items():
                out[(tuple(lam), k)] = c
        return cls(out, rank, nvars)

    def coefficients(self) -> dict[tuple, PolyElem]:
        """``{lattice point: polynomial coefficient}``."""
        parts: dict = {}
        for (lam, e), c in self.terms.items():
            parts.setdefault(lam, {})[e] = c
        return {lam: PolyElem(t, self.nvars) for lam, t in parts.items()}

    def degree(self) -> int:
        return max((sum(e) for _, e in self.terms), default=-1)

    def components(self) -> dict[int, "MixedElem"]:
        comps: dict = {}
        for k, c in self.terms.items():
            comps.setdefault(sum(k[1]), {})[k] = c
        return {d: MixedElem(t, self.rank, self.nvars) for d, t in sorted(comps.items())}

    def __str__(self):
        return render_mixed(self)


# --------------------------------------------------------------------------
# elements with Delta-power denominators
# --------------------------------------------------------------------------


class RatElem:
    """``numerator / Delta**delta_power`` inside an ambient ring.

    Construction normalises to lowest terms: the numerator is not divisible
    by ``Delta`` when ``delta_power > 0``.
    """

    __slots__ = ("numerator", "delta_power", "ring")

    def __init__(self, numerator, delta_power: int = 0, ring=None, *, normalize: bool = True):
        if delta_power < 0:
            raise ValueError("delta_power must be nonnegative")
        if ring is None:
            raise ValueError("RatElem needs an ambient ring")
        self.numerator = numerator
        self.delta_power = delta_power
        self.ring = ring
        if normalize:
            self._normalize()

    def _normalize(self):
        ring = self.ring
        num = ring.reduce(self.numerator)
        k = self.delta_power
        if ring.is_zero(num):
            k = 0
        delta = ring.rs.delta
        while k > 0:
            q = ring.try_divide(num, delta)
            if q is None:
                break
            num, k = q, k - 1
        self.numerator, self.delta_power = num, k

    @classmethod
    def lift(cls, u, ring) -> "RatElem":
        if isinstance(u, RatElem):
            return u
        return cls(u, 0, ring)

    def _common(self, other):
        other = RatElem.lift(other, self.ring)
        k = max(self.delta_power, other.delta_power)
        d = self.ring.embed(self.ring.rs.delta)
        a = self.numerator * d ** (k - self.delta_power) if k > self.delta_power else self.numerator
        b = other.numerator * d ** (k - other.delta_power) if k > other.delta_power else other.numerator
        return a, b, k

    def __add__(self, other):
        if isinstance(other, (int, type(ZERO), Fraction)):
            other = RatElem(self.ring.one() * as_q(other), 0, self.ring)
        a, b, k = self._common(other)
        return RatElem(a + b, k, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return RatElem(-self.numerator, self.delta_power, self.ring, normalize=False)

    def __sub__(self, other):
        if isinstance(other, (int, type(ZERO), Fraction)):
            other = RatElem(self.ring.one() * as_q(other), 0, self.ring)
        a, b, k = self._common(other)
        return RatElem(a - b, k, self.ring)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(ZERO), Fraction)):
            return RatElem(self.numerator * as_q(other), self.delta_power, self.ring)
        other = RatElem.lift(other, self.ring)
        return RatElem(
            self.ring.mul(self.numerator, other.numerator),
            self.delta_power + other.delta_power,
            self.ring,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RatElem(self.ring.one(), 0, self.ring)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, type(ZERO), Fraction)):
            other = RatElem(self.ring.one() * as_q(other), 0, self.ring)
        elif not isinstance(other, RatElem):
            other = RatElem.lift(other, self.ring)
        diff = self - other
        return self.ring.is_zero(diff.numerator)

    def __hash__(self):
        return hash((self.delta_power, tuple(self.ring.coords(self.numerator).items())))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.numerator)

    def is_polynomial(self) -> bool:
        return self.delta_power == 0

    def effective_degree(self) -> int:
        return self.ring.degree(self.numerator) - self.delta_power * len(self.ring.rs.positive_coroots)

    def __str__(self):
        num = self.ring.render(self.numerator)
        if self.delta_power == 0:
            return num
        den = "Δ" if self.delta_power == 1 else f"Δ^{self.delta_power}"
        return f"({num})/{den}"

    def __repr__(self):
        return f"RatElem({self})"


def rat_normalize(r: RatElem) -> RatElem:
    """Lowest-terms copy of ``r`` (idempotent)."""
    return RatElem(r.numerator, r.delta_power, r.ring)


def reynolds(ring, u, component: str = "trivial"):
    """Average over the Weyl group, plain (``trivial``) or signed (``sign``)."""
    if component not in ("trivial", "sign"):
        raise ValueError(f"unknown component {component!r}")
    weyl = ring.rs.weyl
    total = None
    for w in weyl:
        img = ring.act(w, u)
        if component == "sign" and w.length % 2:
            img = -img
        total = img if total is None else total + img
    return total * Q(1, len(weyl))


# --------------------------------------------------------------------------
# text rendering and JSON term lists
# --------------------------------------------------------------------------


def _coeff_prefix(c, is_unit_monomial: bool) -> str:
    if is_unit_monomial:
        return str(c)
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return f"{c}*"


def _join(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _factor(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def render_poly(p: PolyElem, names=None) -> str:
    names = names or [f"a{i + 1}" for i in range(p.nvars)]
    parts = []
    for k, c in sorted(p.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0]))):
        mono = "*".join(_factor(names[i], e) for i, e in enumerate(k) if e)
        parts.append(_coeff_prefix(c, not mono) + mono)
    return _join(parts)


def render_mixed(u: MixedElem, tnames=None, anames=None) -> str:
    tnames = tnames or [f"t{i + 1}" for i in range(u.rank)]
    anames = anames or [f"a{i + 1}" for i in range(u.nvars)]
    parts = []
    order = lambda kv: (-sum(kv[0][1]), tuple(-x for x in kv[0][1]), tuple(-x for x in kv[0][0]))  # noqa: E731
    for (lam, e), c in sorted(u.terms.items(), key=order):
        factors = [_factor(tnames[i], x) for i, x in enumerate(lam) if x]
        factors += [_factor(anames[i], x) for i, x in enumerate(e) if x]
        mono = "*".join(factors)
        parts.append(_coeff_prefix(c, not mono) + mono)
    return _join(parts)


def _qjson(c) -> dict:
    return {"coeff_num": int(c.numerator), "coeff_den": int(c.denominator)}


def to_json(u) -> dict:
    """JSON term list for any sparse element."""
    if isinstance(u, PolyElem):
        return {"kind": "poly", "nvars": u.nvars,
                "terms": [{"exponents": list(k), **_qjson(c)} for k, c in u.terms.items()]}
    if isinstance(u, TorusElem):
        return {"kind": "torus", "rank": u.rank,
                "terms": [{"lattice": list(k), **_qjson(c)} for k, c in u.terms.items()]}
    if isinstance(u, MixedElem):
        return {"kind": "mixed", "rank": u.rank, "nvars": u.nvars,
                "terms": [{"lattice": list(l), "exponents": list(e), **_qjson(c)}
                          for (l, e), c in u.terms.items()]}
    if isinstance(u, RatElem):
        return {"kind": "rational", "delta_power": u.delta_power,
                "numerator": to_json(u.numerator), "text": str(u)}
    raise TypeError(f"cannot serialise {type(u).__name__}")


def from_json(data: dict, ring=None):
    kind = data["kind"]
    q = lambda t: mpq(t["coeff_num"], t["coeff_den"])  # noqa: E731
    if kind == "poly":
        return PolyElem({tuple(t["exponents"]): q(t) for t in data["terms"]}, data["nvars"])
    if kind == "torus":
        return TorusElem({tuple(t["lattice"]): q(t) for t in data["terms"]}, data["rank"])
    if kind == "mixed":
        return MixedElem({(tuple(t["lattice"]), tuple(t["exponents"])): q(t) for t in data["terms"]},
                         data["rank"], data["nvars"])
    if kind == "rational":
        return RatElem(from_json(data["numerator"]), data["delta_power"], ring)
    raise ValueError(f"unknown element kind {kind!r}")


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree exactly ``degree`` (lexicographically descending)."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    return [m for d in range(degree + 1) for m in monomials(nvars, d)]


def random_poly(nvars: int, degree: int, rng, nterms: int = 6, coeff_range: int = 5) -> PolyElem:
    """Seeded random polynomial of degree at most ``degree``."""
    pool = monomials_upto(nvars, degree)
    out = {}
    for _ in range(nterms):
        k = rng.choice(pool)
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            out[k] = out.get(k, 0) + c
    return PolyElem(out, nvars)


def product(items: Iterable, start):
    out = start
    for x in items:
        out = out * x
    return out


__all__ = [
    "Q", "as_q", "NotDivisibleError", "PolyElem", "TorusElem", "MixedElem", "RatElem",
    "divide_exact", "rat_normalize", "reynolds", "render_poly", "render_mixed", "to_json",
    "from_json", "monomials", "monomials_upto", "random_poly", "product",
]

