"""Ambient W-algebras with finite windows.

An ambient ring bundles a root system with a concrete commutative algebra
``A`` carrying a compatible W-action and a W-equivariant structure map
``Sym(t) -> A``.  Three kinds are provided:

* :class:`SymAlgebra`       -- ``A = Sym(t)`` itself (elements are ``PolyElem``).
* :class:`TorusSymAlgebra`  -- ``A = O(T) (x) Sym(t)`` (elements are ``MixedElem``).
* :class:`QuotientAlgebra`  -- ``Q[x_1..x_n] / (homogeneous relations)`` with the
  W-action given on generators; normal forms come from per-degree row reduction.

Every ring exposes the same small protocol (``act``, ``embed``, ``mul``,
``reduce``, ``coords``, ``try_divide`` ...) used by the Demazure operators and
the envelope code.  Coordinates are taken on a monomial basis; a coordinate key
knows its polynomial degree, its lattice height and its class modulo the root
lattice, which is how windows are sliced.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian

from .linalg import Echelon, solve
from .polyalg import (
    MixedElem,
    NotDivisibleError,
    PolyElem,
    divide_exact,
    monomials,
    render_mixed,
    render_poly,
)
from .rootsys import RootSystem, act_on_mixed, act_on_poly, root_system


@dataclass(frozen=True)
class Window:
    """Finite truncation: polynomial degree, lattice height and Delta-power caps."""

    degree: int
    height: int = 0
    delta_power: int = 1

    def __post_init__(self):
        if self.degree < 0 or self.height < 0 or self.delta_power < 0:
            raise ValueError(f"window bounds must be nonnegative: {self}")

    def to_json(self) -> dict:
        return {"degree": self.degree, "height": self.height, "delta_power": self.delta_power}


class InvalidPresentation(ValueError):
    pass


class AlgebraPresentation:
    """Common protocol of the ambient rings."""

    kind = "abstract"
    rs: RootSystem

    # element-level -------------------------------------------------------
    def one(self):
        raise NotImplementedError

    def zero(self):
        return self.one() * 0

    def embed(self, p: PolyElem):
        raise NotImplementedError

    def act(self, w, u):
        raise NotImplementedError

    def reduce(self, u):
        return u

    def is_zero(self, u) -> bool:
        return self.reduce(u).is_zero()

    def mul(self, a, b):
        return self.reduce(a * b)

    def coords(self, u) -> dict:
        return dict(self.reduce(u).terms)

    def from_coords(self, vec: dict):
        raise NotImplementedError

    def try_divide(self, u, p: PolyElem):
        """``q`` with ``q * embed(p) == u``, or None."""
        raise NotImplementedError

    def divide(self, u, p: PolyElem):
        q = self.try_divide(u, p)
        if q is None:
            raise NotDivisibleError(f"{self.render(u)} is not divisible by {p}", u)
        return q

    def render(self, u) -> str:
        return str(u)

    # key-level -------------------------------------------------------------
    def key_degree(self, key) -> int:
        raise NotImplementedError

    def key_order(self, key):
        """Pivot order for row reduction: larger monomials are eliminated first."""
        return tuple(-e for e in key)

    def key_height(self, key) -> int:
        return 0

    def key_class(self, key) -> tuple:
        return ()

    def degree(self, u) -> int:
        return max((self.key_degree(k) for k in self.coords(u)), default=-1)

    def height(self, u) -> int:
        return max((self.key_height(k) for k in self.coords(u)), default=0)

    def basis(self, height: int, degree: int) -> list:
        """Coordinate keys of the monomial basis with bounded height and degree."""
        raise NotImplementedError

    def element(self, key):
        return self.from_coords({key: 1})

    def check(self, degree: int = 4) -> None:
        """Validate the W-action and the structure map (raises on failure)."""
        rs = self.rs
        n = rs.rank
        for w in rs.weyl:
            for j in range(n):
                a = PolyElem.var(j, n)
                lhs = self.act(w, self.embed(a))
                rhs = self.embed(act_on_poly(w, a))
                if not self.is_zero(lhs - rhs):
                    raise InvalidPresentation(f"structure map is not W-equivariant at w={w.reduced_word}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "root_system": self.rs.name}


class SymAlgebra(AlgebraPresentation):
    """``Sym(t) = Q[a_1..a_r]``."""

    kind = "sym"

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.nvars = rs.rank

    def one(self):
        return PolyElem.const(1, self.nvars)

    def embed(self, p):
        return p

    def act(self, w, u):
        return act_on_poly(w, u)

    def from_coords(self, vec):
        return PolyElem(vec, self.nvars)

    def try_divide(self, u, p):
        try:
            return divide_exact(u, p)
        except NotDivisibleError:
            return None

    def render(self, u):
        return render_poly(u)

    def key_degree(self, key):
        return sum(key)

    def basis(self, height, degree):
        return [m for d in range(degree + 1) for m in monomials(self.nvars, d)]


class TorusSymAlgebra(AlgebraPresentation):
    """``O(T) (x) Sym(t)`` for the simply connected torus (full weight lattice)."""

    kind = "torus"

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.nvars = rs.rank
        self._height = lru_cache(maxsize=None)(rs.height)
        self._class = lru_cache(maxsize=None)(rs.lattice_class)

    def one(self):
        return MixedElem.const(1, self.rank, self.nvars)

    def embed(self, p):
        return MixedElem.from_poly(p, self.rank)

    def act(self, w, u):
        return act_on_mixed(w, u)

    def from_coords(self, vec):
        return MixedElem(vec, self.rank, self.nvars)

    def try_divide(self, u, p):
        try:
            return divide_exact(u, p)
        except NotDivisibleError:
            return None

    def render(self, u):
        return render_mixed(u)

    def key_degree(self, key):
        return sum(key[1])

    def key_height(self, key):
        return self._height(key[0])

    def key_class(self, key):
        return self._class(key[0])

    def key_order(self, key):
        return (tuple(-x for x in key[0]), tuple(-e for e in key[1]))

    def lattice_points(self, height: int) -> list[tuple[int, ...]]:
        """Weights of height at most ``height``, sorted."""
        box = range(-height, height + 1)
        return sorted(lam for lam in cartesian(box, repeat=self.rank) if self._height(lam) <= height)

    def basis(self, height, degree):
        pts = self.lattice_points(height)
        return [(lam, m) for d in range(degree + 1) for m in monomials(self.nvars, d) for lam in pts]


class QuotientAlgebra(AlgebraPresentation):
    """``Q[x_1..x_n]/(relations)`` with a W-action on the generators.

    ``simple_images[i][k]`` is the image of generator ``k`` under the ``i``-th
    simple reflection (a polynomial in the generators) and ``structure[j]`` is
    the image of the coroot variable ``a_j``.  All generators have degree 1
    and the relations must be homogeneous, so each degree slice has a finite
    normal form computed by row reduction.
    """

    kind = "quotient"

    def __init__(self, rs: RootSystem, names, relations, simple_images, structure, label="quotient"):
        self.rs = rs
        self.names = list(names)
        self.nvars = len(self.names)
        self.relations = [r for r in relations]
        self.simple_images = [list(im) for im in simple_images]
        self.structure = list(structure)
        self.label = label
        for r in self.relations:
            if r.nvars != self.nvars or not r.is_homogeneous() or r.is_zero():
                raise InvalidPresentation(f"relation {r} must be a nonzero homogeneous polynomial")
        if len(self.simple_images) != rs.rank or any(len(im) != self.nvars for im in self.simple_images):
            raise InvalidPresentation("need one image per generator for every simple reflection")
        if len(self.structure) != rs.rank:
            raise InvalidPresentation("need one structure image per coroot variable")
        self._slices: dict[int, Echelon] = {}

    @staticmethod
    def _order(key):
        # pivots on the lexicographically largest monomial: x-heavy terms are eliminated
        return tuple(-e for e in key)

    def _slice(self, degree: int) -> Echelon:
        if degree not in self._slices:
            e = Echelon(self._order)
            for r in self.relations:
                dr = r.degree()
                if dr > degree:
                    continue
                for m in monomials(self.nvars, degree - dr):
                    e.add((r * PolyElem.monomial(m)).terms)
            self._slices[degree] = e
        return self._slices[degree]

    def one(self):
        return PolyElem.const(1, self.nvars)

    def embed(self, p):
        return self.reduce(p.substitute(self.structure))

    def act(self, w, u):
        for i in reversed(w.reduced_word):
            u = u.substitute(self.simple_images[i])
        return self.reduce(u)

    def reduce(self, u):
        if not self.relations or u.is_zero():
            return u
        out: dict = {}
        for d, comp in u.components().items():
            out.update(self._slice(d).reduce(comp.terms))
        return PolyElem(out, self.nvars)

    def from_coords(self, vec):
        return PolyElem(vec, self.nvars)

    def try_divide(self, u, p):
        q = self.embed(p)
        if q.is_zero() or not q.is_homogeneous():
            raise ValueError("division needs a nonzero homogeneous divisor")
        dq = q.degree()
        u = self.reduce(u)
        total = PolyElem.zero(self.nvars)
        for d, comp in u.components().items():
            if d < dq:
                return None
            keys = self.normal_monomials(d - dq)
            images = [self.reduce(q * PolyElem.monomial(k)).terms for k in keys]
            x = solve(images, comp.terms)
            if x is None:
                return None
            total = total + PolyElem({keys[i]: c for i, c in x.items()}, self.nvars)
        return total

    def render(self, u):
        return render_poly(u, self.names)

    def key_degree(self, key):
        return sum(key)

    def normal_monomials(self, degree: int) -> list[tuple[int, ...]]:
        pivots = self._slice(degree).rows
        return [m for m in monomials(self.nvars, degree) if m not in pivots]

    def basis(self, height, degree):
        return [m for d in range(degree + 1) for m in self.normal_monomials(d)]

    def check(self, degree: int = 4) -> None:
        super().check(degree)
        n = self.nvars
        gens = [PolyElem.var(k, n) for k in range(n)]
        for i, images in enumerate(self.simple_images):
            for r in self.relations:
                if not self.is_zero(r.substitute(images)):
                    raise InvalidPresentation(f"relation {self.render(r)} is not stable under s{i + 1}")
            for k, g in enumerate(gens):
                if not self.is_zero(g.substitute(images).substitute(images) - g):
                    raise InvalidPresentation(f"s{i + 1} does not square to the identity on {self.names[k]}")
        # braid relations on generators
        rs = self.rs
        orders = {0: 2, 1: 3, 2: 4, 3: 6}
        for i in range(rs.rank):
            for j in range(i + 1, rs.rank):
                m = orders[rs.cartan_matrix[i][j] * rs.cartan_matrix[j][i]]
                for g in gens:
                    u = g
                    for _ in range(m):
                        u = u.substitute(self.simple_images[j]).substitute(self.simple_images[i])
                    if not self.is_zero(u - g):
                        raise InvalidPresentation(f"braid relation fails for s{i + 1}, s{j + 1}")
        # the structure map must be injective on every degree slice
        for d in range(degree + 1):
            images = [self.embed(PolyElem.monomial(m)).terms for m in monomials(rs.rank, d)]
            e = Echelon()
            if e.extend(images) != len(images):
                raise InvalidPresentation(f"structure map is not injective in degree {d}")

    def to_json(self):
        return {
            "kind": self.kind,
            "label": self.label,
            "root_system": self.rs.name,
            "generators": self.names,
            "relations": [self.render(r) for r in self.relations],
            "structure": [self.render(s) for s in self.structure],
        }


def sphere_algebra() -> QuotientAlgebra:
    """``Q[x,y,z]/(x^2+y^2+z^2)`` over A1 with ``s = -1`` and ``a1 -> z``."""
    rs = root_system("A", 1)
    x, y, z = (PolyElem.var(k, 3) for k in range(3))
    return QuotientAlgebra(
        rs,
        ["x", "y", "z"],
        [x * x + y * y + z * z],
        [[-x, -y, -z]],
        [z],
        label="sphere",
    )


def make_ring(kind: str, rs: RootSystem | None = None) -> AlgebraPresentation:
    """Ring by name: ``sym``, ``torus`` or the built-in ``sphere``."""
    if kind == "sphere":
        return sphere_algebra()
    if rs is None:
        raise ValueError(f"ring kind {kind!r} needs a root system")
    if kind == "sym":
        return SymAlgebra(rs)
    if kind == "torus":
        return TorusSymAlgebra(rs)
    raise ValueError(f"unknown ring kind {kind!r}")
