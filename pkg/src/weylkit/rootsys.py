"""Cartan data, positive (co)roots and a fully enumerated Weyl group.

Conventions (used everywhere in the package):

* ``Sym(t)`` has one variable ``a_i`` per simple coroot.
* Lattice points are written in fundamental-weight coordinates.
* ``cartan_matrix[i][j] = <alpha_j, coroot_i>``; the simple reflection acts on
  ``t`` by ``s_i(h) = h - alpha_i(h) coroot_i``.

The convention is validated by ``s_i^2 = 1`` and the braid relations rather
than trusted; see :meth:`RootSystem.check_relations`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .polyalg import MixedElem, PolyElem, TorusElem, product

SUPPORTED = {("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("G", 2)}


class UnsupportedCartanDatum(ValueError):
    pass


Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def _matvec(a: Matrix, v) -> tuple[int, ...]:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def cartan_matrix(cartan_type: str, rank: int) -> Matrix:
    if (cartan_type, rank) not in SUPPORTED:
        raise UnsupportedCartanDatum(f"unsupported Cartan datum {cartan_type}{rank}")
    c = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)] for i in range(rank)]
    n = rank - 1
    if cartan_type == "B":
        c[n][n - 1] = -2
    elif cartan_type == "C":
        c[n - 1][n] = -2
    elif cartan_type == "G":
        c[0][1] = -3
    return tuple(tuple(r) for r in c)


@dataclass(frozen=True)
class WeylElement:
    index: int
    reduced_word: tuple[int, ...]
    action_on_t: Matrix
    action_on_lattice: Matrix

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def to_json(self) -> dict:
        return {
            "id": self.index,
            "word": [i + 1 for i in self.reduced_word],
            "length": self.length,
            "action_on_t": [list(r) for r in self.action_on_t],
            "action_on_lattice": [list(r) for r in self.action_on_lattice],
        }


@dataclass(frozen=True)
class RootSystem:
    """Immutable root datum for one supported Cartan type."""

    cartan_type: str
    rank: int
    cartan_matrix: Matrix
    positive_roots: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    weyl: tuple[WeylElement, ...]
    longest: int
    _table: dict = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def order(self) -> int:
        return len(self.weyl)

    @property
    def identity(self) -> WeylElement:
        return self.weyl[0]

    @property
    def w0(self) -> WeylElement:
        return self.weyl[self.longest]

    def simple(self, i: int) -> WeylElement:
        return self.weyl[self._table["simple"][i]]

    def mul(self, u: WeylElement | int, v: WeylElement | int) -> WeylElement:
        u = u.index if isinstance(u, WeylElement) else u
        v = v.index if isinstance(v, WeylElement) else v
        return self.weyl[self._table["mul"][u][v]]

    def inverse(self, w: WeylElement | int) -> WeylElement:
        w = w.index if isinstance(w, WeylElement) else w
        return self.weyl[self._table["inv"][w]]

    def element_from_word(self, word) -> WeylElement:
        w = self.identity
        for i in word:
            w = self.mul(w, self.simple(i))
        return w

    def is_reduced(self, word) -> bool:
        return self.element_from_word(word).length == len(word)

    # roots ------------------------------------------------------------------
    def root_in_weights(self, root) -> tuple[int, ...]:
        """Root in simple-root coordinates -> fundamental-weight coordinates."""
        c = self.cartan_matrix
        return tuple(sum(root[j] * c[i][j] for j in range(self.rank)) for i in range(self.rank))

    def coroot_poly(self, coroot) -> PolyElem:
        return PolyElem.linear(list(coroot))

    @cached_property
    def delta(self) -> PolyElem:
        """Product of the positive coroots as a polynomial in ``a_1..a_r``."""
        return product((self.coroot_poly(c) for c in self.positive_coroots), PolyElem.const(1, self.rank))

    def reflection(self, k: int) -> WeylElement:
        """The Weyl element reflecting in the ``k``-th positive root."""
        return self.weyl[self._table["reflections"][k]]

    def pairing(self, weight, coroot) -> int:
        """``<weight, coroot>`` for a weight in fundamental-weight coordinates."""
        return sum(a * b for a, b in zip(weight, coroot))

    @cached_property
    def _lattice_inverse(self):
        from fractions import Fraction

        # inverse of the matrix whose columns are the simple roots in weight coordinates
        n = self.rank
        m = [[Fraction(self.cartan_matrix[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            f = m[col][col]
            m[col] = [x / f for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    g = m[r][col]
                    m[r] = [x - g * y for x, y in zip(m[r], m[col])]
        return [row[n:] for row in m]

    def lattice_class(self, lam) -> tuple:
        """Class of a weight modulo the root lattice (hashable)."""
        inv = self._lattice_inverse
        coords = [sum(inv[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank)]
        return tuple((x - (x.numerator // x.denominator)) for x in coords)

    def height(self, lam) -> int:
        """W-invariant height: largest |coordinate| over the W-orbit of ``lam``."""
        return max(max((abs(x) for x in _matvec(w.action_on_lattice, lam)), default=0) for w in self.weyl)

    def orbit(self, lam) -> list[tuple[int, ...]]:
        return sorted({_matvec(w.action_on_lattice, tuple(lam)) for w in self.weyl})

    def check_relations(self) -> None:
        """Assert ``s_i^2 = 1`` and the braid relations on both representations."""
        n = self.rank
        eye = _identity(n)
        orders = {0: 2, 1: 3, 2: 4, 3: 6}
        for i in range(n):
            si = self.simple(i)
            assert _matmul(si.action_on_t, si.action_on_t) == eye
            assert _matmul(si.action_on_lattice, si.action_on_lattice) == eye
            for j in range(i + 1, n):
                sj = self.simple(j)
                m = orders[self.cartan_matrix[i][j] * self.cartan_matrix[j][i]]
                for attr in ("action_on_t", "action_on_lattice"):
                    pair = _matmul(getattr(si, attr), getattr(sj, attr))
                    acc = eye
                    for _ in range(m):
                        acc = _matmul(acc, pair)
                    assert acc == eye, f"braid relation fails for ({i}, {j})"

    def to_json(self) -> dict:
        return {
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "positive_roots": [list(r) for r in self.positive_roots],
            "positive_coroots": [list(r) for r in self.positive_coroots],
            "weyl_order": self.order,
            "longest": self.longest,
            "delta": str(self.delta),
            "weyl": [w.to_json() for w in self.weyl],
        }


def _simple_reflections(c: Matrix):
    n = len(c)
    on_t, on_lattice, on_roots = [], [], []
    for i in range(n):
        # s_i(coroot_j) = coroot_j - C[j][i] coroot_i   (column j)
        t = [[int(r == col) - (c[col][i] if r == i else 0) for col in range(n)] for r in range(n)]
        # s_i(w_j) = w_j - delta_ij alpha_i,  alpha_i = sum_k C[k][i] w_k
        lat = [[int(r == col) - (c[r][i] if col == i else 0) for col in range(n)] for r in range(n)]
        # s_i(alpha_j) = alpha_j - C[i][j] alpha_i
        roots = [[int(r == col) - (c[i][col] if r == i else 0) for col in range(n)] for r in range(n)]
        on_t.append(tuple(map(tuple, t)))
        on_lattice.append(tuple(map(tuple, lat)))
        on_roots.append(tuple(map(tuple, roots)))
    return on_t, on_lattice, on_roots


def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Build a root system of a supported type; BFS-enumerates its Weyl group."""
    cartan_type = cartan_type.upper()
    c = cartan_matrix(cartan_type, rank)
    on_t, on_lattice, on_roots = _simple_reflections(c)

    # BFS by right multiplication; the first word reaching an element is kept
    eye = _identity(rank)
    elems = [((), eye, eye, eye)]
    seen = {eye: 0}
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        word, mt, ml, mr = elems[idx]
        for i in range(rank):
            nt = _matmul(mt, on_t[i])
            if nt in seen:
                continue
            seen[nt] = len(elems)
            elems.append((word + (i,), nt, _matmul(ml, on_lattice[i]), _matmul(mr, on_roots[i])))
            queue.append(seen[nt])

    weyl = tuple(WeylElement(k, e[0], e[1], e[2]) for k, e in enumerate(elems))
    root_mats = [e[3] for e in elems]

    # positive roots/coroots as orbits of (alpha_i, coroot_i) pairs
    pairs = set()
    for k, w in enumerate(weyl):
        for i in range(rank):
            unit = tuple(int(j == i) for j in range(rank))
            root = _matvec(root_mats[k], unit)
            coroot = _matvec(w.action_on_t, unit)
            if all(x >= 0 for x in root):
                pairs.add((root, coroot))
    pairs = sorted(pairs, key=lambda rc: (sum(rc[0]), tuple(-x for x in rc[0])))
    roots = tuple(p[0] for p in pairs)
    coroots = tuple(p[1] for p in pairs)

    mul = [[seen[_matmul(u.action_on_t, v.action_on_t)] for v in weyl] for u in weyl]
    inv = [row.index(0) for row in mul]
    simple = [seen[on_t[i]] for i in range(rank)]
    longest = max(range(len(weyl)), key=lambda k: (weyl[k].length, -k))

    # reflection in a positive root: h -> h - alpha(h) coroot on t
    reflections = []
    for root, coroot in pairs:
        alpha_w = tuple(sum(root[j] * c[i][j] for j in range(rank)) for i in range(rank))
        mat = tuple(
            tuple(int(r == col) - coroot[r] * alpha_w[col] for col in range(rank)) for r in range(rank)
        )
        reflections.append(seen[mat])

    rs = RootSystem(
        cartan_type=cartan_type,
        rank=rank,
        cartan_matrix=c,
        positive_roots=roots,
        positive_coroots=coroots,
        weyl=weyl,
        longest=longest,
        _table={"mul": mul, "inv": inv, "simple": simple, "reflections": reflections},
    )
    return rs


_CACHE: dict = {}


def root_system(cartan_type: str, rank: int) -> RootSystem:
    """Cached :func:`build_root_system`."""
    key = (cartan_type.upper(), rank)
    if key not in _CACHE:
        _CACHE[key] = build_root_system(*key)
    return _CACHE[key]


# --------------------------------------------------------------------------
# W-actions on the ambient rings
# --------------------------------------------------------------------------


def _images(w: WeylElement) -> list[PolyElem]:
    m = w.action_on_t
    n = len(m)
    return [PolyElem.linear([m[i][j] for i in range(n)]) for j in range(n)]


def act_on_poly(w: WeylElement, p: PolyElem) -> PolyElem:
    """``w(p)`` for ``p`` in the simple-coroot variables."""
    if p.nvars != len(w.action_on_t):
        raise ValueError(f"dimension mismatch: {p.nvars} variables for rank {len(w.action_on_t)}")
    if w.length == 0:
        return p
    return p.substitute(_images(w))


def act_on_torus(w: WeylElement, f: TorusElem) -> TorusElem:
    """``e^lambda -> e^{w lambda}``."""
    if f.rank != len(w.action_on_lattice):
        raise ValueError("lattice-rank mismatch")
    m = w.action_on_lattice
    return TorusElem({_matvec(m, k): c for k, c in f.terms.items()}, f.rank)


def act_on_mixed(w: WeylElement, u: MixedElem) -> MixedElem:
    """Diagonal action on O(T) (x) Sym(t)."""
    if u.rank != len(w.action_on_lattice) or u.nvars != len(w.action_on_t):
        raise ValueError("lattice-rank mismatch")
    if w.length == 0:
        return u
    m = w.action_on_lattice
    images = _images(w)
    out: dict = {}
    for lam, coeff in u.coefficients().items():
        wl = _matvec(m, lam)
        for k, c in coeff.substitute(images).terms.items():
            out[(wl, k)] = out.get((wl, k), 0) + c
    return MixedElem(out, u.rank, u.nvars)
