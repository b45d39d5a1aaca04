"""Sparse exact row reduction over Q.

Vectors are ``dict[key, mpq]``.  :class:`Echelon` keeps a reduced row-echelon
basis whose pivots are chosen by an ordering on keys, which is enough for
membership, rank, intersections (Zassenhaus) and kernels.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .polyalg import ZERO

Vector = dict


def _identity_order(key):
    return key


class Echelon:
    """Reduced row-echelon basis of a subspace of Q^(keys).

    The pivot of each row is its smallest key under ``order``; all other rows
    vanish in that column.
    """

    def __init__(self, order: Callable[[Hashable], object] = _identity_order):
        self.order = order
        self.rows: dict = {}  # pivot -> row (pivot coefficient 1)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        out = Echelon(self.order)
        out.rows = {p: dict(r) for p, r in self.rows.items()}
        return out

    def reduce(self, vec: Vector) -> Vector:
        """Remainder of ``vec`` modulo the span (zero dict iff a member)."""
        v = {k: c for k, c in vec.items() if c != 0}
        rows = self.rows
        for p in [k for k in v if k in rows]:
            c = v.get(p)
            if not c:
                continue
            for k, x in rows[p].items():
                nv = v.get(k, ZERO) - c * x
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; return True when the span grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v, key=self.order)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    nv = row.get(k, ZERO) - c * x
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
        self.rows[p] = v
        return True

    def extend(self, vecs: Iterable[Vector]) -> int:
        return sum(self.add(v) for v in vecs)

    def basis(self) -> list[Vector]:
        return [dict(sorted(self.rows[p].items(), key=lambda kv: self.order(kv[0])))
                for p in sorted(self.rows, key=self.order)]

    def issubspace(self, other: "Echelon") -> bool:
        return all(other.contains(r) for r in self.rows.values())

    def __eq__(self, other):
        if not isinstance(other, Echelon):
            return NotImplemented
        return self.rank == other.rank and self.issubspace(other)


def span(vectors: Iterable[Vector], order=_identity_order) -> Echelon:
    e = Echelon(order)
    e.extend(vectors)
    return e


def intersect(a: Echelon, b: Echelon) -> Echelon:
    """Zassenhaus intersection of two row spaces."""
    order = a.order
    z = Echelon(lambda k: (k[0], order(k[1])))
    for r in a.rows.values():
        z.add({**{(0, k): c for k, c in r.items()}, **{(1, k): c for k, c in r.items()}})
    for r in b.rows.values():
        z.add({(0, k): c for k, c in r.items()})
    out = Echelon(order)
    for row in z.rows.values():
        if all(k[0] == 1 for k in row):
            out.add({k[1]: c for k, c in row.items()})
    return out


def kernel(images: list[Vector], extra: Iterable[Vector] = ()) -> list[dict[int, object]]:
    """Kernel of ``x -> sum x_i images[i]`` modulo the span of ``extra``.

    Returns a basis of ``{x : sum x_i images[i] in span(extra)}`` as sparse
    coefficient dicts ``{i: x_i}``.
    """
    z = Echelon()
    for v in extra:
        z.add({(0, k): c for k, c in v.items()})
    for i, v in enumerate(images):
        row = {(0, k): c for k, c in v.items()}
        row[(1, i)] = row.get((1, i), ZERO) + 1
        z.add(row)
    out = []
    for row in z.rows.values():
        if all(k[0] == 1 for k in row):
            out.append({k[1]: c for k, c in sorted(row.items())})
    return sorted(out, key=lambda d: sorted(d))


def restrict(e: Echelon, allowed: Callable[[Hashable], bool]) -> Echelon:
    """Intersection of the span with the coordinate subspace ``allowed``."""
    z = Echelon(lambda k: (0 if not allowed(k) else 1, e.order(k)))
    for r in e.rows.values():
        z.add(r)
    out = Echelon(e.order)
    for row in z.rows.values():
        if all(allowed(k) for k in row):
            out.add(row)
    return out


def solve(images: list[Vector], target: Vector):
    """Some ``x`` with ``sum x_i images[i] == target`` as ``{i: x_i}``, or None."""
    z = Echelon()
    for i, v in enumerate(images):
        row = {(0, k): c for k, c in v.items()}
        row[(1, i)] = row.get((1, i), ZERO) + 1
        z.add(row)
    rem = z.reduce({(0, k): c for k, c in target.items()})
    if any(k[0] == 0 for k in rem):
        return None
    return {k[1]: -c for k, c in sorted(rem.items())}
