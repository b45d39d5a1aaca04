"""Demazure envelopes, isotypic spans, ideal windows and torsion checks.

Everything here is computed on finite windows.  An element ``e = num/Delta^k``
of ``A[1/Delta]`` is stored through the coordinates of ``Delta^K * e`` in the
ambient ring, where ``K`` is the Delta-power cap of the window.  Vectors are
split into slices keyed by ``(effective degree, lattice class)``; the
effective degree of ``num/Delta^k`` is ``deg(num) - k * #positive roots``.

The envelope window ``E(A)_{d,h,K}`` is the span of the words
``a * g_1 * ... * g_m`` where ``a`` runs over a monomial basis of ``A``, each
``g_i`` is one of the adjoined fractions, the Delta-powers add up to at most
``K``, the heights add up to at most ``h`` and the effective degrees add up to
at most ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .ambient import AlgebraPresentation, Window
from .linalg import Echelon, intersect, kernel, restrict, solve
from .nilhecke import demazure_simple, demazure_w0_direct, demazure_word
from .polyalg import PolyElem, Q, RatElem, monomials, monomials_upto, render_poly, reynolds


class WindowError(ValueError):
    """A requested computation does not fit the window."""


def _npos(ring) -> int:
    return len(ring.rs.positive_coroots)


def _class_json(cls) -> list[str]:
    return [str(Fraction(x)) for x in cls]


def _split(value):
    if isinstance(value, RatElem):
        return value.numerator, value.delta_power
    return value, 0


# --------------------------------------------------------------------------
# spans of window elements
# --------------------------------------------------------------------------


class SpanBasis:
    """Row-reduced span of window elements, one echelon per slice.

    ``scale`` is the Delta-power ``K`` by which every element is multiplied
    before taking coordinates.
    """

    def __init__(self, ring: AlgebraPresentation, scale: int = 0):
        self.ring = ring
        self.scale = scale
        self.slices: dict[tuple, Echelon] = {}
        self._n = _npos(ring)
        self._delta_pows = {0: ring.one()}

    def _dpow(self, m: int):
        if m not in self._delta_pows:
            self._delta_pows[m] = self.ring.mul(self._dpow(m - 1), self.ring.embed(self.ring.rs.delta))
        return self._delta_pows[m]

    def vector(self, e) -> dict:
        num, k = _split(e)
        if k > self.scale:
            raise WindowError(f"Delta-power {k} exceeds the window cap {self.scale}")
        if k < self.scale:
            num = self.ring.mul(num, self._dpow(self.scale - k))
        return self.ring.coords(num)

    def slice_of(self, key) -> tuple:
        ring = self.ring
        return (ring.key_degree(key) - self._n * self.scale, ring.key_class(key))

    def split(self, vec: dict) -> dict:
        parts: dict = {}
        for k, c in vec.items():
            parts.setdefault(self.slice_of(k), {})[k] = c
        return parts

    def _echelon(self, sl) -> Echelon:
        if sl not in self.slices:
            self.slices[sl] = Echelon(self.ring.key_order)
        return self.slices[sl]

    def add_vector(self, vec: dict) -> bool:
        grew = False
        for sl, part in self.split(vec).items():
            grew |= self._echelon(sl).add(part)
        return grew

    def add(self, e) -> bool:
        return self.add_vector(self.vector(e))

    def extend(self, elems) -> int:
        return sum(self.add(e) for e in elems)

    def contains_vector(self, vec: dict) -> bool:
        for sl, part in self.split(vec).items():
            e = self.slices.get(sl)
            if e is None or not e.contains(part):
                return False
        return True

    def contains(self, e) -> bool:
        return self.contains_vector(self.vector(e))

    @property
    def rank(self) -> int:
        return sum(e.rank for e in self.slices.values())

    def dims(self, interior=None) -> dict:
        return {sl: e.rank for sl, e in sorted(self.slices.items(), key=_slice_sort)
                if e.rank and (interior is None or interior(sl))}

    def rows(self, interior=None):
        """``(slice, row)`` pairs of the basis, in a deterministic order."""
        for sl, e in sorted(self.slices.items(), key=_slice_sort):
            if interior is not None and not interior(sl):
                continue
            for row in e.basis():
                yield sl, row

    def element(self, row: dict) -> RatElem:
        return RatElem(self.ring.from_coords(row), self.scale, self.ring)

    def elements(self, interior=None) -> list[RatElem]:
        return [self.element(r) for _, r in self.rows(interior)]

    def issubspace(self, other: "SpanBasis", interior=None):
        """``(True, None)`` or ``(False, witness)`` for ``self`` inside ``other``."""
        if other.scale != self.scale:
            raise ValueError("spans use different Delta scales")
        for sl, row in self.rows(interior):
            target = other.slices.get(sl)
            if target is None or not target.contains(row):
                return False, {"slice": slice_json(sl), "element": str(self.element(row))}
        return True, None

    def compare(self, other: "SpanBasis", interior=None) -> dict:
        fwd, w1 = self.issubspace(other, interior)
        back, w2 = other.issubspace(self, interior)
        return {
            "left_in_right": fwd,
            "right_in_left": back,
            "equal": fwd and back,
            "witness": w1 or w2,
            "dims_left": dims_json(self.dims(interior)),
            "dims_right": dims_json(other.dims(interior)),
        }

    def fixed_subspace(self, interior=None) -> "SpanBasis":
        """W-fixed part, by averaging each basis row (the span must be W-stable)."""
        ring, rs = self.ring, self.ring.rs
        out = SpanBasis(ring, self.scale)
        for _, row in self.rows(interior):
            u = ring.from_coords(row)
            total = ring.zero()
            for w in rs.weyl:
                img = ring.act(w, u)
                # Delta^K e is fixed by w exactly when w multiplies it by sign(w)^K
                total = total + (img if w.sign ** self.scale > 0 else -img)
            out.add_vector(ring.coords(total))
        return out

    def to_json(self) -> dict:
        return {"scale": self.scale, "rank": self.rank, "dims": dims_json(self.dims())}


def _slice_sort(item):
    sl = item[0]
    return (sl[0], tuple(Fraction(x) for x in sl[1]))


def slice_json(sl) -> dict:
    return {"effective_degree": sl[0], "lattice_class": _class_json(sl[1])}


def dims_json(dims: dict) -> list:
    return [{**slice_json(sl), "dim": d} for sl, d in dims.items()]


def effective_interior(bound: int):
    return lambda sl: sl[0] <= bound


# --------------------------------------------------------------------------
# isotypic pieces
# --------------------------------------------------------------------------


def _grouped_basis(ring, height, degree):
    groups: dict = {}
    for key in ring.basis(height, degree):
        g = (ring.key_height(key), ring.key_degree(key), ring.key_class(key))
        groups.setdefault(g, []).append(key)
    return groups


def isotypic_basis(ring: AlgebraPresentation, height: int, degree: int, component: str):
    """``[(element, height, degree)]`` spanning the isotypic part of the window.

    Projections are row-reduced separately for each (height, degree, class)
    group of monomials, so every basis element is homogeneous in all three.
    """
    out = []
    for (h, d, _), keys in sorted(_grouped_basis(ring, height, degree).items(),
                                  key=lambda kv: (kv[0][1], kv[0][0], tuple(Fraction(x) for x in kv[0][2]))):
        e = Echelon(ring.key_order)
        for key in keys:
            e.add(ring.coords(reynolds(ring, ring.element(key), component)))
        out.extend((ring.from_coords(row), h, d) for row in e.basis())
    return out


def sign_basis(ring: AlgebraPresentation, window: Window) -> list:
    """Basis of the sign-isotypic part of the ``(height, degree)`` window."""
    return [u for u, _, _ in isotypic_basis(ring, window.height, window.degree, "sign")]


def invariant_basis(ring: AlgebraPresentation, window: Window) -> list:
    return [u for u, _, _ in isotypic_basis(ring, window.height, window.degree, "trivial")]


# --------------------------------------------------------------------------
# envelope windows
# --------------------------------------------------------------------------


@dataclass
class _Gen:
    numerator: object
    delta_power: int
    height: int
    eff: int
    label: str = ""


def _fraction_gens(ring, window: Window, recipe: str) -> list[_Gen]:
    """Adjoined fractions with positive Delta-power, by recipe.

    ``sign``: ``f/Delta`` for ``f`` in the sign basis.
    ``demazure``: ``D_{w0}(a)`` for ``a`` in the monomial basis, via a reduced word.
    """
    n = _npos(ring)
    top = window.degree + n * window.delta_power
    gens = []
    if recipe == "sign":
        for f, h, _ in isotypic_basis(ring, window.height, top, "sign"):
            r = RatElem(f, 1, ring)
            gens.append(r)
    elif recipe == "demazure":
        word = ring.rs.w0.reduced_word
        for key in ring.basis(window.height, top):
            r = RatElem.lift(demazure_word(ring, word, ring.element(key)), ring)
            if r.delta_power > 1:
                raise AssertionError(f"D_w0 produced Delta-power {r.delta_power}")
            gens.append(r)
    else:
        raise ValueError(f"unknown recipe {recipe!r}")
    out = []
    for r in gens:
        if r.is_zero() or r.delta_power == 0:
            continue
        out.append(_Gen(r.numerator, r.delta_power, ring.height(r.numerator), r.effective_degree(), str(r)))
    return out


def _base_elements(ring, window: Window, invariant: bool):
    """``[(element, height, degree)]`` for the A-part of the words."""
    n = _npos(ring)
    top = window.degree + n * window.delta_power
    if invariant:
        return isotypic_basis(ring, window.height, top, "trivial")
    return [(ring.element(k), ring.key_height(k), ring.key_degree(k)) for k in ring.basis(window.height, top)]


def envelope_window(ring: AlgebraPresentation, window: Window, recipe: str = "sign",
                    invariant_base: bool = False) -> SpanBasis:
    """Span of the window words of ``E(A)`` (or of ``A^W[j/Delta]`` with ``invariant_base``)."""
    K = window.delta_power
    span = SpanBasis(ring, K)
    gens = _fraction_gens(ring, window, recipe)
    base = _base_elements(ring, window, invariant_base)
    for m in range(K + 1):
        for combo in combinations_with_replacement(range(len(gens)), m):
            ks = sum(gens[i].delta_power for i in combo)
            hs = sum(gens[i].height for i in combo)
            es = sum(gens[i].eff for i in combo)
            if ks > K or hs > window.height or es > window.degree:
                continue
            prod = span._dpow(K - ks)
            for i in combo:
                prod = ring.mul(prod, gens[i].numerator)
            h_rem, d_rem = window.height - hs, window.degree - es
            for a, ha, da in base:
                if ha <= h_rem and da <= d_rem:
                    span.add_vector(ring.coords(ring.mul(a, prod)))
    return span


def generated_window(ring: AlgebraPresentation, gens: list, window: Window,
                     max_length: int | None = None) -> SpanBasis:
    """Span of monomials in named generators (RatElems) within the window budgets.

    A word's height and effective degree are the sums over its letters; its
    value must have Delta-power at most the window cap.  Generators with zero
    height and nonpositive effective degree need an explicit ``max_length``.
    """
    K = window.delta_power
    span = SpanBasis(ring, K)
    info = []
    for g in gens:
        r = RatElem.lift(g, ring)
        info.append((r, ring.height(r.numerator), r.effective_degree()))
    neg = sum(-e * (window.height // h) for _, h, e in info if e < 0 and h > 0)
    bounds = []
    for _, h, e in info:
        if h > 0:
            b = window.height // h
        elif e > 0:
            b = (window.degree + neg) // e
        elif max_length is not None:
            b = max_length
        else:
            raise WindowError("a generator of zero height and nonpositive degree needs max_length")
        bounds.append(b if max_length is None else min(b, max_length))
    total = max_length if max_length is not None else sum(bounds)
    one = RatElem(ring.one(), 0, ring)

    def walk(idx, value, hs, es, length):
        if idx == len(info):
            if es <= window.degree and value.delta_power <= K:
                span.add(value)
            return
        r, h, e = info[idx]
        cur = value
        for power in range(bounds[idx] + 1):
            if hs + power * h > window.height or length + power > total:
                break
            walk(idx + 1, cur, hs + power * h, es + power * e, length + power)
            cur = cur * r

    walk(0, one, 0, 0, 0)
    return span


def envelope_generators(ring: AlgebraPresentation, window: Window) -> list:
    """Generators of ``E(A)`` on the window: the A-basis and ``f/Delta`` for sign ``f``.

    Also asserts that the ``D_{w0}(a)`` recipe spans the same fractions.
    """
    n = _npos(ring)
    out = [RatElem(ring.element(k), 0, ring) for k in ring.basis(window.height, window.degree)]
    fr = SpanBasis(ring, 1)
    dz = SpanBasis(ring, 1)
    for f, _, _ in isotypic_basis(ring, window.height, window.degree + n, "sign"):
        r = RatElem(f, 1, ring)
        if r.delta_power > 1:
            raise AssertionError("adjoined generator with Delta-power above 1")
        fr.add(r)
        if r.delta_power == 1:
            out.append(r)
    for k in ring.basis(window.height, window.degree + n):
        dz.add(demazure_w0_direct(ring, ring.element(k)))
    if not fr.compare(dz)["equal"]:
        raise AssertionError("sign/Delta and D_w0(A) span different fractions")
    return out


def envelope_invariants(ring: AlgebraPresentation, window: Window) -> list:
    """Generators of ``E(A)^W``: an A^W spanning set and ``j/Delta`` for sign ``j``."""
    n = _npos(ring)
    out = [RatElem(u, 0, ring) for u in invariant_basis(ring, window)]
    for f, _, _ in isotypic_basis(ring, window.height, window.degree + n, "sign"):
        r = RatElem(f, 1, ring)
        if r.delta_power == 1:
            out.append(r)
    for g in out:
        for w in ring.rs.weyl:
            if RatElem(ring.act(w, g.numerator), g.delta_power, ring) * (w.sign ** g.delta_power) != g:
                raise AssertionError(f"{g} is not W-invariant")
    return out


def act_rat(ring, w, r: RatElem) -> RatElem:
    """``w(num/Delta^k) = sign(w)^k w(num)/Delta^k``."""
    img = ring.act(w, r.numerator)
    if w.sign ** r.delta_power < 0:
        img = -img
    return RatElem(img, r.delta_power, ring, normalize=False)


def is_invariant(ring, r) -> bool:
    r = RatElem.lift(r, ring)
    return all(act_rat(ring, w, r) == r for w in ring.rs.weyl)


def recipe_equality(ring: AlgebraPresentation, window: Window) -> dict:
    """Compare the word spans of ``A + D_{w0}(A)`` and ``A + sign/Delta``;
    then ``E^W`` (fixed part) against ``A^W[j/Delta]`` words."""
    e_sign = envelope_window(ring, window, "sign")
    e_dem = envelope_window(ring, window, "demazure")
    fixed = e_sign.fixed_subspace()
    words = envelope_window(ring, window, "sign", invariant_base=True)
    return {
        "window": window.to_json(),
        "recipes": e_sign.compare(e_dem),
        "invariants": fixed.compare(words),
        "spans": {"E": e_sign, "E_demazure": e_dem, "EW": fixed, "AW_words": words},
    }


def sym_invariant_generation(ring: AlgebraPresentation, window: Window, extra: int = 1) -> dict:
    """Is the ``E(A)`` window spanned by ``Sym(t) * E(A)^W``?

    Writing ``e = sum p_i e_i`` over a ``Sym^W``-basis ``p_i`` of ``Sym(t)`` can
    cost extra Delta factors in the ``e_i`` (in A1, ``e_1 = (e - e_0)/z``), so
    ``E(A)^W`` is taken on the window with ``extra`` more Delta-powers.
    """
    span = envelope_window(ring, window)
    wide = Window(window.degree, window.height, window.delta_power + extra)
    fixed = envelope_window(ring, wide).fixed_subspace()
    gen = SpanBasis(ring, wide.delta_power)
    n = ring.rs.rank
    for sl, row in fixed.rows():
        u = ring.from_coords(row)
        for p in monomials_upto(n, max(window.degree - sl[0], 0)):
            gen.add_vector(ring.coords(ring.mul(ring.embed(PolyElem.monomial(p)), u)))
    lifted = SpanBasis(ring, wide.delta_power)
    lifted.extend(span.elements())
    inside, witness = lifted.issubspace(gen)
    return {"window": window.to_json(), "extra_delta_power": extra, "E_in_sym_times_EW": inside,
            "witness": witness, "dims_E": dims_json(span.dims())}


# --------------------------------------------------------------------------
# modules closed under Demazure operators
# --------------------------------------------------------------------------


def check_closed_under_demazure(ring: AlgebraPresentation, span: SpanBasis, interior_degree: int) -> dict:
    """Closure of ``span`` under every ``D_s`` and surjectivity of
    ``Sym (x) span^W -> span`` on slices of effective degree ``<= interior_degree``."""
    interior = effective_interior(interior_degree)
    failures = []
    for sl, row in span.rows(effective_interior(interior_degree + 1)):
        e = span.element(row)
        for i in range(ring.rs.rank):
            img = RatElem.lift(demazure_simple(ring, i, e), ring)
            if img.delta_power > span.scale or not span.contains(img):
                failures.append({"slice": slice_json(sl), "element": str(e), "operator": i + 1, "image": str(img)})
    closed = not failures
    surjective = None
    if closed:
        inv = span.fixed_subspace(interior)
        gen = SpanBasis(ring, span.scale)
        n = ring.rs.rank
        for sl, row in inv.rows():
            m = ring.from_coords(row)
            for p in monomials_upto(n, max(interior_degree - sl[0], 0)):
                gen.add_vector(ring.coords(ring.mul(ring.embed(PolyElem.monomial(p)), m)))
        surjective, _ = span.issubspace(gen, interior)
    return {"closed": closed, "failures": failures[:5], "multiplication_surjective": surjective}


def emod_saturate(ring: AlgebraPresentation, generators: list, window: Window) -> dict:
    """Saturate ``span(generators)`` under all ``D_s``.

    Returns the saturated span, the number of rounds (the last one adds
    nothing), and the one-shot span of ``{D_w(m)}`` for comparison.
    """
    rs = ring.rs
    K = rs.w0.length
    span = SpanBasis(ring, K)
    frontier = []
    for g in generators:
        if span.add(g):
            frontier.append(RatElem.lift(g, ring))
    rounds = 0
    while frontier:
        rounds += 1
        new = []
        for e in frontier:
            for i in range(rs.rank):
                img = RatElem.lift(demazure_simple(ring, i, e), ring)
                if not img.is_zero() and span.add(img):
                    new.append(img)
        frontier = new
    oneshot = SpanBasis(ring, K)
    for g in generators:
        for w in rs.weyl:
            oneshot.add(demazure_word(ring, w.reduced_word, g))
    return {"span": span, "rounds": rounds, "oneshot": oneshot}


def emod_report(ring: AlgebraPresentation, window: Window) -> dict:
    """E_mod of the A-window: saturation, one-shot equality, Sym- and W-stability
    and ``E_mod^W = D_{w0}(M)`` on interior slices."""
    rs = ring.rs
    L = rs.w0.length
    gens = [ring.element(k) for k in ring.basis(window.height, window.degree)]
    sat = emod_saturate(ring, gens, window)
    span = sat["span"]
    bound = window.degree - L
    interior = effective_interior(bound)
    sym_ok, sym_wit = True, None
    w_ok, w_wit = True, None
    for sl, row in span.rows(effective_interior(bound - 1)):
        e = span.element(row)
        for j in range(rs.rank):
            img = e * RatElem(ring.embed(PolyElem.var(j, rs.rank)), 0, ring)
            if not span.contains(img):
                sym_ok, sym_wit = False, str(e)
    for sl, row in span.rows(interior):
        e = span.element(row)
        for i in range(rs.rank):
            if not span.contains(act_rat(ring, rs.simple(i), e)):
                w_ok, w_wit = False, str(e)
    dw0 = SpanBasis(ring, L)
    for g in gens:
        dw0.add(demazure_w0_direct(ring, g))
    trivial = span.fixed_subspace(interior).compare(dw0, interior)
    return {
        "rounds": sat["rounds"],
        "rounds_bound": L + 1,
        "oneshot": span.compare(sat["oneshot"], interior),
        "sym_stable": sym_ok,
        "sym_witness": sym_wit,
        "w_stable": w_ok,
        "w_witness": w_wit,
        "trivial_part": trivial,
        "span": span,
    }


# --------------------------------------------------------------------------
# counit localization
# --------------------------------------------------------------------------


def counit_localization_check(ring: AlgebraPresentation, window: Window, span: SpanBasis | None = None) -> dict:
    """``Delta^{l(w0)} E(A)`` lands in ``A`` and ``A`` sits inside ``E(A)`` on the window."""
    L = ring.rs.w0.length
    n = _npos(ring)
    if span is None:
        span = envelope_window(ring, window, "sign")
    if span.scale > L:
        raise WindowError("window Delta-power exceeds l(w0)")
    down_ok, down_wit = True, None
    clear = _delta_pow(ring, L - span.scale)
    for sl, row in span.rows():
        num = ring.mul(ring.from_coords(row), clear)
        if ring.height(num) > window.height or ring.degree(num) > window.degree + n * L:
            down_ok, down_wit = False, str(span.element(row))
            break
    up_ok, up_wit = True, None
    for key in ring.basis(window.height, window.degree):
        a = ring.element(key)
        if not span.contains(a):
            up_ok, up_wit = False, ring.render(a)
            break
    return {
        "delta_power": L,
        "cleared_in_A": down_ok,
        "cleared_witness": down_wit,
        "A_in_E": up_ok,
        "A_witness": up_wit,
    }


def _delta_pow(ring, m):
    out = ring.one()
    d = ring.embed(ring.rs.delta)
    for _ in range(m):
        out = ring.mul(out, d)
    return out


# --------------------------------------------------------------------------
# ideals of O(T*T)
# --------------------------------------------------------------------------


@dataclass
class IdealWindow:
    """Span of ``g * m`` inside the ``(height, degree)`` window of ``A``."""

    generators: list
    window: Window
    span: SpanBasis = field(repr=False)
    label: str = ""

    def contains(self, u) -> bool:
        return self.span.contains(u)

    def to_json(self) -> dict:
        return {"label": self.label, "window": self.window.to_json(), "generators": len(self.generators),
                "rank": self.span.rank}


def _require_torus(ring):
    if ring.kind != "torus":
        raise ValueError("ideal windows are defined for O(T*T) only")


def ideal_sign(ring, window: Window) -> IdealWindow:
    """Window of the ideal generated by the sign component."""
    _require_torus(ring)
    span = SpanBasis(ring, 0)
    gens = isotypic_basis(ring, window.height, window.degree, "sign")
    for g, hg, dg in gens:
        for key in ring.basis(window.height - hg, window.degree - dg):
            span.add_vector(ring.coords(ring.mul(g, ring.element(key))))
    return IdealWindow([g for g, _, _ in gens], window, span, "I_sign")


def _root_char(ring, k: int):
    rs = ring.rs
    lam = rs.root_in_weights(rs.positive_roots[k])
    zero = (0,) * rs.rank
    from .polyalg import MixedElem

    return MixedElem({(lam, zero): 1, ((0,) * rs.rank, zero): -1}, rs.rank, rs.rank)


def ideal_root(ring, window: Window, k: int) -> SpanBasis:
    """``(e^alpha - 1, coroot)`` for the ``k``-th positive root, restricted to the window."""
    rs = ring.rs
    gens = [(_root_char(ring, k), 0), (ring.embed(rs.coroot_poly(rs.positive_coroots[k])), 1)]
    big = SpanBasis(ring, 0)
    for g, dg in gens:
        for key in ring.basis(window.height, window.degree - dg):
            big.add_vector(ring.coords(ring.mul(g, ring.element(key))))
    out = SpanBasis(ring, 0)
    ok = lambda key: ring.key_height(key) <= window.height  # noqa: E731
    for sl, e in big.slices.items():
        out.slices[sl] = restrict(e, ok)
    return out


def ideal_cap(ring, window: Window) -> IdealWindow:
    """Window of the intersection over positive roots of ``(e^alpha - 1, coroot)``."""
    _require_torus(ring)
    rs = ring.rs
    parts = [ideal_root(ring, window, k) for k in range(len(rs.positive_roots))]
    out = SpanBasis(ring, 0)
    for sl in sorted(set().union(*(p.slices for p in parts)), key=lambda s: _slice_sort((s, None))):
        acc = None
        for p in parts:
            e = p.slices.get(sl, Echelon(ring.key_order))
            acc = e if acc is None else intersect(acc, e)
        out.slices[sl] = acc
    return IdealWindow([], window, out, "I_cap")


def sign_certificate(ring, p0, k: int) -> dict:
    """Write a sign element as ``(e^alpha - 1) G + coroot * H`` for root ``k``.

    ``p0 = p - s(p)`` with ``p = p0/2``; each term ``p1 p2`` of ``p`` (character
    times polynomial) contributes ``p1 (p2 - s p2) + s(p2)(p1 - s p1)``.  The
    first piece is divisible by the coroot, the second by ``e^alpha - 1`` through
    a geometric sum.  The result is verified exactly.
    """
    from .polyalg import MixedElem

    rs = ring.rs
    s = rs.reflection(k)
    alpha = rs.root_in_weights(rs.positive_roots[k])
    coroot = rs.positive_coroots[k]
    cpoly = rs.coroot_poly(coroot)
    n = rs.rank
    G = ring.zero()
    H = ring.zero()
    half = p0 * Q(1, 2)
    for lam, coeff in half.coefficients().items():
        p2 = coeff
        sp2 = ring.act(s, MixedElem.from_poly(p2, n)).coefficients().get((0,) * n, PolyElem.zero(n))
        # p1 (p2 - s p2) / coroot
        q = (p2 - sp2).divide_exact(cpoly)
        H = H + MixedElem.from_parts({lam: q}, n, n)
        # s(p2) (e^lam - e^{s lam}) / (e^alpha - 1)
        m = rs.pairing(lam, coroot)
        if m > 0:
            pts = [tuple(l - j * a for l, a in zip(lam, alpha)) for j in range(1, m + 1)]
            sgn = 1
        elif m < 0:
            pts = [tuple(l + j * a for l, a in zip(lam, alpha)) for j in range(0, -m)]
            sgn = -1
        else:
            pts = []
            sgn = 0
        for mu in pts:
            G = G + MixedElem.from_parts({mu: sp2 * sgn}, n, n)
    lhs = ring.mul(_root_char(ring, k), G) + ring.mul(ring.embed(cpoly), H)
    return {
        "root": list(rs.positive_roots[k]),
        "G": ring.render(G),
        "H": ring.render(H),
        "G_height": ring.height(G),
        "H_height": ring.height(H),
        "verified": ring.is_zero(lhs - p0),
    }


def check_sign_in_cap(ring, window: Window) -> dict:
    """Every sign-basis element lies in the ``I_cap`` window, with certificates."""
    _require_torus(ring)
    cap = ideal_cap(ring, window)
    isign = ideal_sign(ring, window)
    failures = []
    certificates = []
    for f, h, d in isotypic_basis(ring, window.height, window.degree, "sign"):
        entry = {"element": ring.render(f), "height": h, "degree": d, "in_cap_window": cap.contains(f)}
        if not entry["in_cap_window"]:
            failures.append(entry["element"])
        certs = [sign_certificate(ring, f, k) for k in range(len(ring.rs.positive_roots))]
        entry["certificates"] = certs
        if not all(c["verified"] and c["G_height"] <= window.height and c["H_height"] <= window.height
                   for c in certs):
            failures.append(entry["element"])
        certificates.append(entry)
    contained, wit = isign.span.issubspace(cap.span)
    return {
        "window": window.to_json(),
        "root_system": ring.rs.name,
        "sign_elements": len(certificates),
        "ideal_sign_rank": isign.span.rank,
        "ideal_cap_rank": cap.span.rank,
        "sign_window_in_cap": contained,
        "witness": wit,
        "failures": failures,
        "certificates": certificates,
        "ok": contained and not failures,
    }


# --------------------------------------------------------------------------
# presentations over Sym^W and torsion
# --------------------------------------------------------------------------


class PolyPresentation:
    """``Q[names]/I`` with designated invariant generators.

    ``I`` is either generated by ``relations`` (windows of a principal ideal are
    exact) or, when ``values`` are given, is the kernel of evaluating the
    variables at those elements of ``A[1/Delta]`` (exact on every window).
    """

    def __init__(self, names, relations=(), invariants=(), values=None, ring=None, label=""):
        self.names = list(names)
        self.nvars = len(self.names)
        self.relations = list(relations)
        self.invariants = list(invariants)
        self.values = list(values) if values is not None else None
        self.ring = ring
        self.label = label
        self._ideal: dict[int, Echelon] = {}

    def var(self, name: str) -> PolyElem:
        return PolyElem.var(self.names.index(name), self.nvars)

    def render(self, p) -> str:
        return render_poly(p, self.names)

    @property
    def ideal_exact(self) -> bool:
        return self.values is not None or len(self.relations) <= 1

    def ideal_window(self, degree: int) -> Echelon:
        if degree not in self._ideal:
            e = Echelon(lambda k: (-sum(k), tuple(-x for x in k)))
            if self.values is not None:
                for row in discover_relations(self.ring, self.values, degree):
                    e.add(row.terms)
            else:
                for r in self.relations:
                    for m in monomials_upto(self.nvars, degree - r.degree()):
                        e.add((r * PolyElem.monomial(m)).terms)
            self._ideal[degree] = e
        return self._ideal[degree]

    def reduce(self, p: PolyElem) -> PolyElem:
        return PolyElem(self.ideal_window(max(p.degree(), 0)).reduce(p.terms), self.nvars)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "variables": self.names,
            "relations": [self.render(r) for r in self.relations],
            "invariant_generators": [self.render(c) for c in self.invariants],
            "ideal": "evaluation kernel" if self.values is not None else "relation multiples",
            "ideal_exact": self.ideal_exact,
        }


def discover_relations(ring, values: list, degree: int) -> list[PolyElem]:
    """Basis of polynomial relations of degree ``<= degree`` among ``values``."""
    n = len(values)
    vals = [RatElem.lift(v, ring) for v in values]
    mons = monomials_upto(n, degree)
    K = max((v.delta_power for v in vals), default=0) * degree
    span = SpanBasis(ring, K)
    images = []
    cache = {(0,) * n: RatElem(ring.one(), 0, ring)}
    for m in sorted(mons, key=lambda e: (sum(e), e)):
        if m not in cache:
            j = next(i for i, e in enumerate(m) if e)
            prev = tuple(e - (i == j) for i, e in enumerate(m))
            cache[m] = cache[prev] * vals[j]
        images.append(span.vector(cache[m]))
    mons_sorted = sorted(mons, key=lambda e: (sum(e), e))
    return [PolyElem({mons_sorted[i]: c for i, c in vec.items()}, n) for vec in kernel(images)]


def torsion_check(B: PolyPresentation, degree: int) -> dict:
    """Kernels of multiplication by each invariant generator, modulo the ideal.

    A witness is ``u`` of degree ``<= degree`` with ``u`` outside the ideal window
    and ``chi * u`` inside it.  An empty list means no torsion was detected up
    to this degree; it is not a global statement.
    """
    n = B.nvars
    mons = monomials_upto(n, degree)
    witnesses = []
    for chi in B.invariants:
        dchi = chi.degree()
        target = B.ideal_window(degree + dchi)
        images = [(chi * PolyElem.monomial(m)).terms for m in mons]
        ker = kernel(images, [r for r in target.rows.values()])
        base = B.ideal_window(degree).copy()
        found = []
        for vec in ker:
            u = PolyElem({mons[i]: c for i, c in vec.items()}, n)
            r = base.reduce(u.terms)
            if r and base.add(r):
                found.append(PolyElem(r, n))
        # lowest degree first; present each class by its reduced form
        reduced = []
        clean = B.ideal_window(degree).copy()
        for u in sorted(found, key=lambda p: (p.degree(), str(p))):
            r = clean.reduce(u.terms)
            if r and clean.add(r):
                reduced.append(PolyElem(r, n))
        for u in sorted(reduced, key=lambda p: (p.degree(), len(p))):
            cert = _torsion_certificate(B, chi, u, degree + dchi)
            witnesses.append({"chi": B.render(chi), "witness": B.render(u), "degree": u.degree(), **cert})
    return {
        "presentation": B.to_json(),
        "degree": degree,
        "witnesses": witnesses,
        "torsion_detected": bool(witnesses),
        "note": "window evidence only: absence of witnesses means no torsion detected up to this degree",
    }


def _torsion_certificate(B: PolyPresentation, chi, u, degree) -> dict:
    prod = chi * u
    if B.values is not None:
        ring = B.ring
        total = RatElem(ring.zero(), 0, ring)
        vals = [RatElem.lift(v, ring) for v in B.values]
        for k, c in prod.terms.items():
            term = RatElem(ring.one(), 0, ring) * c
            for i, e in enumerate(k):
                for _ in range(e):
                    term = term * vals[i]
            total = total + term
        return {"certificate": "chi*u evaluates to zero", "verified": total.is_zero()}
    mults = []
    keys = []
    for ri, r in enumerate(B.relations):
        for m in monomials_upto(B.nvars, degree - r.degree()):
            mults.append((r * PolyElem.monomial(m)).terms)
            keys.append((ri, m))
    x = solve(mults, prod.terms)
    if x is None:
        return {"certificate": None, "verified": False}
    cof: dict = {}
    for i, c in x.items():
        ri, m = keys[i]
        cof.setdefault(ri, {})[m] = c
    parts = [f"({B.render(PolyElem(t, B.nvars))})*({B.render(B.relations[ri])})" for ri, t in sorted(cof.items())]
    return {"certificate": f"{B.render(chi)}*({B.render(u)}) = " + " + ".join(parts), "verified": True}


__all__ = [
    "WindowError", "SpanBasis", "isotypic_basis", "sign_basis", "invariant_basis", "envelope_window",
    "generated_window", "sym_invariant_generation", "envelope_generators", "envelope_invariants", "recipe_equality", "is_invariant",
    "act_rat", "check_closed_under_demazure", "emod_saturate", "emod_report", "counit_localization_check",
    "IdealWindow", "ideal_sign", "ideal_root", "ideal_cap", "sign_certificate", "check_sign_in_cap",
    "PolyPresentation", "discover_relations", "torsion_check", "slice_json", "dims_json", "effective_interior",
]
