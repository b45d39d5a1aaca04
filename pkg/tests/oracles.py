"""Independent reference computations used by the tests.

Nothing here imports weylkit: Cartan matrices are written out by hand,
reflections act on sympy symbols, and Weyl groups are closed by brute force.
"""

import sympy as sp

# C[i][j] = alpha_j(coroot_i)
CARTAN = {
    ("A", 1): [[2]],
    ("A", 2): [[2, -1], [-1, 2]],
    ("A", 3): [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    ("B", 2): [[2, -1], [-2, 2]],  # second simple root short
    ("C", 2): [[2, -2], [-1, 2]],
    ("G", 2): [[2, -3], [-1, 2]],  # first simple root short
}


def symbols(rank):
    return sp.symbols(" ".join(f"a{i + 1}" for i in range(rank)) + ("," if rank == 1 else ""))


def reflect(key, i, expr):
    """s_i(a_j) = a_j - alpha_i(a_j) a_i with alpha_i(a_j) = C[j][i]."""
    c = CARTAN[key]
    a = symbols(len(c))
    sub = {a[j]: a[j] - c[j][i] * a[i] for j in range(len(c))}
    return sp.expand(expr.subs(sub, simultaneous=True))


def demazure(key, word, expr):
    """Compose divided differences along ``word`` (1-based), rightmost first."""
    a = symbols(len(CARTAN[key]))
    for i in reversed(word):
        i -= 1
        expr = sp.cancel((expr - reflect(key, i, expr)) / a[i])
        expr = sp.expand(expr)
    return expr


def reflection_matrices(key):
    """Simple reflections on the coroot basis: column j is s_i(a_j)."""
    c = CARTAN[key]
    n = len(c)
    mats = []
    for i in range(n):
        m = sp.eye(n)
        for j in range(n):
            m[i, j] -= c[j][i]
        mats.append(sp.ImmutableMatrix(m))
    return mats


def group_closure(key):
    gens = reflection_matrices(key)
    n = gens[0].shape[0]
    seen = {sp.ImmutableMatrix(sp.eye(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = sp.ImmutableMatrix(s * g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def alternating_sum_w0(key, expr):
    a = symbols(len(CARTAN[key]))
    total = 0
    for g in group_closure(key):
        sub = {a[j]: sum(g[k, j] * a[k] for k in range(len(a))) for j in range(len(a))}
        total += sp.sign(g.det()) * expr.subs(sub, simultaneous=True)
    return sp.expand(total)


def weight_reflection(key, i, lam):
    """s_i on fundamental-weight coordinates: lam - lam_i * alpha_i."""
    c = CARTAN[key]
    return tuple(lam[j] - lam[i] * c[j][i] for j in range(len(c)))


def lattice_points(key, h):
    """Weights whose whole orbit has coordinates bounded by h, by brute force."""
    import itertools

    n = len(CARTAN[key])
    out = []
    for lam in itertools.product(range(-h, h + 1), repeat=n):
        orbit, frontier = {lam}, [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for i in range(n):
                    nu = weight_reflection(key, i, mu)
                    if nu not in orbit:
                        orbit.add(nu)
                        nxt.append(nu)
            frontier = nxt
        if max(abs(x) for mu in orbit for x in mu) <= h:
            out.append(lam)
    return out
