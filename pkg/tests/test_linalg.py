import random
from fractions import Fraction

import sympy as sp

from weylkit.linalg import Echelon, intersect, kernel, restrict, solve, span


def random_vectors(rng, count, dim, density=0.5):
    out = []
    for _ in range(count):
        out.append({j: Fraction(rng.randint(-4, 4)) for j in range(dim) if rng.random() < density})
    return [{k: v for k, v in vec.items() if v} for vec in out]


def dense(vecs, dim):
    return sp.Matrix([[v.get(j, 0) for j in range(dim)] for v in vecs]) if vecs else sp.zeros(0, dim)


def test_rank_matches_sympy():
    rng = random.Random(1)
    for _ in range(20):
        vecs = random_vectors(rng, rng.randint(1, 7), 6)
        assert span(vecs).rank == dense(vecs, 6).rank()


def test_kernel_matches_sympy_nullity():
    rng = random.Random(2)
    for _ in range(20):
        vecs = random_vectors(rng, rng.randint(1, 7), 5)
        ker = kernel(vecs)
        assert len(ker) == len(vecs) - dense(vecs, 5).rank()
        for x in ker:
            total = {}
            for i, c in x.items():
                for j, v in vecs[i].items():
                    total[j] = total.get(j, 0) + c * v
            assert all(v == 0 for v in total.values())


def test_intersection_dimension_formula():
    rng = random.Random(3)
    for _ in range(20):
        a = span(random_vectors(rng, 3, 5))
        b = span(random_vectors(rng, 3, 5))
        both = span(list(a.rows.values()) + list(b.rows.values()))
        cap = intersect(a, b)
        assert cap.rank == a.rank + b.rank - both.rank
        assert cap.issubspace(a) and cap.issubspace(b)


def test_membership_and_solve():
    e = Echelon()
    assert e.add({0: 1, 1: 1})
    assert not e.add({0: 2, 1: 2})
    assert e.contains({0: -3, 1: -3}) and not e.contains({0: 1})
    assert solve([{0: 1}, {1: 1}], {0: 2, 1: 3}) == {0: 2, 1: 3}
    assert solve([{0: 1}], {1: 1}) is None


def test_restrict_keeps_supported_rows():
    e = span([{0: 1, 1: 1}, {2: 1}])
    r = restrict(e, lambda k: k in (0, 1))
    assert r.rank == 1 and r.contains({0: 1, 1: 1})
