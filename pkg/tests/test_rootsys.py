import pytest
import sympy as sp

import oracles
from weylkit.polyalg import PolyElem
from weylkit.rootsys import SUPPORTED, UnsupportedCartanDatum, act_on_poly, cartan_matrix, root_system


@pytest.mark.parametrize("key", sorted(oracles.CARTAN))
def test_cartan_matrix_and_order_match_closure(key):
    rs = root_system(*key)
    assert [list(r) for r in cartan_matrix(*key)] == oracles.CARTAN[key]
    assert rs.order == len(oracles.group_closure(key))


@pytest.mark.parametrize("key", SUPPORTED)
def test_relations_and_longest_element(key):
    rs = root_system(*key)
    rs.check_relations()
    assert rs.w0.length == len(rs.positive_roots)
    assert max(w.length for w in rs.weyl) == rs.w0.length
    assert sum(1 for w in rs.weyl if w.length == rs.w0.length) == 1


@pytest.mark.parametrize("key", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_length_counts_inversions(key):
    rs = root_system(*key)
    for w in rs.weyl:
        negs = 0
        for k in range(len(rs.positive_coroots)):
            img = act_on_poly(w, rs.coroot_poly(rs.positive_coroots[k]))
            negs += all(c <= 0 for c in img.terms.values())
        assert negs == w.length


def test_reflections_act_as_in_oracle():
    rs = root_system("B", 2)
    a = oracles.symbols(2)
    for i in range(2):
        for j in range(2):
            img = act_on_poly(rs.simple(i), PolyElem.var(j, 2))
            expected = oracles.reflect(("B", 2), i, a[j])
            assert sp.expand(sum(int(c) * a[k.index(1)] for k, c in img.terms.items())) == expected


def test_delta_sign():
    for key in [("A", 2), ("B", 2), ("G", 2)]:
        rs = root_system(*key)
        for w in rs.weyl:
            assert act_on_poly(w, rs.delta) == rs.delta * w.sign


def test_small_examples():
    a2 = root_system("A", 2)
    assert len(a2.positive_roots) == 3 and a2.order == 6
    assert root_system("A", 1).order == 2
    assert a2.orbit((1, 0)) and len(a2.orbit((1, 0))) == 3
    assert a2.height((1, 0)) == 1
    # root lattice has index 3 in the weight lattice for A2
    assert len({a2.lattice_class(l) for l in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]}) == 3
    assert a2.element_from_word([0, 1, 0]) == a2.element_from_word([1, 0, 1]) == a2.w0
    assert not a2.is_reduced([0, 0])


def test_unsupported_datum():
    with pytest.raises(UnsupportedCartanDatum, match="unsupported Cartan datum"):
        root_system("E", 8)


def test_json_uses_one_based_words():
    data = root_system("A", 2).to_json()
    assert data["cartan_matrix"] == [[2, -1], [-1, 2]]
    words = [tuple(e["reduced_word"]) for e in data["weyl_group"]] if "weyl_group" in data else None
    if words is not None:
        assert all(min(w, default=1) >= 1 for w in words)
