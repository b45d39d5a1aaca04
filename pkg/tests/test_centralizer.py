import pytest

from weylkit.ambient import TorusSymAlgebra, Window
from weylkit.centralizer import (
    PGL2_REFUSAL,
    UnsupportedGroup,
    anisotropy_evidence,
    centralizer,
    centralizer_sl2,
    centralizer_sl3,
    sphere_counterexample,
)
from weylkit.envelope import WindowError, act_rat
from weylkit.expr import parse_expr
from weylkit.polyalg import RatElem
from weylkit.rootsys import root_system


def test_sl2_presentation():
    p = centralizer_sl2()
    assert p.ok
    assert p.names == ["Z", "c", "b"]
    assert p.relations == [("b^2*Z = c^2 - 4", True)]
    assert p.checks["generation"] and p.checks["no_torsion"]
    assert [str(g) for g in p.generators] == ["a1^2", "t1 + t1^-1", "(t1 - t1^-1)/Δ"]


def test_b_is_invariant_by_hand():
    T = TorusSymAlgebra(root_system("A", 1))
    b = RatElem(parse_expr("t1 - t1^-1", T), 1, T)
    assert act_rat(T, T.rs.simple(0), b) == b


def test_sl3_presentation():
    p = centralizer_sl3()
    assert p.ok
    assert p.checks["characters_present"]
    assert all(v["orbit_size"] == 3 for v in p.checks["fundamental_characters"].values())
    assert all(g.delta_power <= 1 for g in p.generators)
    assert any(g.delta_power == 1 for g in p.generators)


def test_window_guards():
    with pytest.raises(WindowError):
        centralizer_sl2(Window(4, 1, 2))
    with pytest.raises(WindowError):
        centralizer_sl3(Window(2, 2, 1))
    with pytest.raises(WindowError):
        sphere_counterexample(Window(3, 0, 1))


def test_pgl2_is_refused():
    with pytest.raises(UnsupportedGroup) as err:
        centralizer("pgl2")
    assert str(err.value) == PGL2_REFUSAL
    with pytest.raises(UnsupportedGroup):
        centralizer("so5")


def test_sphere_report():
    rep = sphere_counterexample()
    assert rep["ok"]
    fixed = rep["fixed_point_presentation"]
    assert fixed["expected_witness_found"]
    assert not rep["envelope_presentation"]["torsion"]["torsion_detected"]
    assert rep["relation_exact"]["verified"] and rep["component_map"]["relation_respected"]


def test_anisotropy_is_labelled_evidence():
    ev = anisotropy_evidence(5)
    assert ev["solutions"] == [] and "evidence" in ev["status"]
