import pytest

from weylkit.ambient import SymAlgebra, TorusSymAlgebra, sphere_algebra
from weylkit.expr import ParseError, parse_expr, parse_poly
from weylkit.rootsys import root_system


def test_torus_expression_round_trips():
    T = TorusSymAlgebra(root_system("A", 2))
    u = parse_expr("t1^-2*a1 + 3/2*a2^2 - (t2-1)^2", T)
    assert T.render(u) == "3/2*a2^2 + t1^-2*a1 - t2^2 + 2*t2 - 1"
    assert parse_expr(T.render(u), T) == u


def test_power_operator_spellings_agree():
    R = SymAlgebra(root_system("A", 2))
    assert parse_expr("a1^2*a2", R) == parse_expr("a1**2 * a2", R)


def test_quotient_generators_reduce():
    S = sphere_algebra()
    assert S.render(parse_expr("x^2 + y^2 + z^2", S)) == "0"
    assert parse_expr("a1", S) == parse_expr("z", S)


def test_plain_polynomials():
    assert str(parse_poly("x^2+y^2+z^2", ["x", "y", "z"])) == "a1^2 + a2^2 + a3^2"


@pytest.mark.parametrize("text", ["", "a1^", "a3", "t1", "a1/a1", "a1^-1", "a1^(1/2)", "f(a1)", "1/0"])
def test_rejected_inputs(text):
    with pytest.raises(ParseError):
        parse_expr(text, SymAlgebra(root_system("A", 2)))
