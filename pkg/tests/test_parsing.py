"""Grammar: parsing, validation errors, canonical printing round trips."""

import pytest

from conftest import UD, X
from lieremark.errors import IndexOutOfRange, JetCoordinateInBase, ParseError
from lieremark.jetspace import JetSpec
from lieremark.parsing import expr_to_str, field_to_str, parse_expr, parse_field

SPEC = JetSpec(2, 1, 2)


def test_ma2_text():
    e = parse_expr("u[1;1,1]*u[1;2,2] - u[1;1,2]^2", SPEC)
    assert e == UD(1, 1, 1) * UD(1, 2, 2) - UD(1, 1, 2) ** 2


def test_index_symmetry():
    assert parse_expr("u[1;2,1]", SPEC) == parse_expr("u[1;1,2]", SPEC)


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        parse_expr("u[3;1]", JetSpec(2, 2, 2))
    with pytest.raises(IndexOutOfRange):
        parse_expr("x[3]", SPEC)
    with pytest.raises(IndexOutOfRange):
        parse_expr("u[1;1,1,1]", SPEC)  # order above r


def test_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse_expr("u[1;1,1] + * 2", SPEC)
    assert err.value.position == 11


def test_rationals_and_precedence():
    e = parse_expr("1/2*x[1] + x[2]/4 - 3", SPEC)
    assert expr_to_str(e) == "1/2*x[1] + 1/4*x[2] - 3"


def test_nested_parens_and_powers():
    e = parse_expr("(x[1] + x[2])^2 - (x[1]^2 + 2*x[1]*x[2] + x[2]^2)", SPEC)
    assert e.is_zero


def test_field_basic():
    f = parse_field("x[1]: x[2]", SPEC)
    assert f.xi[0] == X(2) and f.xi[1].is_zero and f.eta[0].is_zero


def test_field_projective_shape():
    f = parse_field("x[1]: x[1]*x[1]; u[1]: x[1]*u[1]", JetSpec(1, 1, 1))
    assert expr_to_str(f.xi[0]) == "x[1]^2"
    assert expr_to_str(f.eta[0]) == "x[1]*u[1]"


def test_field_rejects_jet_coordinate():
    with pytest.raises(JetCoordinateInBase):
        parse_field("u[1]: u[1;1]", SPEC)
    with pytest.raises(JetCoordinateInBase):
        parse_field("u[1;1]: x[1]", SPEC)


def test_roundtrip_rational_expression():
    e = parse_expr("(u[1;1,2]^2 - 1)/(u[1;1,1] + 2)", SPEC)
    assert parse_expr(expr_to_str(e), SPEC) == e


def test_roundtrip_field():
    f = parse_field("x[1]: -x[2] + 1/3; u[1]: x[1]*u[1] - 2", SPEC)
    assert parse_field(field_to_str(f), SPEC) == f


def test_catalog_roundtrip():
    from lieremark import catalog

    for name in catalog.names():
        entry = catalog.get(name)
        for d in entry.system.deltas:
            assert parse_expr(expr_to_str(d), entry.system.spec) == d
