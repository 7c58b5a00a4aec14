from fractions import Fraction

import pytest

from berkdyn.field import LogNorm, Poly, Radius
from berkdyn.points import ball, gauss, infinity, points_equal, rigid, type_iv
from berkdyn.serialize import (
    SchemaError,
    canonical_json,
    fmt_affinoid,
    fmt_coeff_point,
    fmt_lognorm,
    fmt_map,
    fmt_point,
    fmt_radius,
    fmt_tube,
    parse_affinoid,
    parse_coeff_point,
    parse_map,
    parse_point,
    parse_poly_sugar,
    parse_radius,
    parse_scalar,
    parse_tube,
)


def test_scalar_round_trip():
    assert parse_scalar("3/2", "x") == Fraction(3, 2)
    assert parse_scalar("-7", "x") == -7
    with pytest.raises(SchemaError) as e:
        parse_scalar("nope", "cfg.x")
    assert e.value.path == "cfg.x"


def test_radius_round_trip():
    for r in (Radius(0), Radius(Fraction(-3, 2), 1), Radius.zero_radius()):
        assert parse_radius(fmt_radius(r), "r") == r
    with pytest.raises(SchemaError) as e:
        parse_radius({"e": "x"}, "r")
    assert e.value.path == "r.e"


def test_point_round_trip():
    p = 2
    pts = [
        rigid(Fraction(5, 3)),
        ball(0, Radius(-1)),
        ball(2, Radius(Fraction(1, 2), -1)),
        type_iv([(Fraction(1), Radius(-1)), (Fraction(3), Radius(-2))], p),
        infinity(),
    ]
    for x in pts:
        assert points_equal(parse_point(fmt_point(x), p), x, p)
    with pytest.raises(SchemaError):
        parse_point({"kind": "ball", "a": "0", "r": {"e": "0", "zero": True}}, p)
    with pytest.raises(SchemaError):
        parse_point({"kind": "nope"}, p)


def test_tube_affinoid_round_trip():
    p = 2
    U = parse_tube(
        {"outer": {"a": "0", "r": {"e": "0"}}, "removed": [{"a": "0", "r": {"e": "-2"}}]},
        p,
    )
    assert parse_tube(fmt_tube(U), p) == U
    A = parse_affinoid(
        {"outer": {"a": "0", "r": {"e": "0"}}, "removed": [{"a": "0", "r": {"e": "-1"}}]},
        p,
    )
    assert parse_affinoid(fmt_affinoid(A), p) == A
    with pytest.raises(SchemaError):
        parse_affinoid({"outer": None, "removed": []}, p)
    with pytest.raises(SchemaError):
        # overlapping removed disks
        parse_tube(
            {
                "outer": {"a": "0", "r": {"e": "1"}},
                "removed": [
                    {"a": "0", "r": {"e": "-1"}},
                    {"a": "0", "r": {"e": "-2"}},
                ],
            },
            p,
        )


def test_poly_sugar():
    assert parse_poly_sugar("z^2+2") == Poly({2: 1, 0: 2})
    assert parse_poly_sugar("z^2/2") == Poly({2: Fraction(1, 2)})
    assert parse_poly_sugar("2*z - 1/3") == Poly({1: 2, 0: Fraction(-1, 3)})
    assert parse_poly_sugar("-z^3 + 3/4*z") == Poly({3: -1, 1: Fraction(3, 4)})
    assert parse_poly_sugar("5") == Poly({0: 5})
    with pytest.raises(SchemaError):
        parse_poly_sugar("z^^2")
    with pytest.raises(SchemaError):
        parse_poly_sugar("")


def test_map_round_trip():
    p = 2
    f = parse_map("z^2+2", p)
    assert f.degree == 2
    again = parse_map(fmt_map(f), p)
    assert again.forms == f.forms
    with pytest.raises(SchemaError):
        parse_map({"forms": [[{"coeff": "1", "exps": [2, 0]}]]}, p)
    with pytest.raises(SchemaError):
        # common projective zero
        parse_map(
            {
                "forms": [
                    [{"coeff": "1", "exps": [2, 0]}],
                    [{"coeff": "2", "exps": [2, 0]}],
                ]
            },
            p,
        )


def test_coeff_point_round_trip():
    p = 2
    doc = {
        "dims": [1, 1, 2],
        "coords": {
            "1:1": {"kind": "ball", "a": "0", "r": {"e": "0", "delta": 0, "zero": False}},
            "1:2": {"kind": "I", "a": "1"},
        },
    }
    alpha = parse_coeff_point(doc, p)
    assert points_equal(alpha.coord(1, (1,)), gauss(), p)
    again = parse_coeff_point(fmt_coeff_point(alpha), p)
    assert again == alpha
    with pytest.raises(SchemaError):
        parse_coeff_point({"dims": [1, 1]}, p)
    with pytest.raises(SchemaError):
        parse_coeff_point({"dims": [1, 1, 1], "coords": {"bad key": {"kind": "I", "a": "0"}}}, p)


def test_lognorm_formatting():
    assert fmt_lognorm(LogNorm.bottom()) == "-inf"
    assert fmt_lognorm(LogNorm(Fraction(-3, 2))) == "-3/2"
    assert fmt_lognorm(LogNorm(1, 2)) == {"e": "1", "delta": "2"}


def test_canonical_json_deterministic():
    a = canonical_json({"b": "1", "a": ["2", {"y": "0", "x": "1"}]})
    b = canonical_json({"a": ["2", {"x": "1", "y": "0"}], "b": "1"})
    assert a == b and a.endswith("\n")
