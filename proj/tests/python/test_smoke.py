import json
import math
import pathlib

import pytest

import formcalc as fc

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def read(name):
    return (DATA / name).read_text()


def test_parse_and_derivative():
    w = fc.parse_form("x*y*dx + exp(x)*dy", 2)
    assert w.dimension == 2 and w.degree == 1
    assert str(fc.d(w)) == "(exp(x) - x)*dx/\\dy"
    assert fc.d(fc.d(w)).is_zero()
    assert fc.is_closed(fc.parse_form("y*dx + x*dy", 2))


def test_algebra():
    dx = fc.parse_form("dx", 2)
    dy = fc.parse_form("dy", 2)
    assert fc.wedge(dx, dy) == -(dy ^ dx)
    assert (dx ^ dx).is_zero()
    assert str(dx + dy - dx) == "dy"


def test_evaluate_and_pullback():
    w = fc.parse_form("x*y*dx + exp(x)*dy", 2)
    values = fc.evaluate(w, [1.0, 2.0])
    assert values["dx"] == pytest.approx(2.0)
    assert values["dy"] == pytest.approx(math.e)
    area = fc.pullback("map(r,theta) = r*cos(theta); r*sin(theta)", fc.parse_form("dx/\\dy", 2))
    assert area.format(["r", "theta"]) == "r*dr/\\dtheta"
    assert area == fc.parse_form("r*dr/\\dtheta", ["r", "theta"])


def test_primitive():
    b = fc.primitive(fc.parse_form("y*dx + x*dy", 2))
    assert str(b) == "x*y"
    with pytest.raises(fc.DomainError):
        fc.primitive(fc.parse_form("x*dy", 2))


def test_integration_and_stokes():
    circle = read("circle.json")
    assert fc.integrate(fc.parse_form("x*dy - y*dx", 2), circle) == pytest.approx(2 * math.pi, abs=1e-12)
    lhs, rhs, residual = fc.stokes(fc.parse_form("x*dy", 2), read("disk.json"))
    assert lhs == pytest.approx(math.pi, abs=1e-12)
    assert rhs == pytest.approx(math.pi, abs=1e-12)
    assert residual < 1e-12


def test_cohomology():
    assert fc.cech_cohomology(3, [[0, 1], [1, 2], [0, 2]]) == [1, 1]
    assert fc.sphere_betti(3) == [1, 0, 0, 1]
    status, slots, ranks = fc.mv_solve([0, 1, 2, 2, None, 0])
    assert status == "solved"
    assert slots[4] == 1
    status, slots, _ = fc.mv_solve(json.loads(read("torus_problem.json"))["slots"])
    assert status == "under-determined"
    assert slots[4] is None


def test_geometry():
    assert round(fc.winding_number(read("double_loop.json"))) == 2
    assert abs(fc.linking_number(read("hopf1.json"), read("hopf2.json"))) == pytest.approx(1, abs=1e-3)
    integral, expected, residual = fc.gauss_bonnet(read("sphere.json"), 2)
    assert expected == pytest.approx(4 * math.pi)
    assert residual < 1e-3


def test_errors():
    assert issubclass(fc.ParseError, fc.Error)
    with pytest.raises(fc.ParseError):
        fc.parse_form("x +", 2)
    with pytest.raises(fc.InputError):
        fc.integrate(fc.parse_form("dx", 2), "{")
    with pytest.raises(fc.DimensionError):
        fc.wedge(fc.parse_form("dx", 2), fc.parse_form("dx", 3))
