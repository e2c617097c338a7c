from fractions import Fraction as F

import pytest

from framedknots import compile_pl, parse_pl
from framedknots.codeio import format_code, parse_code
from framedknots.diagram import (
    Gate,
    Visit,
    knot_class,
    parity_signature,
    rotation_index,
    same_component,
    velocity_lift,
)
from framedknots.errors import ContextError, GenericityError, MalformedInput
from framedknots.group_core import fiber_element, format_element, parse_element
from framedknots.moves import add_kinks, random_knot

from conftest import ANNULUS, CONTEXTS, GENUS2, PUNCTURED_TORUS, build, circle_items, gate_leg, pl_text


def fmt(x):
    return format_element(x)


# ----------------------------------------------------------- compilation

def test_circle_has_no_events(annulus_circle):
    assert annulus_circle.events == ()
    assert annulus_circle.turning == (1,)


def test_clockwise_circle_turns_negatively():
    c = build(ANNULUS, circle_items(ccw=False))
    assert c.turning == (-1,)


def test_figure8_has_one_crossing(figure8):
    assert figure8.n_crossings() == 1
    visits = [e for e in figure8.events if isinstance(e, Visit)]
    assert len(visits) == 2 and visits[0].crossing == visits[1].crossing


def test_gate_loop_events():
    k = build(PUNCTURED_TORUS, gate_leg(PUNCTURED_TORUS, "a1"))
    assert len(k.events) == 1 and isinstance(k.events[0], Gate)
    assert k.gate_letters() == [parse_element("a1", PUNCTURED_TORUS).base[0]]


def test_two_gate_loop():
    s = PUNCTURED_TORUS
    k = build(s, gate_leg(s, "a1", t=F(1, 3)) + gate_leg(s, "b1", t=F(2, 3), theta=F(1, 3)))
    assert fmt(knot_class(k)) in ("a1 b1", "b1 a1")


def test_fiber_winding_adds_a_cut():
    items = [(0, F(-1, 4), 0), (F(1, 4), 0, F(1, 5)), (0, F(1, 4), F(2, 5)),
             (F(-1, 4), 0, F(3, 5)), (0, F(-1, 5), F(4, 5))]
    k = build(ANNULUS, items)
    assert knot_class(k) == fiber_element(ANNULUS)
    assert k.cut_total() == 1


def test_compile_is_deterministic():
    k = random_knot(GENUS2, 3, seed=11)
    assert compile_pl(k) == compile_pl(k)
    assert format_code(compile_pl(k)) == format_code(compile_pl(k))


def test_start_sample_does_not_matter(figure8):
    items = [(0, F(1, 5), F(3, 10)), (F(1, 5), 0, F(2, 5)), (0, 0, F(1, 10)), (F(1, 5), F(1, 5), F(1, 5))]
    k = build(ANNULUS, items)
    assert knot_class(k) == knot_class(figure8)
    assert velocity_lift(k) == velocity_lift(figure8)


def test_collinear_samples_change_nothing(annulus_circle):
    items = circle_items()
    items.insert(1, (F(1, 8), F(-1, 8), 0))
    k = build(ANNULUS, items)
    assert k == annulus_circle


# ----------------------------------------------------------- genericity

@pytest.mark.parametrize("items,needle", [
    ([(0, 0, 0), (F(1, 5), 0, F(1, 2)), (0, F(1, 5), 0)], "half a turn"),
    ([(0, 0, 0), (0, 0, 0), (0, F(1, 5), 0)], "zero-length"),
    ([(0, 0, 0), (F(1, 5), 0, 0), (F(2, 5), 0, 0), (F(1, 10), 0, 0)], ""),
])
def test_genericity_errors(items, needle):
    with pytest.raises(GenericityError) as e:
        build(ANNULUS, items)
    assert needle in str(e.value)


def test_sample_outside_polygon():
    with pytest.raises(GenericityError):
        build(ANNULUS, [(0, 0, 0), (5, 0, 0), (0, 1, 0)])


def test_malformed_pl_reports_position():
    text = "surface 0 2\neuler 0\nsample 0 x 0\n"
    with pytest.raises(MalformedInput) as e:
        parse_pl(text, "k.knot")
    assert e.value.line == 3 and e.value.col == 10
    assert "k.knot:3:10" in str(e.value)


def test_bad_context_rejected():
    with pytest.raises(MalformedInput) as e:
        parse_pl("surface 1 0\neuler 2\nsample 0 0 0\n")
    assert "trivial bundle" in str(e.value)


# ----------------------------------------------------------- lifts and rotation

@pytest.mark.parametrize("spec", CONTEXTS, ids=lambda s: f"g{s.surface.genus}p{s.surface.punctures}")
def test_calibration(spec):
    c = build(spec, circle_items())
    stf = velocity_lift(c).spec
    assert velocity_lift(c) == fiber_element(stf)
    assert velocity_lift(build(spec, circle_items(ccw=False))) == fiber_element(stf, -1)
    assert velocity_lift(add_kinks(c, 1)) == fiber_element(stf, 2)


@pytest.mark.parametrize("spec", CONTEXTS, ids=lambda s: f"g{s.surface.genus}p{s.surface.punctures}")
def test_rotation_index_of_kinks(spec):
    base = build(spec, circle_items())
    assert rotation_index(base, base) == 0
    assert rotation_index(build(spec, circle_items(ccw=False)), base) == -2
    for n in (-3, -1, 2, 4):
        assert rotation_index(add_kinks(base, n), base) == n


def test_rotation_index_needs_same_projection_class(annulus_circle):
    k = build(PUNCTURED_TORUS, gate_leg(PUNCTURED_TORUS, "a1"))
    c = build(PUNCTURED_TORUS, circle_items())
    with pytest.raises(ContextError):
        rotation_index(k, c)
    with pytest.raises(ContextError):
        rotation_index(annulus_circle, c)


def test_small_loop_has_trivial_class():
    for spec in CONTEXTS:
        assert fmt(knot_class(build(spec, circle_items(theta=F(1, 3))))) == "1"


def test_knot_class_is_canonical():
    s = GENUS2
    k1 = build(s, gate_leg(s, "a1") + gate_leg(s, "a2", theta=F(1, 3)))
    k2 = build(s, gate_leg(s, "a2", theta=F(1, 3)) + gate_leg(s, "a1"))
    assert knot_class(k1) == knot_class(k2)


# ----------------------------------------------------------- components

def test_components(annulus_circle, figure8):
    assert same_component(annulus_circle, annulus_circle) == "yes"
    assert same_component(annulus_circle, figure8) == "no"
    assert same_component(annulus_circle, add_kinks(annulus_circle, 2)) == "yes"
    assert parity_signature(add_kinks(annulus_circle, 1)) != parity_signature(annulus_circle)


def test_different_bundles_are_different_components(annulus_circle):
    assert same_component(annulus_circle, build(PUNCTURED_TORUS, circle_items())) == "no"


# ----------------------------------------------------------- code files

@pytest.mark.parametrize("seed", range(6))
def test_code_roundtrip(seed):
    spec = CONTEXTS[seed % 4]
    code = compile_pl(random_knot(spec, 3, seed=seed))
    assert parse_code(format_code(code)) == code


def test_code_roundtrip_empty(annulus_circle):
    assert parse_code(format_code(annulus_circle)) == annulus_circle


def test_pl_roundtrip():
    from framedknots.pl import format_pl
    k = random_knot(PUNCTURED_TORUS, 2, seed=4)
    assert compile_pl(parse_pl(format_pl(k))) == compile_pl(k)


def test_malformed_code():
    text = format_code(build(ANNULUS, circle_items())).replace("turn 1", "turn one")
    with pytest.raises(MalformedInput) as e:
        parse_code(text, "c.code")
    assert e.value.line is not None


def test_pl_text_helper():
    assert pl_text(ANNULUS, [(0, 0, 0), "c1"]).splitlines() == ["surface 0 2", "euler 0",
                                                                "sample 0 0 0", "gate c1"]
