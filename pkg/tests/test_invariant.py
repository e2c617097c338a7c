from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from framedknots.diagram import knot_class
from framedknots.errors import ContextError
from framedknots.invariant import (
    compare_knots,
    compute_I,
    fiber_term,
    mark,
    merge,
    resolve,
    second_derivative,
    singular_wedge,
    skein_delta,
    skein_rhs,
)
from framedknots.moves import add_kinks, random_knot
from framedknots.pl import compile_pl
from framedknots.wedge_algebra import ZERO, parse_value

from conftest import ANNULUS, CONTEXTS, GENUS2, PUNCTURED_TORUS, build, circle_items

KINK = "2 * [ 1 | f^-1 , 1 | f^1 ]\n-2 * [ 1 | f^0 , 1 | f^0 ]"


def val(text, spec=ANNULUS):
    return parse_value(text, spec)


def test_flat_circle_is_zero(annulus_circle):
    assert compute_I(annulus_circle, annulus_circle) == ZERO
    assert compute_I(annulus_circle, annulus_circle).serialize() == "0"


@pytest.mark.parametrize("n,k", [(1, 1), (-1, -1), (2, 2), (3, 3)])
def test_kinked_circle(annulus_circle, n, k):
    c = add_kinks(annulus_circle, n)
    assert compute_I(c, annulus_circle) == k * val(KINK)


def test_figure8_value(figure8):
    assert compute_I(figure8, figure8).serialize() == KINK


def test_fiber_term_of_trivial_loop():
    """Over the trivial loop the two terms are swaps of each other."""
    from framedknots.group_core import identity
    assert fiber_term(identity(ANNULUS)) == ZERO


def test_reference_only_shifts_by_fiber_term(annulus_circle):
    c = add_kinks(annulus_circle, 2)
    diff = compute_I(c, annulus_circle) - compute_I(c, c)
    assert diff == 2 * fiber_term(knot_class(c))


# ----------------------------------------------------------- singular knots

def test_skein_frozen(figure8):
    sd = mark(figure8, [0])
    sw = singular_wedge(sd, 0)
    assert str(sw) == "[ 1 | f^0 , 1 | f^0 ]"
    expected = "4 * [ 1 | f^-1 , 1 | f^1 ]\n-4 * [ 1 | f^0 , 1 | f^0 ]"
    assert skein_rhs(sw.first, sw.second).serialize() == expected
    assert skein_delta(sd, 0, figure8).serialize() == expected


def test_resolutions_of_figure8(figure8):
    sd = mark(figure8, [0])
    assert compute_I(resolve(sd, 0, 1), figure8).serialize() == KINK
    assert compute_I(resolve(sd, 0, -1), figure8) == -1 * val(KINK)


def test_merge_then_resolve(figure8):
    sd = merge(figure8, 0)
    up = resolve(sd, 0, 1)
    down = resolve(sd, 0, -1)
    assert {compute_I(up, figure8), compute_I(down, figure8)} == {compute_I(figure8, figure8),
                                                                  -1 * val(KINK)}


def test_strand_order_does_not_matter(figure8):
    """Starting the parametrization on the other strand changes nothing."""
    items = [(0, F(1, 5), F(3, 10)), (F(1, 5), 0, F(2, 5)), (0, 0, F(1, 10)), (F(1, 5), F(1, 5), F(1, 5))]
    other = build(ANNULUS, items)
    for sign in (1, -1):
        a = resolve(mark(figure8, [0]), 0, sign)
        b = resolve(mark(other, [0]), 0, sign)
        assert compute_I(a, figure8) == compute_I(b, figure8)


def test_resolve_rejects_unmarked(figure8):
    with pytest.raises(ContextError):
        resolve(figure8, 0, 1)
    with pytest.raises(ValueError):
        resolve(mark(figure8, [0]), 0, 0)


def test_compute_needs_generic(figure8):
    with pytest.raises(ContextError):
        compute_I(mark(figure8, [0]).code, figure8)


def test_second_derivative_vanishes_example():
    code = compile_pl(random_knot(GENUS2, 4, seed=3))
    code = add_kinks(code, max(0, 2 - code.n_crossings()))
    sd = mark(code, code.crossings()[:2])
    assert second_derivative(sd, code) == ZERO


def test_second_derivative_needs_two(figure8):
    with pytest.raises(ContextError):
        second_derivative(mark(figure8, [0]), figure8)


@given(st.integers(0, 10_000), st.sampled_from(CONTEXTS))
@settings(max_examples=30, deadline=None)
def test_skein_on_random_knots(seed, spec):
    code = compile_pl(random_knot(spec, 3, seed=seed))
    if code.n_crossings() == 0:
        code = add_kinks(code, 1)
    d = code.crossings()[seed % code.n_crossings()]
    skein_delta(mark(code, [d]), d, code)


# ----------------------------------------------------------- comparison

def test_compare_self(figure8):
    r = compare_knots(figure8, figure8, figure8)
    assert not r.distinguished and r.verdict == "not-distinguished-by-I"


def test_compare_resolutions(figure8):
    sd = mark(figure8, [0])
    r = compare_knots(resolve(sd, 0, 1), resolve(sd, 0, -1), figure8)
    assert r.distinguished and r.verdict == "distinguished-by-I"


def test_compare_across_components(annulus_circle, figure8):
    with pytest.raises(ContextError):
        compare_knots(annulus_circle, figure8, annulus_circle)


def test_compare_across_bundles(annulus_circle):
    other = build(PUNCTURED_TORUS, circle_items())
    with pytest.raises(ContextError):
        compare_knots(annulus_circle, other, annulus_circle)
