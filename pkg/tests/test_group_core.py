import pytest
from hypothesis import given, settings, strategies as st

from framedknots.errors import ContextError, MalformedInput
from framedknots.group_core import (
    BundleElement,
    SurfaceSpec,
    are_conjugate_base,
    base_reduce,
    bundle,
    canonical_conjugate,
    centralizer_root,
    commute,
    commute_base,
    conjugate,
    fiber_element,
    fiber_shift,
    format_element,
    free_reduce,
    identity,
    invert,
    make_element,
    multiply,
    parse_element,
    power,
    project,
)
from framedknots.rewriting import relator_word, surface_system

from conftest import CONTEXTS, GENUS2

FREE2 = bundle(0, 3, 0)


def el(text, spec):
    return parse_element(text, spec)


@st.composite
def elements(draw, spec, max_len=8):
    rank = spec.surface.rank
    word = draw(st.lists(st.integers(0, 2 * rank - 1), max_size=max_len))
    return make_element(word, draw(st.integers(-4, 4)), spec)


ctx_strategy = st.sampled_from(CONTEXTS + [FREE2, bundle(3, 0, 5)])


@st.composite
def ctx_and_elements(draw, n=2):
    spec = draw(ctx_strategy)
    return (spec,) + tuple(draw(elements(spec)) for _ in range(n))


# ------------------------------------------------------------ contexts

def test_sphere_rejected():
    with pytest.raises(ContextError):
        SurfaceSpec(0, 0)


def test_open_bundles_are_trivial():
    with pytest.raises(ContextError):
        bundle(1, 1, 3)


def test_torus_only_trivial_bundle():
    with pytest.raises(ContextError):
        bundle(1, 0, 1)


def test_free_rank():
    assert SurfaceSpec(2, 3).rank == 6
    assert SurfaceSpec(0, 2).rank == 1


# ------------------------------------------------------------ reduction

def test_free_cancellation():
    s = bundle(1, 1, 0)
    assert el("a1 a1^-1 b1", s) == el("b1", s)
    assert el("a1 a1^-1 b1", s).fiber == 0


def test_fiber_is_central_in_words():
    s = bundle(1, 1, 0)
    assert el("f a1 f^-1", s) == el("a1", s)


def test_relator_gives_fiber_power():
    x = el("a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1", GENUS2)
    assert x.base == () and x.fiber == -2


def test_relator_product():
    half1 = el("a1 b1 a1^-1 b1^-1", GENUS2)
    half2 = el("a2 b2 a2^-1 b2^-1", GENUS2)
    assert multiply(half1, half2) == BundleElement((), -2, GENUS2)


def test_multiply_examples():
    s = bundle(1, 1, 0)
    assert multiply(el("a1", s), el("a1^-1 f^3", s)) == BundleElement((), 3, s)
    assert multiply(el("a1 f", s), el("b1 f^-1", s)) == el("a1 b1", s)


def test_bad_letter_position():
    with pytest.raises(MalformedInput) as e:
        parse_element("a1 q7", bundle(1, 1, 0))
    assert e.value.col == 4


@pytest.mark.parametrize("genus", [2, 3])
def test_rewriting_confluent(genus):
    assert surface_system(genus).is_confluent()


@pytest.mark.parametrize("genus", [2, 3])
def test_normal_forms_are_dehn_reduced(genus):
    """No normal form contains more than half of a rotation of the relator."""
    rel = relator_word(genus)
    n = len(rel)
    rots = [rel[k:] + rel[:k] for k in range(n)]
    rots += [invert(r) for r in rots]
    pieces = {r[:m] for r in rots for m in range(n // 2 + 1, n + 1)}
    surf = SurfaceSpec(genus, 0)
    import random
    rng = random.Random(genus)
    for _ in range(300):
        w = base_reduce([rng.randrange(4 * genus) for _ in range(rng.randrange(20))], surf)
        for p in pieces:
            for i in range(len(w) - len(p) + 1):
                assert w[i:i + len(p)] != p


@given(ctx_and_elements(3))
@settings(max_examples=150, deadline=None)
def test_associativity(data):
    _, x, y, z = data
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(ctx_and_elements(1))
@settings(max_examples=150, deadline=None)
def test_inverse(data):
    spec, x = data
    assert multiply(x, x.inverse()) == identity(spec)


@given(ctx_and_elements(1))
@settings(max_examples=150, deadline=None)
def test_f_central(data):
    spec, x = data
    f = fiber_element(spec)
    assert multiply(x, f) == multiply(f, x)


# ------------------------------------------------------------ conjugacy

def test_rotation_witness():
    s = FREE2.surface
    u, v = el("c1 c2", FREE2).base, el("c2 c1", FREE2).base
    w = are_conjugate_base(u, v, s)
    assert base_reduce(w + u + invert(w), s) == v


def test_distinct_generators_not_conjugate():
    assert are_conjugate_base(el("c1", FREE2).base, el("c2", FREE2).base, FREE2.surface) is None


def test_brute_force_witness_example():
    u = el("c1 c2 c1^-1 c2", FREE2).base
    v = el("c2 c1 c2 c1^-1", FREE2).base
    assert are_conjugate_base(u, v, FREE2.surface) is not None


def _reduced_words(rank, n):
    words, frontier = [()], [()]
    for _ in range(n):
        frontier = [w + (x,) for w in frontier for x in range(2 * rank) if not (w and w[-1] == x ^ 1)]
        words += frontier
    return words


def test_free_conjugacy_matches_brute_force():
    words = _reduced_words(2, 3)
    conj = _reduced_words(2, 3)
    s = FREE2.surface
    for u in words:
        orbit = {free_reduce(x + u + invert(x)) for x in conj}
        for v in words:
            assert (v in orbit) == (are_conjugate_base(u, v, s) is not None)


@given(ctx_and_elements(2))
@settings(max_examples=120, deadline=None)
def test_canonical_conjugate_is_class_invariant(data):
    _, x, d = data
    assert canonical_conjugate(conjugate(x, d)) == canonical_conjugate(x)


@given(ctx_and_elements(2))
@settings(max_examples=120, deadline=None)
def test_witness_is_valid(data):
    spec, x, d = data
    y = conjugate(x, d)
    w = are_conjugate_base(x.base, y.base, spec.surface)
    assert w is not None
    assert base_reduce(w + x.base + invert(w), spec.surface) == y.base


# ------------------------------------------------------------ centralizers

def test_centralizer_roots():
    s = FREE2.surface
    assert centralizer_root(el("c1 c1", FREE2).base, s) == el("c1", FREE2).base
    assert centralizer_root(el("c1 c2 c1 c2 c1 c2", FREE2).base, s) == el("c1 c2", FREE2).base
    w = el("c1 c2 c1^-1 c2", FREE2).base
    assert centralizer_root(w, s) == w


def test_centralizer_root_is_primitive_by_exhaustion():
    s = FREE2.surface
    w = el("c1 c2 c1^-1 c2", FREE2).base
    for z in _reduced_words(2, len(w) // 2):
        for m in range(2, len(w) + 1):
            assert base_reduce(z * m, s) != w


def test_centralizer_root_closed_surface():
    s = GENUS2.surface
    z = el("a1 b2", GENUS2).base
    assert centralizer_root(base_reduce(z * 3, s), s) == base_reduce(z, s)


def test_centralizer_trivial_rejected():
    with pytest.raises(ContextError):
        centralizer_root((), FREE2.surface)


def test_commute_examples():
    s = bundle(1, 1, 0)
    assert commute(el("a1 f", s), el("a1 f^5", s))
    assert not commute(el("a1", s), el("b1", s))
    x = el("a1 b1 f^2", s)
    assert commute(x, multiply(power(x, 3), fiber_element(s, -3)))


@given(ctx_and_elements(3), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=120, deadline=None)
def test_commutation_matches_projection(data, m, n):
    spec, z, d, x = data
    a = conjugate(power(z, m), d)
    b = conjugate(multiply(power(z, n), fiber_element(spec, m - n)), d)
    for p, q in ((a, b), (a, x)):
        assert commute(p, q) == commute_base(project(p), project(q), spec.surface)


# ------------------------------------------------------------ fiber shift

def test_shift_in_product():
    s = bundle(1, 1, 0)
    x1, x2 = el("a1 b1", s), el("b1^-1", s)
    x = multiply(x1, fiber_element(s, 3))
    y = multiply(conjugate(x1, x2), fiber_element(s, 1))
    assert fiber_shift(x, y) == 2


def test_shift_self():
    x = el("a1 b2 f^3", GENUS2)
    assert fiber_shift(x, x) == 0


def test_shift_genus2_example():
    x = el("a1", GENUS2)
    y = el("b1 a1 b1^-1 f^4", GENUS2)
    assert fiber_shift(x, y) == -4


def test_shift_witness_independence():
    """Conjugating by c b1^-1 for c in the centralizer of a1 gives the same shift."""
    x = el("a1", GENUS2)
    y = el("b1 a1 b1^-1 f^4", GENUS2)
    for k in range(-2, 3):
        c = power(x, k)
        w = multiply(c, el("b1^-1", GENUS2))
        z = conjugate(y, w)
        assert z.base == x.base
        assert z.fiber - x.fiber == 4


@given(ctx_and_elements(2), st.integers(-6, 6))
@settings(max_examples=150, deadline=None)
def test_shift_survives_conjugation(data, k):
    spec, a2, d = data
    a1 = multiply(a2, fiber_element(spec, k))
    assert fiber_shift(a1, a2) == k
    assert fiber_shift(conjugate(a1, d), conjugate(a2, d)) == k


def test_shift_none_for_nonconjugate():
    s = bundle(1, 1, 0)
    assert fiber_shift(el("a1", s), el("b1", s)) is None


def test_format_roundtrip():
    x = el("a1 b2^-1 f^-3", GENUS2)
    assert parse_element(format_element(x), GENUS2) == x
    assert format_element(identity(GENUS2)) == "1"
