"""The order-one invariant I and its singular-knot calculus."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .diagram import (
    DiagramCode,
    Visit,
    knot_element,
    rotation_index,
    same_component,
    split_wedge,
    validate,
    wedge_at_crossing,
)
from .errors import ContextError, TheoremViolation
from .group_core import BundleElement
from .polygon import PolygonModel
from .wedge_algebra import InvariantValue, WedgeClass, ZERO, canonical_form


def fiber_term(K: BundleElement) -> InvariantValue:
    """``[K f, f^-1] - [K f^-1, f]``."""
    spec = K.spec
    up = canonical_form(BundleElement(K.base, K.fiber + 1, spec), BundleElement((), -1, spec))
    down = canonical_form(BundleElement(K.base, K.fiber - 1, spec), BundleElement((), 1, spec))
    return InvariantValue([(up, 1), (down, -1)])


def crossing_term(code: DiagramCode, d) -> InvariantValue:
    return InvariantValue([(wedge_at_crossing(code, d, "left"), 2),
                           (wedge_at_crossing(code, d, "right"), -2)])


def compute_I(code: DiagramCode, ref: DiagramCode, poly: PolygonModel | None = None) -> InvariantValue:
    if code.marked:
        raise ContextError("compute_I needs a generic diagram; resolve marked crossings first")
    i = rotation_index(code, ref, poly)
    value = i * fiber_term(knot_element(code))
    for d in code.crossings():
        value = value + crossing_term(code, d)
    return value


# ----------------------------------------------------------- singular knots

@dataclass(frozen=True)
class SingularDiagram:
    code: DiagramCode

    def __post_init__(self):
        if not self.code.marked:
            raise ContextError("a singular diagram needs at least one marked crossing")
        validate(self.code)

    @property
    def marked(self):
        return sorted(self.code.marked)


def mark(code: DiagramCode, crossings) -> SingularDiagram:
    """Make the listed crossings singular by giving both branches the same angle."""
    crossings = set(crossings)
    vis = code.visits()
    events = list(code.events)
    for d in crossings:
        p, q = vis[d]
        left = code.left_visit(d)
        right = q if left == p else p
        t = events[left].theta
        events[right] = Visit(d, t, events[right].direction)
    return SingularDiagram(code.with_events(events, code.turning, code.marked | crossings))


def _require_marked(s: SingularDiagram, d):
    if d not in s.code.marked:
        raise ContextError(f"crossing {d} is not marked")


def singular_wedge(s: SingularDiagram, d) -> WedgeClass:
    _require_marked(s, d)
    return split_wedge(s.code, d)


def resolve(s, d, sign: int):
    """Resolve marked crossing ``d``; ``sign=+1`` puts the left branch above.

    With tangent of the first strand, tangent of the second strand and the
    vector from the second strand to the first, the 3-frame is positive
    exactly when the left branch is the upper one, whichever strand is
    called first.  The raised branch moves halfway towards angle 1, which
    does not pass the cut.
    """
    code = s.code if isinstance(s, SingularDiagram) else s
    if d not in code.marked:
        raise ContextError(f"crossing {d} is not marked")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    p, q = code.visits()[d]
    left = code.left_visit(d)
    right = q if left == p else p
    up = left if sign == 1 else right
    events = list(code.events)
    t = events[up].theta
    events[up] = Visit(d, (t + 1) / 2, events[up].direction)
    out = code.with_events(events, code.turning, code.marked - {d})
    validate(out)
    return SingularDiagram(out) if out.marked else out


def merge(code: DiagramCode, d) -> SingularDiagram:
    """Inverse of :func:`resolve`: bring both branches at ``d`` to the lower angle."""
    p, q = code.visits()[d]
    events = list(code.events)
    lo = min(events[p].theta, events[q].theta)
    for i in (p, q):
        events[i] = Visit(d, lo, events[i].direction)
    return SingularDiagram(code.with_events(events, code.turning, code.marked | {d}))


def skein_rhs(alpha: BundleElement, beta: BundleElement) -> InvariantValue:
    spec = alpha.spec

    def w(i, j):
        return canonical_form(BundleElement(alpha.base, alpha.fiber + i, spec),
                              BundleElement(beta.base, beta.fiber + j, spec))

    return InvariantValue([(w(0, 0), -4), (w(-1, 1), 2), (w(1, -1), 2)])


def skein_delta(s: SingularDiagram, d, ref: DiagramCode, poly: PolygonModel | None = None) -> InvariantValue:
    _require_marked(s, d)
    if len(s.code.marked) != 1:
        raise ContextError("skein_delta needs exactly one marked crossing")
    lhs = compute_I(resolve(s, d, 1), ref, poly) - compute_I(resolve(s, d, -1), ref, poly)
    sw = singular_wedge(s, d)
    rhs = skein_rhs(sw.first, sw.second)
    if lhs != rhs:
        raise TheoremViolation(f"skein identity fails at crossing {d}:\nLHS\n{lhs}\nRHS\n{rhs}")
    return lhs


def second_derivative(s: SingularDiagram, ref: DiagramCode, poly: PolygonModel | None = None) -> InvariantValue:
    ds = s.marked
    if len(ds) != 2:
        raise ContextError("second_derivative needs exactly two distinct marked crossings")
    total = ZERO
    for e1, e2 in product((1, -1), repeat=2):
        c = resolve(resolve(s, ds[0], e1), ds[1], e2)
        total = total + (e1 * e2) * compute_I(c, ref, poly)
    return total


@dataclass(frozen=True)
class Comparison:
    distinguished: bool
    first: InvariantValue
    second: InvariantValue

    @property
    def verdict(self) -> str:
        return "distinguished-by-I" if self.distinguished else "not-distinguished-by-I"


def compare_knots(c1: DiagramCode, c2: DiagramCode, ref: DiagramCode, poly=None) -> Comparison:
    if same_component(c1, c2) == "no":
        raise ContextError("the diagrams lie in different framed components")
    v1 = compute_I(c1, ref, poly)
    v2 = compute_I(c2, ref, poly)
    return Comparison(v1 != v2, v1, v2)
