"""Combinatorial diagrams of knots in a circle bundle over a polygon surface.

A :class:`DiagramCode` is the cyclic list of events met while traversing the
knot once:

* ``Visit`` - passage through a double point of the projection, with the
  fiber angle ``theta`` (in turns, ``0 <= theta < 1``) and the projected
  direction of travel there;
* ``Gate`` - leaving the polygon through an edge, with the position on the
  edge and the exit direction (the knot re-enters through the partner edge);
* ``Cut`` - the fiber angle passing through 0, upward (+1) or downward (-1).

``turning[i]`` counts signed passages of the tangent direction through
(1, 0) along the arc from event ``i`` to event ``i+1``.  Directions are
exact rational vectors, so every local move can be checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Union

from .errors import ContextError, GenericityError
from .exact import cross
from .group_core import (
    BundleElement,
    BundleSpec,
    canonical_conjugate,
    fiber_shift,
    make_element,
)
from .polygon import PolygonModel, standard_polygon
from .wedge_algebra import WedgeClass, canonical_form


@dataclass(frozen=True)
class Visit:
    crossing: int
    theta: Fraction
    direction: tuple


@dataclass(frozen=True)
class Gate:
    edge: int
    position: Fraction
    direction: tuple


@dataclass(frozen=True)
class Cut:
    sign: int
    direction: tuple


Event = Union[Visit, Gate, Cut]


@dataclass(frozen=True)
class DiagramCode:
    spec: BundleSpec
    events: tuple
    turning: tuple
    marked: frozenset = field(default=frozenset())

    @property
    def poly(self) -> PolygonModel:
        return standard_polygon(self.spec.surface)

    def __len__(self):
        return len(self.events)

    def out_dir(self, i):
        e = self.events[i]
        if isinstance(e, Gate):
            return self.poly.map_dir(e.edge, e.direction)
        return e.direction

    def visits(self) -> dict:
        """Crossing id -> (first index, second index)."""
        pos: dict = {}
        for i, e in enumerate(self.events):
            if isinstance(e, Visit):
                pos.setdefault(e.crossing, []).append(i)
        return {d: tuple(v) for d, v in pos.items()}

    def crossings(self):
        return sorted(self.visits())

    def n_crossings(self) -> int:
        return len(self.visits())

    def left_visit(self, d) -> int:
        """Index of the left branch at crossing ``d``.

        The branch through visit ``p`` is left when the frame
        (direction at p, direction at the other visit) is positive.
        """
        p, q = self.visits()[d]
        return p if cross(self.events[p].direction, self.events[q].direction) > 0 else q

    def height_bit(self, d) -> int:
        """1 iff the right branch's fiber angle is below the left branch's."""
        p, q = self.visits()[d]
        left = self.left_visit(d)
        right = q if left == p else p
        return 1 if self.events[right].theta < self.events[left].theta else 0

    def gate_letters(self):
        return [self.poly.letter(e.edge) for e in self.events if isinstance(e, Gate)]

    def cut_total(self) -> int:
        return sum(e.sign for e in self.events if isinstance(e, Cut))

    def with_events(self, events, turning, marked=None) -> "DiagramCode":
        return DiagramCode(self.spec, tuple(events), tuple(turning),
                           self.marked if marked is None else frozenset(marked))


def renumber(code: DiagramCode) -> DiagramCode:
    """Relabel crossings by order of first appearance."""
    mapping: dict = {}
    events = []
    for e in code.events:
        if isinstance(e, Visit):
            if e.crossing not in mapping:
                mapping[e.crossing] = len(mapping)
            e = replace(e, crossing=mapping[e.crossing])
        events.append(e)
    marked = frozenset(mapping[d] for d in code.marked if d in mapping)
    return DiagramCode(code.spec, tuple(events), tuple(code.turning), marked)


def validate(code: DiagramCode) -> None:
    """Raise :class:`GenericityError` naming the first violated rule."""
    poly = code.poly
    n = len(code.events)
    if len(code.turning) != max(1, n):
        raise GenericityError("turning list must have one entry per arc")
    visits = code.visits()
    for d, pos in visits.items():
        if len(pos) != 2:
            raise GenericityError(f"crossing {d} is visited {len(pos)} times")
        a, b = (code.events[i] for i in pos)
        if cross(a.direction, b.direction) == 0:
            raise GenericityError(f"crossing {d} is not transverse")
        for e in (a, b):
            if not (0 <= e.theta < 1):
                raise GenericityError(f"crossing {d} has fiber angle outside [0, 1)")
        if d in code.marked:
            if a.theta != b.theta:
                raise GenericityError(f"marked crossing {d} must have equal fiber angles")
        elif a.theta == b.theta:
            raise GenericityError(f"crossing {d} has equal fiber angles")
    for d in code.marked:
        if d not in visits:
            raise GenericityError(f"marked crossing {d} does not exist")
    seen_points = {}
    for i, e in enumerate(code.events):
        if e.direction == (0, 0):
            raise GenericityError(f"event {i} has zero direction")
        if isinstance(e, Cut) and e.sign not in (1, -1):
            raise GenericityError(f"cut {i} has sign {e.sign}")
        if isinstance(e, Gate):
            if poly.partner[e.edge] is None:
                raise GenericityError(f"gate {i} uses a free edge")
            if not (0 < e.position < 1):
                raise GenericityError(f"gate {i} position is not inside the edge")
            if cross(poly.edge_vector(e.edge), e.direction) >= 0:
                raise GenericityError(f"gate {i} does not leave through its edge")
            key = min((e.edge, e.position), (poly.partner[e.edge], 1 - e.position))
            if key in seen_points:
                raise GenericityError(f"gates {seen_points[key]} and {i} pass the same edge point")
            seen_points[key] = i


# ------------------------------------------------------------------ classes

def _split(code: DiagramCode, d):
    """Gate letters and cut counts of the arcs p->q and q->p at crossing d."""
    p, q = code.visits()[d]
    n = len(code.events)
    poly = code.poly
    loops = []
    for start, stop in ((p, q), (q, p + n)):
        letters, cuts = [], 0
        for k in range(start + 1, stop):
            e = code.events[k % n]
            if isinstance(e, Gate):
                letters.append(poly.letter(e.edge))
            elif isinstance(e, Cut):
                cuts += e.sign
        loops.append((letters, cuts))
    return p, q, loops


def knot_element(code: DiagramCode) -> BundleElement:
    """The knot's class read from event 0 (not canonicalized)."""
    return make_element(code.gate_letters(), code.cut_total(), code.spec)


def knot_class(code: DiagramCode) -> BundleElement:
    return canonical_conjugate(knot_element(code))


def wedge_at_crossing(code: DiagramCode, d, side: str) -> WedgeClass:
    """Class of the singular knot made by pushing one branch at ``d`` up the fiber.

    The pushed branch travels in the positive fiber direction from its
    angle to the other branch's angle.  If that path passes the cut at 0,
    the arc leaving the pushed visit loses one cut and the arc arriving at
    it gains one.
    """
    if d not in code.visits():
        raise KeyError(f"unknown crossing {d}")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    p, q, ((wa, na), (wb, nb)) = _split(code, d)
    left = code.left_visit(d)
    pushed = left if side == "left" else (q if left == p else p)
    other = q if pushed == p else p
    c = 1 if code.events[other].theta < code.events[pushed].theta else 0
    if pushed == p:
        na, nb = na - c, nb + c
    else:
        na, nb = na + c, nb - c
    spec = code.spec
    return canonical_form(make_element(wa, na, spec), make_element(wb, nb, spec))


def split_wedge(code: DiagramCode, d) -> WedgeClass:
    """Class of the two loops at ``d`` with no push correction."""
    _, _, ((wa, na), (wb, nb)) = _split(code, d)
    spec = code.spec
    return canonical_form(make_element(wa, na, spec), make_element(wb, nb, spec))


def velocity_fiber(code: DiagramCode) -> int:
    poly = code.poly
    jumps = sum(poly.jump(e.edge, e.direction) for e in code.events if isinstance(e, Gate))
    return sum(code.turning) + jumps


def velocity_lift(code: DiagramCode, poly: PolygonModel | None = None) -> BundleElement:
    """Class of the tangent lift of the projection in the unit tangent bundle."""
    poly = poly or code.poly
    return make_element(code.gate_letters(), velocity_fiber(code), poly.stf_spec())


def rotation_index(code: DiagramCode, ref: DiagramCode, poly: PolygonModel | None = None) -> int:
    if code.spec != ref.spec:
        raise ContextError("diagrams live in different bundles")
    i = fiber_shift(velocity_lift(code, poly), velocity_lift(ref, poly))
    if i is None:
        raise ContextError("projections lie in different free homotopy classes")
    return i


def parity_signature(code: DiagramCode) -> int:
    """Fiber exponent of the canonical tangent lift, mod 2.

    Adding a kink changes both the crossing count and the lift by one, so
    the sum of the two is constant on a whole knot class and separates
    nothing.  The lift alone is preserved by every isotopy move and by
    crossing changes, and flips with the framing parity.
    """
    return canonical_conjugate(velocity_lift(code)).fiber % 2


def same_component(c1: DiagramCode, c2: DiagramCode) -> str:
    """``'no'`` if the diagrams are certainly in different framed components.

    ``'yes'`` means the implemented signatures do not separate them.
    """
    if c1.spec != c2.spec:
        return "no"
    if knot_class(c1) != knot_class(c2):
        return "no"
    if parity_signature(c1) != parity_signature(c2):
        return "no"
    return "yes"
