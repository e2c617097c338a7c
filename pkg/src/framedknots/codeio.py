"""Text format for diagram codes.

::

    code
    surface 2 0
    euler -2
    marked 1              # optional, singular crossings
    visit 0 1/3 1 1 0     # crossing theta dx dy turn
    gate a1 1/2 -1 1 0    # edge-label position dx dy turn
    cut +1 1 0 -1         # sign dx dy turn
    visit 0 2/3 1 -1 1

``turn`` is the turning count of the arc leaving the event.  A code without
events has a single ``turn k`` line.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import Cut, DiagramCode, Gate, Visit, validate
from .errors import ContextError, GenericityError, MalformedInput
from .group_core import BundleSpec, SurfaceSpec
from .pl import _fields
from .polygon import standard_polygon


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def format_code(code: DiagramCode) -> str:
    s = code.spec
    poly = code.poly
    out = ["code", f"surface {s.surface.genus} {s.surface.punctures}", f"euler {s.euler}"]
    if code.marked:
        out.append("marked " + " ".join(str(d) for d in sorted(code.marked)))
    if not code.events:
        out.append(f"turn {code.turning[0]}")
    for e, t in zip(code.events, code.turning):
        dx, dy = (_q(c) for c in e.direction)
        if isinstance(e, Visit):
            out.append(f"visit {e.crossing} {_q(e.theta)} {dx} {dy} {t}")
        elif isinstance(e, Gate):
            out.append(f"gate {poly.edge_label(e.edge)} {_q(e.position)} {dx} {dy} {t}")
        else:
            out.append(f"cut {e.sign:+d} {dx} {dy} {t}")
    return "\n".join(out) + "\n"


def is_code_text(text: str) -> bool:
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            return body.split()[0] == "code"
    return False


def parse_code(text: str, source=None) -> DiagramCode:
    genus = punct = None
    euler = 0
    marked = []
    rows = []
    lone_turn = None
    seen_code = False
    for n, raw in enumerate(text.splitlines(), 1):
        f = _fields(raw.split("#", 1)[0])
        if not f:
            continue
        head, col = f[0]
        args = f[1:]

        def need(k):
            if len(args) != k:
                raise MalformedInput(f"'{head}' takes {k} argument(s), got {len(args)}", n, col, source)

        def num(i, kind=Fraction):
            tok, c = args[i]
            try:
                return kind(tok)
            except (ValueError, ZeroDivisionError):
                raise MalformedInput(f"bad number {tok!r}", n, c, source) from None

        if not seen_code:
            if head != "code":
                raise MalformedInput("a code file starts with 'code'", n, col, source)
            seen_code = True
            continue
        if head == "surface":
            need(2)
            genus, punct = num(0, int), num(1, int)
        elif head == "euler":
            need(1)
            euler = num(0, int)
        elif head == "marked":
            marked = [num(i, int) for i in range(len(args))]
        elif head == "turn":
            need(1)
            lone_turn = num(0, int)
        elif head == "visit":
            need(5)
            rows.append(("visit", num(0, int), num(1), (num(2), num(3)), num(4, int), n, args))
        elif head == "gate":
            need(5)
            rows.append(("gate", args[0], num(1), (num(2), num(3)), num(4, int), n, args))
        elif head == "cut":
            need(4)
            rows.append(("cut", num(0, int), None, (num(1), num(2)), num(3, int), n, args))
        else:
            raise MalformedInput(f"unknown directive {head!r}", n, col, source)
    if genus is None:
        raise MalformedInput("missing 'surface g p' header", 1, 1, source)
    try:
        spec = BundleSpec(SurfaceSpec(genus, punct), euler)
    except ContextError as e:
        raise MalformedInput(str(e), 1, 1, source) from None
    poly = standard_polygon(spec.surface)
    events, turning = [], []
    for kind, a, b, d, t, n, args in rows:
        if kind == "visit":
            events.append(Visit(a, b, d))
        elif kind == "gate":
            try:
                k = poly.edge_by_label(a[0])
            except KeyError:
                raise MalformedInput(f"no glued edge labelled {a[0]!r}", n, a[1], source) from None
            events.append(Gate(k, b, d))
        else:
            events.append(Cut(a, d))
        turning.append(t)
    if not events:
        if lone_turn is None:
            raise MalformedInput("a code without events needs a 'turn' line", 1, 1, source)
        turning = [lone_turn]
    elif lone_turn is not None:
        raise MalformedInput("'turn' lines are only for codes without events", 1, 1, source)
    code = DiagramCode(spec, tuple(events), tuple(turning), frozenset(marked))
    try:
        validate(code)
    except GenericityError as e:
        raise MalformedInput(f"invalid code: {e}", 1, 1, source) from None
    return code
