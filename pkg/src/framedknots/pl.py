"""Piecewise-linear knot input and its compilation to a :class:`DiagramCode`.

Diagram files are plain text::

    # lines starting with '#' are comments
    surface 2 0          # genus, punctures
    euler -2
    sample 1/5 -1/7 0    # x y theta (theta in turns, 0 <= theta < 1)
    gate a1              # leave through the edge labelled a1
    sample 3/10 2/9 1/4

Samples are the vertices of a closed polygonal path inside the fundamental
polygon, in traversal order; the last sample connects back to the first.
A ``gate`` line between two samples means the straight segment leaves
through the named edge and continues from the glued point.  The fiber angle
is interpolated linearly along the shorter way round between samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Cut, DiagramCode, Gate, Visit, validate
from .errors import ContextError, GenericityError, MalformedInput
from .exact import cross, passages, segment_intersection, sub
from .group_core import BundleSpec, SurfaceSpec
from .polygon import PolygonModel, standard_polygon


@dataclass(frozen=True)
class Sample:
    x: Fraction
    y: Fraction
    theta: Fraction


@dataclass(frozen=True)
class GateMark:
    label: str


@dataclass(frozen=True)
class FramedKnotPL:
    spec: BundleSpec
    items: tuple
    lines: tuple = ()

    def samples(self):
        return [it for it in self.items if isinstance(it, Sample)]


# ------------------------------------------------------------------ parsing

def _rational(tok: str, line, col, source) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"not a rational number: {tok!r}", line, col, source) from None


def _int(tok, line, col, source) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MalformedInput(f"not an integer: {tok!r}", line, col, source) from None


def _fields(raw: str):
    out, pos = [], 0
    for tok in raw.split():
        pos = raw.index(tok, pos)
        out.append((tok, pos + 1))
        pos += len(tok)
    return out


def parse_pl(text: str, source=None) -> FramedKnotPL:
    genus = punct = None
    euler = 0
    items, lines = [], []
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        f = _fields(body)
        if not f:
            continue
        head, col = f[0]
        args = f[1:]

        def need(k):
            if len(args) != k:
                raise MalformedInput(f"'{head}' takes {k} argument(s), got {len(args)}", n, col, source)

        if head == "surface":
            need(2)
            genus = _int(args[0][0], n, args[0][1], source)
            punct = _int(args[1][0], n, args[1][1], source)
        elif head == "euler":
            need(1)
            euler = _int(args[0][0], n, args[0][1], source)
        elif head == "sample":
            need(3)
            x, y, t = (_rational(tok, n, c, source) for tok, c in args)
            if not (0 <= t < 1):
                raise MalformedInput("theta must satisfy 0 <= theta < 1", n, args[2][1], source)
            items.append(Sample(x, y, t))
            lines.append(n)
        elif head == "gate":
            need(1)
            items.append(GateMark(args[0][0]))
            lines.append(n)
        else:
            raise MalformedInput(f"unknown directive {head!r}", n, col, source)
    if genus is None:
        raise MalformedInput("missing 'surface g p' header", 1, 1, source)
    try:
        spec = BundleSpec(SurfaceSpec(genus, punct), euler)
    except ContextError as e:
        raise MalformedInput(str(e), 1, 1, source) from None
    poly = standard_polygon(spec.surface)
    for it, n in zip(items, lines):
        if isinstance(it, GateMark):
            try:
                poly.edge_by_label(it.label)
            except KeyError:
                raise MalformedInput(f"no glued edge labelled {it.label!r}", n, 6, source) from None
    if not any(isinstance(it, Sample) for it in items):
        raise MalformedInput("a diagram needs at least one sample", 1, 1, source)
    return FramedKnotPL(spec, tuple(items), tuple(lines))


def format_pl(k: FramedKnotPL) -> str:
    s = k.spec
    out = [f"surface {s.surface.genus} {s.surface.punctures}", f"euler {s.euler}"]
    for it in k.items:
        if isinstance(it, Sample):
            out.append(f"sample {it.x} {it.y} {it.theta}")
        else:
            out.append(f"gate {it.label}")
    return "\n".join(out) + "\n"


# -------------------------------------------------------------- compilation

def _delta(t0: Fraction, t1: Fraction) -> Fraction:
    d = t1 - t0
    if d >= Fraction(1, 2):
        d -= 1
    elif d < Fraction(-1, 2):
        d += 1
    if abs(d) == Fraction(1, 2):
        raise GenericityError("consecutive fiber angles differ by exactly half a turn")
    return d


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class _Leg:
    __slots__ = ("P", "Q", "t0", "dt", "edge", "s_gate", "dirs", "pieces", "line", "events")


def compile_pl(k: FramedKnotPL, poly: PolygonModel | None = None) -> DiagramCode:
    """Exact compilation of a PL knot into its event code."""
    poly = poly or standard_polygon(k.spec.surface)
    if poly.surface != k.spec.surface:
        raise ContextError("polygon and diagram use different surfaces")
    items = list(k.items)
    lines = list(k.lines) if k.lines else [None] * len(items)
    first = next(i for i, it in enumerate(items) if isinstance(it, Sample))
    items = items[first:] + items[:first]
    lines = lines[first:] + lines[:first]

    def where(i):
        return f"sample at line {lines[i]}" if lines[i] is not None else f"sample #{i}"

    # legs between consecutive samples
    idx = [i for i, it in enumerate(items) if isinstance(it, Sample)]
    legs = []
    for a, i in enumerate(idx):
        j = idx[(a + 1) % len(idx)]
        between = [items[m] for m in range(i + 1, j if j > i else len(items))]
        if len(between) > 1:
            raise GenericityError(f"two gates in a row after {where(i)}")
        P = (items[i].x, items[i].y)
        Q = (items[j].x, items[j].y)
        if not poly.contains(P):
            raise GenericityError(f"{where(i)} is not strictly inside the polygon")
        leg = _Leg()
        leg.P, leg.Q, leg.line = P, Q, where(i)
        leg.t0 = items[i].theta
        try:
            leg.dt = _delta(items[i].theta, items[j].theta)
        except GenericityError as e:
            raise GenericityError(f"{e} after {where(i)}") from None
        leg.events = []
        if between:
            e = poly.edge_by_label(between[0].label)
            Qp = poly.unmap_point(e, Q)
            d = sub(Qp, P)
            hit = segment_intersection(P, Qp, poly.vertices[e], poly.vertices[(e + 1) % poly.n])
            if hit is None or not (0 < hit[0] < 1 and 0 < hit[1] < 1):
                raise GenericityError(
                    f"segment after {where(i)} does not pass through the interior of edge {between[0].label}")
            s, t = hit
            X = (P[0] + s * d[0], P[1] + s * d[1])
            leg.edge, leg.s_gate = e, s
            leg.dirs = (d, poly.map_dir(e, d))
            leg.pieces = [(P, X, Fraction(0), s), (poly.map_point(e, X), Q, s, Fraction(1))]
            leg.events.append((s, 2, Gate(e, t, d)))
        else:
            d = sub(Q, P)
            if d == (0, 0):
                raise GenericityError(f"zero-length segment after {where(i)}")
            leg.edge, leg.s_gate = None, None
            leg.dirs = (d, d)
            leg.pieces = [(P, Q, Fraction(0), Fraction(1))]
        legs.append(leg)

    # double points
    pieces = [(li, pi, pc) for li, leg in enumerate(legs) for pi, pc in enumerate(leg.pieces)]
    order = {(li, pi): n for n, (li, pi, _) in enumerate(pieces)}
    total = len(pieces)
    points = {}
    tmp = 0
    for a in range(total):
        la, pa, (A0, A1, sa0, sa1) = pieces[a]
        for b in range(a + 1, total):
            lb, pb, (B0, B1, sb0, sb1) = pieces[b]
            try:
                hit = segment_intersection(A0, A1, B0, B1)
            except ValueError:
                raise GenericityError(
                    f"overlapping segments after {legs[la].line} and {legs[lb].line}") from None
            if hit is None:
                continue
            ta, tb = hit
            adjacent = (b == a + 1 and ta == 1 and tb == 0) or (a == 0 and b == total - 1 and ta == 0 and tb == 1)
            if adjacent and la != lb:
                continue
            if not (0 < ta < 1 and 0 < tb < 1):
                raise GenericityError(
                    f"segments after {legs[la].line} and {legs[lb].line} meet at an endpoint")
            X = (A0[0] + ta * (A1[0] - A0[0]), A0[1] + ta * (A1[1] - A0[1]))
            if X in points:
                raise GenericityError(f"triple point involving the segment after {legs[la].line}")
            points[X] = tmp
            for leg, pi, t, s0, s1 in ((legs[la], pa, ta, sa0, sa1), (legs[lb], pb, tb, sb0, sb1)):
                s = s0 + t * (s1 - s0)
                theta = _frac(leg.t0 + s * leg.dt)
                leg.events.append((s, 1, Visit(tmp, theta, leg.dirs[pi])))
            tmp += 1

    # fiber cuts
    for leg in legs:
        if leg.dt > 0 and leg.t0 + leg.dt >= 1:
            s, sign = (1 - leg.t0) / leg.dt, 1
        elif leg.dt < 0 and leg.t0 + leg.dt < 0:
            s, sign = leg.t0 / (-leg.dt), -1
        else:
            continue
        d = leg.dirs[0] if leg.s_gate is None or s <= leg.s_gate else leg.dirs[1]
        leg.events.append((s, 0, Cut(sign, d)))

    # event stream with vertex turns
    stream = []
    for a, leg in enumerate(legs):
        evs = sorted(leg.events, key=lambda t: (t[0], t[1]))
        for (s1, k1, e1), (s2, k2, e2) in zip(evs, evs[1:]):
            if s1 == s2 and {k1, k2} == {0, 1}:
                raise GenericityError(f"fiber cut through a crossing after {leg.line}")
        stream.extend(e for _, _, e in evs)
        nxt = legs[(a + 1) % len(legs)]
        u, w = leg.dirs[1], nxt.dirs[0]
        if cross(u, w) == 0 and u[0] * w[0] + u[1] * w[1] < 0:
            raise GenericityError(f"the path reverses direction at {nxt.line}")
        stream.append(passages(u, w))

    # theta genericity and renumbering
    seen: dict = {}
    for e in stream:
        if isinstance(e, Visit):
            if e.crossing in seen and seen[e.crossing] == e.theta:
                raise GenericityError("equal fiber angles at a double point")
            seen[e.crossing] = e.theta
    events, turning = [], []
    acc = 0
    lead = 0
    for e in stream:
        if isinstance(e, int):
            acc += e
        else:
            if events:
                turning.append(acc)
            else:
                lead = acc
            events.append(e)
            acc = 0
    if events:
        turning.append(acc + lead)
    else:
        turning = [acc]
    mapping = {}
    out = []
    for e in events:
        if isinstance(e, Visit):
            mapping.setdefault(e.crossing, len(mapping))
            e = Visit(mapping[e.crossing], e.theta, e.direction)
        out.append(e)
    code = DiagramCode(k.spec, tuple(out), tuple(turning))
    validate(code)
    return code
