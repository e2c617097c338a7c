"""Local moves on diagram codes, random diagrams and random move sequences.

Every move is an isotopy of the framed knot supported in a small chart.
New local pictures are drawn in a reference frame and carried to the
diagram by a linear map, so all new directions and turning counts are exact.

Kinds and variants:

``r1-framed``
    ``ins:<s1><s2>:<h1><h2>`` inserts two kinks at the start of an arc;
    ``s`` is the turning sense (``+`` counterclockwise) and ``h`` is ``u``
    when the second pass of the kink is higher.  Only pairs whose writhes
    cancel are allowed.  ``del`` removes such a pair.
``r2``
    ``ins:<side_s>:<side_t>:<over|under>`` pushes a finger of strand ``s``
    across strand ``t`` next to an existing crossing; ``ins-circle:<over|under>``
    does the same on a crossing-free circle; ``del`` removes a bigon.
``r3``
    ``swap`` pushes a strand across the crossing of the other two.
``gate-slide``
    ``cross-fwd`` / ``cross-bwd`` move a crossing through a polygon edge;
    ``finger-ins:<+|->`` pushes a small finger through an edge and
    ``finger-del`` retracts one.
``cut-slide``
    ``back`` / ``ahead`` exchange a fiber cut with the previous / next event.
``vertical``
    ``up`` / ``down`` move one branch along the fiber without changing
    which branch is higher.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .diagram import Cut, DiagramCode, Gate, Visit, renumber, validate
from .errors import MoveError
from .exact import cross, neg, passages, reversed_count, rot90, sub

KINDS = ("r1-framed", "r2", "r3", "gate-slide", "cut-slide", "vertical")


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: tuple
    variant: str

    def serialize(self) -> str:
        return " ".join([self.kind, self.variant] + [str(s) for s in self.site])


def parse_move(line: str) -> MoveSpec:
    parts = line.split()
    if len(parts) < 2 or parts[0] not in KINDS:
        raise MoveError(f"bad move line: {line.strip()!r}")
    try:
        site = tuple(int(x) for x in parts[2:])
    except ValueError:
        raise MoveError(f"site indices must be integers: {line.strip()!r}") from None
    return MoveSpec(parts[0], site, parts[1])


def parse_script(text: str):
    out = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append(parse_move(body))
    return out


# ------------------------------------------------------------------ helpers

def _frame(x, y):
    """Linear map sending (1,0) to x and (0,1) to y."""
    def L(v):
        return (v[0] * x[0] + v[1] * y[0], v[0] * x[1] + v[1] * y[1])
    return L


def _chain(L, dirs) -> int:
    """Passages along consecutive short turns of the mapped direction list."""
    return sum(passages(L(a), L(b)) for a, b in zip(dirs, dirs[1:]))


def _new_id(code: DiagramCode) -> int:
    return max(code.visits(), default=-1) + 1


def _rewrite(code: DiagramCode, prefix=None, suffix=None) -> DiagramCode:
    """Insert events at the start and/or end of arcs.

    ``prefix[a] = (events, counts)`` puts ``events`` right after event ``a``;
    ``counts`` has one more entry than ``events``, from event ``a`` to the
    first new event, between new events, and from the last new event back
    onto the old path.  ``suffix[a] = (events, counts)`` puts events right
    before event ``a+1``; its first count runs from the old path to the
    first new event and its last count to event ``a+1``.
    """
    prefix = prefix or {}
    suffix = suffix or {}
    n = len(code.events)
    if n == 0:
        pe, pc = prefix.get(0, ((), (0,)))
        se, sc = suffix.get(0, ((), (0,)))
        events = list(pe) + list(se)
        if not events:
            return code
        # the old arc joins the end of the new events back to their start
        if pe and se:
            counts = list(pc[1:-1]) + [pc[-1] + code.turning[0] + sc[0]] + list(sc[1:-1])
            counts.append(sc[-1] + pc[0])
        elif pe:
            counts = list(pc[1:-1]) + [pc[-1] + code.turning[0] + pc[0]]
        else:
            counts = list(sc[1:-1]) + [sc[-1] + code.turning[0] + sc[0]]
        return code.with_events(events, counts)
    events, counts = [], []
    for a in range(n):
        events.append(code.events[a])
        pe, pc = prefix.get(a, ((), None))
        se, sc = suffix.get(a, ((), None))
        T = code.turning[a]
        chain = []
        if pe:
            events.extend(pe)
            chain.extend(pc[:-1])
            head = pc[-1]
        else:
            head = 0
        if se:
            chain.append(head + T + sc[0])
            events.extend(se)
            chain.extend(sc[1:])
        else:
            chain.append(head + T)
        counts.extend(chain)
    return code.with_events(events, counts)


def _remove(code: DiagramCode, drop, extra=None) -> DiagramCode:
    """Delete events; each surviving arc sums the counts it absorbs.

    ``extra[i]`` is added when the removed event ``i`` is absorbed, which is
    how gate jumps survive a retraction.
    """
    drop = set(drop)
    extra = extra or {}
    n = len(code.events)
    keep = [i for i in range(n) if i not in drop]
    if not keep:
        total = sum(code.turning) + sum(extra.values())
        return code.with_events((), (total,))
    events, counts = [], []
    for a, i in enumerate(keep):
        j = keep[(a + 1) % len(keep)]
        c = code.turning[i]
        k = (i + 1) % n
        while k != j:
            c += code.turning[k] + extra.get(k, 0)
            k = (k + 1) % n
        events.append(code.events[i])
        counts.append(c)
    return code.with_events(events, counts)


def _finish(code: DiagramCode) -> DiagramCode:
    out = renumber(code)
    validate(out)
    return out


# ---------------------------------------------------------------- framed R1

_KINK = {
    1: [(1, 1), (-1, 0), (1, -1)],
    -1: [(1, -1), (-1, 0), (1, 1)],
}
_E = (Fraction(1), Fraction(0))


def _r1_insert(code: DiagramCode, arc: int, variant: str) -> DiagramCode:
    try:
        _, senses, heights = variant.split(":")
        s = [1 if ch == "+" else -1 for ch in senses]
        h = [1 if ch == "u" else -1 for ch in heights]
        if len(s) != 2 or len(h) != 2 or not set(senses) <= {"+", "-"} or not set(heights) <= {"u", "d"}:
            raise ValueError
    except ValueError:
        raise MoveError(f"bad r1-framed variant {variant!r}") from None
    if s[0] * h[0] + s[1] * h[1] != 0:
        raise MoveError("the two kinks must have opposite writhe")
    n = len(code.events)
    if n and not (0 <= arc < n):
        raise MoveError(f"arc {arc} out of range")
    u = code.out_dir(arc) if n else _E
    L = _frame(u, rot90(u))
    base = _new_id(code)
    lo, hi = Fraction(1, 3), Fraction(2, 3)
    events, counts = [], []
    prev = (1, 0)
    for k in range(2):
        dp, dm, dq = _KINK[s[k]]
        tp, tq = (lo, hi) if h[k] == 1 else (hi, lo)
        events += [Visit(base + k, tp, L(dp)), Visit(base + k, tq, L(dq))]
        counts += [_chain(L, [prev, (1, 0), dp]), _chain(L, [dp, dm, dq])]
        prev = dq
    counts.append(_chain(L, [prev, (1, 0)]))
    return _rewrite(code, prefix={arc: (events, counts)})


def kink_loop(code: DiagramCode, p: int):
    """``(rotation, height sign)`` if visits ``p, p+1`` bound an empty monogon."""
    n = len(code.events)
    if n < 2:
        return None
    q = (p + 1) % n
    a, b = code.events[p], code.events[q]
    if not (isinstance(a, Visit) and isinstance(b, Visit) and a.crossing == b.crossing):
        return None
    rho = code.turning[p] + passages(b.direction, a.direction)
    c = cross(a.direction, b.direction)
    if rho == 1 and c < 0 or rho == -1 and c > 0:
        return rho, (1 if b.theta > a.theta else -1)
    return None


def _r1_delete(code: DiagramCode, p: int) -> DiagramCode:
    n = len(code.events)
    if n < 4:
        raise MoveError("no kink pair here")
    k1 = kink_loop(code, p)
    k2 = kink_loop(code, (p + 2) % n)
    if k1 is None or k2 is None:
        raise MoveError(f"events {p}..{p + 3} are not two consecutive kinks")
    if k1[0] * k1[1] + k2[0] * k2[1] != 0:
        raise MoveError("the kink writhes do not cancel")
    if len({code.events[(p + i) % n].crossing for i in range(4)}) != 2:
        raise MoveError("not two distinct kinks")
    drop = [(p + i) % n for i in range(4)]
    out = _remove(code, drop)
    # each straightened kink loses its full turn
    shift = k1[0] + k2[0]
    if out.events:
        keep_before = (p - 1) % n
        while keep_before in drop:
            keep_before = (keep_before - 1) % n
        idx = [i for i in range(n) if i not in set(drop)].index(keep_before)
        t = list(out.turning)
        t[idx] -= shift
        return out.with_events(out.events, t)
    return out.with_events((), (out.turning[0] - shift,))


# ----------------------------------------------------------------------- R2

_FINGER_OUT = ([(1, 0), (0, 1), (-1, 0)], [(-1, 0), (0, 1), (1, 0)], [(1, 0), (0, -1), (1, 0)])
_FINGER_IN = ([(-1, 0), (0, 1), (-1, 0)], [(-1, 0), (0, -1), (1, 0)], [(1, 0), (0, -1), (-1, 0)])


def _heights(variant_word: str):
    if variant_word == "over":
        return Fraction(2, 3), Fraction(1, 3)
    if variant_word == "under":
        return Fraction(1, 3), Fraction(2, 3)
    raise MoveError(f"expected 'over' or 'under', got {variant_word!r}")


def _r2_insert(code: DiagramCode, vs: int, vt: int, variant: str) -> DiagramCode:
    """Finger of strand ``s`` across strand ``t`` in a corner of their crossing."""
    parts = variant.split(":")
    if len(parts) != 4 or parts[1] not in ("in", "out") or parts[2] not in ("in", "out"):
        raise MoveError(f"bad r2 variant {variant!r}")
    hs, ht = _heights(parts[3])
    n = len(code.events)
    if not (0 <= vs < n and 0 <= vt < n) or vs == vt:
        raise MoveError("r2 needs two visit indices")
    a, b = code.events[vs], code.events[vt]
    if not (isinstance(a, Visit) and isinstance(b, Visit) and a.crossing == b.crossing):
        raise MoveError(f"events {vs} and {vt} are not the two visits of one crossing")
    if a.crossing in code.marked:
        raise MoveError("r2 next to a marked crossing is not supported")
    s_out, t_out = parts[1] == "out", parts[2] == "out"
    rs = a.direction if s_out else neg(a.direction)
    rt = b.direction if t_out else neg(b.direction)
    L = _frame(rs, rt)
    e1, e2 = _new_id(code), _new_id(code) + 1
    prefix, suffix = {}, {}
    if s_out:
        c = [_chain(L, d) for d in _FINGER_OUT]
        prefix[vs] = ([Visit(e1, hs, L((-1, 0))), Visit(e2, hs, L((1, 0)))], c)
    else:
        c = [_chain(L, d) for d in _FINGER_IN]
        suffix[(vs - 1) % n] = ([Visit(e2, hs, L((-1, 0))), Visit(e1, hs, L((1, 0)))], c)
    if t_out:
        prefix[vt] = ([Visit(e1, ht, L((0, 1))), Visit(e2, ht, L((0, 1)))], [0, 0, 0])
    else:
        suffix[(vt - 1) % n] = ([Visit(e2, ht, L((0, -1))), Visit(e1, ht, L((0, -1)))], [0, 0, 0])
    return _rewrite(code, prefix, suffix)


_N, _S, _W = (0, 1), (0, -1), (-1, 0)
_EPLUS = (1, 0)


def _r2_circle(code: DiagramCode, variant: str) -> DiagramCode:
    if code.events:
        raise MoveError("ins-circle needs a diagram without events")
    T = code.turning[0]
    if T not in (1, -1):
        raise MoveError("a crossing-free diagram must turn exactly once")
    hs, ht = _heights(variant.split(":", 1)[-1])
    L = _frame((Fraction(1), Fraction(0)), (Fraction(0), Fraction(T)))
    events = [Visit(0, hs, L(_N)), Visit(1, hs, L(_S)), Visit(1, ht, L(_W)), Visit(0, ht, L(_W))]
    counts = [_chain(L, [_N, _EPLUS, _S]), _chain(L, [_S, _EPLUS, _N, _W]), 0,
              _chain(L, [_W, _S, _EPLUS, _N])]
    return code.with_events(events, counts)


def bigon(code: DiagramCode, j: int, k: int):
    """Rotation of the loop if strand pairs ``j, j+1`` and ``k, k+1`` bound an empty bigon."""
    n = len(code.events)
    if n < 4:
        return None
    idx = [j % n, (j + 1) % n, k % n, (k + 1) % n]
    if len(set(idx)) != 4:
        return None
    a, b, c, d = (code.events[i] for i in idx)
    if not all(isinstance(e, Visit) for e in (a, b, c, d)):
        return None
    if a.crossing == b.crossing or {a.crossing, b.crossing} != {c.crossing, d.crossing}:
        return None
    if a.crossing in code.marked or b.crossing in code.marked:
        return None
    T = code.turning
    if c.crossing == b.crossing:
        rho = T[idx[0]] + passages(b.direction, c.direction) + T[idx[2]] + passages(d.direction, a.direction)
        corners = [(b.direction, c.direction), (d.direction, a.direction)]
        above = [a.theta > d.theta, b.theta > c.theta]
    else:
        rho = (T[idx[0]] + passages(b.direction, neg(d.direction))
               + reversed_count(T[idx[2]], c.direction, d.direction)
               + passages(neg(c.direction), a.direction))
        corners = [(b.direction, neg(d.direction)), (neg(c.direction), a.direction)]
        above = [a.theta > c.theta, b.theta > d.theta]
    if rho not in (1, -1) or above[0] != above[1]:
        return None
    if any((cross(u, w) > 0) != (rho > 0) for u, w in corners):
        return None
    return rho


def _r2_delete(code: DiagramCode, j: int, k: int) -> DiagramCode:
    if bigon(code, j, k) is None:
        raise MoveError(f"strand pairs at {j} and {k} do not bound an empty bigon")
    n = len(code.events)
    return _remove(code, [j % n, (j + 1) % n, k % n, (k + 1) % n])


# ----------------------------------------------------------------------- R3

def _segments(code: DiagramCode):
    """Consecutive visit pairs of distinct unmarked crossings: index -> crossings."""
    n = len(code.events)
    out = {}
    for x in range(n):
        a, b = code.events[x], code.events[(x + 1) % n]
        if (n >= 2 and isinstance(a, Visit) and isinstance(b, Visit) and a.crossing != b.crossing
                and a.crossing not in code.marked and b.crossing not in code.marked):
            out[x] = (a.crossing, b.crossing)
    return out


def triangle(code: DiagramCode, i: int, j: int, k: int):
    """Rotation of the loop if the three strand pairs bound an empty, movable triangle."""
    n = len(code.events)
    seg = _segments(code)
    if not all(x in seg for x in (i, j, k)):
        return None
    idx = {i, (i + 1) % n, j, (j + 1) % n, k, (k + 1) % n}
    if len(idx) != 6:
        return None
    sets = [frozenset(seg[x]) for x in (i, j, k)]
    if len(set().union(*sets)) != 3 or len(set(sets)) != 3:
        return None
    ev = code.events

    def walk(x, start):
        a, b = ev[x], ev[(x + 1) % n]
        if a.crossing == start:
            return code.turning[x], a.direction, b.direction, b.crossing
        return (reversed_count(code.turning[x], a.direction, b.direction),
                neg(b.direction), neg(a.direction), a.crossing)

    rho = 0
    corners = []
    strands = [i, j, k]
    cur = i
    at = ev[i].crossing
    first_dir = prev_dir = None
    for _ in range(3):
        cnt, d0, d1, nxt = walk(cur, at)
        if prev_dir is None:
            first_dir = d0
        else:
            rho += passages(prev_dir, d0)
            corners.append((prev_dir, d0))
        rho += cnt
        prev_dir, at = d1, nxt
        strands.remove(cur)
        if strands:
            cur = next(x for x in strands if at in seg[x])
    rho += passages(prev_dir, first_dir)
    corners.append((prev_dir, first_dir))
    if rho not in (1, -1) or any((cross(u, w) > 0) != (rho > 0) for u, w in corners):
        return None
    # heights must be orderable: no strand wins exactly once each
    wins = {x: 0 for x in (i, j, k)}
    for x in (i, j, k):
        for y in (i, j, k):
            if x == y:
                continue
            common = set(seg[x]) & set(seg[y])
            (c,) = common
            vx = ev[x] if ev[x].crossing == c else ev[(x + 1) % n]
            vy = ev[y] if ev[y].crossing == c else ev[(y + 1) % n]
            if vx.theta > vy.theta:
                wins[x] += 1
    if sorted(wins.values()) != [0, 1, 2]:
        return None
    return rho


def _r3(code: DiagramCode, i: int, j: int, k: int) -> DiagramCode:
    if triangle(code, i, j, k) is None:
        raise MoveError(f"strand pairs at {i}, {j}, {k} do not bound a movable triangle")
    n = len(code.events)
    t = list(code.turning)
    events = list(code.events)
    for x in (i, j, k):
        tab = code.turning[x]
        t[(x - 1) % n] += tab
        t[x] = -tab
        t[(x + 1) % n] += tab
        events[x], events[(x + 1) % n] = code.events[(x + 1) % n], code.events[x]
    return code.with_events(events, t)


# ------------------------------------------------------------- gate slides

def _edge_points(code: DiagramCode, k: int, skip=()):
    """Positions, in the coordinate of edge ``k``, of gate points on that edge."""
    poly = code.poly
    j = poly.partner[k]
    out = []
    for i, e in enumerate(code.events):
        if i in skip or not isinstance(e, Gate):
            continue
        if e.edge == k:
            out.append(e.position)
        elif e.edge == j:
            out.append(1 - e.position)
    return out


def _clear_between(code, k, lo, hi, skip) -> bool:
    lo, hi = min(lo, hi), max(lo, hi)
    return not any(lo < x < hi for x in _edge_points(code, k, skip))


def _cross_pair(code: DiagramCode, p: int, q: int, step: int):
    n = len(code.events)
    ev = code.events
    a, b = ev[p % n], ev[q % n]
    if not (isinstance(a, Visit) and isinstance(b, Visit) and a.crossing == b.crossing):
        raise MoveError(f"events {p} and {q} are not the two visits of one crossing")
    if a.crossing in code.marked:
        raise MoveError("gate-slide of a marked crossing is not supported")
    gp, gq = (p + step) % n, (q + step) % n
    g, h = ev[gp], ev[gq]
    if not (isinstance(g, Gate) and isinstance(h, Gate) and g.edge == h.edge):
        side = "after" if step > 0 else "before"
        raise MoveError(f"both visits must be {side} gates through one edge")
    if not _clear_between(code, g.edge, g.position, h.position, {gp, gq}):
        raise MoveError("another strand passes the edge between the two gates")
    return gp, gq, g, h


def _cross_fwd(code: DiagramCode, p: int, q: int) -> DiagramCode:
    """Crossing just before an edge moves through it."""
    gp, gq, g, h = _cross_pair(code, p, q, 1)
    poly = code.poly
    n = len(code.events)
    A = lambda u: poly.map_dir(g.edge, u)  # noqa: E731
    t = list(code.turning)
    events = list(code.events)
    for v, gi, pos in ((p, gp, h.position), (q, gq, g.position)):
        vis, gate = code.events[v], code.events[gi]
        T1 = code.turning[v]
        J = poly.jump(g.edge, vis.direction) - poly.jump(g.edge, gate.direction)
        t[(v - 1) % n] += T1
        t[v] = -T1 + J
        t[gi] += T1 - J
        events[v] = Gate(gate.edge, pos, gate.direction)
        events[gi] = Visit(vis.crossing, vis.theta, A(vis.direction))
    return code.with_events(events, t)


def _cross_bwd(code: DiagramCode, p: int, q: int) -> DiagramCode:
    """Crossing just after an edge moves back through it."""
    gp, gq, g, h = _cross_pair(code, p, q, -1)
    poly = code.poly
    n = len(code.events)
    back = poly.partner[g.edge]
    t = list(code.turning)
    events = list(code.events)
    for v, gi, pos in ((p, gp, h.position), (q, gq, g.position)):
        vis, gate = code.events[v], code.events[gi]
        d = poly.map_dir(back, vis.direction)
        T1p = code.turning[gi]
        T1 = -T1p + poly.jump(g.edge, d) - poly.jump(g.edge, gate.direction)
        t[(gi - 1) % n] -= T1
        t[gi] = T1
        t[v] += T1p
        events[gi] = Visit(vis.crossing, vis.theta, d)
        events[v] = Gate(gate.edge, pos, gate.direction)
    return code.with_events(events, t)


def _finger_ins(code: DiagramCode, g: int, variant: str) -> DiagramCode:
    side = variant.split(":", 1)[-1]
    if side not in ("+", "-"):
        raise MoveError(f"bad finger variant {variant!r}")
    n = len(code.events)
    if not (0 <= g < n) or not isinstance(code.events[g], Gate):
        raise MoveError(f"event {g} is not a gate")
    poly = code.poly
    gate = code.events[g]
    k, t, u = gate.edge, gate.position, gate.direction
    j = poly.partner[k]
    others = _edge_points(code, k, {g})
    if side == "+":
        nxt = min([x for x in others if x > t], default=Fraction(1))
    else:
        nxt = max([x for x in others if x < t], default=Fraction(0))
    near = t + (nxt - t) / 3
    far = t + 2 * (nxt - t) / 3
    ek = poly.edge_vector(k)
    m = ek if near > far else neg(ek)
    A = lambda v: poly.map_dir(k, v)  # noqa: E731
    I = lambda v: v  # noqa: E731
    events = [Gate(k, far, u), Gate(j, 1 - near, neg(A(u)))]
    counts = [0, _chain(A, [u, m, neg(u)]), _chain(I, [neg(u), m, u])]
    return _rewrite(code, suffix={(g - 1) % n: (events, counts)})


def _finger_del(code: DiagramCode, i: int) -> DiagramCode:
    n = len(code.events)
    if n < 2:
        raise MoveError("no finger here")
    i %= n
    i2 = (i + 1) % n
    a, b = code.events[i], code.events[i2]
    poly = code.poly
    if not (isinstance(a, Gate) and isinstance(b, Gate) and b.edge == poly.partner[a.edge]):
        raise MoveError(f"events {i} and {i2} are not a gate and its immediate return")
    if not _clear_between(code, a.edge, a.position, 1 - b.position, {i, i2}):
        raise MoveError("another strand passes the edge inside the finger")
    extra = {i: poly.jump(a.edge, a.direction), i2: poly.jump(b.edge, b.direction)}
    return _remove(code, [i, i2], extra)


# ------------------------------------------------------ cut slides, vertical

def _rotate(code: DiagramCode, r: int) -> DiagramCode:
    n = len(code.events)
    r %= n
    return code.with_events(code.events[r:] + code.events[:r], code.turning[r:] + code.turning[:r])


def _slid_theta(x: Visit, other: Visit, up: bool) -> Fraction:
    if up:
        if not other.theta < x.theta:
            raise MoveError("the branch would pass the other branch of its crossing")
        return other.theta / 2
    if not other.theta > x.theta:
        raise MoveError("the branch would pass the other branch of its crossing")
    return (1 + other.theta) / 2


def _cut_slide(code: DiagramCode, c: int, variant: str) -> DiagramCode:
    n = len(code.events)
    if variant not in ("back", "ahead"):
        raise MoveError(f"bad cut-slide variant {variant!r}")
    if not (0 <= c < n) or not isinstance(code.events[c], Cut) or n < 2:
        raise MoveError(f"event {c} is not a cut with a neighbour")
    cut = code.events[c]
    xi = (c + 1) % n if variant == "ahead" else (c - 1) % n
    x = code.events[xi]
    if isinstance(x, Cut):
        raise MoveError("two adjacent cuts commute trivially")
    if isinstance(x, Visit):
        if x.crossing in code.marked:
            raise MoveError("cannot slide a cut past a marked crossing")
        p, q = code.visits()[x.crossing]
        other = code.events[q if xi == p else p]
        up = (cut.sign == 1) == (variant == "back")
        x = Visit(x.crossing, _slid_theta(x, other, up), x.direction)
    # rotate so the cut is event 0, drop it, and reinsert it on the other side of x
    r = _rotate(code, c)
    stripped = _remove(r, [0])
    m = len(stripped.events)
    xpos = 0 if variant == "ahead" else m - 1
    events = list(stripped.events)
    events[xpos] = x
    stripped = stripped.with_events(events, stripped.turning)
    if variant == "ahead":
        out_dir = stripped.out_dir(xpos)
        res = _rewrite(stripped, prefix={xpos: ([Cut(cut.sign, out_dir)], [0, 0])})
        back_shift = c
    else:
        res = _rewrite(stripped, suffix={(xpos - 1) % m: ([Cut(cut.sign, x.direction)], [0, 0])})
        back_shift = c - 1
    return _rotate(res, -back_shift) if res.events else res


def _vertical(code: DiagramCode, v: int, variant: str) -> DiagramCode:
    n = len(code.events)
    if not (0 <= v < n) or not isinstance(code.events[v], Visit):
        raise MoveError(f"event {v} is not a visit")
    x = code.events[v]
    if x.crossing in code.marked:
        raise MoveError("vertical moves keep marked crossings fixed")
    p, q = code.visits()[x.crossing]
    o = code.events[q if v == p else p].theta
    th = x.theta
    if variant == "up":
        new = (th + 1) / 2 if th > o else (th + o) / 2
    elif variant == "down":
        new = (th + o) / 2 if th > o else th / 2
    else:
        raise MoveError(f"bad vertical variant {variant!r}")
    if new == th:
        raise MoveError("the branch is already at the bottom of its range")
    events = list(code.events)
    events[v] = Visit(x.crossing, new, x.direction)
    return code.with_events(events, code.turning)


# --------------------------------------------------------------- dispatcher

R1_VARIANTS = ("ins:++:ud", "ins:++:du", "ins:--:ud", "ins:--:du",
               "ins:+-:uu", "ins:+-:dd", "ins:-+:uu", "ins:-+:dd")
R2_VARIANTS = tuple(f"ins:{a}:{b}:{h}" for a in ("out", "in") for b in ("out", "in")
                    for h in ("over", "under"))
_ARITY = {"r1-framed": {"ins": 1, "del": 1}, "r2": {"ins": 2, "ins-circle": 0, "del": 2},
          "r3": {"swap": 3},
          "gate-slide": {"cross-fwd": 2, "cross-bwd": 2, "finger-ins": 1, "finger-del": 1},
          "cut-slide": {"back": 1, "ahead": 1}, "vertical": {"up": 1, "down": 1}}


def apply_move(code: DiagramCode, move: MoveSpec) -> DiagramCode:
    """Apply one move; raises :class:`MoveError` if it is not applicable."""
    kinds = _ARITY.get(move.kind)
    if kinds is None:
        raise MoveError(f"unknown move kind {move.kind!r}")
    head = move.variant.split(":", 1)[0]
    if head not in kinds:
        raise MoveError(f"unknown {move.kind} variant {move.variant!r}")
    if len(move.site) != kinds[head]:
        raise MoveError(f"{move.kind} {head} takes {kinds[head]} site index(es), got {len(move.site)}")
    s = move.site
    n = len(code.events)
    if any(not (0 <= x < max(n, 1)) for x in s):
        raise MoveError(f"site {s} out of range for {n} events")
    if move.kind == "r1-framed":
        out = _r1_insert(code, s[0], move.variant) if head == "ins" else _r1_delete(code, s[0])
    elif move.kind == "r2":
        if head == "ins":
            out = _r2_insert(code, s[0], s[1], move.variant)
        elif head == "ins-circle":
            out = _r2_circle(code, move.variant)
        else:
            out = _r2_delete(code, s[0], s[1])
    elif move.kind == "r3":
        out = _r3(code, *s)
    elif move.kind == "gate-slide":
        if head == "cross-fwd":
            out = _cross_fwd(code, *s)
        elif head == "cross-bwd":
            out = _cross_bwd(code, *s)
        elif head == "finger-ins":
            out = _finger_ins(code, s[0], move.variant)
        else:
            out = _finger_del(code, s[0])
    elif move.kind == "cut-slide":
        out = _cut_slide(code, s[0], move.variant)
    else:
        out = _vertical(code, s[0], move.variant)
    return _finish(out)


def _candidates(code: DiagramCode, grow: bool = True):
    """Candidate moves.  Cheap structural filters only; some may still be refused."""
    ev = code.events
    n = len(ev)
    out = []
    vis = code.visits()
    unmarked = {d: pq for d, pq in vis.items() if d not in code.marked}
    if grow:
        out += [MoveSpec("r1-framed", (a,), v) for a in range(max(n, 1)) for v in R1_VARIANTS]
        if n == 0:
            out += [MoveSpec("r2", (), "ins-circle:" + h) for h in ("over", "under")]
        for p, q in unmarked.values():
            for vs, vt in ((p, q), (q, p)):
                out += [MoveSpec("r2", (vs, vt), v) for v in R2_VARIANTS]
        out += [MoveSpec("gate-slide", (i,), "finger-ins:" + sd)
                for i, e in enumerate(ev) if isinstance(e, Gate) for sd in "+-"]
    for p in range(n):
        if kink_loop(code, p) and n >= 4 and kink_loop(code, (p + 2) % n):
            out.append(MoveSpec("r1-framed", (p,), "del"))
    seg = _segments(code)
    by_set: dict = {}
    for x, cs in seg.items():
        by_set.setdefault(frozenset(cs), []).append(x)
    for group in by_set.values():
        for j in group:
            for k in group:
                if j != k and bigon(code, j, k) is not None:
                    out.append(MoveSpec("r2", (j, k), "del"))
    for i, (A, B) in seg.items():
        for j, cs in seg.items():
            if j <= i or A not in cs or B in cs:
                continue
            C = cs[0] if cs[1] == A else cs[1]
            for k in by_set.get(frozenset((B, C)), ()):
                if k > j and triangle(code, i, j, k) is not None:
                    out.append(MoveSpec("r3", (i, j, k), "swap"))
    for p, q in unmarked.values():
        for step, name in ((1, "cross-fwd"), (-1, "cross-bwd")):
            g, h = ev[(p + step) % n], ev[(q + step) % n]
            if isinstance(g, Gate) and isinstance(h, Gate) and g.edge == h.edge:
                out.append(MoveSpec("gate-slide", (p, q), name))
    poly = code.poly
    for i, e in enumerate(ev):
        f = ev[(i + 1) % n]
        if n >= 2 and isinstance(e, Gate) and isinstance(f, Gate) and f.edge == poly.partner[e.edge]:
            out.append(MoveSpec("gate-slide", (i,), "finger-del"))
        if isinstance(e, Cut) and n >= 2:
            for v, nb in (("back", ev[(i - 1) % n]), ("ahead", f)):
                if not isinstance(nb, Cut):
                    out.append(MoveSpec("cut-slide", (i,), v))
        if isinstance(e, Visit) and e.crossing not in code.marked:
            out += [MoveSpec("vertical", (i,), "up"), MoveSpec("vertical", (i,), "down")]
    return out


def _applies(code, move) -> bool:
    try:
        apply_move(code, move)
    except MoveError:
        return False
    return True


def enumerate_sites(code: DiagramCode, kind: str | None = None):
    """All applicable moves (of one kind, if given), in a fixed order."""
    if kind is not None and kind not in KINDS:
        raise MoveError(f"unknown move kind {kind!r}")
    return [m for m in _candidates(code) if (kind is None or m.kind == kind) and _applies(code, m)]


def random_moves(code: DiagramCode, steps: int, seed=0, max_crossings: int = 10, max_events: int = 40):
    """Apply ``steps`` random moves; returns ``(code, moves)``.

    Insertions are switched off once the diagram reaches the size limits,
    so long walks stay small.
    """
    rng = random.Random(seed)
    done = []
    failures = 0
    while len(done) < steps:
        grow = code.n_crossings() < max_crossings and len(code.events) < max_events
        cands = _candidates(code, grow)
        kinds = sorted({m.kind for m in cands})
        kind = rng.choice(kinds)
        move = rng.choice([m for m in cands if m.kind == kind])
        try:
            code = apply_move(code, move)
        except MoveError:
            failures += 1
            if failures > 50 * (steps + 1):
                raise
            continue
        done.append(move)
    return code, done


def random_walk(code: DiagramCode, steps: int, seed=0) -> DiagramCode:
    return random_moves(code, steps, seed)[0]


def replay(code: DiagramCode, moves):
    """Apply moves in order; yields each intermediate code."""
    for k, m in enumerate(moves):
        try:
            code = apply_move(code, m)
        except MoveError as e:
            raise MoveError(f"move {k + 1} ({m.serialize()}): {e}") from None
        yield code


# ------------------------------------------------------------ random knots

def _rand_frac(rng, lo, hi, den=97):
    return lo + (hi - lo) * Fraction(rng.randrange(1, den), den)


def _random_pl(spec, complexity, rng):
    from .pl import FramedKnotPL, GateMark, Sample
    from .polygon import standard_polygon

    poly = standard_polygon(spec.surface)
    glued = [k for k in range(poly.n) if poly.partner[k] is not None]

    def theta():
        return Fraction(rng.randrange(0, 48), 48)

    def inner():
        while True:
            p = (_rand_frac(rng, -1, 1), _rand_frac(rng, -1, 1))
            if poly.contains(p):
                return p

    items = []
    for _ in range(max(complexity, 1)):
        if glued and rng.random() < 0.6:
            k = rng.choice(glued)
            X = poly.edge_point(k, _rand_frac(rng, 0, 1, 31))
            ek = poly.edge_vector(k)
            inward = rot90(ek)
            u = (-inward[0] + _rand_frac(rng, -1, 1) * ek[0], -inward[1] + _rand_frac(rng, -1, 1) * ek[1])
            eps = Fraction(1, rng.randrange(8, 30))
            P = (X[0] - eps * u[0], X[1] - eps * u[1])
            Au = poly.map_dir(k, u)
            Y = poly.map_point(k, X)
            Q = (Y[0] + eps * Au[0], Y[1] + eps * Au[1])
            if not (poly.contains(P) and poly.contains(Q)):
                continue
            items += [Sample(P[0], P[1], theta()), GateMark(poly.edge_label(k)), Sample(Q[0], Q[1], theta())]
        else:
            p = inner()
            items.append(Sample(p[0], p[1], theta()))
    while sum(isinstance(x, Sample) for x in items) < 3:
        p = inner()
        items.append(Sample(p[0], p[1], theta()))
    return FramedKnotPL(spec, tuple(items))


def _circle_pl(spec, rng):
    from .pl import FramedKnotPL, Sample

    r = Fraction(rng.randrange(5, 20), 100)
    t = Fraction(rng.randrange(0, 48), 48)
    pts = [(r, 0), (0, r), (-r, 0), (0, -r)]
    return FramedKnotPL(spec, tuple(Sample(Fraction(x), Fraction(y), t) for x, y in pts))


def random_knot(spec, complexity: int = 4, seed=0, tries: int = 200):
    """A random generic PL knot in the bundle ``spec`` with about ``complexity`` crossings.

    Complexity 0 gives a small embedded circle.  Otherwise random polygons
    (some legs passing through glued edges) are drawn until one compiles and
    has close to the requested number of double points.
    """
    from .errors import GenericityError
    from .pl import compile_pl

    if complexity < 0:
        raise ValueError("complexity must be >= 0")
    rng = random.Random(seed)
    if complexity == 0:
        return _circle_pl(spec, rng)
    best = None
    for _ in range(tries):
        k = _random_pl(spec, rng.randrange(1, complexity + 3), rng)
        try:
            c = compile_pl(k)
        except GenericityError:
            continue
        gap = abs(c.n_crossings() - complexity)
        if best is None or gap < best[0]:
            best = (gap, k)
        if gap <= complexity // 4:
            break
    if best is None:
        raise MoveError(f"no generic random knot found in {tries} tries")
    return best[1]


def add_kinks(code: DiagramCode, count: int, arc: int = 0) -> DiagramCode:
    """Add ``|count|`` single kinks turning with the sign of ``count``.

    This is not an isotopy: each kink changes the rotation index by one and
    the framing by one.
    """
    sense = 1 if count > 0 else -1
    for _ in range(abs(count)):
        n = len(code.events)
        u = code.out_dir(arc) if n else _E
        L = _frame(u, rot90(u))
        dp, dm, dq = _KINK[sense]
        d = _new_id(code)
        events = [Visit(d, Fraction(1, 3), L(dp)), Visit(d, Fraction(2, 3), L(dq))]
        counts = [_chain(L, [(1, 0), dp]), _chain(L, [dp, dm, dq]), _chain(L, [dq, (1, 0)])]
        code = _finish(_rewrite(code, prefix={arc if n else 0: (events, counts)}))
    return code
