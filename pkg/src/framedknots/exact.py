"""Exact planar predicates on rational vectors.

Turning is measured by counting passages of a direction through the
reference direction (1, 0).  Angles live in [0, 2*pi); a counterclockwise
rotation that wraps past 2*pi counts +1 and a clockwise one that wraps below
0 counts -1.  With this half-open convention the counts along consecutive
rotations simply add up.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple


def F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(x, y) -> Vec:
    return (F(x), F(y))


def sub(p, q) -> Vec:
    return (p[0] - q[0], p[1] - q[1])


def add(p, q) -> Vec:
    return (p[0] + q[0], p[1] + q[1])


def scale(k, p) -> Vec:
    return (k * p[0], k * p[1])


def neg(p) -> Vec:
    return (-p[0], -p[1])


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def rot90(u) -> Vec:
    return (-u[1], u[0])


def matvec(m, u) -> Vec:
    (a, b), (c, d) = m
    return (a * u[0] + b * u[1], c * u[0] + d * u[1])


def half(u) -> int:
    """0 for angles in [0, pi), 1 for angles in [pi, 2*pi)."""
    return 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1


def angle_less(u, v) -> bool:
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu < hv
    return cross(u, v) > 0


def parallel_same(u, v) -> bool:
    return cross(u, v) == 0 and dot(u, v) > 0


def passages(u, w) -> int:
    """Passage count of the short rotation taking direction u to direction w."""
    c = cross(u, w)
    if c == 0:
        if dot(u, w) > 0:
            return 0
        raise ValueError("short rotation between opposite directions is undefined")
    if c > 0:
        return 1 if angle_less(w, u) else 0
    return -1 if angle_less(u, w) else 0


def reversed_count(t: int, a, b) -> int:
    """Count of the reversed path with negated tangents.

    If a direction path from ``a`` to ``b`` has count ``t``, traversing the
    underlying curve backwards gives a path from ``-b`` to ``-a``.
    """
    sa = 1 if half(a) == 0 else -1
    sb = 1 if half(b) == 0 else -1
    return -t + (sb - sa) // 2


def segment_intersection(p, q, r, s):
    """Parameters ``(t, u)`` of the proper intersection of pq and rs, if any.

    Returns None for disjoint or parallel segments; raises for collinear
    overlaps, which are never generic.
    """
    d1 = sub(q, p)
    d2 = sub(s, r)
    den = cross(d1, d2)
    if den == 0:
        if cross(d1, sub(r, p)) == 0:
            # collinear: do the projections overlap?
            L = dot(d1, d1)
            t0 = dot(sub(r, p), d1) / L
            t1 = dot(sub(s, p), d1) / L
            lo, hi = min(t0, t1), max(t0, t1)
            if hi > 0 and lo < 1:
                raise ValueError("collinear overlapping segments")
            # touching at a shared endpoint only
            if hi == 0 or lo == 1:
                t = hi if hi == 0 else lo
                return t, (Fraction(0) if t == t0 else Fraction(1))
        return None
    w = sub(r, p)
    t = cross(w, d2) / den
    u = cross(w, d1) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return t, u
    return None
