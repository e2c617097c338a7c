"""Fundamental polygon with similarity gluings.

Closed genus ``g``: boundary edges come in blocks ``a_i, b_i^-1, a_i^-1, b_i``
(the label is the letter read when a curve leaves through that edge).  A
small counterclockwise loop around the single vertex then reads the inverse
of the standard relator.  Punctured surfaces append ``c_k, free, c_k^-1``
blocks and one last free edge.

Edge ``k`` runs from vertex ``k`` to vertex ``k+1``.  The gluing of edge
``k`` to its partner ``j`` sends the point at parameter ``t`` on ``k`` to
parameter ``1 - t`` on ``j``; it is a rotation-scaling plus translation,
computed exactly from the edge vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ContextError
from .exact import add, cross, matvec, passages, sub
from .group_core import BundleSpec, SurfaceSpec


def _circle_point(t: Fraction):
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


@dataclass(frozen=True)
class PolygonModel:
    surface: SurfaceSpec
    vertices: tuple
    labels: tuple      # per edge: letter int, or None for a free edge
    partner: tuple     # per edge: partner edge index, or None
    linear: tuple = field(repr=False)       # per edge: 2x2 matrix or None
    translation: tuple = field(repr=False)  # per edge: vector or None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_vector(self, k):
        return sub(self.vertices[(k + 1) % self.n], self.vertices[k])

    def edge_point(self, k, t):
        v = self.vertices[k]
        e = self.edge_vector(k)
        return (v[0] + t * e[0], v[1] + t * e[1])

    def edge_label(self, k) -> str:
        if self.labels[k] is None:
            return "free"
        return self.surface.letter_name(self.labels[k])

    def edge_by_label(self, name: str) -> int:
        for k in range(self.n):
            if self.labels[k] is not None and self.edge_label(k) == name:
                return k
        raise KeyError(name)

    def letter(self, k) -> int:
        return self.labels[k]

    def map_point(self, k, p):
        """Image under the gluing of edge ``k`` onto its partner."""
        return add(matvec(self.linear[k], p), self.translation[k])

    def unmap_point(self, k, p):
        """Preimage under the gluing of edge ``k``: the partner's point seen across ``k``."""
        j = self.partner[k]
        return self.map_point(j, p)

    def map_dir(self, k, u):
        return matvec(self.linear[k], u)

    def jump(self, k, u) -> int:
        """Passages of the short rotation from ``u`` to its glued image."""
        return passages(u, self.map_dir(k, u))

    def contains(self, p) -> bool:
        return all(cross(self.edge_vector(k), sub(p, self.vertices[k])) > 0 for k in range(self.n))

    def stf_euler(self) -> int:
        s = self.surface
        return 2 * s.genus - 2 if s.closed else 0

    def stf_spec(self) -> BundleSpec:
        return BundleSpec(self.surface, self.stf_euler())


def _labels(surface: SurfaceSpec):
    labels, partner = [], []
    for i in range(surface.genus):
        a, b = 4 * i, 4 * i + 2
        base = len(labels)
        labels += [a, b ^ 1, a ^ 1, b]
        partner += [base + 2, base + 3, base, base + 1]
    if not surface.closed:
        for k in range(surface.punctures - 1):
            c = 2 * (2 * surface.genus + k)
            base = len(labels)
            labels += [c, None, c ^ 1]
            partner += [base + 2, None, base]
        labels.append(None)
        partner.append(None)
    while len(labels) < 3:
        labels.append(None)
        partner.append(None)
    return labels, partner


@lru_cache(maxsize=None)
def standard_polygon(surface: SurfaceSpec) -> PolygonModel:
    labels, partner = _labels(surface)
    n = len(labels)
    verts = []
    for k in range(n):
        phi = -math.pi + (2 * k + 1) * math.pi / n
        t = Fraction(math.tan(phi / 2)).limit_denominator(64)
        verts.append(_circle_point(t))
    if len(set(verts)) != n:
        raise ContextError("degenerate polygon")
    model = PolygonModel(surface, tuple(verts), tuple(labels), tuple(partner), (), ())
    linear, trans = [], []
    for k in range(n):
        j = partner[k]
        if j is None:
            linear.append(None)
            trans.append(None)
            continue
        ek = model.edge_vector(k)
        ej = model.edge_vector(j)
        tx, ty = -ej[0], -ej[1]
        den = ek[0] * ek[0] + ek[1] * ek[1]
        p = (tx * ek[0] + ty * ek[1]) / den
        q = (ty * ek[0] - tx * ek[1]) / den
        if q == 0 and p < 0:
            raise ContextError("gluing rotates by a half turn")
        m = ((p, -q), (q, p))
        vj1 = verts[(j + 1) % n]
        mv = matvec(m, verts[k])
        linear.append(m)
        trans.append((vj1[0] - mv[0], vj1[1] - mv[1]))
    return PolygonModel(surface, tuple(verts), tuple(labels), tuple(partner), tuple(linear), tuple(trans))
