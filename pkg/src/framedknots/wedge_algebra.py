"""Unordered pairs of bundle elements up to simultaneous conjugation.

A :class:`WedgeClass` stores a canonical ordered representative; two pairs
give equal classes exactly when their canonical representatives agree.
:class:`InvariantValue` is the free abelian group on wedge classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ContextError
from .group_core import (
    BundleElement,
    BundleSpec,
    SurfaceSpec,
    _same,
    base_canonical,
    base_reduce,
    canonical_conjugate,
    centralizer_root,
    conjugate,
    fiber_shift,
    format_word,
    invert,
    make_element,
    multiply,
    word_key,
)


@dataclass(frozen=True)
class WedgeClass:
    first: BundleElement
    second: BundleElement

    @property
    def spec(self) -> BundleSpec:
        return self.first.spec

    def key(self):
        return (self.first.key(), self.second.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return format_wedge(self)


@dataclass(frozen=True)
class BaseWedgeClass:
    first: tuple
    second: tuple
    surface: SurfaceSpec

    def key(self):
        return (word_key(self.first), word_key(self.second))

    def __str__(self):
        s = self.surface
        return f"[ {format_word(self.first, s)} , {format_word(self.second, s)} ]"


# ------------------------------------------------------------ canonical form

def _elem_key(x: BundleElement):
    return (word_key(x.base), x.fiber)


def _ordered_canonical(a: BundleElement, b: BundleElement):
    """Least representative of the orbit of the ordered pair (a, b)."""
    spec = a.spec
    surface = spec.surface
    if surface.is_torus:
        return a, b
    if not a.base:
        return a, canonical_conjugate(b)
    c, xi = base_canonical(a.base, surface)
    lift = BundleElement(xi, 0, spec)
    A = conjugate(a, lift)
    B = conjugate(b, lift)
    z = BundleElement(centralizer_root(c, surface), 0, spec)
    zi = z.inverse()
    best = B
    bound = len(B.base) + 2 * len(z.base) + 2
    fwd = bwd = B
    for _ in range(bound):
        fwd = conjugate(fwd, z)
        bwd = conjugate(bwd, zi)
        for cand in (fwd, bwd):
            if _elem_key(cand) < _elem_key(best):
                best = cand
    return A, best


def _pair_key(p):
    return (_elem_key(p[0]), _elem_key(p[1]))


@lru_cache(maxsize=1 << 16)
def _canonical_cached(a: BundleElement, b: BundleElement):
    p = _ordered_canonical(a, b)
    q = _ordered_canonical(b, a)
    return min(p, q, key=_pair_key)


def canonical_form(a: BundleElement, b: BundleElement) -> WedgeClass:
    _same(a, b)
    first, second = _canonical_cached(a, b)
    return WedgeClass(first, second)


def ordered_canonical(a: BundleElement, b: BundleElement):
    """Canonical representative of (a, b) under simultaneous conjugation only."""
    _same(a, b)
    return _ordered_canonical(a, b)


def base_wedge(u, v, surface: SurfaceSpec) -> BaseWedgeClass:
    spec = BundleSpec(surface, 0)
    w = canonical_form(make_element(u, 0, spec), make_element(v, 0, spec))
    return BaseWedgeClass(w.first.base, w.second.base, surface)


def shift(w: WedgeClass, i: int, j: int) -> WedgeClass:
    """Class of ``(first * f**i, second * f**j)`` for the stored representative."""
    spec = w.spec
    return canonical_form(
        BundleElement(w.first.base, w.first.fiber + i, spec),
        BundleElement(w.second.base, w.second.fiber + j, spec),
    )


def project_to_base(w: WedgeClass) -> BaseWedgeClass:
    return base_wedge(w.first.base, w.second.base, w.spec.surface)


def format_wedge(w: WedgeClass) -> str:
    s = w.spec.surface
    return (f"[ {format_word(w.first.base, s)} | f^{w.first.fiber} , "
            f"{format_word(w.second.base, s)} | f^{w.second.fiber} ]")


def parse_wedge(text: str, spec: BundleSpec, line=None, source=None) -> WedgeClass:
    """Inverse of :func:`format_wedge`; any representative is accepted."""
    from .errors import MalformedInput
    from .group_core import reduce

    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise MalformedInput("wedge class must be enclosed in [ ]", line, 1, source)
    body = t[1:-1]
    halves = body.split(",")
    if len(halves) != 2:
        raise MalformedInput("wedge class needs exactly two coordinates", line, 1, source)
    elems = []
    for h in halves:
        parts = h.split("|")
        if len(parts) > 2:
            raise MalformedInput("too many '|' in coordinate", line, 1, source)
        raw = " ".join(p for p in parts if p.strip() != "1") or "1"
        elems.append(reduce(raw, spec, line, source=source))
    return canonical_form(elems[0], elems[1])


# ------------------------------------------------------------ group ring

class InvariantValue:
    """Finite integer combination of wedge classes."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                if c:
                    acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def of(cls, w: WedgeClass, c: int = 1):
        return cls({w: c})

    def items(self):
        return sorted(self._terms.items(), key=lambda t: t[0].key())

    def coefficient(self, w: WedgeClass) -> int:
        return self._terms.get(w, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return InvariantValue(acc)

    def __neg__(self):
        return InvariantValue({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return InvariantValue({w: k * c for w, c in self._terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, InvariantValue) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def serialize(self) -> str:
        if not self._terms:
            return "0"
        return "\n".join(f"{c} * {format_wedge(w)}" for w, c in self.items())

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return f"InvariantValue({self.serialize()!r})"


ZERO = InvariantValue()


def parse_value(text: str, spec: BundleSpec, source=None) -> InvariantValue:
    from .errors import MalformedInput

    lines = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if lines == ["0"]:
        return ZERO
    acc = ZERO
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#") or s == "0":
            continue
        coef, sep, rest = s.partition("*")
        if not sep:
            raise MalformedInput("expected 'coefficient * [ ... ]'", n, 1, source)
        try:
            k = int(coef)
        except ValueError:
            raise MalformedInput(f"bad coefficient {coef.strip()!r}", n, 1, source) from None
        acc = acc + InvariantValue.of(parse_wedge(rest, spec, n, source), k)
    return acc


def g_of_class(w: WedgeClass) -> InvariantValue:
    s1, s2 = w.first, w.second
    spec = w.spec
    up = canonical_form(BundleElement(s1.base, s1.fiber + 1, spec),
                        BundleElement(s2.base, s2.fiber - 1, spec))
    down = canonical_form(BundleElement(s1.base, s1.fiber - 1, spec),
                          BundleElement(s2.base, s2.fiber + 1, spec))
    return InvariantValue([(w, -4), (up, 2), (down, 2)])


def apply_g(v: InvariantValue) -> InvariantValue:
    acc = ZERO
    for w, c in v.items():
        acc = acc + c * g_of_class(w)
    return acc


# ------------------------------------------------- ordering of q^-1(b)

def _base_ordered_key(u, v, surface):
    spec = BundleSpec(surface, 0)
    a, b = _ordered_canonical(BundleElement(u, 0, spec), BundleElement(v, 0, spec))
    return (word_key(a.base), word_key(b.base))


def swap_realizable(u, v, surface: SurfaceSpec) -> bool:
    """Whether some conjugator exchanges the two base loops."""
    return _base_ordered_key(u, v, surface) == _base_ordered_key(v, u, surface)


def distinguished_first(u, v, surface: SurfaceSpec) -> bool:
    """True if ``u`` is the distinguished loop of the pair (u, v).

    The loop with the smaller canonical conjugacy class wins; if both loops
    are conjugate the smaller ordered canonical pair decides.  Only base data
    enters, so the choice is constant along each fiber of the projection.
    """
    cu = word_key(base_canonical(u, surface)[0])
    cv = word_key(base_canonical(v, surface)[0])
    if cu != cv:
        return cu < cv
    return _base_ordered_key(u, v, surface) <= _base_ordered_key(v, u, surface)


def fiber_order_index(w: WedgeClass):
    """``('a', i)`` with ``i >= 0`` or ``('b', i)`` locating ``w`` in its fiber."""
    s = w.spec.surface
    if s.is_torus:
        raise ContextError("the fiber ordering is not defined over the torus")
    u, v = w.first.base, w.second.base
    if swap_realizable(u, v, s):
        return "a", abs(fiber_shift(w.first, w.second))
    first = w.first if distinguished_first(u, v, s) else w.second
    ref = BundleElement(base_canonical(first.base, s)[0], 0, w.spec)
    return "b", fiber_shift(first, ref)


def fiber_elements(bbar: BaseWedgeClass, ctx: BundleSpec, component: BundleElement, lo: int, hi: int):
    """Classes over ``bbar`` whose product lies in ``component``.

    Returns a dict from class to index, for lifts ``(u f^a, v f^(s-a))`` with
    ``lo <= a <= hi``.
    """
    if ctx.surface != bbar.surface:
        raise ContextError("base class and bundle use different surfaces")
    u = BundleElement(bbar.first, 0, ctx)
    v = BundleElement(bbar.second, 0, ctx)
    s = fiber_shift(component, multiply(u, v))
    if s is None:
        raise ContextError("the base class is not realizable in the given component")
    out = {}
    for a in range(lo, hi + 1):
        w = canonical_form(BundleElement(u.base, a, ctx), BundleElement(v.base, s - a, ctx))
        out[w] = fiber_order_index(w)
    return out


def _window(bbar, N, ctx, component, extra):
    """Ordered basis of the truncated fiber plus ``extra`` further ranks."""
    probe = fiber_elements(bbar, ctx, component, 0, 0)
    i0 = abs(next(iter(probe.values()))[1])
    span = i0 + 2 * (N + extra) + 4
    elems = fiber_elements(bbar, ctx, component, -span, span)
    cases = {c for c, _ in elems.values()}
    if len(cases) != 1:
        raise ContextError("mixed cases inside one fiber")
    case = cases.pop()
    by_index = {}
    for w, (_, i) in elems.items():
        if i in by_index and by_index[i] != w:
            raise ContextError("fiber index is not injective")
        by_index[i] = w
    if case == "a":
        idx = sorted(by_index)
        basis = [by_index[i] for i in idx[: N + 1 + extra]]
        n_cols = N + 1
    else:
        basis = [by_index[i] for i in range(-N - extra, N + extra + 1)]
        n_cols = 2 * N + 1
    return case, basis, n_cols


def g_matrix(bbar: BaseWedgeClass, N: int, ctx: BundleSpec, component: BundleElement, extended=False):
    """Matrix of ``g`` on the window of ``q^-1(bbar)``, columns are inputs.

    Case (a) windows hold ranks ``0..N`` of the index set, case (b) windows
    indices ``-N..N``.  With ``extended`` the rows also cover one more basis
    element past each end, so every column is complete.
    """
    if N < 0:
        raise ValueError("window must be non-negative")
    case, basis, n_cols = _window(bbar, N, ctx, component, 1)
    if case == "a":
        cols = basis[: n_cols]
        rows = basis if extended else cols
    else:
        cols = basis[1:-1]
        rows = basis if extended else cols
    pos = {w: r for r, w in enumerate(rows)}
    matrix = [[0] * len(cols) for _ in rows]
    for j, w in enumerate(cols):
        for t, c in g_of_class(w).items():
            if t in pos:
                matrix[pos[t]][j] += c
            elif extended:
                raise ContextError("g leaves the extended window")
    return matrix


def is_tridiagonal(m, offset=0) -> bool:
    """Entries vanish off the three diagonals ``i - j in {offset-1, offset, offset+1}``."""
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x and abs(i - j - offset) > 1:
                return False
    return True


def subdiagonal(m, offset=0):
    return [m[j + offset + 1][j] for j in range(len(m[0])) if 0 <= j + offset + 1 < len(m)]


def exact_rank(m) -> int:
    rows = [[Fraction(x) for x in r] for r in m]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                k = rows[r][c] / rows[rank][c]
                rows[r] = [x - k * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def kernel_check(bbar: BaseWedgeClass, N: int, ctx: BundleSpec, component: BundleElement) -> bool:
    """Injectivity of ``g`` on the window, by the leading-term argument.

    Every column has a nonzero entry one row below the diagonal, so the
    columns of the extended matrix are independent.  The exact rank is
    checked as well.
    """
    m = g_matrix(bbar, N, ctx, component, extended=True)
    case = fiber_order_index(canonical_form(
        BundleElement(bbar.first, 0, ctx), BundleElement(bbar.second, 0, ctx)))[0]
    offset = 0 if case == "a" else 1
    if not is_tridiagonal(m, offset):
        return False
    if not all(subdiagonal(m, offset)):
        return False
    return exact_rank(m) == len(m[0])
