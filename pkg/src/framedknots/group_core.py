"""Fundamental groups of surfaces and of oriented circle bundles over them.

Base words are tuples of integer letters (see :mod:`framedknots.rewriting`).
Generator ``2*k`` is ``a_{k+1}`` and ``2*k+1`` is ``b_{k+1}``; in the
punctured case the extra free generators ``c1, c2, ...`` follow the
``a``/``b`` pairs.  The bundle group is

    < base generators, f | f central, prod [a_i, b_i] = f**euler >

which degenerates to a direct product over punctured surfaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ContextError, MalformedInput
from .rewriting import relator_word, surface_system

Word = tuple


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    punctures: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ContextError("genus and punctures must be non-negative")
        if (self.genus, self.punctures) == (0, 0):
            raise ContextError("the sphere is not a supported base surface")

    @property
    def closed(self) -> bool:
        return self.punctures == 0

    @property
    def is_torus(self) -> bool:
        return self.closed and self.genus == 1

    @property
    def rank(self) -> int:
        """Number of base generators."""
        if self.closed:
            return 2 * self.genus
        return 2 * self.genus + self.punctures - 1

    def generator_name(self, gen: int) -> str:
        if gen < 2 * self.genus:
            return ("a" if gen % 2 == 0 else "b") + str(gen // 2 + 1)
        return "c" + str(gen - 2 * self.genus + 1)

    def generator_index(self, name: str) -> int:
        m = re.fullmatch(r"([abc])([1-9][0-9]*)", name)
        if not m:
            raise KeyError(name)
        kind, k = m.group(1), int(m.group(2))
        if kind == "c":
            gen = 2 * self.genus + k - 1
            if self.closed or gen >= self.rank:
                raise KeyError(name)
            return gen
        if k > self.genus:
            raise KeyError(name)
        return 2 * (k - 1) + (0 if kind == "a" else 1)

    def letter_name(self, letter: int) -> str:
        name = self.generator_name(letter >> 1)
        return name + "^-1" if letter & 1 else name

    def __str__(self):
        return f"{self.genus},{self.punctures}"


@dataclass(frozen=True)
class BundleSpec:
    surface: SurfaceSpec
    euler: int = 0

    def __post_init__(self):
        if not self.surface.closed and self.euler != 0:
            raise ContextError("circle bundles over punctured surfaces are trivial; euler must be 0")
        if self.surface.is_torus and self.euler != 0:
            raise ContextError("over the closed torus only the trivial bundle is supported")

    def __str__(self):
        return f"surface {self.surface.genus} {self.surface.punctures} euler {self.euler}"


def bundle(genus: int, punctures: int = 0, euler: int = 0) -> BundleSpec:
    return BundleSpec(SurfaceSpec(genus, punctures), euler)


# ---------------------------------------------------------------- base words

def free_reduce(word) -> Word:
    out: list = []
    for x in word:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word) -> Word:
    return tuple(x ^ 1 for x in reversed(word))


def _torus_nf(word):
    ea = eb = 0
    for x in word:
        s = -1 if x & 1 else 1
        if x >> 1 == 0:
            ea += s
        else:
            eb += s
    return (0 if ea > 0 else 1,) * abs(ea) + (2 if eb > 0 else 3,) * abs(eb)


def base_reduce_weighted(word, surface: SurfaceSpec):
    """Normal form of a base word and the number of relator uses.

    ``word = nf * R**weight`` holds in the free group on the generators.
    """
    if not surface.closed:
        return free_reduce(word), 0
    if surface.is_torus:
        return _torus_nf(word), 0
    return surface_system(surface.genus).reduce(word)


def base_reduce(word, surface: SurfaceSpec) -> Word:
    return base_reduce_weighted(word, surface)[0]


def word_key(word):
    """Fixed shortlex total order on base words."""
    return (len(word), tuple(word))


# ----------------------------------------------------------- bundle elements

@dataclass(frozen=True)
class BundleElement:
    base: Word
    fiber: int
    spec: BundleSpec

    def __mul__(self, other: "BundleElement") -> "BundleElement":
        return multiply(self, other)

    def inverse(self) -> "BundleElement":
        return inverse(self)

    def __str__(self):
        return format_element(self)

    def key(self):
        return (word_key(self.base), self.fiber)


def _check_letters(word, surface: SurfaceSpec):
    for x in word:
        if not isinstance(x, int) or x < 0 or (x >> 1) >= surface.rank:
            raise MalformedInput(f"letter {x!r} is not in the alphabet of surface {surface}")


def make_element(base, fiber: int, spec: BundleSpec) -> BundleElement:
    """Reduce a base word with a fiber exponent into normal form."""
    base = tuple(base)
    _check_letters(base, spec.surface)
    nf, w = base_reduce_weighted(base, spec.surface)
    return BundleElement(nf, fiber + w * spec.euler, spec)


def identity(spec: BundleSpec) -> BundleElement:
    return BundleElement((), 0, spec)


def fiber_element(spec: BundleSpec, k: int = 1) -> BundleElement:
    return BundleElement((), k, spec)


def _same(x: BundleElement, y: BundleElement):
    if x.spec != y.spec:
        raise ContextError(f"elements live in different bundles ({x.spec} vs {y.spec})")


def multiply(x: BundleElement, y: BundleElement) -> BundleElement:
    _same(x, y)
    return make_element(x.base + y.base, x.fiber + y.fiber, x.spec)


def inverse(x: BundleElement) -> BundleElement:
    return make_element(invert(x.base), -x.fiber, x.spec)


def power(x: BundleElement, m: int) -> BundleElement:
    if m < 0:
        return power(inverse(x), -m)
    return make_element(x.base * m, x.fiber * m, x.spec)


def conjugate(x: BundleElement, by: BundleElement) -> BundleElement:
    """``by * x * by**-1``."""
    return multiply(multiply(by, x), inverse(by))


def project(x: BundleElement) -> Word:
    return x.base


# ------------------------------------------------------------- serialization

_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9]*)(?:\^(-?[0-9]+))?")


def parse_tokens(text: str, line=None, col0: int = 1, source=None):
    """Split ``a1 b1^-1 f^-2`` into ``(symbol, exponent, column)`` triples."""
    out = []
    pos = 0
    stripped = text.strip()
    if stripped == "1":
        return out
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = col0 + pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise MalformedInput(f"cannot parse word near {text[pos:].strip()[:12]!r}", line, col, source)
        start = m.start(1)
        exp = int(m.group(2)) if m.group(2) is not None else 1
        out.append((m.group(1), exp, col0 + start))
        pos = m.end()
    return out


def reduce(raw, ctx: BundleSpec, line=None, col0: int = 1, source=None) -> BundleElement:
    """Normal form of a raw word, given as text or as ``(symbol, exponent)`` pairs."""
    if isinstance(raw, str):
        tokens = parse_tokens(raw, line, col0, source)
    else:
        tokens = [(s, e, None) for s, e in raw]
    letters: list = []
    fiber = 0
    for sym, exp, col in tokens:
        if sym == "f":
            fiber += exp
            continue
        try:
            gen = ctx.surface.generator_index(sym)
        except KeyError:
            raise MalformedInput(f"letter {sym!r} is not in the alphabet of surface {ctx.surface}",
                                 line, col, source) from None
        letter = 2 * gen + (1 if exp < 0 else 0)
        letters.extend([letter] * abs(exp))
    return make_element(letters, fiber, ctx)


def parse_element(text: str, ctx: BundleSpec) -> BundleElement:
    return reduce(text, ctx)


def format_word(word, surface: SurfaceSpec) -> str:
    if not word:
        return "1"
    return " ".join(surface.letter_name(x) for x in word)


def format_element(x: BundleElement) -> str:
    parts = [surface_letter for surface_letter in
             (x.spec.surface.letter_name(l) for l in x.base)]
    if x.fiber == 1:
        parts.append("f")
    elif x.fiber:
        parts.append(f"f^{x.fiber}")
    return " ".join(parts) if parts else "1"


# ------------------------------------------------------------------ conjugacy

def _rotate_min(word):
    """Least cyclic rotation of a cyclically reduced free word, with witness."""
    best, best_k = word, 0
    for k in range(1, len(word)):
        r = word[k:] + word[:k]
        if r < best:
            best, best_k = r, k
    # word[k:] + word[:k] == word[:k]^-1 * word * word[:k]
    return best, invert(word[:best_k])


@lru_cache(maxsize=None)
def _pieces(genus: int):
    rel = relator_word(genus)
    out = set()
    for r in (rel, invert(rel)):
        for k in range(len(r)):
            rot = r[k:] + r[:k]
            for n in range(1, 2 * genus + 1):
                out.add(rot[:n])
    return tuple(sorted(out, key=word_key))


def _closed_orbit(word, surface: SurfaceSpec):
    """All shortest conjugates of ``word`` that the local search reaches.

    Returns a dict mapping each shortest conjugate ``c`` to a witness ``x``
    with ``x * word * x**-1 = c``.
    """
    system = surface_system(surface.genus)
    red = system.reduce
    conj = _pieces(surface.genus)
    cur, xi = word, ()
    while True:
        seen = {cur: xi}
        frontier = [cur]
        shorter = None
        while frontier and shorter is None:
            nxt = []
            for w in frontier:
                wx = seen[w]
                for t in conj:
                    w2 = red(t + w + invert(t))[0]
                    if len(w2) < len(cur):
                        shorter = (w2, red(t + wx)[0])
                        break
                    if len(w2) == len(cur) and w2 not in seen:
                        seen[w2] = red(t + wx)[0]
                        nxt.append(w2)
                if shorter is not None:
                    break
            frontier = nxt
        if shorter is None:
            return seen
        cur, xi = shorter


@lru_cache(maxsize=1 << 16)
def base_canonical(word, surface: SurfaceSpec):
    """Canonical conjugacy representative of a reduced base word.

    Returns ``(c, x)`` with ``x * word * x**-1 = c``; ``c`` is the shortlex
    least shortest conjugate.
    """
    word = tuple(word)
    if surface.is_torus:
        return word, ()
    if not surface.closed:
        pre = []
        w = word
        while len(w) >= 2 and w[0] == w[-1] ^ 1:
            pre.append(w[0])
            w = w[1:-1]
        c, x = _rotate_min(w)
        # word = p w p^-1 with p = pre, so p^-1 word p = w
        return c, free_reduce(x + invert(tuple(pre)))
    orbit = _closed_orbit(word, surface)
    c = min(orbit, key=word_key)
    return c, orbit[c]


def are_conjugate_base(u, v, surface: SurfaceSpec):
    """A witness ``x`` with ``x u x**-1 = v``, or None."""
    u = base_reduce(tuple(u), surface)
    v = base_reduce(tuple(v), surface)
    cu, xu = base_canonical(u, surface)
    cv, xv = base_canonical(v, surface)
    if cu != cv:
        return None
    return base_reduce(invert(xv) + xu, surface)


def canonical_conjugate(x: BundleElement) -> BundleElement:
    """Canonical representative of the conjugacy class of ``x`` in the bundle group.

    The base is the canonical base representative; since the fiber shift
    between conjugate lifts is unique the fiber exponent is well defined.
    """
    c, xi = base_canonical(x.base, x.spec.surface)
    lifted = conjugate(x, BundleElement(xi, 0, x.spec))
    assert lifted.base == c
    return lifted


def fiber_shift(x: BundleElement, y: BundleElement):
    """The unique ``i`` with ``x`` conjugate to ``y * f**i``, or None."""
    _same(x, y)
    cx = canonical_conjugate(x)
    cy = canonical_conjugate(y)
    if cx.base != cy.base:
        return None
    return cx.fiber - cy.fiber


def are_conjugate(x: BundleElement, y: BundleElement) -> bool:
    return fiber_shift(x, y) == 0


def commute(x: BundleElement, y: BundleElement) -> bool:
    return multiply(x, y) == multiply(y, x)


def commute_base(u, v, surface: SurfaceSpec) -> bool:
    return base_reduce(tuple(u) + tuple(v), surface) == base_reduce(tuple(v) + tuple(u), surface)


def _divisors_desc(n):
    return [d for d in range(n, 0, -1) if n % d == 0]


def centralizer_root(w, surface: SurfaceSpec) -> Word:
    """Primitive root ``z`` with ``w = z**m``, ``m`` maximal.

    For nontrivial elements of free and hyperbolic surface groups the
    centralizer is infinite cyclic and generated by this root.
    """
    if surface.is_torus:
        raise ContextError("centralizers in the torus group are not cyclic")
    w = base_reduce(tuple(w), surface)
    if not w:
        raise ContextError("the centralizer of the identity is the whole group")
    c, xi = base_canonical(w, surface)
    if surface.closed:
        orbit = _closed_orbit(c, surface)
    else:
        orbit = {c: ()}
    n = len(c)
    for m in _divisors_desc(n):
        if m == 1:
            break
        for cc, y in sorted(orbit.items(), key=lambda t: word_key(t[0])):
            for k in range(n):
                rot = cc[k:] + cc[:k]
                z = base_reduce(rot[: n // m], surface)
                if not z:
                    continue
                zc = base_reduce(z * m, surface)
                if len(zc) != n:
                    continue
                # zc is conjugate to c?  then find the conjugator explicitly
                x = are_conjugate_base(zc, w, surface)
                if x is not None:
                    return base_reduce(x + z + invert(x), surface)
    return w
