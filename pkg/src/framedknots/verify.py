"""Verification batteries shared by the command line and the test suite.

Each suite draws its cases from a seeded generator and returns a
:class:`Report` whose text is a pure function of the arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .codeio import format_code
from .diagram import knot_class, parity_signature, rotation_index, velocity_lift
from .errors import TheoremViolation
from .group_core import (
    BundleElement,
    are_conjugate_base,
    bundle,
    commute,
    commute_base,
    conjugate,
    fiber_element,
    fiber_shift,
    free_reduce,
    invert,
    make_element,
    multiply,
    power,
    project,
    base_reduce,
    SurfaceSpec,
)
from .invariant import compute_I, mark, resolve, second_derivative, skein_delta, skein_rhs, singular_wedge
from .moves import add_kinks, random_knot, random_moves
from .pl import compile_pl, format_pl
from .wedge_algebra import ZERO, base_wedge, kernel_check

CONTEXTS = ((0, 2, 0), (1, 1, 0), (2, 0, -2), (1, 0, 0))
SUITES = ("invariance", "skein", "order2", "kinks", "kernel", "group")


@dataclass
class Failure:
    case: str
    message: str
    diagram: str = ""
    script: str = ""


@dataclass
class Report:
    suite: str
    checked: int = 0
    notes: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case, message, diagram="", script=""):
        self.failures.append(Failure(case, message, diagram, script))

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = [f"{self.suite}: {status} ({self.checked} checks, {len(self.failures)} failures)"]
        out += [f"  {n}" for n in self.notes]
        for f in self.failures:
            out.append(f"  failure {f.case}: {f.message}")
        return "\n".join(out) + "\n"


def _ctx_name(ctx) -> str:
    g, p, e = ctx
    return f"g={g} p={p} e={e}"


def _case_seed(seed, i) -> int:
    return seed * 1_000_003 + i


def _contexts(contexts):
    return [tuple(c) for c in (contexts or CONTEXTS)]


def _knot(ctx, complexity, s, min_crossings=0):
    spec = bundle(*ctx)
    k = random_knot(spec, complexity, s)
    code = compile_pl(k)
    if code.n_crossings() < min_crossings:
        code = add_kinks(code, min_crossings - code.n_crossings())
    return k, code


# ------------------------------------------------------------------ suites

def invariance(count=500, seed=0, moves=20, contexts=None, complexity=3) -> Report:
    rep = Report("invariance")
    ctxs = _contexts(contexts)
    per = {c: 0 for c in ctxs}
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        s = _case_seed(seed, i)
        k, code = _knot(ctx, complexity, s)
        before = compute_I(code, code)
        end, script = random_moves(code, moves, s)
        text = "\n".join(m.serialize() for m in script) + "\n"
        for what, ok in (("knot class", knot_class(end) == knot_class(code)),
                         ("parity", parity_signature(end) == parity_signature(code)),
                         ("I", compute_I(end, code) == before)):
            rep.checked += 1
            if not ok:
                rep.fail(f"{i} ({_ctx_name(ctx)})", f"{what} changed along the move script",
                         format_pl(k), text)
        per[ctx] += 1
    rep.notes += [f"{_ctx_name(c)}: {n} diagrams x {moves} moves" for c, n in per.items()]
    return rep


def skein(count=200, seed=0, contexts=None, complexity=3) -> Report:
    rep = Report("skein")
    ctxs = _contexts(contexts)
    nonzero = 0
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        s = _case_seed(seed, i)
        rng = random.Random(s)
        _, code = _knot(ctx, complexity, s, min_crossings=1)
        d = rng.choice(code.crossings())
        sd = mark(code, [d])
        rep.checked += 1
        try:
            delta = skein_delta(sd, d, code)
        except TheoremViolation as e:
            rep.fail(f"{i} ({_ctx_name(ctx)})", str(e).splitlines()[0], format_code(sd.code))
            continue
        nonzero += delta != ZERO
    rep.notes.append(f"{nonzero} of {count} cases have a nonzero right-hand side")
    return rep


def order2(count=100, seed=0, contexts=None, complexity=4) -> Report:
    rep = Report("order2")
    ctxs = _contexts(contexts)
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        s = _case_seed(seed, i)
        rng = random.Random(s)
        _, code = _knot(ctx, complexity, s, min_crossings=2)
        ds = rng.sample(code.crossings(), 2)
        sd = mark(code, ds)
        rep.checked += 1
        value = second_derivative(sd, code)
        if value != ZERO:
            rep.fail(f"{i} ({_ctx_name(ctx)})", "alternating sum over resolutions is not zero",
                     format_code(sd.code))
    return rep


def kinks(per_context=5, seed=0, contexts=None, span=5) -> Report:
    rep = Report("kinks")
    for ctx in _contexts(contexts):
        for j in range(per_context):
            s = _case_seed(seed, j)
            _, base = _knot(ctx, 2, s)
            seen = []
            for i in range(-span, span + 1):
                c = add_kinks(base, i)
                r = rotation_index(c, base)
                rep.checked += 1
                if r != i or velocity_lift(c).base != velocity_lift(base).base:
                    rep.fail(f"{_ctx_name(ctx)} curve {j}", f"{i} kinks gave rotation index {r}",
                             format_code(base))
                seen.append(r)
            if len(set(seen)) != len(seen):
                rep.fail(f"{_ctx_name(ctx)} curve {j}", "rotation indices are not pairwise distinct")
        rep.notes.append(f"{_ctx_name(ctx)}: {per_context} curves, kinks {-span}..{span}")
    return rep


def _random_word(rng, rank, max_len):
    w = []
    for _ in range(rng.randrange(0, max_len + 1)):
        w.append(rng.randrange(2 * rank))
    return free_reduce(w)


def kernel(count=20, window=8, seed=0, contexts=None) -> Report:
    rep = Report("kernel")
    for ctx in _contexts(contexts):
        spec = bundle(*ctx)
        surf = spec.surface
        if surf.is_torus:
            rep.notes.append(f"{_ctx_name(ctx)}: skipped, the fiber of q is not ordered over the torus")
            continue
        rng = random.Random(_case_seed(seed, sum(ctx) + 17 * ctx[0]))
        seen = set()
        tries = 0
        while len(seen) < count and tries < 100 * count:
            tries += 1
            u = base_reduce(_random_word(rng, surf.rank, 3), surf)
            v = base_reduce(_random_word(rng, surf.rank, 3), surf)
            b = base_wedge(u, v, surf)
            if b in seen:
                continue
            seen.add(b)
            comp = make_element(u + v, rng.randrange(-3, 4), spec)
            rep.checked += 1
            if not kernel_check(b, window, spec, comp):
                rep.fail(f"{_ctx_name(ctx)} {b}", "g restricted to the window is not injective")
        rep.notes.append(f"{_ctx_name(ctx)}: {len(seen)} base classes, window {window}")
    return rep


def _random_element(rng, spec, max_len=8):
    return make_element(_random_word(rng, spec.surface.rank, max_len), rng.randrange(-3, 4), spec)


def _brute_free_conjugacy(rep: Report):
    surf = SurfaceSpec(0, 3)
    words = [()]
    frontier = [()]
    for _ in range(4):
        frontier = [w + (x,) for w in frontier for x in range(4) if not (w and w[-1] == x ^ 1)]
        words += frontier
    orbits = {}
    for u in words:
        orbits[u] = {free_reduce(x + u + invert(x)) for x in words}
    mism = 0
    for u, v in product(words, repeat=2):
        brute = v in orbits[u]
        fast = are_conjugate_base(u, v, surf) is not None
        rep.checked += 1
        if brute != fast:
            mism += 1
            if mism <= 5:
                rep.fail(f"free {u} {v}", f"brute force says {brute}, decision says {fast}")
    rep.notes.append(f"free conjugacy: {len(words)}^2 pairs against brute force, {mism} mismatches")


def group(seed=0, contexts=None, central=1000, commuting=500, shifts=200) -> Report:
    rep = Report("group")
    ctxs = _contexts(contexts)
    rng = random.Random(_case_seed(seed, 0))
    for i in range(central):
        spec = bundle(*ctxs[i % len(ctxs)])
        x = _random_element(rng, spec)
        f = fiber_element(spec)
        rep.checked += 1
        if multiply(multiply(x, f), multiply(f, x).inverse()) != BundleElement((), 0, spec):
            rep.fail(f"central {i}", f"f does not commute with {x}")
    for i in range(commuting):
        spec = bundle(*ctxs[i % len(ctxs)])
        if i % 2:
            x, y = _random_element(rng, spec), _random_element(rng, spec)
        else:
            z = _random_element(rng, spec, 4)
            d = _random_element(rng, spec, 3)
            x = conjugate(multiply(power(z, rng.randrange(-3, 4)), fiber_element(spec, rng.randrange(-3, 4))), d)
            y = conjugate(multiply(power(z, rng.randrange(-3, 4)), fiber_element(spec, rng.randrange(-3, 4))), d)
        rep.checked += 1
        if commute(x, y) != commute_base(project(x), project(y), spec.surface):
            rep.fail(f"commute {i}", f"commutation of {x} and {y} disagrees with the base")
    for i in range(shifts):
        spec = bundle(*ctxs[i % len(ctxs)])
        a2 = _random_element(rng, spec)
        k = rng.randrange(-5, 6)
        a1 = multiply(a2, fiber_element(spec, k))
        dl = _random_element(rng, spec)
        rep.checked += 1
        j = fiber_shift(conjugate(a1, dl), conjugate(a2, dl))
        if fiber_shift(a1, a2) != k or j != k:
            rep.fail(f"shift {i}", f"expected {k}, got {fiber_shift(a1, a2)} and {j}")
    rep.notes.append(f"centrality {central}, commutation {commuting}, shift {shifts} instances")
    _brute_free_conjugacy(rep)
    return rep


def run_suite(name: str, **kw) -> Report:
    table = {"invariance": invariance, "skein": skein, "order2": order2,
             "kinks": kinks, "kernel": kernel, "group": group}
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return table[name](**kw)


def distinguishing_pair(seed=0, contexts=None, limit=200):
    """Resolutions ``(K+, K-)`` of a singular diagram with nonzero skein value."""
    ctxs = _contexts(contexts)
    for i in range(limit):
        ctx = ctxs[i % len(ctxs)]
        s = _case_seed(seed, i)
        _, code = _knot(ctx, 3, s, min_crossings=1)
        d = random.Random(s).choice(code.crossings())
        sd = mark(code, [d])
        sw = singular_wedge(sd, d)
        if skein_rhs(sw.first, sw.second) != ZERO:
            return resolve(sd, d, 1), resolve(sd, d, -1), code
    raise RuntimeError("no distinguishing pair found")
