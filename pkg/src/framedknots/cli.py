"""Command line: ``framedknots compute|compare|verify|moves``.

Exit codes: 0 success (or not distinguished), 1 distinguished or a failed
verification, 2 any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .codeio import format_code, is_code_text, parse_code
from .diagram import DiagramCode, knot_class, same_component
from .errors import FramedKnotError
from .group_core import format_element
from .invariant import compare_knots, compute_I
from .moves import parse_script, random_moves, replay
from .pl import compile_pl, parse_pl
from .registry import Registry, component_key
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def load_diagram(path: str) -> DiagramCode:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if is_code_text(text):
        return parse_code(text, path)
    return compile_pl(parse_pl(text, path))


def _context(args):
    if args.surface is None and args.euler is None:
        return None
    g = p = None
    if args.surface is not None:
        try:
            g, p = (int(x) for x in args.surface.split(","))
        except ValueError:
            raise UsageError(f"--surface expects 'g,p', got {args.surface!r}") from None
    return g, p, args.euler


def _check_context(code: DiagramCode, ctx, path):
    if ctx is None:
        return
    g, p, e = ctx
    s = code.spec
    if (g is not None and (s.surface.genus, s.surface.punctures) != (g, p)) or (e is not None and s.euler != e):
        raise UsageError(f"{path}: diagram lives over surface {s.surface.genus},{s.surface.punctures} "
                         f"with euler {s.euler}, not the requested context")


def _reference(code: DiagramCode, args):
    """``(reference code, description)``."""
    if args.ref:
        return load_diagram(args.ref), args.ref
    reg = Registry.from_env(args.registry)
    if reg is None:
        return code, "self"
    found = reg.lookup(code)
    if found is not None:
        return found, component_key(code)
    ref, key, created = reg.register(code)
    return ref, key + (" (registered)" if created else "")


def _header(code: DiagramCode, ref_desc: str):
    s = code.spec
    return [f"# context surface {s.surface.genus} {s.surface.punctures} euler {s.euler}",
            f"# reference {ref_desc}",
            f"# class {format_element(knot_class(code))}"]


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    ctx = _context(args)
    code = load_diagram(args.diagram)
    _check_context(code, ctx, args.diagram)
    ref, desc = _reference(code, args)
    value = compute_I(code, ref)
    _emit("\n".join(_header(code, desc)) + "\n" + value.serialize() + "\n", args.output)
    return 0


def cmd_compare(args) -> int:
    ctx = _context(args)
    c1, c2 = load_diagram(args.first), load_diagram(args.second)
    _check_context(c1, ctx, args.first)
    _check_context(c2, ctx, args.second)
    if same_component(c1, c2) == "no":
        raise UsageError("the diagrams lie in different framed components; I cannot be compared")
    ref, desc = _reference(c1, args)
    res = compare_knots(c1, c2, ref)
    lines = _header(c1, desc) + [f"verdict {res.verdict}", "first", res.first.serialize(),
                                 "second", res.second.serialize()]
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if res.distinguished else 0


def _suite_kwargs(args):
    kw = {"seed": args.seed}
    ctx = _context(args)
    if ctx is not None:
        if None in ctx:
            raise UsageError("verify needs both --surface and --euler to restrict the context")
        kw["contexts"] = [ctx]
    if args.suite in ("invariance", "skein", "order2", "kernel") and args.count is not None:
        kw["count"] = args.count
    if args.suite == "kinks" and args.count is not None:
        kw["per_context"] = args.count
    if args.suite == "kernel" and args.window is not None:
        kw["window"] = args.window
    return kw


def cmd_verify(args) -> int:
    rep = run_suite(args.suite, **_suite_kwargs(args))
    text = rep.render()
    if rep.failures:
        adir = Path(args.artifacts)
        adir.mkdir(parents=True, exist_ok=True)
        for n, f in enumerate(rep.failures):
            if f.diagram:
                (adir / f"{args.suite}-{n}.diagram").write_text(f.diagram)
            if f.script:
                (adir / f"{args.suite}-{n}.moves").write_text(f.script)
        text += f"  counterexamples written to {adir}\n"
    _emit(text, args.output)
    return 0 if rep.passed else 1


def cmd_replay(args) -> int:
    code = load_diagram(args.diagram)
    try:
        moves = parse_script(Path(args.script).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {args.script}: {e.strerror}") from None
    start = code
    before = compute_I(code, start) if args.check else None
    for step, code in enumerate(replay(code, moves), 1):
        if args.check and compute_I(code, start) != before:
            sys.stdout.write(f"I changed after move {step}: {moves[step - 1].serialize()}\n")
            return 1
    _emit(format_code(code), args.output)
    return 0


def cmd_walk(args) -> int:
    code = load_diagram(args.diagram)
    _, moves = random_moves(code, args.count if args.count is not None else 20, args.seed)
    _emit("".join(m.serialize() + "\n" for m in moves), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", metavar="G,P", help="genus and number of punctures")
    common.add_argument("--euler", type=int, metavar="E", help="Euler number of the bundle")
    common.add_argument("--ref", metavar="FILE", help="reference diagram for the rotation index")
    common.add_argument("--registry", metavar="DIR", help="reference registry directory "
                        "(default: $FRAMEDKNOTS_REGISTRY)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int)
    common.add_argument("--window", type=int)
    common.add_argument("-o", "--output", metavar="FILE")

    p = argparse.ArgumentParser(prog="framedknots", description="Order-one invariant of framed knots "
                                "in circle bundles over surfaces.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", parents=[common], help="compute I of a diagram")
    c.add_argument("diagram")
    c.set_defaults(func=cmd_compute)
    c = sub.add_parser("compare", parents=[common], help="compare I of two diagrams")
    c.add_argument("first")
    c.add_argument("second")
    c.set_defaults(func=cmd_compare)
    c = sub.add_parser("verify", parents=[common], help="run a verification battery")
    c.add_argument("suite", choices=SUITES)
    c.add_argument("--artifacts", default="verify-artifacts", metavar="DIR")
    c.set_defaults(func=cmd_verify)
    m = sub.add_parser("moves", help="move scripts")
    msub = m.add_subparsers(dest="action", required=True)
    c = msub.add_parser("replay", parents=[common], help="apply a move script to a diagram")
    c.add_argument("diagram")
    c.add_argument("script")
    c.add_argument("--check", action="store_true", help="check that I is unchanged after every move")
    c.set_defaults(func=cmd_replay)
    c = msub.add_parser("walk", parents=[common], help="print a random applicable move script")
    c.add_argument("diagram")
    c.set_defaults(func=cmd_walk)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FramedKnotError, UsageError) as e:
        sys.stderr.write(f"error: {e}\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())
