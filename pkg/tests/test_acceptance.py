"""Acceptance battery.

Each criterion records a one-line verdict in ``RESULTS``; the conftest hook
prints them at the end of the run.  ``python tests/test_acceptance.py``
runs the battery without pytest.
"""

import sys
import tempfile
from pathlib import Path

import pytest

from framedknots.cli import main as cli_main
from framedknots.codeio import format_code
from framedknots.diagram import same_component
from framedknots.invariant import compute_I
from framedknots.verify import distinguishing_pair, run_suite

RESULTS = {}

CRITERIA = {
    1: ("isotopy invariance", "invariance", {"count": 500, "moves": 20}),
    2: ("skein identity", "skein", {"count": 200}),
    3: ("order-one vanishing", "order2", {"count": 100}),
    4: ("kink action", "kinks", {"per_context": 5, "span": 5}),
    5: ("g injective on fiber windows", "kernel", {"count": 20, "window": 8}),
    6: ("group substrate", "group", {"central": 1000, "commuting": 500, "shifts": 200}),
}

_reports = {}


def _report(n, seed=0):
    key = (n, seed)
    if key not in _reports:
        _, suite, kw = CRITERIA[n]
        _reports[key] = run_suite(suite, seed=seed, **kw)
    return _reports[key]


def _record(n, ok, detail):
    name = CRITERIA[n][0] if n in CRITERIA else {7: "distinguishing pair", 8: "determinism"}[n]
    RESULTS[n] = f"criterion {n} ({name}): {'PASS' if ok else 'FAIL'} - {detail}"
    return ok


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    rep = _report(n)
    first = rep.render().splitlines()[0]
    assert _record(n, rep.passed, first), rep.render()


def test_criterion_7_distinguishing_pair():
    plus, minus, ref = distinguishing_pair(seed=0)
    same = same_component(plus, minus)
    differ = compute_I(plus, ref) != compute_I(minus, ref)
    with tempfile.TemporaryDirectory() as d:
        a, b, r = Path(d, "plus.code"), Path(d, "minus.code"), Path(d, "ref.code")
        a.write_text(format_code(plus))
        b.write_text(format_code(minus))
        r.write_text(format_code(ref))
        out = Path(d, "compare.txt")
        code = cli_main(["compare", str(a), str(b), "--ref", str(r), "-o", str(out)])
    ok = same == "yes" and differ and code == 1
    detail = f"same component {same}, I differs {differ}, compare exit {code}"
    assert _record(7, ok, detail)


def test_criterion_8_determinism():
    renders = []
    for n in sorted(CRITERIA):
        a = _report(n).render()
        _, suite, kw = CRITERIA[n]
        b = run_suite(suite, seed=0, **kw).render()
        renders.append(a == b)
    plus1, minus1, _ = distinguishing_pair(seed=0)
    plus2, minus2, _ = distinguishing_pair(seed=0)
    pair_same = format_code(plus1) == format_code(plus2) and format_code(minus1) == format_code(minus2)
    ok = all(renders) and pair_same
    detail = f"{sum(renders)} of {len(renders)} reports byte-identical on rerun, pair identical {pair_same}"
    assert _record(8, ok, detail)


if __name__ == "__main__":
    failed = False
    for n in sorted(CRITERIA):
        try:
            test_criterion(n)
        except AssertionError:
            failed = True
    for t in (test_criterion_7_distinguishing_pair, test_criterion_8_determinism):
        try:
            t()
        except AssertionError:
            failed = True
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(1 if failed else 0)
