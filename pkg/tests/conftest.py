import sys
from fractions import Fraction

import pytest

from framedknots import bundle, compile_pl, parse_pl, standard_polygon
from framedknots.exact import rot90


def pl_text(spec, items):
    s = spec.surface
    lines = [f"surface {s.genus} {s.punctures}", f"euler {spec.euler}"]
    for it in items:
        if isinstance(it, str):
            lines.append(f"gate {it}")
        else:
            x, y, t = it
            lines.append(f"sample {Fraction(x)} {Fraction(y)} {Fraction(t)}")
    return "\n".join(lines) + "\n"


def build(spec, items):
    return compile_pl(parse_pl(pl_text(spec, items)))


def gate_leg(spec, label, t=Fraction(1, 2), eps=Fraction(1, 10), theta=0):
    """Samples just before and after a straight passage through edge ``label``."""
    poly = standard_polygon(spec.surface)
    k = poly.edge_by_label(label)
    ek = poly.edge_vector(k)
    u = (-rot90(ek)[0], -rot90(ek)[1])
    X = poly.edge_point(k, Fraction(t))
    Y = poly.map_point(k, X)
    Au = poly.map_dir(k, u)
    P = (X[0] - eps * u[0], X[1] - eps * u[1], theta)
    Q = (Y[0] + eps * Au[0], Y[1] + eps * Au[1], theta)
    return [P, label, Q]


def circle_items(r=Fraction(1, 4), theta=0, ccw=True, center=(0, 0)):
    cx, cy = center
    pts = [(cx, cy - r, theta), (cx + r, cy, theta), (cx, cy + r, theta), (cx - r, cy, theta)]
    return pts if ccw else pts[::-1]


ANNULUS = bundle(0, 2, 0)
PUNCTURED_TORUS = bundle(1, 1, 0)
GENUS2 = bundle(2, 0, -2)
TORUS = bundle(1, 0, 0)
CONTEXTS = [ANNULUS, PUNCTURED_TORUS, GENUS2, TORUS]


@pytest.fixture
def annulus_circle():
    return build(ANNULUS, circle_items())


@pytest.fixture
def figure8():
    return build(ANNULUS, [(0, 0, Fraction(1, 10)), (Fraction(1, 5), Fraction(1, 5), Fraction(1, 5)),
                           (0, Fraction(1, 5), Fraction(3, 10)), (Fraction(1, 5), 0, Fraction(2, 5))])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
