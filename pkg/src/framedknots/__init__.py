"""Order-one invariant of framed knots in circle bundles over surfaces."""

from .codeio import format_code, parse_code
from .diagram import (
    Cut,
    DiagramCode,
    Gate,
    Visit,
    knot_class,
    parity_signature,
    rotation_index,
    same_component,
    velocity_lift,
    wedge_at_crossing,
)
from .errors import (
    ContextError,
    FramedKnotError,
    GenericityError,
    MalformedInput,
    MoveError,
    TheoremViolation,
)
from .group_core import BundleElement, BundleSpec, SurfaceSpec, bundle
from .invariant import (
    SingularDiagram,
    compare_knots,
    compute_I,
    mark,
    resolve,
    second_derivative,
    singular_wedge,
    skein_delta,
)
from .moves import MoveSpec, apply_move, enumerate_sites, random_knot, random_walk
from .pl import FramedKnotPL, compile_pl, format_pl, parse_pl
from .polygon import PolygonModel, standard_polygon
from .wedge_algebra import InvariantValue, WedgeClass, canonical_form

compile = compile_pl

__all__ = [name for name in dir() if not name.startswith("_")]
