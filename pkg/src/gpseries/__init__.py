"""Exact-arithmetic decomposition of regular generalized principal series.

From purely combinatorial input (a Cartan type, a standard Levi subset of
the simple roots, and inducing character data), the package computes the
constituent parametrization of the induced representation, the
combinatorial Jacquet module of each constituent, square-integrability /
temperedness / genericity flags, and the duality pairing, all in exact
rational arithmetic.  Randomized and exhaustive verification sweeps for the
underlying structural claims live in :mod:`gpseries.verify`.
"""

from .cartan import (
    CartanType,
    RootSystem,
    WeylElement,
    WeylGroup,
    build_root_system,
    cartan_pairing,
    generate_weyl,
    longest_element,
    reflection,
)
from .levi import (
    LeviDatum,
    RelativeWeylGroup,
    make_levi,
    reflective_roots,
    relative_reflection,
    relative_weyl_group,
)
from .arrangement import (
    Chamber,
    Component,
    WallSet,
    chamber_graph_dot,
    components,
    dominant_component,
    enumerate_chambers,
    inversion_set,
    kernel_image_partition,
    image_along_gallery,
    minimal_gallery,
)
from .poles import (
    InducingDatum,
    IndependenceResult,
    coroot_system,
    derive_walls,
    exponent_is_regular,
    independence_stress_test,
    obtuseness_check,
    orient_walls,
    verify_linear_independence,
)
from .constituents import (
    Constituent,
    DecompositionReport,
    aubert_pairing,
    build_report,
    decompose,
    flag_generic,
    flag_square_integrable,
    flag_tempered,
    universal_irreducibility_check,
)
from .errors import EnumerationCapError, GpsError, InvariantViolation, SpecError

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "RootSystem",
    "WeylElement",
    "WeylGroup",
    "build_root_system",
    "cartan_pairing",
    "generate_weyl",
    "longest_element",
    "reflection",
    "LeviDatum",
    "RelativeWeylGroup",
    "make_levi",
    "reflective_roots",
    "relative_reflection",
    "relative_weyl_group",
    "Chamber",
    "Component",
    "WallSet",
    "chamber_graph_dot",
    "components",
    "dominant_component",
    "enumerate_chambers",
    "inversion_set",
    "kernel_image_partition",
    "image_along_gallery",
    "minimal_gallery",
    "InducingDatum",
    "IndependenceResult",
    "coroot_system",
    "derive_walls",
    "exponent_is_regular",
    "independence_stress_test",
    "obtuseness_check",
    "orient_walls",
    "verify_linear_independence",
    "Constituent",
    "DecompositionReport",
    "aubert_pairing",
    "build_report",
    "decompose",
    "flag_generic",
    "flag_square_integrable",
    "flag_tempered",
    "universal_irreducibility_check",
    "EnumerationCapError",
    "GpsError",
    "InvariantViolation",
    "SpecError",
    "__version__",
]
