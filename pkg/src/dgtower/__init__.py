"""dgtower: exact computer algebra for towers of non-positive DG-rings.

The package builds commutative noetherian DG-rings from finite
presentations (quotient rings, trivial extensions, iterated Koszul
extensions), computes their cohomology locally at a rational point, and
decides the regularity hierarchy: regular elements and sequences,
sequential depth, local Cohen-Macaulayness, sequence-regularity, and
residue DG-fields.

Power-series examples are modeled by localizing a polynomial ring at a
rational point (moved to the origin by translation); every predicate
computed here (dimension, regularity, regular elements, amplitudes) agrees
with the completed ring for such inputs.
"""

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    DocumentError,
    FieldMismatch,
    InvalidTower,
    NotInSpan,
    PolyParseError,
    ToolkitError,
)
from .fields import QQ, PrimeField, RationalField, field_from_spec
from .poly import GREVLEX, LEX, NEG_GREVLEX, MonomialOrder, Poly, PolyRing
from .groebner import (
    EMPTY_SPECTRUM,
    Ideal,
    LiftSolver,
    PrimeIdealSpec,
    kernel_of_matrix,
    syzygy_module,
)
from .modules import ComplexOfModules, Fingerprint, ModuleMap, PresentedModule
from .dgring import (
    AmplitudeProfile,
    DGRingRealization,
    DGRingSpec,
    KoszulStep,
    TrivExtStep,
    has_constant_amplitude,
    koszul,
    localize_at_point,
    realize,
)
from . import regularity

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "RationalField",
    "field_from_spec",
    "GREVLEX",
    "LEX",
    "NEG_GREVLEX",
    "MonomialOrder",
    "Poly",
    "PolyRing",
    "EMPTY_SPECTRUM",
    "Ideal",
    "LiftSolver",
    "PrimeIdealSpec",
    "kernel_of_matrix",
    "syzygy_module",
    "ComplexOfModules",
    "Fingerprint",
    "ModuleMap",
    "PresentedModule",
    "AmplitudeProfile",
    "DGRingRealization",
    "DGRingSpec",
    "KoszulStep",
    "TrivExtStep",
    "has_constant_amplitude",
    "koszul",
    "localize_at_point",
    "realize",
    "regularity",
    "ToolkitError",
    "ArityMismatch",
    "FieldMismatch",
    "BudgetExceeded",
    "NotInSpan",
    "InvalidTower",
    "PolyParseError",
    "DocumentError",
    "__version__",
]
