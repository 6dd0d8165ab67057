"""Exact arithmetic for Hom-Novikov superalgebras: axioms, constructions,
low-degree cohomology and truncated formal deformations."""

from .cohomology import Cochain, CohomologyReport, circle_alpha, delta1, delta2, h2
from .deformation import (
    EquivalenceTransform,
    TruncatedDeformation,
    apply_equivalence,
    check_deformation,
    cohomology_class_delta,
    is_infinitesimal,
    is_two_cocycle,
    rigidity_reduce,
    trivialize_step,
)
from .errors import AxiomError, InputError, PreconditionError
from .exactlin import GradedSpace, Scalar, scalar
from .superalgebra import BilinearForm, SuperAlgebra, Verdict, is_hom_novikov

__all__ = [
    "AxiomError", "BilinearForm", "Cochain", "CohomologyReport", "EquivalenceTransform",
    "GradedSpace", "InputError", "PreconditionError", "Scalar", "SuperAlgebra",
    "TruncatedDeformation", "Verdict", "apply_equivalence", "check_deformation",
    "circle_alpha", "cohomology_class_delta", "delta1", "delta2", "h2", "is_hom_novikov",
    "is_infinitesimal", "is_two_cocycle", "rigidity_reduce", "scalar", "trivialize_step",
]
