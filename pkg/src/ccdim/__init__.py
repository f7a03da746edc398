"""Hyperplane combinatorics, controlled colourings and l1 retractions of finite CAT(0) cube complexes."""
from .colouring import Colouring, boundness_audit, chain_partition, colour, max_mono_inward
from .contraction import (
    ContractionReport,
    cobornology_audit,
    contract_pipeline,
    descend_zero,
    lipschitz_ratio,
    phi,
    psi,
    quotient,
    weight,
)
from .core import CubeComplex, Relation, build_complex
from .generators import GeneratorSpec, generate, median_closure
from .geometry import (
    CubePoint,
    classify_point,
    embed,
    ordered_compose,
    p_less,
    p_op,
    project,
    project_actual,
    project_intervalic,
)
from .kernels import BACKEND
from .rank import d_ranks, flatness, in_d_corner, rank_vectors

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Colouring", "ContractionReport", "CubeComplex", "CubePoint", "GeneratorSpec", "Relation",
    "boundness_audit", "build_complex", "chain_partition", "classify_point", "cobornology_audit", "colour",
    "contract_pipeline", "d_ranks", "descend_zero", "embed", "flatness", "generate", "in_d_corner",
    "lipschitz_ratio", "max_mono_inward", "median_closure", "ordered_compose", "p_less", "p_op", "phi",
    "project", "project_actual", "project_intervalic", "psi", "quotient", "rank_vectors", "weight",
]
