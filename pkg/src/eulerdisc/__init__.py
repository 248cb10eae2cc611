"""Exact principal A-determinants and Euler discriminants of hyperplane
arrangement families, with the wavefunction construction on top.
"""

__version__ = "0.1.0"

from .cosmo import (
    CosmoGraph,
    coefficient_family,
    cosmo_euler_disc,
    cosmo_pad,
    facet_forms,
    wavefunction,
)
from .discriminant import (
    DiscriminantReport,
    ParamFamily,
    degree_check,
    euler_disc,
    pad_dense,
    pad_sparse,
    witness_point,
)
from .errors import EulerDiscError, HypothesisError, InputError, SizeLimitError
from .graphs import BipartiteSubgraph, PatternGraph
from .lattice import (
    edge_config,
    f_vector,
    facets,
    normalized_volume,
    subdiagram_volume,
)
from .matroid import beta, generic_euler_char, signed_euler_char

__all__ = [
    "__version__",
    "BipartiteSubgraph",
    "CosmoGraph",
    "DiscriminantReport",
    "EulerDiscError",
    "HypothesisError",
    "InputError",
    "ParamFamily",
    "PatternGraph",
    "SizeLimitError",
    "beta",
    "coefficient_family",
    "cosmo_euler_disc",
    "cosmo_pad",
    "degree_check",
    "edge_config",
    "euler_disc",
    "f_vector",
    "facets",
    "facet_forms",
    "generic_euler_char",
    "normalized_volume",
    "pad_dense",
    "pad_sparse",
    "signed_euler_char",
    "subdiagram_volume",
    "wavefunction",
    "witness_point",
]
