"""Exact phase-space simulation of coherent-state superpositions in linear
waveguide interferometers, with a reservoir-computing classification
pipeline and a truncated Fock-space cross-check."""

__version__ = "0.1.0"

from .errors import ConfigError, NumericalInvariantError, ResourceLimitError
from .states import (
    CatSpec,
    CoherentSpec,
    GeneralizedPState,
    MultiCatSpec,
    cat_state,
    coherent_state,
    kitten_spec,
    multi_cat_state,
    product_state,
)
from .evolution import (
    CouplingSchedule,
    CouplingWindow,
    PhysicalConstants,
    TransferMatrix,
    coupling_at,
    propagate,
    transfer_matrix,
)
from .observables import (
    CorrelationSet,
    PhotonDistribution,
    WignerGrid,
    correlation_set,
    cross_g2,
    mean_occupation,
    photon_distribution,
    wigner,
)

__all__ = [
    "__version__",
    "ConfigError",
    "NumericalInvariantError",
    "ResourceLimitError",
    "CatSpec",
    "CoherentSpec",
    "GeneralizedPState",
    "MultiCatSpec",
    "cat_state",
    "coherent_state",
    "kitten_spec",
    "multi_cat_state",
    "product_state",
    "CouplingSchedule",
    "CouplingWindow",
    "PhysicalConstants",
    "TransferMatrix",
    "coupling_at",
    "propagate",
    "transfer_matrix",
    "CorrelationSet",
    "PhotonDistribution",
    "WignerGrid",
    "correlation_set",
    "cross_g2",
    "mean_occupation",
    "photon_distribution",
    "wigner",
]
