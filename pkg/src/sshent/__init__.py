"""Charge-resolved entanglement of intervals in dimerized chains with defects."""

from .model import ChainSpec, DefectSpec, build_hamiltonian, localization_length
from .linalg import EigenSystem, eigh_symmetric
from .specialfn import EllipticParams
from .groundstate import (
    CorrelationMatrix,
    OccupationPolicy,
    ZeroModePair,
    correlation_matrix,
    localized_zero_modes,
)
from .entanglement import (
    ChargeResolvedTable,
    EntanglementSpectrum,
    charge_resolved_table,
    charged_moment,
    srpf,
    total_renyi,
    total_vn,
)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "DefectSpec",
    "build_hamiltonian",
    "localization_length",
    "EigenSystem",
    "eigh_symmetric",
    "EllipticParams",
    "CorrelationMatrix",
    "OccupationPolicy",
    "ZeroModePair",
    "correlation_matrix",
    "localized_zero_modes",
    "ChargeResolvedTable",
    "EntanglementSpectrum",
    "charge_resolved_table",
    "charged_moment",
    "srpf",
    "total_renyi",
    "total_vn",
    "__version__",
]
