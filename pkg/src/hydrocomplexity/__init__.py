"""Shape complexity (disequilibrium x Shannon entropy power) of D-dimensional
hydrogenic states in position and momentum space."""
from .closedform import circular_report, ground_report
from .hydrogenic import QuantumState
from .measures import (
    ComplexityReport,
    MeasureResult,
    Method,
    analytic_report,
    complexity_momentum,
    complexity_position,
    oracle_measures,
)
from .quadrature import QuadratureError

__all__ = [
    "QuantumState",
    "ComplexityReport",
    "MeasureResult",
    "Method",
    "QuadratureError",
    "analytic_report",
    "oracle_measures",
    "complexity_position",
    "complexity_momentum",
    "ground_report",
    "circular_report",
]
__version__ = "0.1.0"
