"""Brute-force oracles on finite rings."""

from .kernels import BACKEND
from .model import (
    DEFAULT_CAP,
    FiniteModel,
    IdealModel,
    QuotientModel,
    RabModel,
    TableModel,
    TooLarge,
    ZModModel,
    enumerate_model,
)
from .oracle import (
    BruteSpec,
    CrosscheckReport,
    LocalFactor,
    OracleMismatch,
    crosscheck,
    isomorphism_bf,
    local_factor_bf,
    nilradical_bf,
    primes_bf,
    ring_axioms_bf,
)
from .search import SearchBounds, search_localization_question, sweep_instances

__all__ = [
    "BACKEND",
    "DEFAULT_CAP",
    "FiniteModel",
    "IdealModel",
    "QuotientModel",
    "RabModel",
    "TableModel",
    "TooLarge",
    "ZModModel",
    "enumerate_model",
    "BruteSpec",
    "CrosscheckReport",
    "LocalFactor",
    "OracleMismatch",
    "crosscheck",
    "isomorphism_bf",
    "local_factor_bf",
    "nilradical_bf",
    "primes_bf",
    "ring_axioms_bf",
    "SearchBounds",
    "search_localization_question",
    "sweep_instances",
]
