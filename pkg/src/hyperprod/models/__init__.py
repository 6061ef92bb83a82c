"""Pydantic models for run configuration and reports."""

from hyperprod.models.verification import (
    ComponentIndependence,
    IndependenceReport,
    ProductBoundRecord,
    ProductSizes,
    RunConfig,
    SolverOutcome,
    SolverStatus,
    Verdict,
    VerificationReport,
)

__all__ = [
    "ComponentIndependence",
    "IndependenceReport",
    "ProductBoundRecord",
    "ProductSizes",
    "RunConfig",
    "SolverOutcome",
    "SolverStatus",
    "Verdict",
    "VerificationReport",
]
