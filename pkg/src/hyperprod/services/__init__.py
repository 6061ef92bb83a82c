"""Services orchestrating the library for the command line."""

from hyperprod.services.independence import check_independence, compile_components
from hyperprod.services.verification import VerificationPipeline, run

__all__ = ["VerificationPipeline", "check_independence", "compile_components", "run"]
