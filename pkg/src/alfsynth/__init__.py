"""Counterexample-guided inductive synthesis over abstract learning frameworks."""

from .core import (
    ACCEPT, Accept, BudgetExhausted, CapExhausted, CapExhaustedError, Converged,
    Domain, Feedback, FiniteUniverse, Hypothesis, Trace, Unrealizable,
    run_instance, verify_honesty, verify_kappa_laws, verify_progress,
)
from .samples import GroundedSample, ICESample, PNSample

__version__ = "0.1.0"

__all__ = [
    "ACCEPT", "Accept", "BudgetExhausted", "CapExhausted", "CapExhaustedError", "Converged",
    "Domain", "Feedback", "FiniteUniverse", "GroundedSample", "Hypothesis", "ICESample",
    "PNSample", "Trace", "Unrealizable", "run_instance", "verify_honesty", "verify_kappa_laws",
    "verify_progress",
]
