"""Exact B-model computations for the pfaffian and G(2,7) quotient families."""

from .series import PowerSeries, RationalFunction, SeriesError, pade
from .operators import DiffOperator, OperatorError
from .models import MonomialModel, get_model

__all__ = ["PowerSeries", "RationalFunction", "SeriesError", "pade", "DiffOperator",
           "OperatorError", "MonomialModel", "get_model"]
