"""Exact computational algebra for Carlitz torsion groups over small fields."""

from .config import DEFAULT_BUDGET, BUDGET_ENV_VAR, resolve_budget
from . import errors

__version__ = "0.1.0"
