"""Enumeration budget handling.

Every exhaustive scan in the package (field elements, residues, group
elements, monomials) is capped.  The default cap is 2**20 objects; the
CARLITZ_BUDGET environment variable overrides it, and an explicit
budget argument overrides both.
"""

import os

DEFAULT_BUDGET = 2**20
BUDGET_ENV_VAR = "CARLITZ_BUDGET"


def resolve_budget(budget=None):
    """Return the effective enumeration cap as a positive int."""
    if budget is not None:
        value = int(budget)
    else:
        raw = os.environ.get(BUDGET_ENV_VAR)
        value = int(raw) if raw is not None else DEFAULT_BUDGET
    if value <= 0:
        raise ValueError("budget must be positive, got %r" % (value,))
    return value


def charge(count, budget=None, what="enumeration"):
    """Raise BudgetExceeded if count objects exceed the effective cap."""
    from .errors import BudgetExceeded

    cap = resolve_budget(budget)
    if count > cap:
        raise BudgetExceeded(
            "%s needs %d objects, budget is %d (raise CARLITZ_BUDGET or pass budget=)"
            % (what, count, cap)
        )
    return cap
