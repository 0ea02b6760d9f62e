"""Point counting over prime fields: curves, fibered surfaces, affine varieties."""

from .fp import CountingError, Series, chi, chi_table, local_series
from .curves import (REPORT_SCHEMA, CountReport, brute_force_cubic, count_cubic_ints, count_elliptic,
                     count_quartic, count_quartic_ints, hasse_ok, quartic_is_smooth)
from .surfaces import LocalFiber, count_fibered_surface, fiber_types_mod_p, local_fibers, weil_window
from .hypersurface import (BUDGET_ENV, DEFAULT_BUDGET, BudgetExceeded, brute_force_zeros, compare_mod_p,
                           count_affine_hypersurface, count_affine_variety, evaluation_budget)
from .threefold import DEFAULT_PARAMETERS, kummer3_count, threefold_experiment, z3_count

__all__ = [
    "CountingError", "Series", "chi", "chi_table", "local_series", "REPORT_SCHEMA", "CountReport",
    "brute_force_cubic", "count_cubic_ints", "count_elliptic", "count_quartic", "count_quartic_ints", "hasse_ok",
    "quartic_is_smooth", "LocalFiber", "count_fibered_surface", "fiber_types_mod_p", "local_fibers", "weil_window",
    "BUDGET_ENV", "DEFAULT_BUDGET", "BudgetExceeded", "brute_force_zeros", "compare_mod_p",
    "count_affine_hypersurface", "count_affine_variety", "evaluation_budget", "DEFAULT_PARAMETERS",
    "kummer3_count", "threefold_experiment", "z3_count",
]
