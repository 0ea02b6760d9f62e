"""Explicit elliptic fibrations: Weierstrass models, base changes and identity checks."""

from .weierstrass import (CasebookError, IdentityFailure, WeierstrassModel, CurvePoint, INFINITY,
                          quadratic_twist, scaling_between, isomorphic_over_base)
from .jacobians import (GenusOneQuartic, jacobian_of_quartic, jacobian_of_cubic, cubic_invariant,
                        homogenize)
from .models import (EXTREMAL_EQUATIONS, SurfaceModel, extremal_model, extremal_at, torsion_point,
                     legendre_curve, cover_map, z2_surface, inose_surface, inose_pencil_jacobian,
                     kummer_product_models, kummer_as_fibration, legendre_kummer_target, coincidence3,
                     coincidence3_equations, coincidence3_elimination, coincidence4, z3_model, kummer3_models,
                     KUMMER3_HODGE)
from .fibers import EXTREMAL_FIBERS, WildPlace, analyze_fibers, fiber_at, fiber_summary, valuation
from .verify import CASES, verify_case
