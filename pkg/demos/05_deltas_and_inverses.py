"""Delta elements are entire Gaussians here; generators acquire two distinct
one-sided inverses whose difference is 2 pi i times the delta.  Heaviside and
sign elements follow from the density calculus."""

import numpy as np

from stardeform.distributions import (associativity_break_gap, delta_difference_residual,
                                      delta_tau, heaviside_sgn, sided_inverse,
                                      sided_inverse_defect, y_sgn_identity_residuals)
from stardeform.theta import theta_eval

tau = 1.0
grid = np.linspace(-2, 2, 9)

d = delta_tau(0.0, tau)
print("delta expression at w=0:", d(0.0), "(= 1/sqrt(pi))")

print("sided-inverse defect (a=1):",
      max(sided_inverse_defect(1.0, s, tau, grid) for s in "+-"))
print("difference equals 2 pi i delta:", delta_difference_residual(0.0, tau, grid))

y, sgn = heaviside_sgn(tau, grid)
print("\nY values:", np.round(y.real, 4))
print("identity residuals:", {k: float(f"{v:.2e}")
                              for k, v in y_sgn_identity_residuals(tau, grid).items()})

res = associativity_break_gap(tau, grid, n_terms=40)
theta_vals = np.asarray([theta_eval(3, w, tau) for w in grid])
print("\nassociativity break: both groupings are inverses "
      f"(residuals {res['plus_inverse_residual']:.1e}, {res['minus_inverse_residual']:.1e}) "
      "yet the groupings differ by the theta series:",
      float(np.abs(res["gap"] + theta_vals).max()))
