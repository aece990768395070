"""Theta functions as bilateral exponential series, their Gaussian-comb twins,
and the transform exchanging the two expression parameters."""

import numpy as np

from stardeform.theta import (delta_sum_representation, imaginary_transform_residual,
                              jacobi_relation_residual, quasi_periodicity_residual, theta_eval)

tau = 1.0
print("theta3(0, 1) =", theta_eval(3, 0.0, tau))
print("comb representation at w=0.4:",
      abs(delta_sum_representation(0.4, tau) - theta_eval(3, 0.4, tau)))

print("\nquasi-periodicity residuals (kinds 1..4):",
      [float(f"{quasi_periodicity_residual(k, 0.3, tau):.2e}") for k in (1, 2, 3, 4)])

print("\nvalue relation theta3(0,tau) = sqrt(pi/tau) theta3(0, pi^2/tau):")
for t in (1.0, 2.0, 1 + 0.5j):
    print(f"  tau = {t}: residual {jacobi_relation_residual(t):.2e}")

ws = np.linspace(-1, 1, 5)
print("\nimaginary-transform residuals on a grid:",
      [float(f"{imaginary_transform_residual(w, 2.0):.2e}") for w in ws])
