"""Trace the one-dimensional search behind the relative-entropy bound.

The upper bound E_ur is the minimum over a separable family parameterised by
v_tilde.  We print a coarse view of the objective and compare with the
minimiser found by grid scan plus golden section.
"""
import numpy as np

from tmst_bounds import tmst_from
from tmst_bounds.bound_upper import e_ur_objective, minimize_relative_entropy

p = tmst_from(0.5, 0.2)
for vt in np.linspace(0.05, 0.95, 10):
    bar = "#" * int(20 * min(e_ur_objective(p, vt), 3.0))
    print(f" v~ = {vt:.2f}  {e_ur_objective(p, vt):8.5f}  {bar}")

search = minimize_relative_entropy(p)
print(f"\nminimiser v~* = {search.v_tilde_star:.8f}, E_ur = {search.e_ur:.9f},"
      f" {search.objective_evals} objective evaluations")
