"""Look inside the lower bound: the qubit projection and its series.

The lower bound projects the infinite-dimensional state onto a pair of
qubits.  The off-diagonal correlation t11 is an infinite double series;
this demo shows how many terms it needs as squeezing grows.
"""
import numpy as np

from tmst_bounds import tmst_from
from tmst_bounds.bound_lower import concurrence_of, qubit_projection

print(" lambda      t11          terms   residual   concurrence")
for lam in (0.1, 0.5, 0.9, 0.99):
    p = tmst_from(lam, 0.1)
    qp = qubit_projection(p)
    c = concurrence_of(qp, p)
    print(f" {lam:5.2f}  {qp.t11:.10f}  {qp.terms_used:8d}  {qp.series_residual:.1e}"
          f"   {c.concurrence:.6f}")

print("\nqubit density matrix at lambda = 0.5, v = 0.1:")
print(np.array2string(qubit_projection(tmst_from(0.5, 0.1)).rho_qubit, precision=5))
