"""Cross-check the closed forms against a brute-force Fock-space simulation.

The oracle builds the state as a truncated density matrix and computes the
same quantities by linear algebra.  Agreement is excellent while the photon
tail fits in the truncation; the oracle refuses to answer (DeficitGateError)
once the trace deficit reaches 1e-8.  Note lambda = 0.7, v = 0: the trace is
fine but the log negativity is still off by about 2e-6, because the trace norm
of the partial transpose weighs the truncated amplitude tail, which decays
only like lambda**dim.
"""
from tmst_bounds import e_ln, tmst_from
from tmst_bounds.bound_lower import qubit_projection
from tmst_bounds.fock_oracle import (DeficitGateError, build_tmst_density,
                                     oracle_log_negativity, oracle_t11)

for lam, v in ((0.3, 0.1), (0.5, 0.2), (0.7, 0.0), (0.7, 0.4)):
    p = tmst_from(lam, v)
    state = build_tmst_density(p, dim=40)
    try:
        oracle_t11(state)
    except DeficitGateError as exc:
        print(f"lambda={lam} v={v}: oracle declined, {exc}")
        continue
    dt = abs(qubit_projection(p).t11 - oracle_t11(state).t11)
    dln = abs(e_ln(p) - oracle_log_negativity(state))
    print(f"lambda={lam} v={v}: trace deficit {state.trace_deficit:.1e},"
          f" |dt11| {dt:.1e}, |dE_LN| {dln:.1e}")
