"""Regenerate a figure's data and summarise where the bounds meet.

Figure 2 fixes lambda = 0.5 and sweeps the thermal photon number N up to
the separability edge.  Pipe the CSV printed by the CLI to any plotting
tool; here we just report the gap between the formation bounds.
"""
from tmst_bounds.cli import figure_rows

columns, reports = figure_rows(2, steps=40)
print("columns:", ", ".join(columns))
for rep in reports[::5]:
    print(f" N = {rep.params.n_thermal:.4f}  E_uf - E_lf = {rep.e_uf - rep.e_lf:.5f}"
          f"  E_LN = {rep.e_ln:.5f}  ordered: {rep.all_ordered}")
