"""Kodaira-Thurston with its symplectic form: Bott-Chern strictly bigger than Dolbeault.

Run: python3 demos/kodaira_thurston.py
"""

from gcx import build_gcs, cohomology_report, corpus_path, parse_model_file, spectral_data
from gcx.bridges import symplectic_bridge

model, spec = parse_model_file(corpus_path("kt_symplectic"))
gcs = build_gcs(model, spec)
print(f"{model.salamon()}  omega = {spec.payload}")

rep = cohomology_report(gcs, name="kt_symplectic")
print(" k  U^k  dbar  BC   A  lemma")
for row in rep.per_k:
    print(f"{row['k']:>2} {row['dim_uk']:>4} {row['gh_delbar']:>5} {row['gh_bc']:>3} {row['gh_a']:>3}  {row['lemma']}")

# the gap sits at k = 0, where an exact form is d-exact but not dd^J-exact
gaps = [r["k"] for r in rep.per_k if r["gh_bc"] > r["gh_delbar"]]
print("strict at k =", gaps)

sd = spectral_data(gcs)
print("E_1 =", [sd.e1[k] for k in gcs.ks], " E_inf =", [sd.e_inf[k] for k in gcs.ks])
print("degenerates at E_1:", sd.degenerate, " decomposes:", sd.decomposition)

# on the symplectic side the same numbers are Betti and Tseng-Yau dimensions
b = symplectic_bridge(gcs)
print("betti", b["betti"], " H_BC", b["h_bc"], " H_A", b["h_a"])
