"""The Iwasawa manifold, where the generalized equality holds but the lemma does not.

Every U^k has Gh_BC = Gh_delbar, yet the dd^J-lemma fails.  The spectral
sequence shows why: E_1 is bigger than E_inf, so the Dolbeault dimensions
are not the de Rham ones, and the count of Bott-Chern classes happens to
match the Dolbeault count for a different reason.

Run: python3 demos/iwasawa.py
"""

from gcx import build_gcs, cohomology_report, corpus_path, parse_model_file, spectral_data
from gcx.bridges import complex_bridge

model, spec = parse_model_file(corpus_path("iwasawa"))
gcs = build_gcs(model, spec)
rep = cohomology_report(gcs, name="iwasawa")

for row in rep.per_k:
    print(f"k={row['k']:>2}  dbar {row['gh_delbar']:>2}  BC {row['gh_bc']:>2}  lemma {row['lemma']}")
print("equality everywhere:", rep.verdicts["equality"], " lemma:", rep.verdicts["lemma"])
print("flags that fail:", [k for k, v in rep.verdicts.items() if not v])

sd = spectral_data(gcs)
print("E_1  ", [sd.e1[k] for k in gcs.ks])
print("E_inf", [sd.e_inf[k] for k in gcs.ks], " first live page", sd.first_live_page)

b = complex_bridge(gcs)
h = b["h"]
print("h_BC^{1,1} =", h["bc"]["1,1"], " h_A^{1,1} =", h["a"]["1,1"])
print("h_delbar^{1,0} =", h["delbar"]["1,0"], " h_del^{1,0} =", h["del"]["1,0"])
