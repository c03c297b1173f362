"""Side by side: the flat torus, where everything agrees, and Kodaira-Thurston.

Run: python3 demos/torus_vs_kt.py
"""

from gcx import RunConfig, corpus_path, run_model

for name in ("torus4", "kt_symplectic", "kt_complex", "kt_spinor"):
    res = run_model(corpus_path(name), RunConfig())
    rep = res.report
    bc = [r["gh_bc"] for r in rep.per_k]
    dbar = [r["gh_delbar"] for r in rep.per_k]
    print(f"{name:<14} dbar {dbar}  BC {bc}  lemma {rep.verdicts['lemma']}  exit {res.exit_code}")
