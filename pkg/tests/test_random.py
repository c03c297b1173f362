"""Invariant suite on randomly generated structures."""

import pytest

from gcx import build_gcs
from gcx.cohomology import gh_dims
from gcx.errors import StructureError
from gcx.exterior import Form
from gcx.gcs_engine import omega_matrix
from gcx.linalg import Matrix
from gcx.model_parser import StructureSpec
from gcx.report import analyze
from conftest import gcs_of
from structures import random_abelian_structure

SEEDS = range(100)
CHUNK = 10


def check_invariants(model, spec, label):
    """Returns a list of violated invariants; structural errors propagate."""
    rep, violations = analyze(model, spec, label)
    v = rep.verdicts
    bad = list(violations)
    if not v["lemma"]:
        bad.append("lemma false on an abelian algebra")
    if not (v["degeneration"] and v["decomposition"]):
        bad.append("spectral")
    return bad


@pytest.mark.parametrize("start", range(0, len(SEEDS), CHUNK))
def test_random_abelian_structures(start):
    for seed in SEEDS[start:start + CHUNK]:
        kind, model, spec = random_abelian_structure(seed)
        assert check_invariants(model, spec, f"seed {seed}") == [], (seed, kind)


def test_random_structures_are_varied():
    kinds = {random_abelian_structure(s)[0] for s in SEEDS}
    dims = {random_abelian_structure(s)[1].n2 for s in SEEDS}
    assert kinds == {"complex", "symplectic", "mixed"}
    assert dims == {2, 4, 6}


def _b_transform(J, B):
    n2 = B.n2
    I2 = Matrix.identity(n2)
    z = Matrix.zeros(n2, n2)
    Bm = omega_matrix(B)
    T = I2.hstack(z).vstack(Bm.hstack(I2))
    Tinv = I2.hstack(z).vstack((-Bm).hstack(I2))
    return T @ J @ Tinv


@pytest.mark.parametrize("name", ["kt_symplectic", "kt_complex"])
@pytest.mark.parametrize("b", [[1, 3], [2, 4], [1, 2]])
def test_closed_b_field_preserves_dimensions(name, b):
    g = gcs_of(name)
    B = Form.monomial(4, b)
    assert not g.model.d(B)
    spec = StructureSpec("raw_matrix", _b_transform(g.J_matrix, B), "JJ")
    h = build_gcs(g.model, spec)
    assert gh_dims(h) == gh_dims(g)


def test_non_closed_b_field_breaks_integrability():
    g = gcs_of("kt_symplectic")
    B = Form.monomial(4, [3, 4])
    assert g.model.d(B)
    spec = StructureSpec("raw_matrix", _b_transform(g.J_matrix, B), "JJ")
    with pytest.raises(StructureError, match="not integrable"):
        build_gcs(g.model, spec)
