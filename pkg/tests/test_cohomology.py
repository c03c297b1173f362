import random

import pytest

from gcx import corpus_path
from gcx.cohomology import (
    ddJ_lemma_check,
    de_rham_dims,
    duality_check,
    frolicher_verdict,
    gh_dims,
    harmonic_dims,
    psi_maps,
    psi_zigzag_failures,
    varouchas_dims,
)
from gcx.errors import StructureError, TheoremViolation
from gcx.linalg import GaussianRational, Matrix, rank
from oracles import algebra_line, ce_betti, salamon_terms
from conftest import CORPUS, gcs_of

LEMMA_TRUE = ["torus2", "torus2_symplectic", "torus4", "torus4_complex", "torus6"]
LEMMA_FALSE = ["kt_symplectic", "kt_complex", "kt_spinor", "iwasawa"]


@pytest.mark.parametrize("name", CORPUS)
def test_betti_numbers_match_independent_ce_oracle(name):
    terms = salamon_terms(algebra_line(str(corpus_path(name))))
    assert de_rham_dims(gcs_of(name).model) == ce_betti(terms)


def test_kt_betti_numbers():
    assert de_rham_dims(gcs_of("kt_symplectic").model) == ce_betti(salamon_terms("(0,0,0,12)"))


@pytest.mark.parametrize("name", ["torus2", "torus4", "torus6", "torus4_complex"])
def test_abelian_cohomology_is_all_of_Uk(name):
    g = gcs_of(name)
    for k, dims in gh_dims(g).items():
        assert dims.as_tuple() == (g.uk_dims[k],) * 4


def test_complex_torus_bott_chern():
    assert [gh_dims(gcs_of("torus2"))[k].gh_bc for k in (-1, 0, 1)] == [1, 2, 1]


@pytest.mark.parametrize("name", CORPUS)
def test_varouchas_identities(name):
    g = gcs_of(name)
    gh = gh_dims(g)
    var = varouchas_dims(g, gh)
    for k in g.ks:
        v = var[k]
        assert gh[k].gh_a == gh[k].gh_delbar + v.a + v.c - v.b
        assert gh[k].gh_bc == gh[k].gh_delbar + v.d + v.f - v.e
        assert v.d == var[-k].b and v.e == var[-k].c


@pytest.mark.parametrize("name", CORPUS)
def test_harmonic_dimensions(name):
    g = gcs_of(name)
    gh = gh_dims(g)
    harm = harmonic_dims(g, gh)
    assert all(harm[k] == gh[k] for k in g.ks)


def _random_metric(g, seed):
    """Gram matrices M^H M for random invertible rational M, one per piece."""
    rng = random.Random(seed)
    out = {}
    for k, size in g.uk_dims.items():
        while True:
            M = Matrix([[GaussianRational(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(size)]
                        for _ in range(size)])
            if rank(M) == size:
                break
        out[k] = M.H @ M
    return out


@pytest.mark.parametrize("name", ["kt_symplectic", "kt_complex", "torus4"])
def test_harmonic_dimensions_do_not_depend_on_the_metric(name):
    g = gcs_of(name)
    gh = gh_dims(g)
    harm = harmonic_dims(g, gh, metric=_random_metric(g, 7))
    assert all(harm[k] == gh[k] for k in g.ks)


@pytest.mark.parametrize("name", CORPUS)
def test_lemma_shortcut_agrees_with_subspace_equality(name):
    g = gcs_of(name)
    for k in g.ks:
        assert ddJ_lemma_check(g, k) == ddJ_lemma_check(g, k, oracle=True)


@pytest.mark.parametrize("name", LEMMA_TRUE)
def test_lemma_holds_on_tori(name):
    g = gcs_of(name)
    assert all(ddJ_lemma_check(g, k) for k in g.ks)


@pytest.mark.parametrize("name", LEMMA_FALSE)
def test_lemma_fails_on_nilmanifolds(name):
    g = gcs_of(name)
    assert not all(ddJ_lemma_check(g, k) for k in g.ks)


@pytest.mark.parametrize("name", CORPUS)
def test_k_minus_k_dualities(name):
    assert duality_check(gcs_of(name))


@pytest.mark.parametrize("name", CORPUS)
def test_inclusion_maps(name):
    g = gcs_of(name)
    psi = psi_maps(g)
    assert not psi_zigzag_failures(psi, g.ks)
    lemma = all(ddJ_lemma_check(g, k) for k in g.ks)
    assert all(p.minus_injective for p in psi.values()) == lemma
    for k, p in psi.items():
        assert p.plus_matrix.shape == (p.plus_target, p.bc)


def test_kt_inequality_is_strict_in_the_middle():
    gh = gh_dims(gcs_of("kt_symplectic"))
    assert [gh[k].gh_bc - gh[k].gh_delbar for k in range(-2, 3)] == [0, 0, 1, 0, 0]
    assert frolicher_verdict(gcs_of("kt_symplectic"))["equality"] is False


def test_iwasawa_has_equality_without_the_lemma():
    # Counterexample to "equality for all k implies the lemma": see the ledger.
    g = gcs_of("iwasawa")
    v = frolicher_verdict(g, strict=False)
    assert v["equality"] and not v["lemma"] and not v["equivalence"]
    var = varouchas_dims(g)
    assert all(var[k].a == 0 and var[k].f == 0 for k in g.ks)
    assert any(var[k].b for k in g.ks)
    with pytest.raises(TheoremViolation):
        frolicher_verdict(g)


def test_cohomology_refuses_non_integrable():
    from gcx import build_gcs, parse_model

    model, spec = parse_model("dim 4; algebra (0,0,0,12); structure symplectic omega = e12 + e34")
    g = build_gcs(model, spec, require_integrable=False)
    with pytest.raises(StructureError):
        gh_dims(g)
