import pytest

from gcx import build_gcs, parse_model
from gcx.errors import StructureError
from gcx.exterior import Form, clifford_act, pairing
from gcx.gcs_engine import build_J, conjugation_check
from gcx.linalg import I, Matrix, Subspace
from gcx.model_parser import LieModel, StructureSpec
from conftest import CORPUS, gcs_of, load


def proportional(a, b):
    return Subspace(1 << a.n2, [a.to_vector()]) == Subspace(1 << b.n2, [b.to_vector()])


@pytest.mark.parametrize("name", CORPUS)
def test_structure_matrix_is_orthogonal_complex_structure(name):
    g = gcs_of(name)
    J = g.J_matrix
    assert J @ J == Matrix.identity(2 * g.n2).scale(-1)
    assert J.conj() == J


@pytest.mark.parametrize("name", CORPUS)
def test_L_is_maximal_isotropic_and_kills_the_generator(name):
    g = gcs_of(name)
    assert len(g.L_basis) == g.n2
    for x in g.L_basis:
        for y in g.L_basis:
            assert pairing(x, y) == 0
        assert not clifford_act(x, g.Un_generator)


@pytest.mark.parametrize("name", CORPUS)
def test_Uk_dimensions_are_binomial(name):
    from math import comb

    g = gcs_of(name)
    assert g.uk_dims == {k: comb(2 * g.n, g.n - k) for k in g.ks}


@pytest.mark.parametrize("name", CORPUS)
def test_L_raises_and_Lbar_lowers_the_grading(name):
    g = gcs_of(name)
    for k in g.ks:
        for f in g.uk_forms[k]:
            for x in g.L_basis:
                coords = g.u_coordinates(clifford_act(x, f))
                assert all(not any(c) for m, c in coords.items() if m != k + 1)
                coords = g.u_coordinates(clifford_act(x.conjugate(), f))
                assert all(not any(c) for m, c in coords.items() if m != k - 1)


@pytest.mark.parametrize("name", CORPUS)
def test_conjugation_swaps_k_and_minus_k(name):
    assert conjugation_check(gcs_of(name))


def test_complex_torus_generator():
    g = gcs_of("torus2")
    assert proportional(g.Un_generator, Form.monomial(2, [1]) + Form.monomial(2, [2], I))


def test_symplectic_generator_is_exp_i_omega():
    g = gcs_of("kt_symplectic")
    omega = Form.monomial(4, [1, 4]) + Form.monomial(4, [2, 3])
    expected = Form.one(4) + omega.scale(I) + omega.wedge(omega).scale("-1/2")
    assert proportional(g.Un_generator, expected)
    assert str(g.Un_generator) == "1 + i*e14 + i*e23 - e1234"


def test_spinor_and_symplectic_input_agree():
    a, b = gcs_of("kt_symplectic"), gcs_of("kt_spinor")
    assert a.J_matrix == b.J_matrix
    assert a.uk_dims == b.uk_dims


def test_kt_complex_generator_is_theta1_theta2():
    g = gcs_of("kt_complex")
    t1 = Form.monomial(4, [1]) + Form.monomial(4, [2], I)
    t2 = Form.monomial(4, [3]) + Form.monomial(4, [4], I)
    assert proportional(g.Un_generator, t1.wedge(t2))


@pytest.mark.parametrize("name", CORPUS)
def test_ddJ_identities(name):
    g = gcs_of(name)
    D = g.complex.del_.to_matrix(g.ks)
    Db = g.complex.delbar.to_matrix(g.ks)
    d = D + Db
    dJ = (D - Db).scale(-I)
    assert d @ dJ + dJ @ d == Matrix.zeros(d.nrows, d.ncols)
    assert dJ @ d == (D @ Db).scale(-2 * I)
    assert d @ dJ == (D @ Db).scale(2 * I)
    # d in U-coordinates agrees with d on forms
    assert g.P @ d @ g.P_inv == g.model.d_matrix


def test_non_closed_omega_is_not_integrable():
    model, spec = parse_model("dim 4; algebra (0,0,0,12); structure symplectic omega = e12 + e34")
    with pytest.raises(StructureError, match="not integrable"):
        build_gcs(model, spec)
    g = build_gcs(model, spec, require_integrable=False)
    assert not g.integrability
    assert g.integrability.failures


def test_degenerate_omega_rejected():
    model, spec = parse_model("dim 4; algebra (0,0,0,0); structure symplectic omega = e12")
    with pytest.raises(StructureError, match="degenerate"):
        build_gcs(model, spec)


def test_non_orthogonal_matrix_rejected():
    J = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    spec = StructureSpec("raw_matrix", Matrix(J), "JJ")
    with pytest.raises(StructureError, match="orthogonal"):
        build_J(spec, 2)


def test_matrix_not_squaring_to_minus_one_rejected():
    spec = StructureSpec("raw_matrix", Matrix.identity(4), "JJ")
    with pytest.raises(StructureError, match="-1"):
        build_J(spec, 2)


def test_raw_matrix_equivalent_to_complex():
    J = Matrix([[0, -1], [1, 0]])
    z = Matrix.zeros(2, 2)
    raw = (-J).hstack(z).vstack(z.hstack(J.T))
    g = build_gcs(LieModel.abelian(2), StructureSpec("raw_matrix", raw, "JJ"))
    assert g.J_matrix == gcs_of("torus2").J_matrix
