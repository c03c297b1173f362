from hypothesis import given, settings
from hypothesis import strategies as st

from gcx.exterior import (
    Form,
    GenVector,
    basis_masks,
    clifford_act,
    clifford_matrix,
    contract,
    genvector_basis,
    pairing,
    pairing_gram,
    wedge,
)
from gcx.linalg import ONE, GaussianRational, I, Matrix

N2 = 4
coef = st.builds(GaussianRational, st.integers(-2, 2), st.integers(-2, 2))


@st.composite
def forms(draw, n2=N2):
    masks = draw(st.lists(st.sampled_from(basis_masks(n2)), max_size=4))
    return Form(n2, {m: draw(coef) for m in masks})


@st.composite
def genvectors(draw, n2=N2):
    return GenVector([draw(coef) for _ in range(n2)], [draw(coef) for _ in range(n2)])


def test_canonical_order_is_degree_then_lex():
    labels = [str(Form(3, {m: 1})) for m in basis_masks(3)]
    assert labels == ["1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"]


def test_monomial_sign_follows_permutation():
    assert Form.monomial(4, [2, 1]) == Form.monomial(4, [1, 2]).scale(-1)
    assert Form.monomial(4, [3, 1, 2]) == Form.monomial(4, [1, 2, 3])


def test_str_of_mixed_form():
    f = Form.one(4) + Form.monomial(4, [1, 4], I) + Form.monomial(4, [2, 3], I) - Form.monomial(4, [1, 2, 3, 4])
    assert str(f) == "1 + i*e14 + i*e23 - e1234"


@settings(max_examples=50, deadline=None)
@given(forms(), forms(), forms())
def test_wedge_is_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(basis_masks(N2)), st.sampled_from(basis_masks(N2)))
def test_graded_commutativity(m1, m2):
    a, b = Form(N2, {m1: 1}), Form(N2, {m2: 1})
    p, q = bin(m1).count("1"), bin(m2).count("1")
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))


@settings(max_examples=50, deadline=None)
@given(st.lists(coef, min_size=N2, max_size=N2), st.sampled_from(basis_masks(N2)), forms())
def test_contraction_is_an_antiderivation(v, m, b):
    a = Form(N2, {m: 1})
    p = bin(m).count("1")
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b)).scale((-1) ** p)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(genvectors(), forms())
def test_clifford_square_is_the_pairing(x, phi):
    # x.x.phi = <x, x> phi with <X+xi, X+xi> = xi(X)
    assert clifford_act(x, clifford_act(x, phi)) == phi.scale(pairing(x, x))


def test_clifford_anticommutator_matrix():
    basis = genvector_basis(2)
    for x in basis:
        for y in basis:
            X, Y = clifford_matrix(x), clifford_matrix(y)
            expected = Matrix.identity(4).scale(2 * pairing(x, y))
            assert X @ Y + Y @ X == expected


def test_pairing_gram_is_split():
    G = pairing_gram(2)
    half = GaussianRational("1/2")
    assert G.rows[0][2] == half and G.rows[2][0] == half
    assert G.rows[0][0] == 0 and G.rows[0][1] == 0


def test_conjugate_and_degrees():
    f = Form.monomial(2, [1], I) + Form.one(2)
    assert f.conjugate() == Form.monomial(2, [1], -I) + Form.one(2)
    assert f.degrees() == [0, 1]
    assert Form.one(2).to_vector()[0] == ONE
