import pytest

from gcx import corpus_path
from gcx.errors import ParseError
from gcx.exterior import Form
from gcx.model_parser import LieModel, format_model, parse_model, parse_model_file, validate
from conftest import CORPUS


def test_complex_torus_example():
    model, spec = parse_model("dim 2; algebra (0,0); structure complex J = [[0,-1],[1,0]]")
    assert model.n2 == 2 and model.is_abelian()
    assert spec.kind == "complex_endomorphism"
    assert spec.name == "J"


def test_salamon_differential():
    model, _ = parse_model("dim 4; algebra (0,0,0,12); structure symplectic omega = e14 + e23")
    assert model.d(Form.monomial(4, [4])) == Form.monomial(4, [1, 2])
    assert not model.d(Form.monomial(4, [1]))


def test_negative_and_fractional_terms():
    model, _ = parse_model("dim 4; algebra (0,0,-12,1/2*13); structure symplectic omega = e14+e23")
    assert model.d(Form.monomial(4, [3])) == Form.monomial(4, [1, 2]).scale(-1)
    assert model.d(Form.monomial(4, [4])) == Form.monomial(4, [1, 3]).scale("1/2")


def test_comments_and_newlines():
    text = "# a comment\ndim 2\nalgebra (0,0)  # trailing\nstructure spinor rho = 1 + i*e12\n"
    _, spec = parse_model(text)
    assert spec.kind == "pure_spinor"
    assert str(spec.payload) == "1 + i*e12"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("dim 3; algebra (0,0,0); structure complex J = [[0]]", "line 1, column 5"),
        ("dim 2; algebra (0,0,0); structure complex J = [[0,-1],[1,0]]", "line 1"),
        ("dim 2; algebra (0,13); structure complex J = [[0,-1],[1,0]]", "out of range"),
        ("dim 2; structure complex J = [[0,-1],[1,0]]", "missing 'algebra'"),
        ("dim 2; algebra (0,0)", "missing 'structure'"),
        ("dim 2; dim 2; algebra (0,0); structure complex J = [[0,-1],[1,0]]", "duplicate"),
        ("dim 4; algebra (0,0,0,0); structure complex J = [[0,-1],[1,0]]", "line 1"),
        ("dim 2; algebra (0,0); structure symplectic omega = e1", "2-form"),
        ("dim 2; algebra (0,0); structure spinor rho = 0", "line 1"),
        ("dim 2; algebra (0,0); galaxy far", "unknown statement"),
        ("dim 10; algebra (0,0,0,0,0,0,0,0,0,0); structure symplectic omega = e12", "maximum"),
    ],
)
def test_parse_errors_carry_positions(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_model(text)
    assert fragment in str(info.value)


def test_odd_dimension_message():
    with pytest.raises(ParseError) as info:
        parse_model("dim 3")
    assert "line 1, column 5: dim must be a positive even number, got 3" == str(info.value)


def test_error_on_second_line_reports_that_line():
    with pytest.raises(ParseError) as info:
        parse_model("dim 2\nalgebra (0,0,)\nstructure complex J = [[0,-1],[1,0]]")
    assert str(info.value).startswith("line 2, ")


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_round_trip_and_jacobi(name):
    model, spec = parse_model_file(str(corpus_path(name)))
    assert validate(model)
    again = parse_model(format_model(model, spec))
    assert again == (model, spec)


def test_validate_reports_failing_generator():
    # d e4 = e3^e4 with d e3 = e1^e2 gives d^2 e4 = e1^e2^e4
    v = validate(LieModel.from_salamon("(0,0,12,34)"))
    assert not v
    assert "e4" in v.detail
