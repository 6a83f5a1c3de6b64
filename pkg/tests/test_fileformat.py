import pytest

from qpbw.fileformat import (
    InvalidPresentation,
    PresentationSyntaxError,
    data_path,
    parse_presentation_file,
    parse_presentation_text,
    write_presentation_file,
)
from qpbw.presentations import AlgebraElement, Presentation, format_presentation, normal_form
from qpbw.qscalar import LaurentScalar

SHIPPED = [
    "quantum_plane.alg",
    "uqsl3.alg",
    "qsym_n3_t2.alg",
    "truncated_line.alg",
    "quantum_heisenberg.alg",
    "not_central.alg",
]


def test_quantum_plane_file():
    p = parse_presentation_file(data_path("quantum_plane.alg"))
    assert (p.n, p.t) == (2, 0)
    assert p.qs(1, 2) == LaurentScalar.param(1, 2, -1)
    # yx = q xy
    assert normal_form([2, 1], p) == AlgebraElement({(1, 1): LaurentScalar.param(1, 2)})


def test_uqsl3_file():
    p = parse_presentation_file(data_path("uqsl3.alg"))
    assert p.p_table == {(1, 3): AlgebraElement.generator(2, 3)}
    assert p.order == "lex"


@pytest.mark.parametrize("name", SHIPPED)
def test_round_trip(name, tmp_path):
    p = parse_presentation_file(data_path(name))
    assert parse_presentation_text(format_presentation(p)) == p
    out = tmp_path / "copy.alg"
    write_presentation_file(p, out)
    assert parse_presentation_file(out) == p


def test_defaults_and_list_forms():
    p = parse_presentation_text("n = 3\nt = 2\nN = 2, 3   # bare list\n")
    assert p == Presentation(3, t=2, N=(2, 3))
    assert p.omega == (1, 1, 1) and p.order == "wgrlex"


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("n = 2\nq.2.1 = q1_2\n", 2, "parameters require i<j"),
        ("n = 2\ncolour = red\n", 2, "unknown key"),
        ("n = 2\nn = 3\n", 2, "duplicate key"),
        ("n = 2\nq.1.2 = q1_2 +\n", 2, "q.1.2"),
        ("n = 2\np.1.2 = x3\n", 2, "out of range"),
        ("n = two\n", 1, "integer"),
        ("n = 2\njunk\n", 2, "key = value"),
    ],
)
def test_syntax_errors(text, line, fragment):
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation_text(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_missing_n():
    with pytest.raises(PresentationSyntaxError, match="missing"):
        parse_presentation_text("t = 0\n")


def test_validation_is_forwarded(tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text("n = 1\nt = 1\nN = [1]\n")
    with pytest.raises(InvalidPresentation, match="N must exceed 1"):
        parse_presentation_file(f)
    assert parse_presentation_file(f, validate=False).N == (1,)
