from fractions import Fraction

import pytest

from qpbw.qscalar import (
    ONE,
    ZERO,
    LaurentScalar,
    MissingParameter,
    NotAUnit,
    ScalarError,
    ScalarSyntaxError,
    ZeroParameterValue,
    canonical_q,
    parse_scalar,
    parse_terms,
)

q12 = LaurentScalar.param(1, 2)


def test_canonical_q():
    assert canonical_q(1, 2, 3) == q12
    assert canonical_q(2, 1, 3) == LaurentScalar.param(1, 2, -1)
    assert canonical_q(3, 3, 3) == ONE
    with pytest.raises(ScalarError):
        canonical_q(0, 2, 3)
    with pytest.raises(ScalarError):
        canonical_q(1, 4, 3)


def test_canonical_q_inverse_pairs():
    for i in range(1, 4):
        for j in range(1, 4):
            assert canonical_q(i, j, 3) * canonical_q(j, i, 3) == ONE


def test_addition():
    assert q12 + (-1) * q12 == ZERO
    assert not (q12 - q12)
    assert q12 + q12 == 2 * q12
    s = (q12 + 1) + q12.invert()
    assert len(s) == 3
    assert s == parse_scalar("q1_2 + 1 + q1_2^-1")


def test_multiplication():
    assert q12 * q12.invert() == ONE
    # the d-scalar (-1)^1 q21^(1*1) for n=2, a=(1,1), i=1
    assert -canonical_q(2, 1, 2) == -LaurentScalar.param(1, 2, -1)
    assert ZERO * (q12 + 3) == ZERO


def test_invert():
    x = LaurentScalar({((((1, 2), 3),)): -2})
    assert x.invert() == LaurentScalar({((((1, 2), -3),)): Fraction(-1, 2)})
    with pytest.raises(NotAUnit):
        (q12 + 1).invert()
    with pytest.raises(NotAUnit):
        ZERO.invert()
    assert ONE.invert() == ONE


def test_powers():
    assert q12**0 == ONE
    assert q12**-2 == (q12 * q12).invert()
    assert (q12 + 1) ** 2 == q12 * q12 + 2 * q12 + 1
    with pytest.raises(NotAUnit):
        (q12 + 1) ** -1


def test_evaluate():
    assert q12.invert().evaluate({(1, 2): 2}) == Fraction(1, 2)
    assert (q12 + q12.invert()).evaluate({(1, 2): 1}) == 2
    with pytest.raises(MissingParameter):
        q12.evaluate({})
    with pytest.raises(ZeroParameterValue):
        q12.evaluate({(1, 2): 0})


def test_substitute_partial():
    x = parse_scalar("q1_2*q2_3^-1 + q1_3")
    y = x.substitute({(1, 2): 3})
    assert y == parse_scalar("3*q2_3^-1 + q1_3")


def test_printing_is_canonical():
    a = parse_scalar("q2_3 + 2*q1_2^-1 + 1/2")
    b = parse_scalar("1/2 + q2_3 + 2*q1_2^-1")
    assert str(a) == str(b)
    assert parse_scalar(str(a)) == a
    assert str(ZERO) == "0"
    assert str(-q12) == "-q1_2"


def test_parse_grammar():
    assert parse_scalar("-(q1_2 + 1)*q1_2") == -(q12 * q12) - q12
    assert parse_scalar("2/3") == LaurentScalar.constant(Fraction(2, 3))
    assert parse_scalar("q1_2^(-2)") == q12**-2
    with pytest.raises(ScalarSyntaxError, match="i<j"):
        parse_scalar("q2_1")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("q1_2 +")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("x1")


def test_parse_terms():
    terms = parse_terms("2*x1^2*x3 - q1_2*x2")
    assert terms == [(LaurentScalar.constant(2), {1: 2, 3: 1}), (-q12, {2: 1})]


def test_hashable():
    assert len({q12, parse_scalar("q1_2"), q12 + 0}) == 1
