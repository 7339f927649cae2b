from fractions import Fraction

import pytest

from radsg.scalar import (
    QQ,
    Field,
    FieldTooSmallError,
    IncompatibleFieldError,
    cyclotomic_poly,
    field_add,
    field_inv,
    field_mul,
    format_scalar,
    primitive_root_of_minus_one,
)


def _poly_rem(num, den):
    """Plain remainder of integer coefficient lists (low degree first)."""
    num = [Fraction(c) for c in num]
    while len(num) >= len(den):
        c = num[-1] / den[-1]
        shift = len(num) - len(den)
        for k, d in enumerate(den):
            num[shift + k] -= c * d
        num.pop()
    return num


def test_rational_sum():
    assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == QQ(Fraction(5, 6))
    assert field_add(QQ(1), QQ(Fraction(-1, 2))) == QQ(Fraction(1, 2))


def test_i_squared():
    K = Field(4)
    i = K.zeta()
    assert i * i == K(-1)


def test_zeta6_cubed_matches_remainder():
    K = Field(6)
    z = K.zeta()
    # x^3 mod x^2 - x + 1, by hand
    rem = _poly_rem([0, 0, 0, 1], list(cyclotomic_poly(6)))
    assert [int(c) for c in rem] == [-1, 0]
    assert z ** 3 == K(-1)


def test_inverses():
    assert field_inv(QQ(Fraction(3, 4))) == QQ(Fraction(4, 3))
    K = Field(4)
    i = K.zeta()
    assert field_inv(i) == -i
    a = (K(1) + i) * K(Fraction(1, 2))
    assert field_inv(a) == K(1) - i
    assert field_mul(a, field_inv(a)) == K(1)


def test_zero_inverse_rejected():
    with pytest.raises(ZeroDivisionError):
        field_inv(QQ(0))
    with pytest.raises(ZeroDivisionError):
        field_inv(Field(4).zero())


def test_root_of_minus_one():
    assert primitive_root_of_minus_one(1, QQ) == QQ(-1)
    K6 = Field(6)
    w = primitive_root_of_minus_one(3, K6)
    assert w == K6.zeta()
    assert w ** 3 == K6(-1)
    K8 = Field(8)
    w8 = primitive_root_of_minus_one(4, K8)
    assert w8 == K8.zeta() and w8 ** 4 == K8(-1)
    assert all(w8 ** k != K8(-1) for k in range(1, 4))


def test_root_needs_big_enough_field():
    with pytest.raises(FieldTooSmallError):
        primitive_root_of_minus_one(4, Field(6))


def test_mixed_fields_rejected():
    with pytest.raises(IncompatibleFieldError):
        Field(4).zeta() + Field(6).zeta()


@pytest.mark.parametrize("order", [1, 3, 4, 6, 8, 12])
def test_format_roundtrip(order):
    from radsg.poly import Ring

    K = Field(order)
    R = Ring(["x"], field=K)
    z = K.zeta()
    for a in (K(Fraction(-3, 7)), z + K(2), z * z * K(Fraction(5, 2)) - z):
        text = str(R.const(a) * R.var("x"))
        again = R.parse(text)
        assert str(again) == text
        assert again == R.const(a) * R.var("x")
    assert isinstance(format_scalar(z), str)


def test_field_descriptor_parsing():
    assert Field.from_text("QQ") == QQ
    assert Field.from_text("cyclotomic(6)") == Field(6)
    assert Field(2) == QQ
    with pytest.raises(ValueError):
        Field.from_text("GF(7)")
