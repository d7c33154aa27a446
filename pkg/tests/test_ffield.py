import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupword.errors import BudgetExceeded
from groupword.ffield import make_field

FIELDS = st.sampled_from([(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)])


def test_f4_construction():
    F = make_field(2, 2)
    # u^2 + u + 1 is the unique irreducible quadratic over F_2
    assert F.modulus == (1, 1, 1)
    xi = F.xi
    assert F.pow(xi, 3) == F.one
    assert F.pow(xi, 1) != F.one and F.pow(xi, 2) != F.one


def test_f3_primitive():
    F = make_field(3, 1)
    assert F.poly_code(F.xi) == 2


def test_f27_order():
    F = make_field(3, 3)
    assert F.q - 1 == 26


def test_char2_addition():
    F = make_field(2, 2)
    assert F.add(F.xi, F.xi) == F.zero


def test_f3_inverse():
    F = make_field(3, 1)
    two = F.from_int(2)
    assert F.inv(two) == two


def test_f9_xi4_is_minus_one():
    F = make_field(3, 2)
    assert F.pow(F.xi, 4) == F.neg(F.one)


def test_frobenius_examples():
    F4 = make_field(2, 2)
    assert F4.frobenius(F4.xi, 1) == F4.add(F4.xi, F4.one)
    F27 = make_field(3, 3)
    assert F27.frobenius(F27.xi, 1) == F27.pow(F27.xi, 3)


def test_is_square():
    F3 = make_field(3, 1)
    assert not F3.is_square(F3.neg(F3.one))
    F9 = make_field(3, 2)
    assert F9.is_square(F9.neg(F9.one))
    F27 = make_field(3, 3)
    assert not F27.is_square(F27.neg(F27.one))


def test_squares_form_index_two_subgroup():
    for p, f in [(3, 1), (3, 2), (5, 1), (7, 1)]:
        F = make_field(p, f)
        squares = [a for a in range(1, F.q) if F.is_square(a)]
        assert len(squares) == (F.q - 1) // 2
    F = make_field(2, 2)
    assert all(F.is_square(a) for a in F.elements())


def test_errors():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(BudgetExceeded):
        make_field(2, 21)
    F = make_field(3, 1)
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zero)


@given(FIELDS, st.data())
@settings(max_examples=200, deadline=None)
def test_field_axioms(pf, data):
    F = make_field(*pf)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    c = data.draw(st.integers(0, F.q - 1))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != 0:
        assert F.mul(a, F.inv(a)) == F.one


@given(FIELDS, st.data())
@settings(max_examples=200, deadline=None)
def test_frobenius_is_automorphism(pf, data):
    F = make_field(*pf)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    t = data.draw(st.integers(0, 2 * F.f))
    assert F.frobenius(F.add(a, b), t) == F.add(F.frobenius(a, t), F.frobenius(b, t))
    assert F.frobenius(F.mul(a, b), t) == F.mul(F.frobenius(a, t), F.frobenius(b, t))
    assert F.frobenius(a, F.f) == a
    assert F.frobenius(a, 1) == F.pow(a, F.p) or a == 0


def test_multiplicative_group_generated_by_xi():
    for p, f in [(2, 2), (3, 2), (3, 3), (5, 1)]:
        F = make_field(p, f)
        powers = {F.pow(F.xi, k) for k in range(F.q - 1)}
        assert len(powers) == F.q - 1
        for a in range(1, F.q):
            assert F.pow(a, F.q - 1) == F.one
