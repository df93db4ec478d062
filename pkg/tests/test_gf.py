import pytest
from hypothesis import given, settings, strategies as st

from rrcodes.errors import DivisionByZero, NotACube, NotPrime, PEqualsThree, ReducibleModulus, WrongResidueClass, ZeroInput
from rrcodes.gf import alpha0, cube_root, ff_arith, field_new, find_delta_gamma, is_cube, is_irreducible_quadratic

FIELDS = [(2, 1), (2, 2), (2, 3), (5, 1), (5, 2), (7, 1), (13, 1)]


def test_field_new_defaults():
    assert field_new(7).modulus == (0, 1)
    assert field_new(2, 2).modulus == (1, 1, 1)


@pytest.mark.parametrize("p, m, modulus, err", [
    (3, 1, None, PEqualsThree),
    (9, 1, None, NotPrime),
    (2, 2, [1, 0, 1], ReducibleModulus),
])
def test_field_new_rejects(p, m, modulus, err):
    with pytest.raises(err):
        field_new(p, m, modulus)


def test_arith_examples(F7, F4):
    assert ff_arith(F7(2), None, "inv") == F7(4)
    w = F4.gen
    assert ff_arith(w, w, "mul") == w + 1
    assert ff_arith(F7(3), 3, "pow") == F7(6)
    with pytest.raises(DivisionByZero):
        F7(1) / F7(0)


def test_cubes(F7, F4):
    assert not is_cube(F7(2))
    assert not is_cube(F4.gen)
    assert is_cube(field_new(2).one)
    assert cube_root(F7(6)) == F7(3)
    assert cube_root(F4.one) == F4.one
    with pytest.raises(NotACube):
        cube_root(F7(2))


def test_alpha0_examples(F7, F4):
    assert alpha0(F7(2), 1) == F7(2)
    assert alpha0(F4.gen, 1) == F4.gen ** 2
    F25 = field_new(5, 2)
    a = F25.gen
    assert alpha0(a, 3) == a**5
    with pytest.raises(ZeroInput):
        alpha0(F7(0), 1)


def test_delta_gamma():
    assert find_delta_gamma(field_new(7)) == (field_new(7)(2), field_new(7)(4))
    F13 = field_new(13)
    assert find_delta_gamma(F13) == (F13(3), F13(9))
    F4 = field_new(2, 2)
    assert find_delta_gamma(F4) == (F4.gen, F4.gen ** 2)
    with pytest.raises(WrongResidueClass):
        find_delta_gamma(field_new(5))


def test_irreducible_quadratic():
    assert is_irreducible_quadratic(field_new(2).one)
    assert is_irreducible_quadratic(field_new(5).one)
    assert not is_irreducible_quadratic(field_new(7).one)


@st.composite
def field_and_elems(draw, k=3):
    p, m = draw(st.sampled_from(FIELDS))
    F = field_new(p, m)
    return F, [F.from_int(draw(st.integers(0, F.q - 1))) for _ in range(k)]


@settings(max_examples=150, deadline=None)
@given(field_and_elems())
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == F.zero
    if a:
        assert a * a.inv() == F.one
        assert a ** (F.q - 1) == F.one


@settings(max_examples=100, deadline=None)
@given(field_and_elems(1), st.integers(0, 6))
def test_alpha0_is_frobenius_preimage(fe, s):
    F, (a,) = fe
    if a:
        assert alpha0(a, s) ** (F.p**s) == a


@settings(max_examples=100, deadline=None)
@given(field_and_elems(1))
def test_cube_root_roundtrip(fe):
    F, (a,) = fe
    cubes = {x**3 for x in F.elements()}
    assert is_cube(a) == (a in cubes)
    if is_cube(a):
        assert cube_root(a) ** 3 == a
