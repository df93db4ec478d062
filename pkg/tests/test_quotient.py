import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rrcodes.errors import NotAUnit
from rrcodes.gf import field_new
from rrcodes.poly import FPoly, RPoly
from rrcodes.quotient import (QElem, make_context, nilpotency_index, power_inverse, q_invert, q_is_unit,
                              q_mul, q_pi, q_pi_pow, q_u, q_v, q_x, reduce)
from rrcodes.ring_r import RElem


def test_reduce_wraps(nc_v):
    F = nc_v.field
    one = RElem.of(F, 1)
    assert reduce(RPoly.monomial(one, 21), nc_v) == QElem.const(nc_v, nc_v.alpha)
    assert reduce(RPoly.monomial(one, 22), nc_v) == q_x(nc_v) * nc_v.alpha


def test_pi_powers(nc_v, nc_full):
    assert q_pi_pow(nc_v, 7) == q_v(nc_v) * RElem.of(nc_v.field, 3) + QElem.const(nc_v, RElem.of(nc_v.field, 0, 0, 0, 5))
    assert q_mul(q_pi_pow(nc_v, 7), q_pi_pow(nc_v, 7)).is_zero()
    F = nc_full.field
    assert q_pi_pow(nc_full, 14) == q_mul(q_u(nc_full), q_pi_pow(nc_full, 7)) * RElem.scalar(F(2) * F(1))


def test_nilpotency_examples(nc_v, nc_full, nc_full_even):
    assert nilpotency_index(q_pi(nc_v)) == 14
    assert nilpotency_index(q_pi(nc_full)) == 21
    assert nilpotency_index(q_pi(nc_full_even)) == 4


def test_units(nc_v):
    F = nc_v.field
    assert q_is_unit(QElem.from_word(nc_v, [RElem.of(F, 1)] * 3 + [RElem.of(F, 0)] * 18))
    assert not q_is_unit(q_pi(nc_v))
    assert not q_is_unit(q_u(nc_v))
    with pytest.raises(NotAUnit):
        q_invert(q_u(nc_v))
    one = QElem.const(nc_v, 1)
    assert q_invert(one) == one
    g = q_x(nc_v) - QElem.const(nc_v, 3)
    assert q_mul(g, q_invert(g)) == one


def test_unit_alpha_required(F7):
    with pytest.raises(NotAUnit):
        make_context(F7, 1, RElem.of(F7, 0, 1))


def test_dual_context(nc_full):
    D = nc_full.dual()
    assert D.alpha * nc_full.alpha == RElem.of(nc_full.field, 1)
    assert D.case == "NC_FULL"
    assert nc_full.swapped().swapped() == nc_full


CTXS = {
    "v7": (7, 1, 1, (2, 0, 3, 5)),
    "full7": (7, 1, 1, (2, 1, 3, 5)),
    "uv7": (7, 1, 1, (2, 0, 0, 5)),
    "u7": (7, 1, 1, (2, 1, 0, 5)),
    "cube7": (7, 1, 1, (1, 0, 0, 0)),
    "full4": (2, 2, 1, None),
}


def ctx_of(name):
    p, m, s, a = CTXS[name]
    F = field_new(p, m)
    alpha = RElem(F.gen, F.one, F.one, F.zero) if a is None else RElem.of(F, *a)
    return make_context(F, s, alpha)


def rand_elem(ctx, rng):
    return QElem.from_vector(ctx, [rng.randrange(ctx.p) for _ in range(ctx.dim)])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(CTXS)), st.integers(0, 10**9))
def test_ring_laws(name, seed):
    ctx = ctx_of(name)
    rng = random.Random(seed)
    a, b, c = (rand_elem(ctx, rng) for _ in range(3))
    assert q_mul(a, b) == q_mul(b, a)
    assert q_mul(q_mul(a, b), c) == q_mul(a, q_mul(b, c))
    assert q_mul(a, b + c) == q_mul(a, b) + q_mul(a, c)
    # x^n = alpha
    assert q_x(ctx, ctx.n) == QElem.const(ctx, ctx.alpha)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CTXS)), st.integers(0, 10**9))
def test_inverse_or_nonunit(name, seed):
    ctx = ctx_of(name)
    a = rand_elem(ctx, random.Random(seed))
    one = QElem.const(ctx, 1)
    if q_is_unit(a):
        assert q_mul(a, q_invert(a)) == one
    else:
        with pytest.raises(NotAUnit):
            q_invert(a)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["v7", "full7", "uv7", "u7", "full4"]), st.integers(0, 10**9))
def test_power_inverse_agrees(name, seed):
    ctx = ctx_of(name)
    rng = random.Random(seed)
    F = ctx.field
    deg = rng.randrange(3)
    coeffs = [F.from_int(rng.randrange(F.q)) for _ in range(deg)] + [F.from_int(rng.randrange(1, F.q))]
    g = FPoly.of(F, coeffs)
    from rrcodes.quotient import q_from_fpoly
    assert power_inverse(g, ctx) == q_invert(q_from_fpoly(g, ctx))


def test_xshift_matches_multiplication(nc_full):
    a = rand_elem(nc_full, random.Random(3))
    for k in (1, 5, 21, 30):
        assert a.xshift(k) == q_mul(a, q_x(nc_full, k))
    assert np.array_equal(QElem.from_vector(nc_full, a.vector()).vector(), a.vector())
