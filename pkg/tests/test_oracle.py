import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rrcodes import oracle
from rrcodes.errors import AmbientMismatch
from rrcodes.poly import RPoly
from rrcodes.quotient import QElem, q_mul, q_pi, q_pi_pow, q_u, q_v
from rrcodes.ring_r import RElem


def test_rref_and_nullspace():
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    R, piv = oracle.rref(M, 7)
    assert piv == [0, 1]
    K = oracle.nullspace(M, 7, 3)
    assert K.shape[0] == 1
    assert not (M @ K.T % 7).any()


def test_span_examples(nc_v):
    span = oracle.span_closure
    assert span([QElem.zero(nc_v)], nc_v).dim == 0
    assert span([QElem.const(nc_v, 1)], nc_v).dim == 84
    assert span([q_u(nc_v)], nc_v).dim == 42


def test_membership_examples(nc_v):
    span = oracle.span_closure
    pi, u = q_pi(nc_v), q_u(nc_v)
    assert oracle.member(QElem.zero(nc_v), span([pi], nc_v))
    assert not oracle.member(u, span([pi], nc_v))
    assert not oracle.member(pi, span([u], nc_v))


def test_equal_examples(nc_v, nc_full):
    span = oracle.span_closure
    V = span([q_v(nc_v)], nc_v)
    assert oracle.equal(V, V)
    assert oracle.equal(V, span([q_pi_pow(nc_v, 7)], nc_v))
    assert not oracle.equal(span([q_u(nc_v)], nc_v), V)
    with pytest.raises(AmbientMismatch):
        oracle.equal(V, span([q_v(nc_full)], nc_full))


def test_trivial_duals(nc_v):
    span = oracle.span_closure
    zero, one = span([QElem.zero(nc_v)], nc_v), span([QElem.const(nc_v, 1)], nc_v)
    D = nc_v.dual()
    assert oracle.annihilator(zero).dim == 84
    assert oracle.annihilator(one).dim == 0
    assert oracle.inner_dual(zero, D).dim == 84
    assert oracle.reciprocal_ideal([QElem.const(nc_v, 1)], D).dim == 84


def test_subspace_text(nc_v):
    S = oracle.span_closure([q_u(nc_v)], nc_v)
    lines = S.to_text().strip().splitlines()
    assert len(lines) == 1 + 42


def rand_elem(ctx, rng):
    return QElem.from_vector(ctx, [rng.randrange(ctx.p) for _ in range(ctx.dim)])


def small_ideal(ctx, rng):
    # mixes pi-powers and u so the ideal is usually proper
    g = q_pi_pow(ctx, rng.randrange(1, 2 * ctx.ps)) * rand_elem(ctx, rng)
    return [g, q_u(ctx) * q_pi_pow(ctx, rng.randrange(2 * ctx.ps)) * rand_elem(ctx, rng)]


CTX_NAMES = ["nc_v", "nc_full", "nc_full_even", "nc_uv", "nc_u"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CTX_NAMES), st.integers(0, 10**9))
def test_ideal_properties(request_name, seed):
    ctx = _ctx(request_name)
    rng = random.Random(seed)
    gens = small_ideal(ctx, rng)
    S = oracle.span_closure(gens, ctx)
    assert oracle.is_ideal(S)
    # generators recovered greedily span the same ideal
    assert oracle.equal(oracle.span_closure(oracle.ideal_generators(S), ctx), S)
    A = oracle.annihilator(S)
    for a in A.elements()[:4]:
        for s in S.elements()[:4]:
            assert q_mul(a, s).is_zero()
    D = ctx.dual()
    E = oracle.inner_dual(S, D)
    assert S.dim + E.dim == ctx.dim
    assert oracle.equal(E, oracle.reciprocal_ideal(oracle.ideal_generators(A), D))
    # the dual of the dual is the original code
    assert oracle.equal(oracle.inner_dual(E, ctx), S)


def _ctx(name):
    from rrcodes.gf import field_new
    from rrcodes.quotient import make_context
    F7, F4 = field_new(7), field_new(2, 2)
    return {
        "nc_v": lambda: make_context(F7, 1, RElem.of(F7, 2, 0, 3, 5)),
        "nc_full": lambda: make_context(F7, 1, RElem.of(F7, 2, 1, 3, 5)),
        "nc_full_even": lambda: make_context(F4, 1, RElem(F4.gen, F4.one, F4.one, F4.zero)),
        "nc_uv": lambda: make_context(F7, 1, RElem.of(F7, 2, 0, 0, 5)),
        "nc_u": lambda: make_context(F7, 1, RElem.of(F7, 2, 1, 0, 5)),
    }[name]()


def test_ideal_dim_mod(F7):
    one = RElem.of(F7, 1)
    modulus = RPoly.monomial(one, 7) - RPoly.constant(one)
    assert oracle.ideal_dim_mod([RPoly.constant(one)], modulus) == 4 * 7
    assert oracle.ideal_dim_mod([RPoly.constant(RElem.of(F7, 0, 1))], modulus) == 2 * 7
