import random

import pytest
from hypothesis import given, settings, strategies as st

from rrcodes import codes, oracle
from rrcodes.codes import CodeSpec, ZSeries
from rrcodes.errors import MuNotBelowIm, NotCube, RangeViolation, UnsupportedCase
from rrcodes.gf import field_new
from rrcodes.quotient import QElem, make_context, q_pi_pow, q_u
from rrcodes.ring_r import RElem


def z1(F):
    return ZSeries.of(F, [[0, 0, 1]])


def test_validate_examples(nc_v):
    F = nc_v.field
    with pytest.raises(RangeViolation):
        codes.validate_spec(CodeSpec(nc_v, "B", 14))
    with pytest.raises(MuNotBelowIm):
        codes.validate_spec(CodeSpec(nc_v, "D", 5, 1, 5))
    assert codes.validate_spec(CodeSpec(nc_v, "C", 5, 1, None, z1(F))).kind == "C"


def test_torsion_examples(nc_v, nc_full):
    F = nc_v.field
    assert codes.smallest_torsion_exponent(CodeSpec(nc_v, "C", 5)) == 5
    assert codes.smallest_torsion_exponent(CodeSpec(nc_v, "C", 10, 1, None, z1(F))) == 5
    assert codes.smallest_torsion_exponent(CodeSpec(nc_full, "C", 8, 1, None, z1(F))) == 7


def test_torsion_degenerate_boundary(nc_full):
    # the leading digit cancels the twist; the true exponent is ell, not p^s
    F = nc_full.field
    spec = CodeSpec(nc_full, "C", 8, 1, None, ZSeries.of(F, [[0, 0, 5]]))
    assert codes.smallest_torsion_exponent(spec) == 8
    assert codes.closed_form_torsion_exponent(spec) == 7
    d = codes.describe(spec)
    assert d.dim_fp == oracle.span_closure(codes.generators(d.spec), nc_full).dim == 36


def test_describe_examples(nc_v, nc_full):
    F = nc_v.field
    assert codes.describe(CodeSpec(nc_v, "B", 3)).dim_fp == 33
    assert codes.describe(CodeSpec(nc_v, "C", 10, 1, None, z1(F))).dim_fp == 39
    assert codes.describe(CodeSpec(nc_full, "D", 5, 0, 2)).dim_fp == 63


def test_generator_examples(nc_v):
    F = nc_v.field
    assert codes.generators(CodeSpec(nc_v, "B", 0)) == [q_u(nc_v)]
    g = codes.generators(CodeSpec(nc_v, "C", 1, 0, None, z1(F)))
    assert g == [q_pi_pow(nc_v, 1) + q_u(nc_v)]
    g = codes.generators(CodeSpec(nc_v, "D", 2, 0, 1))
    assert g == [q_pi_pow(nc_v, 2), q_u(nc_v) * q_pi_pow(nc_v, 1)]


def test_dual_examples(nc_v, nc_full):
    D = nc_v.dual()
    d = codes.dual_spec(CodeSpec(nc_v, "B", 3))
    want = oracle.span_closure([q_pi_pow(D, 11), q_u(D)], D)
    assert oracle.equal(oracle.span_closure(d.generators, D), want)
    assert d.source == "closed-form"
    flagged = codes.dual_spec(CodeSpec(nc_v, "C", 2))
    assert flagged.branch in codes.FLAGGED_BRANCHES
    assert flagged.source == "derived"
    assert [g["type"] for g in flagged.diagnostics] == ["FormulaDiscrepancy"]
    Dfull = nc_full.dual()
    d = codes.dual_spec(CodeSpec(nc_full, "C", 10))
    assert d.source == "closed-form"
    assert oracle.equal(oracle.span_closure(d.generators, Dfull), codes._oracle_dual(CodeSpec(nc_full, "C", 10)))


def test_unsupported_case(nc_uv):
    with pytest.raises(UnsupportedCase):
        codes.describe(CodeSpec(nc_uv, "B", 1))


def test_crt_examples(F7):
    cube = make_context(F7, 1, RElem.of(F7, 1))
    comps = codes.crt_decompose(cube)
    assert [c.unit for c in comps] == [RElem.of(F7, k) for k in (1, 2, 4)]
    assert [c.length for c in comps] == [7, 7, 7]
    F2 = field_new(2)
    comps = codes.crt_decompose(make_context(F2, 1, RElem.of(F2, 1)))
    assert [c.modulus.deg for c in comps] == [2, 4]
    with pytest.raises(NotCube):
        codes.crt_decompose(make_context(F7, 1, RElem.of(F7, 2)))


def test_shift_examples(F7):
    w = [RElem.of(F7, c) for c in (1, 0, 0, 0, 0, 0)]
    assert codes.shift(w, RElem.of(F7, 1)) == [RElem.of(F7, c) for c in (0, 1, 0, 0, 0, 0)]
    w = [RElem.of(F7, c) for c in (0, 0, 0, 0, 0, 1)]
    assert codes.shift(w, RElem.of(F7, 2)) == [RElem.of(F7, c) for c in (2, 0, 0, 0, 0, 0)]


def test_shift_power_is_scaling(nc_v):
    rng = random.Random(5)
    el = QElem.from_vector(nc_v, [rng.randrange(7) for _ in range(nc_v.dim)])
    w = el.word
    for _ in range(nc_v.n):
        w = codes.shift(w, nc_v.alpha, nc_v.n)
    assert QElem.from_word(nc_v, w) == el * nc_v.alpha


def test_enumerate_order(nc_v):
    assert [s.kind for s in codes.enumerate_specs(nc_v, 0, 1)] == ["A0"]
    specs = list(codes.enumerate_specs(nc_v, 0, 100))
    kinds = [s.kind for s in specs]
    assert kinds[:16] == ["A0", "A1"] + ["B"] * 14
    assert kinds == sorted(kinds, key="A0 A1 B C D".split().index)
    assert len({s.key() for s in specs}) == len(specs)


def test_enumerate_small_exhaustive(nc_full_even):
    # with z bounded the enumeration and the oracle agree on distinct ideals
    specs = list(codes.enumerate_specs(nc_full_even, 1, 60))
    spans = {oracle.span_closure(codes.generators(s), nc_full_even).rows.tobytes() for s in specs}
    assert len(spans) == len(specs)


def _ctx(name):
    F7, F4 = field_new(7), field_new(2, 2)
    return {
        "nc_v": make_context(F7, 1, RElem.of(F7, 2, 0, 3, 5)),
        "nc_full": make_context(F7, 1, RElem.of(F7, 2, 1, 3, 5)),
        "nc_full_even": make_context(F4, 1, RElem(F4.gen, F4.one, F4.one, F4.zero)),
        "nc_u": make_context(F7, 1, RElem.of(F7, 2, 1, 0, 5)),
    }[name]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["nc_v", "nc_full", "nc_full_even", "nc_u"]), st.sampled_from("BCD"),
       st.integers(0, 10**9))
def test_count_and_dual_match_oracle(name, kind, seed):
    ctx = _ctx(name)
    spec = codes.random_spec(ctx, random.Random(seed), kind)
    d = codes.describe(spec)
    S = oracle.span_closure(codes.generators(d.spec), ctx)
    assert S.dim == d.dim_fp
    assert d.eta == ctx.p ** d.dim_fp
    E = oracle.inner_dual(S, ctx.dual())
    assert oracle.equal(oracle.span_closure(d.dual.generators, ctx.dual()), E)
    for diag in d.dual.diagnostics:
        assert diag["type"] == "NoClosedForm" or diag["branch"] in codes.FLAGGED_BRANCHES


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["nc_v", "nc_full", "nc_full_even", "nc_u"]), st.integers(0, 10**9))
def test_classify_principal_roundtrip(name, seed):
    ctx = _ctx(name)
    rng = random.Random(seed)
    el = QElem.from_vector(ctx, [rng.randrange(ctx.p) for _ in range(ctx.dim)])
    el = el * q_pi_pow(ctx, rng.randrange(2 * ctx.ps)) if rng.randrange(2) else el * q_u(ctx)
    spec = codes.classify_principal(el)
    assert oracle.equal(oracle.span_closure([el], ctx), oracle.span_closure(codes.generators(spec), ctx))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["nc_v", "nc_full"]), st.sampled_from("CD"), st.integers(0, 10**9))
def test_spec_json_roundtrip(name, kind, seed):
    ctx = _ctx(name)
    spec = codes.random_spec(ctx, random.Random(seed), kind)
    assert CodeSpec.from_json(ctx, spec.to_json()).key() == spec.key()
    assert codes.validate_spec(spec).key() == spec.key()
