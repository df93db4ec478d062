"""Oracle-against-classification check suites used by ``rrcodes verify``.

Each suite returns a list of check records
    {"suite", "check", "status": "pass" | "fail" | "skip", ...details}.
Sampling is driven by a seeded ``random.Random`` so identical budgets give
identical records.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import codes, oracle
from .errors import FormulaDiscrepancy, InvalidInput
from .gf import FieldCtx, field_new
from .poly import RPoly, reduce_binomial
from .quotient import QElem, QuotientCtx, make_context, nilpotency_index, q_pi, q_pi_pow, q_u, q_v
from .ring_r import RElem, r_inv, r_mul, r_one, r_random

SUITES = ("nilpotency", "counts", "duals", "distinctness", "principal-completeness", "crt", "nonchain")


@dataclass(frozen=True)
class Budget:
    seed: int = 0
    samples: int = 20
    max_dim: int = 128


def _record(suite: str, check: str, ok: bool, **detail) -> dict:
    return {"suite": suite, "check": check, "status": "pass" if ok else "fail", **detail}


def _skip(suite: str, reason: str) -> dict:
    return {"suite": suite, "check": "applicability", "status": "skip", "reason": reason}


def _require_desk(ctx: QuotientCtx, budget: Budget) -> None:
    if ctx.dim > budget.max_dim:
        raise InvalidInput(f"ambient dimension {ctx.dim} exceeds the cap {budget.max_dim}")


def _rows_json(S: oracle.SubspaceBasis) -> list[list[int]]:
    return [[int(v) for v in r] for r in S.rows]


# -- nilpotency -----------------------------------------------------------------

def predicted_nilpotency(ctx: QuotientCtx) -> int:
    """p^s times the nilpotency index of alpha - alpha1 (a consequence of pi^{p^s} = alpha - alpha1)."""
    F = ctx.field
    nil = RElem(F.zero, ctx.alpha.a2, ctx.alpha.a3, ctx.alpha.a4)
    k, cur = 1, nil
    while not cur.is_zero():
        cur = r_mul(cur, nil)
        k += 1
    return ctx.ps * k


def suite_nilpotency(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    measured = nilpotency_index(q_pi(ctx))
    want = predicted_nilpotency(ctx)
    return [_record("nilpotency", "index of x^3 - alpha0", measured == want, measured=measured, predicted=want)]


# -- spec samples -----------------------------------------------------------------

def sample_specs(ctx: QuotientCtx, rng: random.Random, samples: int, z_digit_bound: int = 2) -> list[codes.CodeSpec]:
    """A0, A1, every B, ``samples`` C and D draws, and the ell = p^s + t boundary when it exists."""
    N = ctx.ps
    out = [codes.CodeSpec(ctx, "A0"), codes.CodeSpec(ctx, "A1")]
    out += [codes.CodeSpec(ctx, "B", ell) for ell in range(2 * N)]
    out += [codes.random_spec(ctx, rng, "C", z_digit_bound) for _ in range(samples)]
    out += [codes.random_spec(ctx, rng, "D", z_digit_bound) for _ in range(samples)]
    W = ctx.swapped() if ctx.case == "NC_U" else ctx
    c = W.twist
    if c:
        F = ctx.field
        for t in range(1, N):
            lead = (-c) if t % 2 else F.random(rng, nonzero=True)
            z = codes.ZSeries(((F.zero, F.zero, lead),) + tuple(
                (F.random(rng), F.random(rng), F.random(rng)) for _ in range(rng.randrange(z_digit_bound))))
            spec = codes.validate_spec(codes.CodeSpec(ctx, "C", N + t, t, None, z))
            out.append(spec)
            im = codes.smallest_torsion_exponent(spec)
            out.append(codes.validate_spec(codes.CodeSpec(ctx, "D", N + t, t, rng.randrange(im), z)))
    seen, uniq = set(), []
    for s in out:
        if s.key() not in seen:
            seen.add(s.key())
            uniq.append(s)
    return uniq


def _applicable(ctx: QuotientCtx, suite: str) -> dict | None:
    if ctx.case not in codes.SUPPORTED:
        return _skip(suite, f"no classification for case {ctx.case}")
    return None


# -- counts ----------------------------------------------------------------------

def suite_counts(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    skip = _applicable(ctx, "counts")
    if skip:
        return [skip]
    _require_desk(ctx, budget)
    rng = random.Random(budget.seed)
    out = []
    for spec in sample_specs(ctx, rng, budget.samples):
        d = codes.describe(spec, with_dual=False)
        S = oracle.span_closure(codes.generators(d.spec), ctx)
        out.append(_record("counts", "oracle dim = dim_fp", S.dim == d.dim_fp, spec=spec.to_json(),
                           oracle_dim=S.dim, dim_fp=d.dim_fp))
    return out


# -- duals -------------------------------------------------------------------------

def closed_under_shift(S: oracle.SubspaceBasis, alpha: RElem) -> bool:
    """Every basis word stays in S under the alpha-constacyclic shift."""
    ctx = S.ctx
    for el in S.elements():
        w = codes.shift(el.word, alpha, ctx.n)
        if not oracle.member(QElem.from_word(ctx, w), S):
            return False
    return True


def dual_torsion(A: oracle.SubspaceBasis) -> int:
    """Least e with u (x^3 - alpha0)^e in A (2p^s when none)."""
    ctx = A.ctx
    u = q_u(ctx)
    for e in range(2 * ctx.ps + 1):
        if oracle.member(u * q_pi_pow(ctx, e), A):
            return e
    return 2 * ctx.ps


def check_dual(spec: codes.CodeSpec, budget: Budget) -> list[dict]:
    ctx = spec.ctx
    D = ctx.dual()
    js = spec.to_json()
    try:
        desc = codes.describe(spec, verify=True, max_dim=budget.max_dim)
    except FormulaDiscrepancy as exc:
        return [_record("duals", "closed-form dual", False, spec=js, branch=exc.branch,
                        synthesized=_rows_json(exc.synthesized), expected=_rows_json(exc.expected))]
    S = oracle.span_closure(codes.generators(desc.spec), ctx)
    E = oracle.inner_dual(S, D)
    A = oracle.annihilator(S)
    R = oracle.reciprocal_ideal(oracle.ideal_generators(A), D)
    G = oracle.span_closure(desc.dual.generators, D)
    info = {"spec": js, "branch": desc.dual.branch, "source": desc.dual.source}
    recs = [
        _record("duals", "span(dual generators) = inner dual", oracle.equal(G, E), **info),
        _record("duals", "inner dual = reciprocal of annihilator", oracle.equal(E, R), **info),
        _record("duals", "dim C + dim dual = 12 m p^s", S.dim + E.dim == 12 * ctx.field.m * ctx.ps,
                spec=js, dim=S.dim, dual_dim=E.dim),
        _record("duals", "code closed under alpha-shift", closed_under_shift(S, ctx.alpha), spec=js),
        _record("duals", "dual closed under alpha^-1-shift", closed_under_shift(E, r_inv(ctx.alpha)), spec=js),
    ]
    if desc.spec.kind in ("C", "D"):
        W = ctx.swapped() if ctx.case == "NC_U" else ctx
        eps = dual_torsion(A if W == ctx else _swap_space(A, W))
        recs.append(_record("duals", "dual torsion = 2p^s - ell", eps == 2 * ctx.ps - desc.spec.ell,
                            spec=js, measured=eps))
    for diag in desc.dual.diagnostics:
        recs.append({"suite": "duals", "check": "diagnostic", "status": "pass", "spec": js, **diag})
    return recs


def _swap_space(S: oracle.SubspaceBasis, target: QuotientCtx) -> oracle.SubspaceBasis:
    n, m = S.ctx.n, S.ctx.field.m
    rows = S.rows.reshape(-1, n, 4, m)[:, :, [0, 2, 1, 3], :].reshape(-1, S.ctx.dim)
    return oracle.subspace(target, rows)


def suite_duals(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    skip = _applicable(ctx, "duals")
    if skip:
        return [skip]
    _require_desk(ctx, budget)
    rng = random.Random(budget.seed)
    out = []
    for spec in sample_specs(ctx, rng, budget.samples):
        out.extend(check_dual(spec, budget))
    return out


# -- distinctness ---------------------------------------------------------------------

def suite_distinctness(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    skip = _applicable(ctx, "distinctness")
    if skip:
        return [skip]
    _require_desk(ctx, budget)
    rng = random.Random(budget.seed + 1)
    pool = {}
    kinds = ("B", "C", "C", "D", "D")
    attempts = 0
    while len(pool) < max(budget.samples, 2) and attempts < 50 * budget.samples:
        attempts += 1
        s = codes.random_spec(ctx, rng, kinds[attempts % len(kinds)])
        pool.setdefault(s.key(), s)
    specs = list(pool.values())
    spans = [oracle.span_closure(codes.generators(s), ctx).rows.tobytes() for s in specs]
    clashes = []
    pairs = 0
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            pairs += 1
            if spans[i] == spans[j]:
                clashes.append([specs[i].to_json(), specs[j].to_json()])
    return [_record("distinctness", "distinct specs give distinct ideals", not clashes,
                    pairs=pairs, clashes=clashes)]


# -- principal completeness ---------------------------------------------------------------

def _random_elem(ctx: QuotientCtx, rng: random.Random, style: int) -> QElem:
    def rand():
        vec = [rng.randrange(ctx.p) for _ in range(ctx.dim)]
        return QElem.from_vector(ctx, vec)

    if style == 0:
        return rand()
    N2 = 2 * ctx.ps
    a, b = rng.randrange(1, N2 + 1), rng.randrange(N2)
    nil = q_u(ctx) if ctx.case != "NC_U" else q_v(ctx)
    if style == 1:
        return q_pi_pow(ctx, a) * rand() + nil * q_pi_pow(ctx, b) * rand()
    return nil * q_pi_pow(ctx, b) * rand()


def suite_principal(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    skip = _applicable(ctx, "principal-completeness")
    if skip:
        return [skip]
    _require_desk(ctx, budget)
    rng = random.Random(budget.seed + 2)
    out = []
    for k in range(budget.samples):
        f = _random_elem(ctx, rng, k % 3)
        spec = codes.classify_principal(f)
        canonical = codes.validate_spec(spec).key() == spec.key()
        same = oracle.equal(oracle.span_closure([f], ctx), oracle.span_closure(codes.generators(spec), ctx))
        out.append(_record("principal-completeness", "<f> matches a classified spec", same and canonical,
                           spec=spec.to_json()))
    return out


# -- CRT (cube case) ------------------------------------------------------------------------

def _random_cube(F: FieldCtx, rng: random.Random) -> RElem:
    b = r_random(F, rng, unit=True)
    return r_mul(r_mul(b, b), b)


def _binomial(F: FieldCtx, n: int, alpha: RElem) -> RPoly:
    return RPoly.monomial(r_one(F), n) - RPoly.constant(alpha)


def check_crt(ctx: QuotientCtx, rng: random.Random, budget: Budget) -> list[dict]:
    F = ctx.field
    comps = codes.crt_decompose(ctx)
    prod = comps[0].modulus
    for c in comps[1:]:
        prod = prod * c.modulus
    label = {"alpha": ctx.alpha.to_json()}
    recs = [_record("crt", "factor product = x^n - alpha", prod == _binomial(F, ctx.n, ctx.alpha), **label),
            _record("crt", "component count", len(comps) == (3 if F.q % 3 == 1 else 2), **label)]
    if ctx.dim <= budget.max_dim:
        gens, want = [], 0
        for i, c in enumerate(comps):
            d = c.modulus.deg
            arr = np.array([[r_random(F, rng).parts[k].c for k in range(4)] for _ in range(d)], dtype=np.int64)
            g = RPoly(F, arr)
            if rng.randrange(2):
                g = g * RPoly.constant(RElem.of(F, 0, 1))
            want += oracle.ideal_dim_mod([g], c.modulus)
            h = g
            for j, other in enumerate(comps):
                if j != i:
                    h = h * other.modulus
            gens.append(QElem.from_vector(ctx, _reduced(h, ctx)))
        got = oracle.span_closure(gens, ctx).dim
        recs.append(_record("crt", "direct-sum dimension", got == want, oracle_dim=got, component_sum=want, **label))
    return recs


def _reduced(h: RPoly, ctx: QuotientCtx) -> np.ndarray:
    return reduce_binomial(h, ctx.n, ctx.alpha).reshape(-1)


def suite_crt(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    if ctx.case != "CUBE":
        return [_skip("crt", "alpha is not a cube")]
    rng = random.Random(budget.seed + 3)
    out = check_crt(ctx, rng, budget)
    for _ in range(min(budget.samples, 10)):
        out.extend(check_crt(make_context(ctx.field, ctx.s, _random_cube(ctx.field, rng)), rng, budget))
    return out


# -- non-chain witnesses ---------------------------------------------------------------------

def suite_nonchain(ctx: QuotientCtx, budget: Budget) -> list[dict]:
    _require_desk(ctx, budget)
    pi, u, v = q_pi(ctx), q_u(ctx), q_v(ctx)
    span = oracle.span_closure
    if ctx.case in ("NC_V", "NC_FULL", "NC_U"):
        nil, name = (v, "v") if ctx.case == "NC_U" else (u, "u")
        return [
            _record("nonchain", f"{name} not in <x^3 - alpha0>", not oracle.member(nil, span([pi], ctx))),
            _record("nonchain", f"x^3 - alpha0 not in <{name}>", not oracle.member(pi, span([nil], ctx))),
        ]
    if ctx.case == "NC_UV":
        return [
            _record("nonchain", "u not in <x^3 - alpha0, v>", not oracle.member(u, span([pi, v], ctx))),
            _record("nonchain", "x^3 - alpha0 not in <u, v>", not oracle.member(pi, span([u, v], ctx))),
        ]
    return [_skip("nonchain", f"no witness pair for case {ctx.case}")]


RUNNERS: dict[str, Callable[[QuotientCtx, Budget], list[dict]]] = {
    "nilpotency": suite_nilpotency,
    "counts": suite_counts,
    "duals": suite_duals,
    "distinctness": suite_distinctness,
    "principal-completeness": suite_principal,
    "crt": suite_crt,
    "nonchain": suite_nonchain,
}


def run(ctx: QuotientCtx, suite: str, budget: Budget) -> list[dict]:
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in RUNNERS:
            raise InvalidInput(f"unknown suite {name!r}")
    out = []
    for name in names:
        out.extend(RUNNERS[name](ctx, budget))
    return out


def desk_instances() -> list[tuple[str, QuotientCtx]]:
    """Built-in contexts exercised when no context is supplied."""
    F7, F4, F2 = field_new(7), field_new(2, 2), field_new(2)
    return [
        ("F7 s=1 alpha=2+3v+5uv", make_context(F7, 1, RElem.of(F7, 2, 0, 3, 5))),
        ("F7 s=1 alpha=2+u+3v+5uv", make_context(F7, 1, RElem.of(F7, 2, 1, 3, 5))),
        ("F4 s=1 alpha=w+u+v", make_context(F4, 1, RElem(F4.gen, F4.one, F4.one, F4.zero))),
        ("F7 s=1 alpha=2+5uv", make_context(F7, 1, RElem.of(F7, 2, 0, 0, 5))),
        ("F7 s=1 alpha=1", make_context(F7, 1, RElem.of(F7, 1))),
        ("F2 s=1 alpha=1", make_context(F2, 1, RElem.of(F2, 1))),
    ]


def summarize(checks: list[dict]) -> dict:
    return {
        "total": len(checks),
        "passed": sum(c["status"] == "pass" for c in checks),
        "failed": sum(c["status"] == "fail" for c in checks),
        "skipped": sum(c["status"] == "skip" for c in checks),
    }
