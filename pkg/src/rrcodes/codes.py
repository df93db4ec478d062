"""Symbolic descriptions of the ideals of R_alpha in the v-eliminable cases.

Every ideal is one of

    A0  <0>                       A1  <1>
    B   <u pi^ell>
    C   <pi^ell + u pi^t z(pi)>                      (z = 0 allowed)
    D   <pi^ell + u pi^t z(pi), u pi^mu>

with pi = x^3 - alpha0 and z a pi-adic series with quadratic digits.

Working model: v can be written as (alpha3 + alpha4 u)^{-1} (pi^N - alpha2 u)
with N = p^s, so R_alpha is {P + u Q} with P, Q read modulo pi^{2N} and
pi^{2N} = c u pi^N, where c is the ring's twist (nonzero only for odd p with
alpha2, alpha3 both nonzero).  In that model u pi^k has "valuation" k and
the torsion exponent of a C ideal is the valuation of
    V = c pi^N + pi^{2N - ell + t} z
capped at ell (u pi^k is in C exactly when k >= min(ell, val V)).

When alpha2 != 0 = alpha3 the roles of u and v are exchanged; such contexts
are handled by conjugating with the u <-> v swap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import oracle
from .errors import (
    FormulaDiscrepancy,
    InvariantFailure,
    LengthMismatch,
    MuNotBelowIm,
    NotCube,
    RangeViolation,
    UnsupportedCase,
    ZNotInvertible,
)
from .gf import FieldElem, find_delta_gamma
from .poly import FPoly, RPoly, adic_expand, crt_factorization, digits_to_fpoly, reciprocal, reduce_binomial
from .quotient import QElem, QuotientCtx, q_from_fpoly, q_invert, q_pi_pow, q_u
from .ring_r import RElem, r_cube_witness, r_mul

KINDS = ("A0", "A1", "B", "C", "D")
SUPPORTED = ("NC_V", "NC_FULL", "NC_U")

# branches whose closed-form dual is known to be unreliable
FLAGGED_BRANCHES = frozenset({"v:C.z0", "full:C.phi6"})

DEFAULT_VERIFY_DIM = 96


# -- data types ---------------------------------------------------------------

@dataclass(frozen=True)
class ZSeries:
    """Digits z_k = (z0, z1, z2), digit k standing for z0 x^2 + z1 x + z2."""

    digits: tuple[tuple[FieldElem, FieldElem, FieldElem], ...] = ()

    @classmethod
    def of(cls, ctx, rows) -> ZSeries:
        return cls(tuple(tuple(ctx.elem(c) for c in row) for row in rows))

    def __len__(self) -> int:
        return len(self.digits)

    def is_zero(self) -> bool:
        return not self.digits

    def array(self, m: int) -> np.ndarray:
        """(K, 3, m) digit array, constant coefficient first."""
        out = np.zeros((len(self.digits), 3, m), dtype=np.int64)
        for k, (z0, z1, z2) in enumerate(self.digits):
            out[k] = [z2.c, z1.c, z0.c]
        return out

    @classmethod
    def from_array(cls, ctx, arr: np.ndarray) -> ZSeries:
        return cls(tuple((ctx.elem(list(d[2])), ctx.elem(list(d[1])), ctx.elem(list(d[0]))) for d in arr))

    def canonical(self, keep: int) -> ZSeries:
        """First ``keep`` digits with trailing zero digits removed."""
        ds = list(self.digits[: max(keep, 0)])
        while ds and not any(ds[-1]):
            ds.pop()
        return ZSeries(tuple(ds))

    def key(self) -> tuple:
        return tuple(tuple(c.encode() for c in d) for d in self.digits)

    def to_json(self) -> list:
        m = self.digits[0][0].ctx.m if self.digits else 1
        if m == 1:
            return [[c.c[0] for c in d] for d in self.digits]
        return [[c.to_json() for c in d] for d in self.digits]


@dataclass(frozen=True)
class CodeSpec:
    ctx: QuotientCtx
    kind: str
    ell: int = 0
    t: int = 0
    mu: int | None = None
    z: ZSeries = field(default_factory=ZSeries)

    def key(self) -> tuple:
        return (self.kind, self.ell, self.t, self.mu, self.z.key())

    def to_json(self) -> dict:
        return {"kind": self.kind, "ell": self.ell, "t": self.t, "z": self.z.to_json(), "mu": self.mu}

    @classmethod
    def from_json(cls, ctx: QuotientCtx, d: dict) -> CodeSpec:
        try:
            kind = d["kind"]
            ell = int(d.get("ell") or 0)
            t = int(d.get("t") or 0)
            mu = d.get("mu")
            mu = None if mu is None else int(mu)
            z = ZSeries.of(ctx.field, d.get("z") or [])
        except (KeyError, TypeError, ValueError) as exc:
            raise RangeViolation(f"malformed spec: {exc}") from exc
        return cls(ctx, kind, ell, t, mu, z)

    def __repr__(self) -> str:
        return f"CodeSpec({self.kind}, ell={self.ell}, t={self.t}, mu={self.mu}, z={self.z.key()})"


@dataclass
class DualSpec:
    generators: list[QElem]
    ambient: QuotientCtx
    branch: str
    source: str  # "closed-form" or "derived"
    verified: bool | None
    diagnostics: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "branch": self.branch,
            "source": self.source,
            "verified": self.verified,
            "generators": [_trimmed_json(g) for g in self.generators],
        }


@dataclass
class CodeDescriptor:
    spec: CodeSpec
    im: int
    res_exp: int
    tor_exp: int
    dim_fp: int
    eta: int
    dual: DualSpec | None

    def to_json(self) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "im": self.im,
            "res_exp": self.res_exp,
            "tor_exp": self.tor_exp,
            "dim_fp": self.dim_fp,
            "eta": str(self.eta),
        }
        if self.dual is not None:
            out["dual"] = self.dual.to_json()
        return out


def _trimmed_json(g: QElem) -> list:
    coeffs = g.word
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return [c.to_json() for c in coeffs]


# -- working context ----------------------------------------------------------

def _require_supported(ctx: QuotientCtx) -> None:
    if ctx.case not in SUPPORTED:
        raise UnsupportedCase(f"classification is only available for {SUPPORTED}, not {ctx.case}")


def _working(ctx: QuotientCtx) -> QuotientCtx:
    """Context in which u is the surviving nilpotent (swap u and v for NC_U)."""
    _require_supported(ctx)
    return ctx.swapped() if ctx.case == "NC_U" else ctx


def _swap_elem(g: QElem, target: QuotientCtx) -> QElem:
    return QElem(target, g.arr[:, [0, 2, 1, 3]].copy())


def _to_original(g: QElem, ctx: QuotientCtx) -> QElem:
    """Move an element built in the working context (or its dual) back."""
    return _swap_elem(g, ctx) if g.ctx != ctx else g


# -- torsion exponent ----------------------------------------------------------

def _v_digits(W: QuotientCtx, ell: int, t: int, z: ZSeries) -> np.ndarray:
    N = W.ps
    m = W.field.m
    V = np.zeros((2 * N, 3, m), dtype=np.int64)
    c = W.twist
    if c:
        V[N, 0] = c.c
    off = 2 * N - ell + t
    za = z.array(m)
    for k in range(len(za)):
        if off + k < 2 * N:
            V[off + k] = (V[off + k] + za[k]) % W.p
    return V


def _valuation(digits: np.ndarray) -> int:
    nz = [k for k in range(len(digits)) if digits[k].any()]
    return nz[0] if nz else len(digits)


def _torsion(W: QuotientCtx, ell: int, t: int, z: ZSeries) -> int:
    return min(ell, _valuation(_v_digits(W, ell, t, z)))


def smallest_torsion_exponent(spec: CodeSpec) -> int:
    """Least k with u pi^k in the principal ideal <pi^ell + u pi^t z>."""
    if spec.kind not in ("C", "D"):
        raise RangeViolation("torsion exponent is defined for Type C and D specs")
    W = _working(spec.ctx)
    return _torsion(W, spec.ell, spec.t, spec.z)


def closed_form_torsion_exponent(spec: CodeSpec) -> int:
    """The closed-form case split for the torsion exponent.

    Agrees with smallest_torsion_exponent except in odd characteristic with
    alpha2, alpha3 != 0, ell = N + t and z = -c mod pi, where the true value
    exceeds N.
    """
    W = _working(spec.ctx)
    N, ell, t = W.ps, spec.ell, spec.t
    if not W.twist:
        return ell if spec.z.is_zero() else min(ell, 2 * N + t - ell)
    if spec.z.is_zero():
        return min(ell, N)
    if ell == N + t:
        return N
    return min(ell, N, 2 * N + t - ell)


# -- validation -----------------------------------------------------------------

def validate_spec(spec: CodeSpec) -> CodeSpec:
    ctx = spec.ctx
    W = _working(ctx)
    N = W.ps
    kind = spec.kind
    if kind not in KINDS:
        raise RangeViolation(f"unknown kind {kind!r}")
    if kind in ("A0", "A1"):
        return CodeSpec(ctx, kind)
    ell = spec.ell
    if kind == "B":
        if not 0 <= ell <= 2 * N - 1:
            raise RangeViolation(f"Type B needs 0 <= ell <= {2 * N - 1}, got {ell}")
        return CodeSpec(ctx, "B", ell)
    if not 1 <= ell <= 2 * N - 1:
        raise RangeViolation(f"Type {kind} needs 1 <= ell <= {2 * N - 1}, got {ell}")
    t = spec.t
    z = spec.z
    if z.is_zero():
        t = 0
    elif not 0 <= t < ell:
        raise RangeViolation(f"need 0 <= t < ell, got t={t}, ell={ell}")
    if not z.is_zero() and not any(z.digits[0]):
        raise ZNotInvertible("leading digit of z is zero")
    if kind == "C":
        im = _torsion(W, ell, t, z)
        z = z.canonical(im - t)
    else:
        mu = spec.mu
        if mu is None or mu < 0:
            raise RangeViolation("Type D needs an integer mu >= 0")
        z = z.canonical(mu - t)
    if z.is_zero():
        t = 0
    im = _torsion(W, ell, t, z)
    if kind == "C":
        if im != _torsion(W, spec.ell, spec.t, spec.z):
            raise InvariantFailure("canonical form changed the torsion exponent")
        return CodeSpec(ctx, "C", ell, t, None, z)
    if not spec.mu < im:
        raise MuNotBelowIm(f"mu = {spec.mu} must be below the torsion exponent {im}")
    return CodeSpec(ctx, "D", ell, t, spec.mu, z)


# -- generators -------------------------------------------------------------------

def _z_poly(W: QuotientCtx, z: ZSeries) -> FPoly:
    return digits_to_fpoly(z.array(W.field.m), W.alpha0)


def _generators_working(spec: CodeSpec, W: QuotientCtx) -> list[QElem]:
    kind = spec.kind
    if kind == "A0":
        return [QElem.zero(W)]
    if kind == "A1":
        return [QElem.const(W, 1)]
    u = q_u(W)
    if kind == "B":
        return [u * q_pi_pow(W, spec.ell)]
    g = q_pi_pow(W, spec.ell)
    if not spec.z.is_zero():
        g = g + u * q_pi_pow(W, spec.t) * q_from_fpoly(_z_poly(W, spec.z), W)
    if kind == "C":
        return [g]
    return [g, u * q_pi_pow(W, spec.mu)]


def generators(spec: CodeSpec) -> list[QElem]:
    """Reduced generators of the ideal described by a validated spec."""
    W = _working(spec.ctx)
    return [_to_original(g, spec.ctx) for g in _generators_working(spec, W)]


# -- counts ---------------------------------------------------------------------

def _exponents(spec: CodeSpec, im_fn) -> tuple[int, int, int]:
    """(im, res_exp, tor_exp)."""
    N2 = 2 * _working(spec.ctx).ps
    kind = spec.kind
    if kind == "A0":
        return N2, N2, N2
    if kind == "A1":
        return 0, 0, 0
    if kind == "B":
        return spec.ell, N2, spec.ell
    im = im_fn(spec)
    return im, spec.ell, (im if kind == "C" else spec.mu)


def _dim(spec: CodeSpec, res: int, tor: int) -> int:
    W = _working(spec.ctx)
    m, N = W.field.m, W.ps
    return 3 * m * (2 * N - res) + 3 * m * (2 * N - tor)


def closed_form_dim_fp(spec: CodeSpec) -> int:
    """log_p of the closed-form codeword count (uses closed_form_torsion_exponent)."""
    _, res, tor = _exponents(spec, closed_form_torsion_exponent)
    return _dim(spec, res, tor)


def describe(spec: CodeSpec, with_dual: bool = True, verify: bool = True,
             max_dim: int = DEFAULT_VERIFY_DIM) -> CodeDescriptor:
    spec = validate_spec(spec)
    im, res, tor = _exponents(spec, smallest_torsion_exponent)
    dim = _dim(spec, res, tor)
    dual = dual_spec(spec, verify=verify, max_dim=max_dim) if with_dual else None
    return CodeDescriptor(spec, im, res, tor, dim, spec.ctx.p**dim, dual)


# -- duals ----------------------------------------------------------------------

def _rev_digit(D: QuotientCtx, d: np.ndarray) -> QElem:
    """z0 + z1 x + z2 x^2 for a constant-first digit [z2, z1, z0]."""
    return q_from_fpoly(FPoly(D.field, d[::-1].copy()), D)


class _ClosedFormDual:
    """Closed-form dual generators, built in the alpha^{-1} ambient ring."""

    def __init__(self, W: QuotientCtx, spec: CodeSpec):
        self.W = W
        self.D = W.dual()
        if self.D.alpha0 != W.alpha0.inv():
            raise InvariantFailure("dual context has an unexpected alpha0")
        self.a = -W.alpha0
        self.c = W.twist
        self.N = W.ps
        self.spec = spec
        self.u = q_u(self.D)
        self.zd = spec.z.array(W.field.m)

    def lead(self, k: int) -> QElem | None:
        if k < 0:
            return None
        return q_pi_pow(self.D, k) * (self.a**k)

    def ctw(self, k: int) -> QElem | None:
        if k < 0:
            return None
        if not self.c:
            return QElem.zero(self.D)
        coef = RElem(self.D.field.zero, -(self.c * self.a**k), self.D.field.zero, self.D.field.zero)
        return (q_pi_pow(self.D, k) * coef).xshift(3 * self.N)

    def zsum(self, E: int, K: int, xe=None) -> QElem | None:
        if not len(self.zd):
            return QElem.zero(self.D)
        if E < 0:
            return None
        ell, t = self.spec.ell, self.spec.t
        if xe is None:
            xe = lambda k: 3 * ell - 3 * t - 3 * k - 2  # noqa: E731
        total = QElem.zero(self.D)
        for k in range(min(K, len(self.zd))):
            term = _rev_digit(self.D, self.zd[k]) * q_pi_pow(self.D, E + k) * (self.a ** (E + k))
            total = total + term.xshift(xe(k))
        return -(self.u * total)

    def tail(self) -> QElem:
        return self.u * q_pi_pow(self.D, 2 * self.N - self.spec.ell)

    @staticmethod
    def add(*parts) -> QElem | None:
        if any(p is None for p in parts):
            return None
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out


def _closed_form_candidates(spec: CodeSpec, W: QuotientCtx) -> tuple[str, list[list[QElem]]]:
    """Branch name and candidate generator lists (several when the source is ambiguous)."""
    P = _ClosedFormDual(W, spec)
    D, N = P.D, P.N
    kind, ell, t = spec.kind, spec.ell, spec.t
    zero = spec.z.is_zero()
    if kind == "A0":
        return "trivial", [[QElem.const(D, 1)]]
    if kind == "A1":
        return "trivial", [[QElem.zero(D)]]
    odd_full = bool(P.c)
    table = "full" if odd_full else "v"
    if kind == "B":
        return f"{table}:B", [[q_pi_pow(D, 2 * N - ell), P.u]]

    def cand(branch, first, second_tail=False):
        if first is None:
            return branch, []
        return branch, [[first, P.tail()] if second_tail else [first]]

    if kind == "C" and not odd_full:
        if zero:
            # stated only for ell <= N, with exponent 1 independent of ell
            return "v:C.z0", ([[q_pi_pow(D, 1)]] if ell <= N else [])
        if 2 * ell <= 2 * N + t:
            return cand("v:C.chi1", P.add(P.lead(2 * N - ell), P.zsum(2 * N - 2 * ell + t, ell - t)))
        return cand("v:C.chi2", P.add(P.lead(ell - t), P.zsum(0, 2 * N - ell)), True)
    if kind == "D" and not odd_full:
        mu = spec.mu
        if zero:
            return cand("v:D.z0", P.lead(2 * N - mu), True)
        return cand("v:D.z", P.add(P.lead(2 * N - mu), P.zsum(2 * N + t - ell - mu, mu - t)), True)
    if kind == "C":
        if zero:
            if ell <= N:
                return cand("full:C.phi1", P.add(P.lead(2 * N - ell), P.ctw(N - ell)))
            return cand("full:C.phi2", P.add(P.lead(N), P.ctw(0)), True)
        if ell == N + t:
            first = P.add(P.lead(N), P.ctw(0))
            # two exponent variants appear for the trailing monomial
            variants = [lambda k: N - 2 * k - 1, lambda k: 3 * N - 2 * k - 1]
            cands = []
            for xe in variants:
                g = P.add(first, P.zsum(0, N - t, xe))
                if g is not None:
                    cands.append([g, P.tail()])
            return "full:C.phi6", cands
        if ell <= N:
            return cand("full:C.phi3",
                        P.add(P.lead(2 * N - ell), P.ctw(N - ell), P.zsum(2 * N - 2 * ell + t, ell - t)))
        if ell < N + t:
            return cand("full:C.phi4", P.add(P.lead(N), P.ctw(0), P.zsum(N + t - ell, N - t)), True)
        return cand("full:C.phi5", P.add(P.lead(ell - t), P.ctw(ell - N - t), P.zsum(0, 2 * N - ell)), True)
    mu = spec.mu
    if zero:
        branch = "full:D.psi1"
    elif ell < N + t:
        branch = "full:D.psi2"
    elif ell > N + t:
        branch = "full:D.psi3"
    else:
        branch = "full:D.psi4"
    return cand(branch, P.add(P.lead(2 * N - mu), P.ctw(N - mu), P.zsum(2 * N + t - ell - mu, mu - t)), True)


def _annihilator_gens(spec: CodeSpec, W: QuotientCtx) -> list[RPoly] | None:
    """Generators of the annihilator as unreduced polynomials; None means the zero ideal."""
    F = W.field
    N = W.ps
    one = RPoly.constant(RElem.of(F, 1))
    u = RPoly.constant(RElem.of(F, 0, 1))
    pi = RPoly.from_components(F, FPoly.of(F, [-W.alpha0, 0, 0, 1]))
    kind = spec.kind
    if kind == "A0":
        return [one]
    if kind == "A1":
        return None
    ell = spec.ell
    if kind == "B":
        return [pi ** (2 * N - ell), u]
    tau = _torsion(W, ell, spec.t, spec.z) if kind == "C" else spec.mu
    V = _v_digits(W, ell, spec.t, spec.z)
    Y = V[tau : tau + 2 * N - ell]
    first = pi ** (2 * N - tau)
    if Y.any():
        first = first - u * RPoly.from_components(F, digits_to_fpoly(Y, W.alpha0))
    return [first, u * pi ** (2 * N - ell)]


def _derived_dual(spec: CodeSpec, W: QuotientCtx) -> list[QElem]:
    D = W.dual()
    gens = _annihilator_gens(spec, W)
    if gens is None:
        return [QElem.zero(D)]
    return [QElem(D, reduce_binomial(reciprocal(g), D.n, D.alpha)) for g in gens]


def _oracle_dual(spec: CodeSpec) -> oracle.SubspaceBasis:
    ctx = spec.ctx
    return oracle.inner_dual(oracle.span_closure(generators(spec), ctx), ctx.dual())


def dual_spec(spec: CodeSpec, verify: bool = True, max_dim: int = DEFAULT_VERIFY_DIM) -> DualSpec:
    """Dual code generators in the alpha^{-1} ambient ring.

    The closed-form generators are tried first.  At or below ``max_dim`` they
    are checked against the linear-algebra dual; a failure in a known-fragile
    branch falls back to reciprocals of the derived annihilator and is
    reported in ``diagnostics``, while a failure anywhere else raises
    FormulaDiscrepancy.
    """
    ctx = spec.ctx
    W = _working(ctx)
    Dorig = ctx.dual()
    branch, cands = _closed_form_candidates(spec, W)
    cands = [[_to_original(g, Dorig) for g in c] for c in cands]
    derived = [_to_original(g, Dorig) for g in _derived_dual(spec, W)]
    diagnostics: list[dict] = []
    if not verify or ctx.dim > max_dim:
        diagnostics.append({"type": "Unverified", "branch": branch})
        if cands:
            return DualSpec(cands[0], Dorig, branch, "closed-form", None, diagnostics)
        diagnostics.append({"type": "NoClosedForm", "branch": branch})
        return DualSpec(derived, Dorig, branch, "derived", None, diagnostics)

    expected = _oracle_dual(spec)
    for c in cands:
        if oracle.equal(oracle.span_closure(c, Dorig), expected):
            return DualSpec(c, Dorig, branch, "closed-form", True, diagnostics)
    got = oracle.span_closure(derived, Dorig)
    if not oracle.equal(got, expected):
        raise InvariantFailure(f"derived dual disagrees with the oracle for {spec!r}")
    if not cands:
        diagnostics.append({"type": "NoClosedForm", "branch": branch, "flagged": branch in FLAGGED_BRANCHES})
        return DualSpec(derived, Dorig, branch, "derived", True, diagnostics)
    synthesized = oracle.span_closure(cands[0], Dorig)
    if branch not in FLAGGED_BRANCHES:
        raise FormulaDiscrepancy(
            f"closed-form dual for branch {branch} disagrees with the oracle ({spec!r})",
            branch, synthesized, expected,
        )
    diagnostics.append({
        "type": "FormulaDiscrepancy", "branch": branch, "flagged": True,
        "synthesized_dim": synthesized.dim, "expected_dim": expected.dim,
    })
    return DualSpec(derived, Dorig, branch, "derived", True, diagnostics)


# -- principal ideals -----------------------------------------------------------------

def classify_principal(f: QElem) -> CodeSpec:
    """Canonical spec of the ideal generated by a single element."""
    ctx = f.ctx
    W = _working(ctx)
    g = _swap_elem(f, W) if W != ctx else f
    F = W.field
    form = adic_expand(g.rep, W)
    P, Q = form.f_digits, form.u_digits
    ell = _valuation(P)
    if ell == len(P):
        k = _valuation(Q)
        if k == len(Q):
            return CodeSpec(ctx, "A0")
        return validate_spec(CodeSpec(ctx, "B", k))
    if ell == 0:
        return CodeSpec(ctx, "A1")
    E = q_from_fpoly(digits_to_fpoly(P[ell:], W.alpha0), W)
    h = g * q_invert(E)
    Hq = adic_expand(h.rep, W)
    if _valuation(Hq.f_digits) != ell or Hq.f_digits[ell + 1 :].any():
        raise InvariantFailure("normalized generator lost its pure pi-power part")
    G = Hq.u_digits
    t = _valuation(G)
    if t >= ell:
        return validate_spec(CodeSpec(ctx, "C", ell))
    z = ZSeries.from_array(F, G[t:])
    return validate_spec(CodeSpec(ctx, "C", ell, t, None, z))


# -- enumeration ---------------------------------------------------------------------

def _digit_space(F) -> list[tuple[FieldElem, FieldElem, FieldElem]]:
    els = list(F.elements())
    return [tuple(d) for d in itertools.product(els, repeat=3)]


def _z_series(F, max_len: int) -> Iterator[ZSeries]:
    """Nonzero canonical series of at most max_len digits, in lexicographic order."""
    if max_len <= 0:
        return
    digits = _digit_space(F)
    nonzero = [d for d in digits if any(d)]

    def walk(prefix):
        if len(prefix) == max_len:
            return
        for d in digits:
            nxt = prefix + (d,)
            if any(d):
                yield ZSeries(nxt)
            yield from walk(nxt)

    for d in nonzero:
        yield ZSeries((d,))
        yield from walk((d,))


def enumerate_specs(ctx: QuotientCtx, z_digit_bound: int, limit: int | None = None) -> Iterator[CodeSpec]:
    """Validated specs in the order A0, A1, B, C, D; z truncated at z_digit_bound digits."""
    W = _working(ctx)
    N2 = 2 * W.ps
    F = W.field
    count = 0

    def emit(spec):
        nonlocal count
        count += 1
        return spec

    seen: set = set()

    def valid(spec):
        try:
            v = validate_spec(spec)
        except (RangeViolation, MuNotBelowIm, ZNotInvertible):
            return None
        if v.key() != spec.key() or v.key() in seen:
            return None
        seen.add(v.key())
        return v

    def stream():
        yield CodeSpec(ctx, "A0")
        yield CodeSpec(ctx, "A1")
        for ell in range(N2):
            yield CodeSpec(ctx, "B", ell)
        for ell in range(1, N2):
            v = valid(CodeSpec(ctx, "C", ell))
            if v:
                yield v
            for t in range(ell):
                for z in _z_series(F, z_digit_bound):
                    v = valid(CodeSpec(ctx, "C", ell, t, None, z))
                    if v:
                        yield v
        for ell in range(1, N2):
            for t in range(ell):
                for mu in range(ell):
                    if t == 0:
                        v = valid(CodeSpec(ctx, "D", ell, 0, mu))
                        if v:
                            yield v
                    for z in _z_series(F, min(z_digit_bound, mu - t)):
                        v = valid(CodeSpec(ctx, "D", ell, t, mu, z))
                        if v:
                            yield v

    for spec in stream():
        if limit is not None and count >= limit:
            return
        yield emit(spec)


def random_spec(ctx: QuotientCtx, rng, kind: str, z_digit_bound: int = 2, tries: int = 1000) -> CodeSpec:
    """A uniformly drawn parameter tuple of the given kind, redrawn until valid and canonical."""
    W = _working(ctx)
    N2 = 2 * W.ps
    F = W.field
    for _ in range(tries):
        if kind in ("A0", "A1"):
            return CodeSpec(ctx, kind)
        if kind == "B":
            return CodeSpec(ctx, "B", rng.randrange(N2))
        ell = rng.randrange(1, N2)
        t = rng.randrange(ell)
        k = rng.randrange(z_digit_bound + 1)
        ds = []
        for i in range(k):
            d = (F.random(rng), F.random(rng), F.random(rng))
            while i == 0 and not any(d):
                d = (F.random(rng), F.random(rng), F.random(rng))
            ds.append(d)
        z = ZSeries(tuple(ds))
        mu = rng.randrange(ell) if kind == "D" else None
        try:
            return validate_spec(CodeSpec(ctx, kind, ell, t if ds else 0, mu, z))
        except (MuNotBelowIm, RangeViolation):
            continue
    raise RangeViolation(f"no valid Type {kind} spec found in {tries} draws")


# -- cube case and shift ----------------------------------------------------------------

@dataclass(frozen=True)
class CrtComponent:
    modulus: RPoly
    length: int
    unit: RElem | None  # constacyclic unit for binomial factors; None for the quadratic factor

    def to_json(self) -> dict:
        return {"modulus": self.modulus.to_json(), "length": self.length,
                "unit": None if self.unit is None else self.unit.to_json()}


def crt_decompose(ctx: QuotientCtx) -> list[CrtComponent]:
    if ctx.case != "CUBE":
        raise NotCube(f"{ctx.alpha!r} is not a cube")
    F = ctx.field
    factors = crt_factorization(ctx.alpha, ctx.s)
    beta = r_cube_witness(ctx.alpha)
    if F.q % 3 == 1:
        delta, gamma = find_delta_gamma(F)
        units = [beta, beta * delta, beta * gamma]
    else:
        units = [beta, None]
    return [CrtComponent(f, f.deg, u) for f, u in zip(factors, units)]


def shift(word: Sequence[RElem], alpha: RElem, n: int | None = None) -> list[RElem]:
    """(c_0, ..., c_{n-1}) -> (alpha c_{n-1}, c_0, ..., c_{n-2})."""
    word = list(word)
    if n is not None and len(word) != n:
        raise LengthMismatch(f"word has length {len(word)}, expected {n}")
    if not word:
        raise LengthMismatch("empty word")
    return [r_mul(alpha, word[-1])] + word[:-1]


__all__ = [
    "ZSeries", "CodeSpec", "CodeDescriptor", "DualSpec", "CrtComponent", "KINDS", "FLAGGED_BRANCHES",
    "validate_spec", "smallest_torsion_exponent", "closed_form_torsion_exponent", "closed_form_dim_fp",
    "describe", "generators", "dual_spec", "classify_principal", "enumerate_specs", "random_spec",
    "crt_decompose", "shift",
]
