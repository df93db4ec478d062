"""The ambient ring R_alpha = R[x] / (x^{3p^s} - alpha).

A QElem stores its n = 3p^s coefficients as an (n, 4, m) array; flattening
that array gives exactly the oracle's coordinate order (x-degree major, then
1/u/v/uv, then field coordinate).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _arith as ar
from .errors import ContextMismatch, InvariantFailure, NotAUnit, UnsupportedCase
from .gf import FieldCtx, FieldElem, alpha0 as field_alpha0
from .poly import FPoly, RPoly, crt_factorization, f_gcd, f_xgcd, pi_poly, reduce_binomial
from .ring_r import RElem, r_inv, r_is_cube, r_mul, r_one, swap_uv

CASES = ("CUBE", "NC_V", "NC_FULL", "NC_UV", "NC_U", "NC_OTHER")


def _case_of(alpha: RElem) -> str:
    if r_is_cube(alpha):
        return "CUBE"
    _, a2, a3, a4 = alpha.parts
    if not a2 and a3 and a4:
        return "NC_V"
    if a2 and a3:
        return "NC_FULL"
    if not a2 and not a3 and a4:
        return "NC_UV"
    if a2 and not a3 and a4:
        # mirror image of NC_V under u <-> v
        return "NC_U"
    return "NC_OTHER"


@dataclass(frozen=True)
class QuotientCtx:
    field: FieldCtx
    s: int
    alpha: RElem
    alpha0: FieldElem
    case: str

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def ps(self) -> int:
        return self.field.p**self.s

    @property
    def n(self) -> int:
        return 3 * self.ps

    @property
    def dim(self) -> int:
        """F_p-dimension of R_alpha."""
        return 4 * self.field.m * self.n

    @property
    def twist(self) -> FieldElem:
        """2 alpha_2 in odd characteristic with alpha_2, alpha_3 both nonzero; else 0.

        (x^3 - a0)^{2p^s} equals twist * u * (x^3 - a0)^{p^s} in the v-eliminable cases.
        """
        if self.case == "NC_FULL" and self.p != 2:
            return self.alpha.a2 * 2
        return self.field.zero

    def dual(self) -> QuotientCtx:
        return make_context(self.field, self.s, r_inv(self.alpha))

    def swapped(self) -> QuotientCtx:
        return make_context(self.field, self.s, swap_uv(self.alpha))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "s": self.s, "alpha": self.alpha.to_json()}

    def __repr__(self) -> str:
        return f"QuotientCtx(p={self.p}, m={self.field.m}, s={self.s}, alpha={self.alpha!r}, case={self.case})"


@lru_cache(maxsize=None)
def make_context(field: FieldCtx, s: int, alpha: RElem) -> QuotientCtx:
    if s < 0:
        raise ValueError("s must be nonnegative")
    if not alpha.is_unit():
        raise NotAUnit(f"alpha = {alpha!r} is not a unit")
    a0 = field_alpha0(alpha.a1, s)
    return QuotientCtx(field, s, alpha, a0, _case_of(alpha))


class QElem:
    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: QuotientCtx, arr: np.ndarray):
        self.ctx = ctx
        self.arr = arr

    # -- construction
    @classmethod
    def zero(cls, ctx: QuotientCtx) -> QElem:
        return cls(ctx, np.zeros((ctx.n, 4, ctx.field.m), dtype=np.int64))

    @classmethod
    def const(cls, ctx: QuotientCtx, r) -> QElem:
        if not isinstance(r, RElem):
            r = RElem.scalar(ctx.field.elem(r))
        out = cls.zero(ctx)
        out.arr[0] = [c.c for c in r.parts]
        return out

    @classmethod
    def from_word(cls, ctx: QuotientCtx, word: Sequence[RElem]) -> QElem:
        return reduce(RPoly.of(ctx.field, list(word)), ctx)

    @classmethod
    def from_vector(cls, ctx: QuotientCtx, vec) -> QElem:
        arr = np.asarray(vec, dtype=np.int64).reshape(ctx.n, 4, ctx.field.m) % ctx.p
        return cls(ctx, arr)

    # -- views
    @property
    def rep(self) -> RPoly:
        return RPoly(self.ctx.field, self.arr)

    @property
    def word(self) -> list[RElem]:
        rp = self.rep
        return [rp.coeff(i) for i in range(self.ctx.n)]

    def vector(self) -> np.ndarray:
        return self.arr.reshape(-1)

    def component(self, k: int) -> FPoly:
        return FPoly(self.ctx.field, self.arr[:, k])

    def is_zero(self) -> bool:
        return not self.arr.any()

    def __eq__(self, other) -> bool:
        return isinstance(other, QElem) and self.ctx == other.ctx and np.array_equal(self.arr, other.arr)

    def __hash__(self) -> int:
        return hash(self.arr.tobytes())

    def __repr__(self) -> str:
        return f"QElem({self.rep!r})"

    # -- arithmetic
    def _check(self, o: QElem) -> None:
        if o.ctx is not self.ctx and o.ctx != self.ctx:
            raise ContextMismatch("elements of different ambient rings")

    def __add__(self, o: QElem) -> QElem:
        self._check(o)
        return QElem(self.ctx, (self.arr + o.arr) % self.ctx.p)

    def __sub__(self, o: QElem) -> QElem:
        self._check(o)
        return QElem(self.ctx, (self.arr - o.arr) % self.ctx.p)

    def __neg__(self) -> QElem:
        return QElem(self.ctx, (-self.arr) % self.ctx.p)

    def __mul__(self, o) -> QElem:
        if isinstance(o, QElem):
            return q_mul(self, o)
        if isinstance(o, RElem):
            return QElem(self.ctx, ar.rscale(self.arr, o))
        return QElem(self.ctx, ar.fscale(self.arr, self.ctx.field.elem(o)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QElem:
        return q_pow(self, e)

    def xshift(self, k: int) -> QElem:
        """Multiply by x^k (k may be negative; x is a unit)."""
        ctx = self.ctx
        k %= ctx.n * _x_order_factor(ctx)
        arr = self.arr
        a = ctx.alpha
        n = ctx.n
        # one step of x: shift up, the top coefficient wraps to position 0 times alpha
        full, rem = divmod(k, n)
        out = arr
        if full:
            out = ar.rscale(out, _r_pow(a, full))
        if rem:
            top = out[n - rem :]
            out = np.concatenate([ar.rscale(top, a), out[: n - rem]])
        return QElem(ctx, out % ctx.p)


def _r_pow(r: RElem, e: int) -> RElem:
    out = r_one(r.ctx)
    for _ in range(e):
        out = r_mul(out, r)
    return out


@lru_cache(maxsize=None)
def _x_order_factor(ctx: QuotientCtx) -> int:
    """Smallest j >= 1 with alpha^j = 1, so x has multiplicative order n * j."""
    one = r_one(ctx.field)
    j, cur = 1, ctx.alpha
    while cur != one:
        cur = r_mul(cur, ctx.alpha)
        j += 1
    return j


def reduce(f: RPoly, ctx: QuotientCtx) -> QElem:
    if f.ctx != ctx.field:
        raise ContextMismatch("polynomial over a different field")
    return QElem(ctx, reduce_binomial(f, ctx.n, ctx.alpha))


def q_mul(a: QElem, b: QElem) -> QElem:
    a._check(b)
    ctx = a.ctx
    n = ctx.n
    prod = ar.rconv(a.arr, b.arr, ctx.field)
    out = prod[:n].copy()
    if len(prod) > n:
        high = prod[n:]
        out[: len(high)] += ar.rscale(high, ctx.alpha)
    return QElem(ctx, out % ctx.p)


def q_pow(a: QElem, e: int) -> QElem:
    if e < 0:
        return q_pow(q_invert(a), -e)
    result = QElem.const(a.ctx, 1)
    base = a
    while e:
        if e & 1:
            result = q_mul(result, base)
        e >>= 1
        if e:
            base = q_mul(base, base)
    return result


def q_x(ctx: QuotientCtx, k: int = 1) -> QElem:
    return QElem.const(ctx, 1).xshift(k)


def q_u(ctx: QuotientCtx) -> QElem:
    return QElem.const(ctx, RElem.of(ctx.field, 0, 1))


def q_v(ctx: QuotientCtx) -> QElem:
    return QElem.const(ctx, RElem.of(ctx.field, 0, 0, 1))


def q_from_fpoly(f: FPoly, ctx: QuotientCtx, component: int = 0) -> QElem:
    parts = [None] * 4
    parts[component] = f
    return reduce(RPoly.from_components(ctx.field, *parts), ctx)


def q_pi(ctx: QuotientCtx) -> QElem:
    """x^3 - a0."""
    return q_from_fpoly(pi_poly(ctx.alpha0), ctx)


@lru_cache(maxsize=None)
def _pi_powers(ctx: QuotientCtx) -> tuple[QElem, ...]:
    pi = q_pi(ctx)
    out = [QElem.const(ctx, 1)]
    for _ in range(ctx.n + 1):
        out.append(q_mul(out[-1], pi))
    return tuple(out)


def q_pi_pow(ctx: QuotientCtx, k: int) -> QElem:
    if k < 0:
        raise ValueError("negative power of a non-unit")
    pw = _pi_powers(ctx)
    return pw[k] if k < len(pw) else QElem.zero(ctx)


def nilpotency_index(a: QElem) -> int | None:
    """Smallest k with a^k = 0, or None when no power up to 3p^s + 1 vanishes."""
    cap = a.ctx.n + 1
    cur = a
    for k in range(1, cap + 1):
        if cur.is_zero():
            return k
        cur = q_mul(cur, a)
    return None


def _require_local(ctx: QuotientCtx) -> None:
    if ctx.case == "CUBE":
        raise UnsupportedCase("operation needs a non-cube alpha (local ambient ring)")


def _residue_modulus(ctx: QuotientCtx) -> FPoly:
    """Polynomial G with a unit iff gcd(a mod (u, v), G) = 1."""
    if ctx.case == "CUBE":
        return FPoly.monomial(ctx.field, 1, ctx.n) - FPoly.of(ctx.field, [ctx.alpha.a1])
    return pi_poly(ctx.alpha0)


def q_is_unit(a: QElem) -> bool:
    ctx = a.ctx
    f1 = a.component(0)
    if ctx.case == "CUBE":
        # one gcd test per coprime factor of x^n - alpha_1
        for fac in crt_factorization(RElem.scalar(ctx.alpha.a1), ctx.s):
            g = fac.component(0)
            if f_gcd(f1, g).deg != 0:
                return False
        return True
    return not (f1 % pi_poly(ctx.alpha0)).is_zero()


def q_invert(a: QElem) -> QElem:
    """Inverse by a residue-level inverse e followed by the geometric series of 1 - a e."""
    ctx = a.ctx
    if not q_is_unit(a):
        raise NotAUnit("element lies in a maximal ideal")
    G = _residue_modulus(ctx)
    f1 = a.component(0) % G
    g, s_, _ = f_xgcd(f1, G)
    if g.deg != 0:
        raise InvariantFailure("residue inverse does not exist for a unit")
    e = q_from_fpoly(s_, ctx)
    one = QElem.const(ctx, 1)
    nil = one - q_mul(a, e)
    # a e = 1 - nil with nil nilpotent, so (a e)^{-1} = sum nil^j
    total, term = one, one
    for _ in range(ctx.n + 2):
        term = q_mul(term, nil)
        if term.is_zero():
            break
        total = total + term
    else:
        raise InvariantFailure("series did not terminate")
    inv = q_mul(e, total)
    if q_mul(a, inv) != one:
        raise InvariantFailure("inverse postcondition failed")
    return inv


def power_inverse(g: FPoly, ctx: QuotientCtx) -> QElem:
    """Inverse of a nonzero field polynomial of degree <= 2 by the p^s-power route.

    Linear: (x - c)(x^2 + c x + c^2) = x^3 - c^3, and its p^s-th power is the
    ring constant alpha - c^{3p^s}, a unit because alpha_1 is not a cube.
    Quadratic: multiply by (x - b) to reach x^3 + A x + B, whose p^s-th power
    is L^{p^s} + (alpha - alpha_1) with L = (a0 + B) + A x linear.
    """
    _require_local(ctx)
    F = ctx.field
    N = ctx.ps
    if g.is_zero() or g.deg > 2:
        raise ValueError("expects a nonzero polynomial of degree <= 2")
    if g.deg == 0:
        return QElem.const(ctx, g.coeff(0).inv())
    if g.deg == 1:
        c2, c3 = g.coeff(1), g.coeff(0)
        return _linear_inverse(ctx, -c3 / c2) * c2.inv()
    c1 = g.coeff(2)
    b, e = g.coeff(1) / c1, g.coeff(0) / c1
    A, B = e - b * b, -(b * e)
    if A.is_zero():
        L_inv = QElem.const(ctx, (ctx.alpha0 + B).inv())
    else:
        L_inv = _linear_inverse(ctx, -(ctx.alpha0 + B) / A) * A.inv()
    nil = RElem(F.zero, ctx.alpha.a2, ctx.alpha.a3, ctx.alpha.a4)
    LN = q_pow(L_inv, N)
    y = LN * nil
    one = QElem.const(ctx, 1)
    m_inv = q_mul(LN, one - y + q_mul(y, y))
    h = q_from_fpoly(g * c1.inv(), ctx)
    x_minus_b = q_from_fpoly(FPoly.of(F, [-b, 1]), ctx)
    h_inv = q_mul(q_mul(q_pow(x_minus_b, N), q_pow(h, N - 1)), m_inv)
    return h_inv * c1.inv()


def _linear_inverse(ctx: QuotientCtx, c: FieldElem) -> QElem:
    """(x - c)^{-1} = (x - c)^{p^s - 1} (x^2 + c x + c^2)^{p^s} (alpha - c^{3p^s})^{-1}."""
    F = ctx.field
    N = ctx.ps
    lin = q_from_fpoly(FPoly.of(F, [-c, 1]), ctx)
    quad = q_from_fpoly(FPoly.of(F, [c * c, c, 1]), ctx)
    unit = ctx.alpha - RElem.scalar(c ** (3 * N))
    return q_mul(q_pow(lin, N - 1), q_pow(quad, N)) * r_inv(unit)
