"""Polynomials over F_{p^m} and over R, reciprocals, (x^3 - a0)-adic digits,
and the cube-case factorizations of x^{3p^s} - alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _arith as ar
from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    LengthMismatch,
    NotACube,
    ProductMismatch,
    ShapeMismatch,
    ZeroPolynomial,
)
from .gf import FieldCtx, FieldElem, find_delta_gamma
from .ring_r import RElem, r_cube_witness, r_is_cube, r_mul


class FPoly:
    """Polynomial over F_{p^m}; ``arr`` has shape (len, m), constant term first."""

    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: FieldCtx, arr: np.ndarray):
        self.ctx = ctx
        self.arr = ar.trim(np.asarray(arr, dtype=np.int64).reshape(-1, ctx.m) % ctx.p)

    @classmethod
    def of(cls, ctx: FieldCtx, coeffs: Iterable) -> FPoly:
        rows = [ctx.elem(c).c for c in coeffs]
        return cls(ctx, np.array(rows, dtype=np.int64).reshape(-1, ctx.m))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> FPoly:
        return cls(ctx, np.zeros((0, ctx.m), dtype=np.int64))

    @classmethod
    def monomial(cls, ctx: FieldCtx, c, k: int) -> FPoly:
        arr = np.zeros((k + 1, ctx.m), dtype=np.int64)
        arr[k] = ctx.elem(c).c
        return cls(ctx, arr)

    @property
    def deg(self) -> int:
        return len(self.arr) - 1

    def is_zero(self) -> bool:
        return len(self.arr) == 0

    def coeff(self, i: int) -> FieldElem:
        if 0 <= i < len(self.arr):
            return FieldElem(self.ctx, tuple(int(x) for x in self.arr[i]))
        return self.ctx.zero

    @property
    def coeffs(self) -> list[FieldElem]:
        return [self.coeff(i) for i in range(len(self.arr))]

    def padded(self, length: int) -> np.ndarray:
        if len(self.arr) > length:
            raise DegreeTooLarge(f"degree {self.deg} does not fit {length} coefficients")
        out = np.zeros((length, self.ctx.m), dtype=np.int64)
        out[: len(self.arr)] = self.arr
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FPoly) and np.array_equal(self.arr, other.arr)

    def __hash__(self) -> int:
        return hash(self.arr.tobytes())

    def __repr__(self) -> str:
        return f"FPoly({[repr(c) for c in self.coeffs]})"

    def __add__(self, o: FPoly) -> FPoly:
        L = max(len(self.arr), len(o.arr))
        return FPoly(self.ctx, self.padded(L) + o.padded(L))

    def __sub__(self, o: FPoly) -> FPoly:
        L = max(len(self.arr), len(o.arr))
        return FPoly(self.ctx, self.padded(L) - o.padded(L))

    def __neg__(self) -> FPoly:
        return FPoly(self.ctx, -self.arr)

    def __mul__(self, o) -> FPoly:
        if isinstance(o, FPoly):
            return FPoly(self.ctx, ar.fconv(self.arr, o.arr, self.ctx))
        return FPoly(self.ctx, ar.fscale(self.arr, self.ctx.elem(o)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FPoly:
        result = FPoly.of(self.ctx, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> FPoly:
        return FPoly(self.ctx, np.vstack([np.zeros((k, self.ctx.m), dtype=np.int64), self.arr]))

    def lead(self) -> FieldElem:
        return self.coeff(self.deg)

    def divmod(self, d: FPoly) -> tuple[FPoly, FPoly]:
        if d.is_zero():
            raise DivisionByZero("polynomial division by zero")
        ctx = self.ctx
        inv_lead = d.lead().inv()
        rem = self.padded(max(len(self.arr), 1)).copy()
        dd = d.deg
        qlen = max(len(rem) - dd, 0)
        quo = np.zeros((qlen, ctx.m), dtype=np.int64)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = FieldElem(ctx, tuple(int(x) for x in rem[i]))
            if c.is_zero():
                continue
            factor = c * inv_lead
            quo[i - dd] = factor.c
            rem[i - dd : i + 1] = (rem[i - dd : i + 1] - ar.fscale(d.arr, factor)) % ctx.p
        return FPoly(ctx, quo), FPoly(ctx, rem[:dd] if dd > 0 else rem[:0])

    def __mod__(self, d: FPoly) -> FPoly:
        return self.divmod(d)[1]


def f_gcd(a: FPoly, b: FPoly) -> FPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a * a.lead().inv() if not a.is_zero() else a


def f_xgcd(a: FPoly, b: FPoly) -> tuple[FPoly, FPoly, FPoly]:
    """(g, s, t) with s a + t b = g monic."""
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = FPoly.of(ctx, [1]), FPoly.zero(ctx)
    t0, t1 = FPoly.zero(ctx), FPoly.of(ctx, [1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    k = r0.lead().inv()
    return r0 * k, s0 * k, t0 * k


class RPoly:
    """Polynomial over R; ``arr`` has shape (len, 4, m): x-degree, then 1/u/v/uv, then field coordinate."""

    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: FieldCtx, arr: np.ndarray):
        self.ctx = ctx
        self.arr = ar.trim(np.asarray(arr, dtype=np.int64).reshape(-1, 4, ctx.m) % ctx.p)

    @classmethod
    def of(cls, ctx: FieldCtx, coeffs: Sequence[RElem]) -> RPoly:
        arr = np.array([[c.c for c in r.parts] for r in coeffs], dtype=np.int64)
        return cls(ctx, arr.reshape(-1, 4, ctx.m))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> RPoly:
        return cls(ctx, np.zeros((0, 4, ctx.m), dtype=np.int64))

    @classmethod
    def constant(cls, r: RElem) -> RPoly:
        return cls.of(r.ctx, [r])

    @classmethod
    def monomial(cls, r: RElem, k: int) -> RPoly:
        return cls.constant(r).shift(k)

    @classmethod
    def from_components(cls, ctx: FieldCtx, f1=None, f2=None, f3=None, f4=None) -> RPoly:
        parts = [f if f is not None else FPoly.zero(ctx) for f in (f1, f2, f3, f4)]
        L = max(len(f.arr) for f in parts)
        arr = np.zeros((L, 4, ctx.m), dtype=np.int64)
        for k, f in enumerate(parts):
            arr[: len(f.arr), k] = f.arr
        return cls(ctx, arr)

    def component(self, k: int) -> FPoly:
        return FPoly(self.ctx, self.arr[:, k])

    @property
    def deg(self) -> int:
        return len(self.arr) - 1

    def is_zero(self) -> bool:
        return len(self.arr) == 0

    def coeff(self, i: int) -> RElem:
        if 0 <= i < len(self.arr):
            row = self.arr[i]
            return RElem(*(FieldElem(self.ctx, tuple(int(x) for x in row[k])) for k in range(4)))
        z = self.ctx.zero
        return RElem(z, z, z, z)

    @property
    def coeffs(self) -> list[RElem]:
        return [self.coeff(i) for i in range(len(self.arr))]

    def padded(self, length: int) -> np.ndarray:
        if len(self.arr) > length:
            raise DegreeTooLarge(f"degree {self.deg} does not fit {length} coefficients")
        out = np.zeros((length, 4, self.ctx.m), dtype=np.int64)
        out[: len(self.arr)] = self.arr
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, RPoly) and np.array_equal(self.arr, other.arr)

    def __hash__(self) -> int:
        return hash(self.arr.tobytes())

    def __repr__(self) -> str:
        terms = [f"({c!r})x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "RPoly(" + (" + ".join(terms) or "0") + ")"

    def __add__(self, o: RPoly) -> RPoly:
        L = max(len(self.arr), len(o.arr))
        return RPoly(self.ctx, self.padded(L) + o.padded(L))

    def __sub__(self, o: RPoly) -> RPoly:
        L = max(len(self.arr), len(o.arr))
        return RPoly(self.ctx, self.padded(L) - o.padded(L))

    def __neg__(self) -> RPoly:
        return RPoly(self.ctx, -self.arr)

    def __mul__(self, o) -> RPoly:
        if isinstance(o, RPoly):
            return RPoly(self.ctx, ar.rconv(self.arr, o.arr, self.ctx))
        if isinstance(o, RElem):
            return RPoly(self.ctx, ar.rscale(self.arr, o))
        return RPoly(self.ctx, ar.fscale(self.arr, self.ctx.elem(o)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RPoly:
        result = RPoly.constant(RElem.of(self.ctx, 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> RPoly:
        pad = np.zeros((k, 4, self.ctx.m), dtype=np.int64)
        return RPoly(self.ctx, np.concatenate([pad, self.arr]))

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coeffs]


def lift(f: FPoly) -> RPoly:
    """Embed a field polynomial as an R-polynomial."""
    return RPoly.from_components(f.ctx, f)


def u_times(f: FPoly) -> RPoly:
    return RPoly.from_components(f.ctx, None, f)


def reduce_binomial(f: RPoly, n: int, alpha: RElem) -> np.ndarray:
    """Coefficient array (n, 4, m) of f mod x^n - alpha."""
    ctx = f.ctx
    arr = f.padded(max(len(f.arr), 1))
    chunks = [arr[i : i + n] for i in range(0, len(arr), n)]
    acc = np.zeros((n, 4, ctx.m), dtype=np.int64)
    for ch in reversed(chunks):
        acc = ar.rscale(acc, alpha)
        acc[: len(ch)] += ch
        acc %= ctx.p
    return acc


def reciprocal(f: RPoly) -> RPoly:
    """x^deg(f) f(1/x): reversal about the highest nonzero coefficient."""
    if f.is_zero():
        raise ZeroPolynomial("reciprocal of the zero polynomial")
    return RPoly(f.ctx, f.arr[::-1].copy())


# -- (x^3 - a0)-adic digits ---------------------------------------------------

def pi_poly(a0: FieldElem) -> FPoly:
    ctx = a0.ctx
    return FPoly.of(ctx, [-a0, 0, 0, 1])


def pi_digits(f: FPoly, a0: FieldElem, count: int) -> np.ndarray:
    """Digits d_k (deg <= 2) with f = sum d_k (x^3 - a0)^k, as a (count, 3, m) array."""
    ctx = a0.ctx
    if f.deg >= 3 * count:
        raise DegreeTooLarge(f"degree {f.deg} needs more than {count} digits")
    cur = f.padded(3 * count).copy()
    out = np.zeros((count, 3, ctx.m), dtype=np.int64)
    for k in range(count):
        # synthetic division of cur by x^3 - a0
        L = len(cur)
        quo = np.zeros((max(L - 3, 0), ctx.m), dtype=np.int64)
        for i in range(L - 1, 2, -1):
            c = cur[i]
            if c.any():
                quo[i - 3] = c
                cur[i - 3] = (cur[i - 3] + ar.fscale(c[None, :], a0)[0]) % ctx.p
        out[k] = cur[:3]
        cur = quo
    return out


def digits_to_fpoly(digits: np.ndarray, a0: FieldElem) -> FPoly:
    ctx = a0.ctx
    pi = pi_poly(a0)
    acc = FPoly.zero(ctx)
    for d in digits[::-1]:
        acc = acc * pi + FPoly(ctx, d)
    return acc


@dataclass(frozen=True)
class AdicForm:
    """Digit vectors; each is a (K, 3, m) array of quadratic digits, constant first.

    In the cases where v can be eliminated the form is F + u G with 2p^s
    digits each and empty v / uv parts; otherwise all four parts carry p^s
    digits.
    """

    f_digits: np.ndarray
    u_digits: np.ndarray
    v_digits: np.ndarray
    uv_digits: np.ndarray

    def __eq__(self, other) -> bool:
        return isinstance(other, AdicForm) and all(
            np.array_equal(a, b)
            for a, b in zip(
                (self.f_digits, self.u_digits, self.v_digits, self.uv_digits),
                (other.f_digits, other.u_digits, other.v_digits, other.uv_digits),
            )
        )

    def to_json(self) -> dict:
        return {
            "f_digits": self.f_digits.tolist(),
            "u_digits": self.u_digits.tolist(),
            "v_digits": self.v_digits.tolist(),
            "uv_digits": self.uv_digits.tolist(),
        }


def v_eliminable(ctx) -> bool:
    return ctx.case in ("NC_V", "NC_FULL")


def adic_expand(f: RPoly, ctx) -> AdicForm:
    """Digits of f in the ambient ring described by ``ctx`` (a QuotientCtx)."""
    if f.deg >= ctx.n:
        raise DegreeTooLarge(f"degree {f.deg} >= n = {ctx.n}; reduce first")
    N = ctx.ps
    a0 = ctx.alpha0
    blocks = [pi_digits(f.component(k), a0, N) for k in range(4)]
    empty = np.zeros((0, 3, ctx.field.m), dtype=np.int64)
    if not v_eliminable(ctx):
        return AdicForm(*blocks)
    F1, F2, F3, F4 = blocks
    _, a2, a3, a4 = ctx.alpha.parts
    k = a3.inv()
    k2 = -(a4 * k * k)
    fd = np.concatenate([F1, ar.fscale(F3, k)])
    low = (F2 - ar.fscale(F3, k * a2)) % ctx.field.p
    high = (ar.fscale(F4, k) + ar.fscale(F3, k2)) % ctx.field.p
    return AdicForm(fd, np.concatenate([low, high]), empty, empty)


def adic_assemble(a: AdicForm, ctx) -> RPoly:
    N = ctx.ps
    a0 = ctx.alpha0
    if v_eliminable(ctx):
        shapes_ok = len(a.f_digits) == 2 * N and len(a.u_digits) == 2 * N and len(a.v_digits) == 0 and len(a.uv_digits) == 0
    else:
        shapes_ok = all(len(d) == N for d in (a.f_digits, a.u_digits, a.v_digits, a.uv_digits))
    if not shapes_ok:
        raise ShapeMismatch("digit vectors do not match the ambient case")
    parts = [digits_to_fpoly(d, a0) if len(d) else None for d in (a.f_digits, a.u_digits, a.v_digits, a.uv_digits)]
    rp = RPoly.from_components(ctx.field, *parts)
    return RPoly(ctx.field, reduce_binomial(rp, ctx.n, ctx.alpha))


# -- cube case ------------------------------------------------------------------

def _binomial_pow(ctx: FieldCtx, k: int, c: RElem) -> RPoly:
    """x^k - c."""
    return RPoly.monomial(RElem.of(ctx, 1), k) - RPoly.constant(c)


def crt_factorization(alpha: RElem, s: int) -> list[RPoly]:
    """Pairwise coprime factors of x^{3p^s} - alpha for a cube alpha."""
    ctx = alpha.ctx
    if not r_is_cube(alpha):
        raise NotACube(f"{alpha!r} is not a cube")
    ps = ctx.p**s
    beta = r_cube_witness(alpha)
    if ctx.q % 3 == 1:
        delta, gamma = find_delta_gamma(ctx)
        factors = [_binomial_pow(ctx, ps, beta), _binomial_pow(ctx, ps, beta * delta), _binomial_pow(ctx, ps, beta * gamma)]
    else:
        # the cube root chain is unique here; take g = beta
        g = beta
        x_ps = RPoly.monomial(RElem.of(ctx, 1), ps)
        quad = RPoly.monomial(RElem.of(ctx, 1), 2 * ps) + x_ps * g + RPoly.constant(r_mul(g, g))
        factors = [_binomial_pow(ctx, ps, g), quad]
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    if prod != _binomial_pow(ctx, 3 * ps, alpha):
        raise ProductMismatch("factor product differs from x^{3p^s} - alpha")
    return factors


def poly_from_word(ctx: FieldCtx, word: Sequence[RElem]) -> RPoly:
    return RPoly.of(ctx, list(word))


def word_from_poly(f: RPoly, n: int) -> list[RElem]:
    if f.deg >= n:
        raise LengthMismatch(f"degree {f.deg} does not fit length {n}")
    return [f.coeff(i) for i in range(n)]

