"""The ring R = F_{p^m}[u, v] / (u^2, v^2, uv - vu).

An element a1 + a2 u + a3 v + a4 uv is stored as its four field coordinates.
"""

from __future__ import annotations

import random

from .errors import ContextMismatch, InvariantFailure, NotACube, NotAUnit
from .gf import FieldCtx, FieldElem, cube_root, is_cube


class RElem:
    __slots__ = ("a1", "a2", "a3", "a4")

    def __init__(self, a1: FieldElem, a2: FieldElem, a3: FieldElem, a4: FieldElem):
        self.a1, self.a2, self.a3, self.a4 = a1, a2, a3, a4

    @classmethod
    def of(cls, ctx: FieldCtx, a1=0, a2=0, a3=0, a4=0) -> RElem:
        return cls(ctx.elem(a1), ctx.elem(a2), ctx.elem(a3), ctx.elem(a4))

    @classmethod
    def scalar(cls, a: FieldElem) -> RElem:
        z = a.ctx.zero
        return cls(a, z, z, z)

    @property
    def ctx(self) -> FieldCtx:
        return self.a1.ctx

    @property
    def parts(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        return (self.a1, self.a2, self.a3, self.a4)

    def __eq__(self, other) -> bool:
        return isinstance(other, RElem) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(tuple(a.c for a in self.parts))

    def is_zero(self) -> bool:
        return not (self.a1 or self.a2 or self.a3 or self.a4)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_unit(self) -> bool:
        return not self.a1.is_zero()

    def __repr__(self) -> str:
        terms = []
        for a, name in zip(self.parts, ("", "u", "v", "uv")):
            if a:
                terms.append(f"{a!r}{name}" if name else repr(a))
        return "+".join(terms) if terms else "0"

    def __add__(self, o: RElem) -> RElem:
        return RElem(self.a1 + o.a1, self.a2 + o.a2, self.a3 + o.a3, self.a4 + o.a4)

    def __sub__(self, o: RElem) -> RElem:
        return RElem(self.a1 - o.a1, self.a2 - o.a2, self.a3 - o.a3, self.a4 - o.a4)

    def __neg__(self) -> RElem:
        return RElem(-self.a1, -self.a2, -self.a3, -self.a4)

    def __mul__(self, o) -> RElem:
        if isinstance(o, (FieldElem, int)):
            return RElem(self.a1 * o, self.a2 * o, self.a3 * o, self.a4 * o)
        return r_mul(self, o)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"a1": self.a1.to_json(), "a2": self.a2.to_json(),
                "a3": self.a3.to_json(), "a4": self.a4.to_json()}


def r_zero(ctx: FieldCtx) -> RElem:
    z = ctx.zero
    return RElem(z, z, z, z)


def r_one(ctx: FieldCtx) -> RElem:
    z = ctx.zero
    return RElem(ctx.one, z, z, z)


def r_mul(x: RElem, y: RElem) -> RElem:
    if x.a1.ctx != y.a1.ctx:
        raise ContextMismatch("ring elements over different fields")
    x1, x2, x3, x4 = x.parts
    y1, y2, y3, y4 = y.parts
    return RElem(
        x1 * y1,
        x1 * y2 + x2 * y1,
        x1 * y3 + x3 * y1,
        x1 * y4 + x4 * y1 + x2 * y3 + x3 * y2,
    )


def r_inv(x: RElem) -> RElem:
    """Inverse via x = x1 (1 + n) with n^3 = 0."""
    if not x.is_unit():
        raise NotAUnit(f"{x!r} has zero constant part")
    ctx = x.ctx
    k = x.a1.inv()
    n = RElem(ctx.zero, x.a2 * k, x.a3 * k, x.a4 * k)
    n2 = r_mul(n, n)
    y = (r_one(ctx) - n + n2) * k
    if r_mul(x, y) != r_one(ctx):
        raise InvariantFailure("inverse postcondition failed")
    return y


def r_pow(x: RElem, e: int) -> RElem:
    if e < 0:
        return r_pow(r_inv(x), -e)
    result = r_one(x.ctx)
    base = x
    while e:
        if e & 1:
            result = r_mul(result, base)
        base = r_mul(base, base)
        e >>= 1
    return result


def r_is_cube(x: RElem) -> bool:
    if not x.is_unit():
        raise NotAUnit(f"{x!r} is not a unit")
    return is_cube(x.a1)


def r_cube_witness(x: RElem) -> RElem:
    """Some b with b^3 = x, built coordinate by coordinate and checked."""
    if not r_is_cube(x):
        raise NotACube(f"{x!r} is not a cube")
    ctx = x.ctx
    b1 = cube_root(x.a1)
    k = ctx.elem(3).inv() * b1.inv() ** 2
    b2 = k * x.a2
    b3 = k * x.a3
    b4 = k * (x.a4 - ctx.elem(6) * b1 * b2 * b3)
    b = RElem(b1, b2, b3, b4)
    if r_mul(r_mul(b, b), b) != x:
        raise InvariantFailure(f"cube witness for {x!r} failed its check")
    return b


def swap_uv(x: RElem) -> RElem:
    return RElem(x.a1, x.a3, x.a2, x.a4)


def r_random(ctx: FieldCtx, rng: random.Random, unit: bool = False) -> RElem:
    return RElem(ctx.random(rng, nonzero=unit), ctx.random(rng), ctx.random(rng), ctx.random(rng))


def r_elements(ctx: FieldCtx):
    """All of R; only sensible for tiny fields."""
    els = list(ctx.elements())
    for a in els:
        for b in els:
            for c in els:
                for d in els:
                    yield RElem(a, b, c, d)
