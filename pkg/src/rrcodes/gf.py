"""Exact arithmetic in F_p and F_{p^m}.

An element of F_{p^m} is a vector of m residues mod p: the coefficients of
1, w, ..., w^{m-1} where w is a root of the context's monic irreducible
modulus. Polynomials here are coefficient lists, constant term first.

Elements also have a canonical integer encoding sum(c_i * p^i); every
"smallest" tie-break in this package refers to that encoding.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    ContextMismatch,
    DivisionByZero,
    InvalidInput,
    NotACube,
    NotPrime,
    PEqualsThree,
    ReducibleModulus,
    WrongResidueClass,
    ZeroInput,
)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    # remainder of a modulo the monic polynomial mod, over F_p
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _has_factor_of_degree(mod: Sequence[int], d: int, p: int) -> bool:
    for tail in itertools.product(range(p), repeat=d):
        cand = list(tail) + [1]
        if not any(_poly_mod(mod, cand, p)):
            return True
    return False


def is_irreducible_poly(mod: Sequence[int], p: int) -> bool:
    """Exhaustive factor search; fine for the small degrees used here."""
    m = len(mod) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    return not any(_has_factor_of_degree(mod, d, p) for d in range(1, m // 2 + 1))


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    # constant-first lexicographic order over the non-leading coefficients
    for tail in itertools.product(range(p), repeat=m):
        cand = tuple(tail) + (1,)
        if is_irreducible_poly(cand, p):
            return cand
    raise InvalidInput(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldCtx:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    def __call__(self, value) -> FieldElem:
        return self.elem(value)

    def elem(self, value) -> FieldElem:
        """Build an element from an int (embedded F_p value), a coefficient list or an element."""
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch("field element from another context")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def from_int(self, code: int) -> FieldElem:
        """Inverse of FieldElem.encode."""
        if not 0 <= code < self.q:
            raise InvalidInput(f"encoding {code} out of range for F_{self.q}")
        cs = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            cs.append(r)
        return FieldElem(self, tuple(cs))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.m)

    @property
    def one(self) -> FieldElem:
        return self.elem(1)

    @property
    def gen(self) -> FieldElem:
        """The class of w (equals 0 when m = 1 since the modulus is x)."""
        return self.elem([0, 1])

    def elements(self) -> Iterator[FieldElem]:
        for code in range(self.q):
            yield self.from_int(code)

    def random(self, rng: random.Random, nonzero: bool = False) -> FieldElem:
        lo = 1 if nonzero else 0
        return self.from_int(rng.randrange(lo, self.q))

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


class FieldElem:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, c: tuple[int, ...]):
        self.ctx = ctx
        self.c = c

    # -- comparison / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.elem(other)
        return isinstance(other, FieldElem) and self.c == other.c and self.ctx == other.ctx

    def __hash__(self) -> int:
        return hash(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def encode(self) -> int:
        p = self.ctx.p
        return sum(ci * p**i for i, ci in enumerate(self.c))

    def __repr__(self) -> str:
        if self.ctx.m == 1:
            return str(self.c[0])
        return "F(" + ",".join(map(str, self.c)) + ")"

    def to_json(self) -> list[int]:
        return list(self.c)

    # -- arithmetic
    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch("field elements from different contexts")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.c))

    def __sub__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.c, o.c)))

    def __rsub__(self, other) -> FieldElem:
        return (-self) + other

    def __mul__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        p = ctx.p
        if ctx.m == 1:
            return FieldElem(ctx, ((self.c[0] * o.c[0]) % p,))
        prod = [0] * (2 * ctx.m - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    prod[i + j] += a * b
        return FieldElem(ctx, tuple(_poly_mod(prod, ctx.modulus, p)))

    __rmul__ = __mul__

    def inv(self) -> FieldElem:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.ctx.m == 1:
            return FieldElem(self.ctx, (pow(self.c[0], -1, self.ctx.p),))
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inv() ** (-e)
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElem(ctx, (pow(self.c[0], e, ctx.p),))
        result = ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build F_{p^m}; without a modulus pick the smallest monic irreducible."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 3:
        raise PEqualsThree("characteristic 3 is excluded")
    if m < 1:
        raise InvalidInput("m must be positive")
    if modulus is None:
        mod = smallest_irreducible(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise InvalidInput(f"modulus must be monic of degree {m}")
        if not is_irreducible_poly(mod, p):
            raise ReducibleModulus(f"{list(mod)} is reducible over F_{p}")
    return FieldCtx(p, m, mod)


def ff_arith(a: FieldElem, b: FieldElem | int | None, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    if op == "inv":
        return a.inv()
    raise InvalidInput(f"unknown field operation {op!r}")


def is_cube(a: FieldElem) -> bool:
    q = a.ctx.q
    if q % 3 == 2:
        return True
    return a.is_zero() or a ** ((q - 1) // 3) == a.ctx.one


def cube_root(a: FieldElem) -> FieldElem:
    """A cube root of a; the smallest encoding when there are three."""
    ctx = a.ctx
    if not is_cube(a):
        raise NotACube(f"{a!r} is not a cube in F_{ctx.q}")
    if a.is_zero():
        return ctx.zero
    if ctx.q % 3 == 2:
        # cubing is a bijection; 3 is invertible modulo q - 1
        e = pow(3, -1, ctx.q - 1) if ctx.q > 2 else 1
        r = a**e
    else:
        r = next(x for x in ctx.elements() if x**3 == a)
    if r**3 != a:
        raise NotACube(f"cube root search failed for {a!r}")
    return r


def alpha0(a1: FieldElem, s: int) -> FieldElem:
    """The element a0 with a0^(p^s) = a1, namely a1^(p^(m - s mod m))."""
    if a1.is_zero():
        raise ZeroInput("alpha0 of zero")
    ctx = a1.ctx
    r0 = s % ctx.m
    a0 = a1 ** (ctx.p ** (ctx.m - r0))
    if a0 ** (ctx.p**s) != a1:
        raise ArithmeticError("alpha0 postcondition failed")
    return a0


def find_delta_gamma(ctx: FieldCtx) -> tuple[FieldElem, FieldElem]:
    """The two roots of x^2 + x + 1, smaller encoding first."""
    if ctx.q % 3 != 1:
        raise WrongResidueClass(f"p^m = {ctx.q} is not 1 mod 3")
    roots = [x for x in ctx.elements() if x * x + x + 1 == ctx.zero]
    delta, gamma = roots
    assert delta * gamma == ctx.one and delta + gamma == -ctx.one
    return delta, gamma


def is_irreducible_quadratic(c: FieldElem) -> bool:
    """Whether x^2 + c x + c^2 has no root in the field."""
    if c.is_zero():
        raise ZeroInput("c must be nonzero")
    c2 = c * c
    return not any((x * x + c * x + c2).is_zero() for x in c.ctx.elements())
