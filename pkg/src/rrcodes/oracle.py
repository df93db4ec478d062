"""Brute-force linear algebra over F_p for ideals of R_alpha.

An ideal is represented by the reduced row echelon basis of its F_p-span.
Coordinates of an element are its (n, 4, m) coefficient array flattened:
x-degree major, then the 1/u/v/uv component, then the field coordinate.

Nothing here uses the classification results; the only inputs are the ring
axioms (multiplication in R and the relation x^n = alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _arith as ar
from .errors import AmbientMismatch
from .poly import RPoly, reciprocal, reduce_binomial
from .quotient import QElem, QuotientCtx
from .ring_r import RElem, r_mul


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        width = A.shape[1] if A.ndim == 2 else 0
        return np.zeros((0, width), dtype=np.int64), []
    rows, cols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(M: np.ndarray, p: int, width: int) -> np.ndarray:
    """Basis (as rows) of {y : M y = 0}."""
    if len(M) == 0:
        return np.eye(width, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(width) if c not in set(piv)]
    out = np.zeros((len(free), width), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-R[i, f]) % p
    return out


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    ctx: QuotientCtx
    rows: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def dim_ambient(self) -> int:
        return self.ctx.dim

    def elements(self) -> list[QElem]:
        return [QElem.from_vector(self.ctx, r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, SubspaceBasis) and equal(self, other)

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}, ambient={self.dim_ambient})"

    def to_text(self) -> str:
        """Export format: header 'p m s n dim' then one row per basis vector."""
        c = self.ctx
        lines = [f"{c.p} {c.field.m} {c.s} {c.n} {self.dim}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def subspace(ctx: QuotientCtx, vectors) -> SubspaceBasis:
    M = np.asarray(vectors, dtype=np.int64).reshape(-1, ctx.dim)
    R, _ = rref(M, ctx.p)
    return SubspaceBasis(ctx, R)


# -- multiplication maps ------------------------------------------------------

def _r_basis(ctx: QuotientCtx) -> list[RElem]:
    F = ctx.field
    out = []
    for comp in range(4):
        for k in range(F.m):
            parts = [F.zero] * 4
            parts[comp] = F.elem([0] * k + [1])
            out.append(RElem(*parts))
    return out


def _r_coords(r: RElem) -> list[int]:
    return [c for part in r.parts for c in part.c]


def _left_matrix(ctx: QuotientCtx, r: RElem) -> np.ndarray:
    """4m x 4m matrix L with coords(b) @ L = coords(b * r) for b in R."""
    return np.array([_r_coords(r_mul(e, r)) for e in _r_basis(ctx)], dtype=np.int64)


@lru_cache(maxsize=None)
def _maps(ctx: QuotientCtx) -> dict:
    n, k = ctx.n, 4 * ctx.field.m
    basis = _r_basis(ctx)
    # x * (x^i e) = x^{i+1} e, and x * x^{n-1} e = alpha e in degree 0
    Mx = np.zeros((n * k, n * k), dtype=np.int64)
    for i in range(n - 1):
        Mx[i * k : (i + 1) * k, (i + 1) * k : (i + 2) * k] = np.eye(k, dtype=np.int64)
    Mx[(n - 1) * k :, 0:k] = _left_matrix(ctx, ctx.alpha)
    scalars = [_left_matrix(ctx, e) for e in basis]
    F = ctx.field
    u = RElem.of(F, 0, 1)
    v = RElem.of(F, 0, 0, 1)
    w = RElem.scalar(F.gen) if F.m > 1 else None
    gens = {"x": Mx, "u": np.kron(np.eye(n, dtype=np.int64), _left_matrix(ctx, u)),
            "v": np.kron(np.eye(n, dtype=np.int64), _left_matrix(ctx, v))}
    if w is not None:
        gens["w"] = np.kron(np.eye(n, dtype=np.int64), _left_matrix(ctx, w))
    # structure tensor T[j, j', o] of R over F_p
    T = np.zeros((k, k, k), dtype=np.int64)
    for j, e in enumerate(basis):
        for jj, ee in enumerate(basis):
            T[j, jj] = _r_coords(r_mul(e, ee))
    return {"Mx": Mx, "scalars": scalars, "gens": gens, "T": T}


def mult_matrix(g: QElem) -> np.ndarray:
    """Matrix M_g with coords(a) @ M_g = coords(a * g); row i*4m + j is (x^i e_j) * g."""
    ctx = g.ctx
    mp = _maps(ctx)
    p = ctx.p
    n, k = ctx.n, 4 * ctx.field.m
    gv = g.arr.reshape(n, k)
    first = np.stack([(gv @ L % p).reshape(-1) for L in mp["scalars"]])
    blocks = [first]
    Mx = mp["Mx"]
    for _ in range(n - 1):
        blocks.append(blocks[-1] @ Mx % p)
    return np.concatenate(blocks)


def _as_elements(ctx: QuotientCtx, gens: Iterable) -> list[QElem]:
    out = []
    for g in gens:
        if isinstance(g, QElem):
            if g.ctx != ctx:
                raise AmbientMismatch("generator from another ambient ring")
            out.append(g)
        else:
            out.append(QElem.from_vector(ctx, g))
    return out


def span_closure(gens: Sequence, ctx: QuotientCtx | None = None) -> SubspaceBasis:
    """The ideal generated by gens: the F_p-span of g * (x^i e_j) over all i, j."""
    if ctx is None:
        ctx = gens[0].ctx
    els = [g for g in _as_elements(ctx, gens) if not g.is_zero()]
    if not els:
        return SubspaceBasis(ctx, np.zeros((0, ctx.dim), dtype=np.int64))
    big = np.concatenate([mult_matrix(g) for g in els])
    R, _ = rref(big, ctx.p)
    return SubspaceBasis(ctx, R)


def _reduce_vector(vec: np.ndarray, S: SubspaceBasis) -> np.ndarray:
    p = S.ctx.p
    v = np.asarray(vec, dtype=np.int64) % p
    for row in S.rows:
        pc = int(np.flatnonzero(row)[0])
        if v[pc]:
            v = (v - v[pc] * row) % p
    return v


def member(f, S: SubspaceBasis) -> bool:
    if isinstance(f, QElem):
        if f.ctx != S.ctx:
            raise AmbientMismatch("element from another ambient ring")
        f = f.vector()
    return not _reduce_vector(f, S).any()


def contains(S: SubspaceBasis, T: SubspaceBasis) -> bool:
    """T is a subset of S."""
    return all(member(r, S) for r in T.rows)


def equal(S: SubspaceBasis, T: SubspaceBasis) -> bool:
    if S.ctx != T.ctx:
        raise AmbientMismatch("subspaces of different ambient rings")
    return S.rows.shape == T.rows.shape and np.array_equal(S.rows, T.rows)


def is_ideal(S: SubspaceBasis) -> bool:
    """Closed under multiplication by x, u, v and the field generator."""
    p = S.ctx.p
    for M in _maps(S.ctx)["gens"].values():
        for row in S.rows @ M % p:
            if not member(row, S):
                return False
    return True


def ideal_generators(S: SubspaceBasis) -> list[QElem]:
    """A small generating set of the ideal spanned by S (greedy over the basis rows)."""
    gens: list[QElem] = []
    cur = SubspaceBasis(S.ctx, np.zeros((0, S.ctx.dim), dtype=np.int64))
    for row in S.rows:
        if not member(row, cur):
            gens.append(QElem.from_vector(S.ctx, row))
            cur = span_closure(gens, S.ctx)
            if cur.dim == S.dim:
                break
    return gens


def annihilator(S: SubspaceBasis) -> SubspaceBasis:
    """{a : a b = 0 for every b in S}."""
    ctx = S.ctx
    gens = ideal_generators(S)
    if not gens:
        return SubspaceBasis(ctx, np.eye(ctx.dim, dtype=np.int64))
    # a @ M_g = 0  <=>  M_g^T a^T = 0
    stacked = np.concatenate([mult_matrix(g).T for g in gens])
    K = nullspace(stacked, ctx.p, ctx.dim)
    return subspace(ctx, K)


def inner_dual(S: SubspaceBasis, dual_ctx: QuotientCtx) -> SubspaceBasis:
    """Euclidean dual {y : sum_i x_i y_i = 0 in R for all x in S}, read in the dual ambient ring."""
    ctx = S.ctx
    if dual_ctx.field != ctx.field or dual_ctx.n != ctx.n:
        raise AmbientMismatch("dual ambient ring has a different length or field")
    n, k = ctx.n, 4 * ctx.field.m
    if S.dim == 0:
        return SubspaceBasis(dual_ctx, np.eye(ctx.dim, dtype=np.int64))
    T = _maps(ctx)["T"]
    X = S.rows.reshape(-1, n, k)
    # constraint (row r, output coordinate o) on y[i, j'] is sum_j X[r, i, j] T[j, j', o]
    C = np.einsum("rij,jko->roik", X, T).reshape(-1, n * k) % ctx.p
    K = nullspace(C, ctx.p, ctx.dim)
    return subspace(dual_ctx, K)


def reciprocal_ideal(gens: Sequence[QElem], dual_ctx: QuotientCtx) -> SubspaceBasis:
    """Ideal of the dual ambient ring generated by the reciprocals of gens."""
    recs = []
    for g in gens:
        if g.is_zero():
            continue
        rp = reciprocal(g.rep)
        recs.append(QElem(dual_ctx, reduce_binomial(RPoly(dual_ctx.field, rp.arr), dual_ctx.n, dual_ctx.alpha)))
    return span_closure(recs, dual_ctx)


def reversal_image(S: SubspaceBasis, dual_ctx: QuotientCtx) -> SubspaceBasis:
    """Image of S under the linear reversal f -> x^{n-1} f(1/x) into the dual ambient ring."""
    n, k = S.ctx.n, 4 * S.ctx.field.m
    rev = S.rows.reshape(-1, n, k)[:, ::-1, :].reshape(-1, n * k)
    return subspace(dual_ctx, rev)


def ideal_of(gens: Sequence[QElem]) -> SubspaceBasis:
    return span_closure(list(gens))


# -- arbitrary monic modulus (component rings of the cube case) ---------------

def _reduce_monic(arr: np.ndarray, modulus: RPoly) -> np.ndarray:
    F = modulus.ctx
    d = modulus.deg
    mod = modulus.arr
    out = np.array(arr, dtype=np.int64) % F.p
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c.any():
            r = RElem(*(F.elem(list(c[k])) for k in range(4)))
            out[i - d : i + 1] = (out[i - d : i + 1] - ar.rscale(mod, r)) % F.p
    res = np.zeros((d, 4, F.m), dtype=np.int64)
    res[: min(d, len(out))] = out[:d]
    return res


def ideal_dim_mod(gens: Sequence[RPoly], modulus: RPoly) -> int:
    """F_p-dimension of the ideal generated by gens in R[x] / (modulus), modulus monic."""
    F = modulus.ctx
    if modulus.coeff(modulus.deg) != RElem.of(F, 1):
        raise ValueError("modulus must be monic")
    d = modulus.deg
    basis = [RElem(*[F.elem([0] * k + [1]) if comp == j else F.zero for comp in range(4)])
             for j in range(4) for k in range(F.m)]
    rows = []
    for g in gens:
        h = _reduce_monic(g.arr, modulus)
        for _ in range(d):
            rows.extend(ar.rscale(h, e).reshape(-1) for e in basis)
            h = _reduce_monic(np.concatenate([np.zeros((1, 4, F.m), dtype=np.int64), h]), modulus)
    if not rows:
        return 0
    R, _ = rref(np.array(rows), F.p)
    return len(R)
