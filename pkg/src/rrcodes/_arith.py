"""Vectorized exact kernels over F_{p^m}.

Arrays carry field coordinates on their last axis (length m) and are always
kept reduced into [0, p). Entries are int64; at desk scale no intermediate
sum comes near overflow.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .gf import FieldCtx, FieldElem


@lru_cache(maxsize=None)
def _w_power_table(ctx: FieldCtx) -> np.ndarray:
    # rows k = 0 .. 2m-2: coordinates of w^k
    rows = [ctx.elem([0] * k + [1]).c for k in range(2 * ctx.m - 1)]
    return np.array(rows, dtype=np.int64)


def mul_matrix(a: FieldElem) -> np.ndarray:
    """m x m matrix M with coords(b) @ M = coords(b * a)."""
    ctx = a.ctx
    rows = [(ctx.elem([0] * i + [1]) * a).c for i in range(ctx.m)]
    return np.array(rows, dtype=np.int64)


def fscale(arr: np.ndarray, a: FieldElem) -> np.ndarray:
    ctx = a.ctx
    if ctx.m == 1:
        return (arr * a.c[0]) % ctx.p
    return (arr @ mul_matrix(a)) % ctx.p


def fconv(a: np.ndarray, b: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """Product of two polynomials over F_{p^m} given as (L, m) arrays."""
    p, m = ctx.p, ctx.m
    if len(a) == 0 or len(b) == 0:
        return np.zeros((0, m), dtype=np.int64)
    if m == 1:
        return (np.convolve(a[:, 0], b[:, 0]) % p)[:, None]
    L = len(a) + len(b) - 1
    raw = np.zeros((L, 2 * m - 1), dtype=np.int64)
    for i in range(m):
        ai = a[:, i]
        if not ai.any():
            continue
        for j in range(m):
            if b[:, j].any():
                raw[:, i + j] += np.convolve(ai, b[:, j])
    return (raw % p) @ _w_power_table(ctx) % p


def rconv(a: np.ndarray, b: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """Product of two polynomials over R given as (L, 4, m) arrays."""
    La, Lb = len(a), len(b)
    if La == 0 or Lb == 0:
        return np.zeros((0, 4, ctx.m), dtype=np.int64)
    out = np.zeros((La + Lb - 1, 4, ctx.m), dtype=np.int64)
    nz_a = [a[:, k].any() for k in range(4)]
    nz_b = [b[:, k].any() for k in range(4)]
    # (index pairs contributing to each output component)
    table = (((0, 0),), ((0, 1), (1, 0)), ((0, 2), (2, 0)), ((0, 3), (3, 0), (1, 2), (2, 1)))
    for k, pairs in enumerate(table):
        for i, j in pairs:
            if nz_a[i] and nz_b[j]:
                out[:, k] += fconv(a[:, i], b[:, j], ctx)
    return out % ctx.p


def rscale(arr: np.ndarray, r) -> np.ndarray:
    """Multiply every coefficient of an (L, 4, m) array by the ring element r."""
    ctx = r.ctx
    p = ctx.p
    r1, r2, r3, r4 = r.parts
    out = np.zeros_like(arr)
    a1, a2, a3, a4 = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
    out[:, 0] = fscale(a1, r1)
    out[:, 1] = fscale(a1, r2) + fscale(a2, r1)
    out[:, 2] = fscale(a1, r3) + fscale(a3, r1)
    out[:, 3] = fscale(a1, r4) + fscale(a4, r1) + fscale(a2, r3) + fscale(a3, r2)
    return out % p


def trim(arr: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero coefficients along axis 0."""
    if len(arr) == 0:
        return arr
    flat = arr.reshape(len(arr), -1).any(axis=1)
    nz = np.nonzero(flat)[0]
    return arr[: nz[-1] + 1] if len(nz) else arr[:0]
