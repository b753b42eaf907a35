"""Small exact linear algebra over a FieldCtx.

Vectors are tuples of codes, matrices are tuples of row tuples.  Only what the
geometry needs: products, determinants, inverses, rank and kernels of 3x3
matrices.
"""

from __future__ import annotations

from .gf import FieldCtx

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]

IDENTITY: Mat = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def dot(ctx: FieldCtx, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def cross(ctx: FieldCtx, u, v) -> Vec:
    m, s = ctx.mul, ctx.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def mat_vec(ctx: FieldCtx, a: Mat, v) -> Vec:
    return tuple(dot(ctx, row, v) for row in a)


def vec_mat(ctx: FieldCtx, v, a: Mat) -> Vec:
    return tuple(dot(ctx, v, col) for col in zip(*a))


def mat_mul(ctx: FieldCtx, a: Mat, b: Mat) -> Mat:
    cols = tuple(zip(*b))
    return tuple(tuple(dot(ctx, row, col) for col in cols) for row in a)


def scale(ctx: FieldCtx, k: int, v):
    return tuple(ctx.mul(k, x) for x in v)


def det3(ctx: FieldCtx, a: Mat) -> int:
    return dot(ctx, a[0], cross(ctx, a[1], a[2]))


def inverse3(ctx: FieldCtx, a: Mat) -> Mat:
    """Adjugate over determinant; raises DivisionByZero when singular."""
    d_inv = ctx.inv(det3(ctx, a))
    # columns of the inverse are cross products of rows
    c0 = cross(ctx, a[1], a[2])
    c1 = cross(ctx, a[2], a[0])
    c2 = cross(ctx, a[0], a[1])
    return tuple(
        tuple(ctx.mul(d_inv, c[i]) for c in (c0, c1, c2)) for i in range(3)
    )


def row_echelon(ctx: FieldCtx, rows) -> list[list[int]]:
    """Reduced row echelon form, zero rows dropped."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    out: list[list[int]] = []
    for col in range(ncols):
        pivot = next((r for r in m if r[col]), None)
        if pivot is None:
            continue
        m.remove(pivot)
        k = ctx.inv(pivot[col])
        pivot = [ctx.mul(k, x) for x in pivot]
        for r in m + out:
            if r[col]:
                f = r[col]
                for j in range(ncols):
                    r[j] = ctx.sub(r[j], ctx.mul(f, pivot[j]))
        out.append(pivot)
    return out


def rank(ctx: FieldCtx, a) -> int:
    return len(row_echelon(ctx, a))


def solve3(ctx: FieldCtx, a: Mat, b) -> Vec:
    """Solve ``a x = b`` for regular ``a``."""
    return mat_vec(ctx, inverse3(ctx, a), b)


def normalize_leading(ctx: FieldCtx, v) -> tuple:
    """Scale so the first nonzero entry is 1; the zero vector is returned as is."""
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            k = ctx.inv(x)
            return tuple(ctx.mul(k, y) for y in v)
    return tuple(v)


def normalize_matrix(ctx: FieldCtx, a: Mat) -> Mat:
    flat = normalize_leading(ctx, [x for row in a for x in row])
    return tuple(tuple(flat[3 * i:3 * i + 3]) for i in range(3))
