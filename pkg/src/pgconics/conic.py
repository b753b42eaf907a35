"""Conics of PG(2, q) as quadratic forms and symmetric matrices.

A conic is stored by the coefficients (a, b, c, d, e, f) of

    F = a x^2 + b y^2 + c z^2 + d xy + e xz + f yz,

scaled so the first nonzero coefficient is 1.  Its matrix is
[[2a, d, e], [d, 2b, f], [e, f, 2c]], so that v^T A v = 2 F(v).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import linalg as la
from .errors import DomainError, IdenticalConics, NotProper, ZeroForm
from .gf import FieldCtx
from .pg2 import Collineation, Line, Point, enumerate_points, line_through, point_array


@dataclass(frozen=True, order=True)
class Conic:
    coeffs: tuple[int, int, int, int, int, int]

    def __str__(self) -> str:
        return ",".join(map(str, self.coeffs))

    def is_diagonal(self) -> bool:
        return self.coeffs[3:] == (0, 0, 0)


class ConicTag(str, enum.Enum):
    PROPER = "proper"
    SINGLE_POINT = "point"
    REPEATED_LINE = "line"
    LINE_PAIR = "line-pair"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConicClass:
    """Classification of a conic.

    ``point`` is the single zero (SINGLE_POINT) or the vertex (LINE_PAIR);
    ``line`` is set for REPEATED_LINE and ``lines`` for LINE_PAIR.
    """

    tag: ConicTag
    point: Optional[Point] = None
    line: Optional[Line] = None
    lines: Optional[tuple[Line, Line]] = None

    @property
    def proper(self) -> bool:
        return self.tag is ConicTag.PROPER


class PointClass(str, enum.Enum):
    ON = "on"
    EXTERNAL = "external"
    INTERNAL = "internal"


class LineClass(str, enum.Enum):
    TANGENT = "tangent"
    SECANT = "secant"
    EXTERNAL = "external"


# -- construction ------------------------------------------------------------

def conic(ctx: FieldCtx, coeffs) -> Conic:
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != 6:
        raise DomainError(f"a conic needs six coefficients, got {len(coeffs)}")
    if any(not 0 <= c < ctx.q for c in coeffs):
        raise DomainError(f"coefficients must be codes in [0, {ctx.q - 1}]")
    if not any(coeffs):
        raise ZeroForm("all six coefficients are zero")
    return Conic(la.normalize_leading(ctx, coeffs))


def parse_conic(ctx: FieldCtx, text: str) -> Conic:
    try:
        values = [int(t) for t in text.split(",")]
    except ValueError:
        raise DomainError(f"cannot parse conic {text!r}") from None
    return conic(ctx, values)


def matrix(ctx: FieldCtx, c: Conic) -> la.Mat:
    a, b, cc, d, e, f = c.coeffs
    two = ctx.from_int(2)
    return (
        (ctx.mul(two, a), d, e),
        (d, ctx.mul(two, b), f),
        (e, f, ctx.mul(two, cc)),
    )


def from_matrix(ctx: FieldCtx, m: la.Mat) -> Conic:
    half = ctx.inv(ctx.from_int(2))
    return conic(ctx, (
        ctx.mul(half, m[0][0]), ctx.mul(half, m[1][1]), ctx.mul(half, m[2][2]),
        m[0][1], m[0][2], m[1][2],
    ))


def evaluate(ctx: FieldCtx, c: Conic, p: Point) -> int:
    x, y, z = p.coords
    mono = (ctx.mul(x, x), ctx.mul(y, y), ctx.mul(z, z),
            ctx.mul(x, y), ctx.mul(x, z), ctx.mul(y, z))
    return la.dot(ctx, c.coeffs, mono)


# -- vectorised evaluation ---------------------------------------------------

@lru_cache(maxsize=None)
def monomials(ctx: FieldCtx) -> np.ndarray:
    """(N, 6) array of x^2, y^2, z^2, xy, xz, yz at every point."""
    pts = point_array(ctx)
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    cols = [ctx.vmul(x, x), ctx.vmul(y, y), ctx.vmul(z, z),
            ctx.vmul(x, y), ctx.vmul(x, z), ctx.vmul(y, z)]
    return np.stack(cols, axis=1)


def evaluate_many(ctx: FieldCtx, coeffs: np.ndarray) -> np.ndarray:
    """Values of K forms (rows of ``coeffs``) at all N points, shape (K, N)."""
    coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, 6)
    mono = monomials(ctx)
    if ctx.n == 1:
        return (coeffs @ mono.T) % ctx.p
    acc = np.zeros((coeffs.shape[0], mono.shape[0]), dtype=np.int64)
    for i in range(6):
        acc = ctx.vadd(acc, ctx.vmul(coeffs[:, i:i + 1], mono[None, :, i]))
    return acc


@lru_cache(maxsize=1 << 16)
def zero_mask(ctx: FieldCtx, c: Conic) -> np.ndarray:
    mask = evaluate_many(ctx, np.array(c.coeffs))[0] == 0
    mask.flags.writeable = False
    return mask


def zero_set(ctx: FieldCtx, c: Conic) -> tuple[Point, ...]:
    pts = enumerate_points(ctx)
    return tuple(pts[i] for i in np.flatnonzero(zero_mask(ctx, c)))


# -- classification ----------------------------------------------------------

_EXPECTED_SIZE = {
    ConicTag.PROPER: lambda q: q + 1,
    ConicTag.SINGLE_POINT: lambda q: 1,
    ConicTag.REPEATED_LINE: lambda q: q + 1,
    ConicTag.LINE_PAIR: lambda q: 2 * q + 1,
}


def _radical(ctx: FieldCtx, a: la.Mat) -> Point:
    for i, j in ((0, 1), (0, 2), (1, 2)):
        k = la.cross(ctx, a[i], a[j])
        if any(k):
            return Point(la.normalize_leading(ctx, k))
    raise AssertionError("rank-2 matrix without independent rows")


def _binary_zeros(ctx: FieldCtx, alpha2: int, beta: int, gamma: int, root: int):
    """Zeros (u, v) of alpha2 u^2 + beta uv + gamma v^2 given sqrt(disc)."""
    if alpha2 == 0:
        return [(1, 0), (ctx.neg(ctx.div(gamma, beta)), 1)]
    den = ctx.inv(ctx.mul(ctx.from_int(2), alpha2))
    nb = ctx.neg(beta)
    return [(ctx.mul(ctx.add(nb, root), den), 1), (ctx.mul(ctx.sub(nb, root), den), 1)]


@lru_cache(maxsize=1 << 16)
def _classify(ctx: FieldCtx, c: Conic) -> ConicClass:
    a = matrix(ctx, c)
    r = la.rank(ctx, a)
    if r == 3:
        return ConicClass(ConicTag.PROPER)
    if r == 1:
        row = next(row for row in a if any(row))
        return ConicClass(ConicTag.REPEATED_LINE, line=Line(la.normalize_leading(ctx, row)))
    rad = _radical(ctx, a)
    assert evaluate(ctx, c, rad) == 0
    # restrict to the coordinate line x_k = 0, which misses the radical
    k = next(i for i, x in enumerate(rad.coords) if x)
    i, j = [t for t in range(3) if t != k]
    half = ctx.inv(ctx.from_int(2))
    alpha2, beta, gamma = ctx.mul(half, a[i][i]), a[i][j], ctx.mul(half, a[j][j])
    disc = ctx.sub(ctx.mul(beta, beta), ctx.mul(ctx.from_int(4), ctx.mul(alpha2, gamma)))
    assert disc != 0
    if not ctx.is_square(disc):
        return ConicClass(ConicTag.SINGLE_POINT, point=rad)
    lines = []
    for u, v in _binary_zeros(ctx, alpha2, beta, gamma, ctx.sqrt(disc)):
        vec = [0, 0, 0]
        vec[i], vec[j] = u, v
        lines.append(line_through(ctx, rad, Point(la.normalize_leading(ctx, vec))))
    return ConicClass(ConicTag.LINE_PAIR, point=rad, lines=tuple(sorted(lines)))


def classify(ctx: FieldCtx, c: Conic, check: bool = False) -> ConicClass:
    """Classify ``c`` by the rank of its matrix.

    Rank 2 forms are split into line pairs and single points by whether the
    binary form induced on a line missing the radical has a square
    discriminant.  With ``check=True`` the verdict is cross-validated against
    the enumerated zero set.
    """
    cls = _classify(ctx, c)
    if check:
        zs = zero_set(ctx, c)
        assert len(zs) == _EXPECTED_SIZE[cls.tag](ctx.q), (c, cls, len(zs))
        if cls.tag is ConicTag.SINGLE_POINT:
            assert zs == (cls.point,)
    return cls


def is_proper(ctx: FieldCtx, c: Conic) -> bool:
    return la.det3(ctx, matrix(ctx, c)) != 0


def _require_proper(ctx: FieldCtx, c: Conic) -> la.Mat:
    a = matrix(ctx, c)
    if la.det3(ctx, a) == 0:
        raise NotProper(f"{c} is not a proper conic")
    return a


# -- polarity ----------------------------------------------------------------

def polar_line(ctx: FieldCtx, c: Conic, p: Point) -> Line:
    a = _require_proper(ctx, c)
    return Line(la.normalize_leading(ctx, la.mat_vec(ctx, a, p.coords)))


def _count_on_line(ctx: FieldCtx, c: Conic, ln: Line) -> int:
    return sum(1 for p in zero_set(ctx, c) if la.dot(ctx, ln.coords, p.coords) == 0)


def line_class(ctx: FieldCtx, c: Conic, ln: Line) -> LineClass:
    _require_proper(ctx, c)
    return {1: LineClass.TANGENT, 2: LineClass.SECANT, 0: LineClass.EXTERNAL}[
        _count_on_line(ctx, c, ln)
    ]


def point_class(ctx: FieldCtx, c: Conic, p: Point) -> PointClass:
    polar = polar_line(ctx, c, p)
    if evaluate(ctx, c, p) == 0:
        return PointClass.ON
    if _count_on_line(ctx, c, polar) == 2:
        return PointClass.EXTERNAL
    return PointClass.INTERNAL


def tangents(ctx: FieldCtx, c: Conic) -> tuple[Line, ...]:
    return tuple(sorted(polar_line(ctx, c, p) for p in zero_set(ctx, c)))


# -- intersections and transformations ---------------------------------------

def intersect(ctx: FieldCtx, c1: Conic, c2: Conic) -> tuple[Point, ...]:
    if c1 == c2:
        raise IdenticalConics("cannot intersect a conic with itself")
    both = zero_mask(ctx, c1) & zero_mask(ctx, c2)
    pts = enumerate_points(ctx)
    out = tuple(pts[i] for i in np.flatnonzero(both))
    if len(out) > 4:
        assert not (is_proper(ctx, c1) and is_proper(ctx, c2)), (c1, c2)
    return out


def substitute(ctx: FieldCtx, c: Conic, s) -> Conic:
    """The conic with matrix S^T A S.

    A point P lies on the result iff SP lies on ``c``; the image of ``c``
    under P -> SP is therefore ``substitute(c, S^-1)``.
    """
    m = s.m if isinstance(s, Collineation) else s
    a = matrix(ctx, c)
    return from_matrix(ctx, la.mat_mul(ctx, la.mat_mul(ctx, la.transpose(m), a), m))
