"""Points, lines and collineations of PG(2, q)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg as la
from .errors import DegenerateFrame, DomainError, IdenticalArguments
from .gf import FieldCtx


@dataclass(frozen=True, order=True)
class Point:
    """Column vector [x, y, z] with first nonzero coordinate 1."""

    coords: tuple[int, int, int]

    def __str__(self) -> str:
        return ":".join(map(str, self.coords))

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True, order=True)
class Line:
    """Row vector [u, v, w], the line ux + vy + wz = 0."""

    coords: tuple[int, int, int]

    def __str__(self) -> str:
        return ":".join(map(str, self.coords))

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Collineation:
    """Regular 3x3 matrix S acting as P -> SP."""

    m: la.Mat

    def __str__(self) -> str:
        return format_matrix(self.m)


def format_matrix(m: la.Mat) -> str:
    return ";".join(",".join(map(str, row)) for row in m)


def _checked(ctx: FieldCtx, coords) -> tuple[int, int, int]:
    coords = tuple(int(c) for c in coords)
    if len(coords) != 3 or any(not 0 <= c < ctx.q for c in coords):
        raise DomainError(f"bad homogeneous triple {coords} for GF({ctx.q})")
    if not any(coords):
        raise DomainError("the zero vector is not a projective point")
    return la.normalize_leading(ctx, coords)


def point(ctx: FieldCtx, *coords) -> Point:
    if len(coords) == 1:
        coords = tuple(coords[0])
    return Point(_checked(ctx, coords))


def line(ctx: FieldCtx, *coords) -> Line:
    if len(coords) == 1:
        coords = tuple(coords[0])
    return Line(_checked(ctx, coords))


def parse_point(ctx: FieldCtx, text: str) -> Point:
    return point(ctx, [int(t) for t in text.split(":")])


@lru_cache(maxsize=None)
def enumerate_points(ctx: FieldCtx) -> tuple[Point, ...]:
    """All q^2+q+1 points, sorted by their normalized coordinate tuples."""
    q = ctx.q
    pts = [Point((0, 0, 1))]
    pts += [Point((0, 1, z)) for z in range(q)]
    pts += [Point((1, y, z)) for y in range(q) for z in range(q)]
    return tuple(pts)


@lru_cache(maxsize=None)
def point_index(ctx: FieldCtx) -> dict[Point, int]:
    return {p: i for i, p in enumerate(enumerate_points(ctx))}


@lru_cache(maxsize=None)
def point_array(ctx: FieldCtx) -> np.ndarray:
    """(N, 3) array of point coordinates in canonical order."""
    return np.array([p.coords for p in enumerate_points(ctx)], dtype=np.int64)


def enumerate_lines(ctx: FieldCtx) -> tuple[Line, ...]:
    return tuple(Line(p.coords) for p in enumerate_points(ctx))


def incident(ctx: FieldCtx, ln: Line, pt: Point) -> bool:
    return la.dot(ctx, ln.coords, pt.coords) == 0


def line_through(ctx: FieldCtx, p: Point, q: Point) -> Line:
    if p == q:
        raise IdenticalArguments("a line needs two distinct points")
    return Line(la.normalize_leading(ctx, la.cross(ctx, p.coords, q.coords)))


def meet(ctx: FieldCtx, l1: Line, l2: Line) -> Point:
    if l1 == l2:
        raise IdenticalArguments("identical lines have no unique meet")
    return Point(la.normalize_leading(ctx, la.cross(ctx, l1.coords, l2.coords)))


def collinear(ctx: FieldCtx, p: Point, q: Point, r: Point) -> bool:
    return la.det3(ctx, (p.coords, q.coords, r.coords)) == 0


def points_on(ctx: FieldCtx, ln: Line) -> tuple[Point, ...]:
    return tuple(p for p in enumerate_points(ctx) if incident(ctx, ln, p))


def in_general_position(ctx: FieldCtx, pts) -> bool:
    return all(not collinear(ctx, *t) for t in itertools.combinations(pts, 3))


def completing_point(ctx: FieldCtx, p: Point, q: Point, r: Point) -> Point:
    """First point in canonical order that makes {p, q, r, X} a frame."""
    for x in enumerate_points(ctx):
        if in_general_position(ctx, (p, q, r, x)):
            return x
    raise DegenerateFrame("no completing point")  # pragma: no cover


def _frame_matrix(ctx: FieldCtx, pts) -> la.Mat:
    """Matrix sending the standard frame e1, e2, e3, (1,1,1) to ``pts``."""
    cols = la.transpose(tuple(p.coords for p in pts[:3]))
    try:
        lam = la.solve3(ctx, cols, pts[3].coords)
    except ZeroDivisionError:
        raise DegenerateFrame("first three frame points are collinear") from None
    scaled = [la.scale(ctx, k, p.coords) for k, p in zip(lam, pts[:3])]
    return la.transpose(tuple(scaled))


def frame_map(ctx: FieldCtx, src, dst) -> Collineation:
    """The unique collineation with ``S src[i] = dst[i]`` for i = 0..3."""
    src, dst = tuple(src), tuple(dst)
    if len(src) != 4 or len(dst) != 4:
        raise DomainError("a frame has exactly four points")
    for pts in (src, dst):
        if not in_general_position(ctx, pts):
            raise DegenerateFrame("three frame points are collinear")
    a = _frame_matrix(ctx, src)
    b = _frame_matrix(ctx, dst)
    s = la.mat_mul(ctx, b, la.inverse3(ctx, a))
    return Collineation(la.normalize_matrix(ctx, s))


def collineation(ctx: FieldCtx, m) -> Collineation:
    m = tuple(tuple(int(x) for x in row) for row in m)
    if la.det3(ctx, m) == 0:
        raise DomainError("collineation matrix is singular")
    return Collineation(la.normalize_matrix(ctx, m))


def apply_point(ctx: FieldCtx, s: Collineation, p: Point) -> Point:
    return Point(la.normalize_leading(ctx, la.mat_vec(ctx, s.m, p.coords)))


def apply_line(ctx: FieldCtx, s: Collineation, ln: Line) -> Line:
    inv = la.inverse3(ctx, s.m)
    return Line(la.normalize_leading(ctx, la.vec_mat(ctx, ln.coords, inv)))


def compose(ctx: FieldCtx, s: Collineation, t: Collineation) -> Collineation:
    """Matrix product S T, i.e. apply T first."""
    return Collineation(la.normalize_matrix(ctx, la.mat_mul(ctx, s.m, t.m)))


def invert(ctx: FieldCtx, s: Collineation) -> Collineation:
    return Collineation(la.normalize_matrix(ctx, la.inverse3(ctx, s.m)))


def identity() -> Collineation:
    return Collineation(la.IDENTITY)
