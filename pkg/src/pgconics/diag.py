"""Simultaneous diagonalization of two conics.

``decide`` answers from the shape of the pencil and, when the answer is yes,
builds a matrix M such that M^T A1 M and M^T A2 M are both diagonal.  Every
witness is checked before it is returned.

``oracle_triangle`` answers the same question without pencils: M^T A M is
diagonal iff the columns of M are pairwise conjugate under A, so it searches
all point triangles of the plane.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import linalg as la
from .conic import Conic, ConicTag, is_proper, matrix, substitute
from .errors import (
    BoundExceeded,
    IdenticalConics,
    StructureViolation,
    UnsupportedDegenerate,
    WitnessError,
    WrongShape,
)
from .gf import FieldCtx
from .pencil import (
    DIAGONALIZABLE_SHAPES,
    Pencil,
    PencilShape,
    ShapeTag,
    build_pencil,
    shape,
)
from .pg2 import (
    Collineation,
    Point,
    collinear,
    completing_point,
    enumerate_points,
    frame_map,
    incident,
    invert,
    line_through,
    point,
    point_array,
    points_on,
)


@dataclass(frozen=True)
class DiagOutcome:
    decision: bool
    shape: Optional[PencilShape] = None
    witness: Optional[Collineation] = None
    images: Optional[tuple[Conic, Conic]] = None

    @property
    def refusal(self) -> Optional[PencilShape]:
        return None if self.decision else self.shape


def _standard_frame(ctx: FieldCtx) -> tuple[Point, ...]:
    return (Point((1, 0, 0)), Point((0, 1, 0)), Point((0, 0, 1)), Point((1, 1, 1)))


def _require(pencil: Pencil, tag: ShapeTag) -> PencilShape:
    shp = shape(pencil)
    if shp.tag is not tag:
        raise WrongShape(f"expected a {tag} pencil, got {shp.tag}")
    return shp


def _check_diagonal(ctx: FieldCtx, m: Collineation, conics) -> tuple[Conic, ...]:
    images = tuple(substitute(ctx, c, m) for c in conics)
    bad = [str(c) for c, img in zip(conics, images) if not img.is_diagonal()]
    if bad:
        raise WitnessError(f"witness {m} leaves cross terms in {bad}")
    return images


def construct_qm1(pencil: Pencil) -> Collineation:
    """Witness for a disjoint pencil containing one point and one line.

    The point goes to [1,0,0] and the line to x = 0; a shear in the y, z
    plane then removes the remaining yz term.
    """
    ctx = pencil.ctx
    _require(pencil, ShapeTag.QM1_FORM)
    [(pt_member, pt_cls)] = pencil.members_of(ConicTag.SINGLE_POINT)
    [(_, line_cls)] = pencil.members_of(ConicTag.REPEATED_LINE)
    p0 = pt_cls.point
    q0, r0 = points_on(ctx, line_cls.line)[:2]
    x0 = completing_point(ctx, p0, q0, r0)
    s_inv = invert(ctx, frame_map(ctx, (p0, q0, r0, x0), _standard_frame(ctx)))
    img = substitute(ctx, pt_member, s_inv)
    a, b, _, d, e, f = img.coeffs
    if (a, d, e) != (0, 0, 0) or b != 1:
        raise WitnessError(f"point member did not move to [1,0,0]: {img}")
    shear = ((1, 0, 0), (0, 1, ctx.neg(ctx.div(f, ctx.from_int(2)))), (0, 0, 1))
    m = Collineation(la.normalize_matrix(ctx, la.mat_mul(ctx, s_inv.m, shear)))
    _check_diagonal(ctx, m, pencil.members)
    return m


def construct_qm2(pencil: Pencil) -> Collineation:
    """Witness for a disjoint pencil with two points and a line pair.

    The two points and the vertex of the line pair form a triangle which is
    self-polar for every member; it is sent to the reference triangle.
    """
    ctx = pencil.ctx
    _require(pencil, ShapeTag.QM2_FORM)
    p0, q0 = sorted(c.point for _, c in pencil.members_of(ConicTag.SINGLE_POINT))
    [(_, pair_cls)] = pencil.members_of(ConicTag.LINE_PAIR)
    r0 = pair_cls.point
    if collinear(ctx, p0, q0, r0):
        raise StructureViolation(f"distinguished points {p0}, {q0}, {r0} are collinear")
    x0 = completing_point(ctx, p0, q0, r0)
    m = invert(ctx, frame_map(ctx, (p0, q0, r0, x0), _standard_frame(ctx)))
    _check_diagonal(ctx, m, pencil.members)
    return m


def construct_twopt(pencil: Pencil) -> Collineation:
    """Witness for two conics through two common points.

    The base points go to [1,1,0] and [1,-1,0] and the vertex of the line
    pair to [0,0,1]; the repeated line becomes z^2 and the pair x^2 - y^2.
    """
    ctx = pencil.ctx
    _require(pencil, ShapeTag.TWO_POINT_DIAGONALIZABLE)
    b1, b2 = pencil.base_points
    [(_, pair_cls)] = pencil.members_of(ConicTag.LINE_PAIR)
    r0 = pair_cls.point
    if incident(ctx, line_through(ctx, b1, b2), r0):
        raise StructureViolation("line pair vertex lies on the line of the base points")
    x0 = completing_point(ctx, b1, b2, r0)
    minus = ctx.neg(1)
    # [1,0,1] completes the three targets to a frame for every odd q
    dst = (point(ctx, 1, 1, 0), point(ctx, 1, minus, 0), point(ctx, 0, 0, 1), point(ctx, 1, 0, 1))
    m = invert(ctx, frame_map(ctx, (b1, b2, r0, x0), dst))
    _check_diagonal(ctx, m, pencil.members)
    return m


def construct_fourpt(pencil: Pencil) -> Collineation:
    """Witness for two conics through four common points.

    The base points go to [1,+-1,+-1]; the three line pairs through them are
    then y^2 - z^2, x^2 - y^2 and x^2 - z^2.
    """
    ctx = pencil.ctx
    _require(pencil, ShapeTag.FOUR_POINT)
    mi = ctx.neg(1)
    dst = (point(ctx, 1, 1, 1), point(ctx, 1, mi, 1), point(ctx, 1, 1, mi), point(ctx, 1, mi, mi))
    m = invert(ctx, frame_map(ctx, pencil.base_points, dst))
    _check_diagonal(ctx, m, pencil.members)
    return m


_CONSTRUCTORS = {
    ShapeTag.QM1_FORM: construct_qm1,
    ShapeTag.QM2_FORM: construct_qm2,
    ShapeTag.TWO_POINT_DIAGONALIZABLE: construct_twopt,
    ShapeTag.FOUR_POINT: construct_fourpt,
}


def decide(ctx: FieldCtx, c1: Conic, c2: Conic) -> DiagOutcome:
    """Decide whether ``c1`` and ``c2`` are simultaneously diagonalizable.

    Conics sharing points must both be proper.  A yes comes with a verified
    witness M and the canonical diagonal images of both conics; a no carries
    the pencil shape as its certificate.
    """
    if c1 == c2:
        raise IdenticalConics("the two conics coincide")
    pencil = build_pencil(ctx, c1, c2)
    if pencil.base_points and not (is_proper(ctx, c1) and is_proper(ctx, c2)):
        raise UnsupportedDegenerate("intersecting inputs must both be proper conics")
    shp = shape(pencil)
    if shp.tag not in DIAGONALIZABLE_SHAPES:
        return DiagOutcome(False, shp)
    m = _CONSTRUCTORS[shp.tag](pencil)
    images = _check_diagonal(ctx, m, (c1, c2))
    return DiagOutcome(True, shp, m, images)


def verify_witness(ctx: FieldCtx, m, c1: Conic, c2: Conic) -> tuple[Conic, Conic]:
    """Diagonal images of both conics under ``m``; raises WitnessError otherwise."""
    if not isinstance(m, Collineation):
        m = Collineation(tuple(tuple(row) for row in m))
    if la.det3(ctx, m.m) == 0:
        raise WitnessError("witness matrix is singular")
    return _check_diagonal(ctx, m, (c1, c2))


# -- oracles -----------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def conjugacy(ctx: FieldCtx, c: Conic) -> np.ndarray:
    """Boolean (N, N) matrix of P^T A Q == 0 over all point pairs."""
    pts = point_array(ctx)
    a = np.array(matrix(ctx, c), dtype=np.int64)
    if ctx.n == 1:
        vals = (pts @ a % ctx.p) @ pts.T % ctx.p
    else:
        ap = np.zeros_like(pts)
        for j in range(3):
            ap = ctx.vadd(ap, ctx.vmul(pts[:, j:j + 1], a[None, j, :]))
        vals = np.zeros((len(pts), len(pts)), dtype=np.int64)
        for j in range(3):
            vals = ctx.vadd(vals, ctx.vmul(ap[:, None, j], pts[None, :, j]))
    out = vals == 0
    out.flags.writeable = False
    return out


def oracle_triangle(ctx: FieldCtx, c1: Conic, c2: Conic) -> DiagOutcome:
    """Search every triangle {P, Q, R} for one self-polar under both conics.

    Triples are scanned in lexicographic order of point indices, so the
    witness (P|Q|R) is the canonically smallest one.
    """
    if c1 == c2:
        raise IdenticalConics("the two conics coincide")
    pts = enumerate_points(ctx)
    conj = conjugacy(ctx, c1) & conjugacy(ctx, c2)
    n = len(pts)
    for i in range(n):
        row = conj[i]
        for j in np.flatnonzero(row[i + 1:]) + i + 1:
            ks = np.flatnonzero(row[j + 1:] & conj[j, j + 1:]) + j + 1
            for k in ks:
                p, q, r = pts[i], pts[j], pts[k]
                if collinear(ctx, p, q, r):
                    continue
                m = Collineation(la.normalize_matrix(ctx, la.transpose((p.coords, q.coords, r.coords))))
                return DiagOutcome(True, witness=m, images=_check_diagonal(ctx, m, (c1, c2)))
    return DiagOutcome(False)


def _pgl_matrices(ctx: FieldCtx):
    for flat in itertools.product(range(ctx.q), repeat=9):
        first = next((x for x in flat if x), 0)
        if first != 1:
            continue
        m = (flat[0:3], flat[3:6], flat[6:9])
        if la.det3(ctx, m):
            yield m


def oracle_pgl(ctx: FieldCtx, c1: Conic, c2: Conic, bound: int = 3) -> DiagOutcome:
    """Brute force over all of PGL(3, q); only feasible for q = 3."""
    if ctx.q > bound:
        raise BoundExceeded(f"PGL(3,{ctx.q}) search exceeds bound q <= {bound}")
    if c1 == c2:
        raise IdenticalConics("the two conics coincide")
    a1, a2 = matrix(ctx, c1), matrix(ctx, c2)
    for m in _pgl_matrices(ctx):
        mt = la.transpose(m)
        if all(_offdiag_zero(la.mat_mul(ctx, la.mat_mul(ctx, mt, a), m)) for a in (a1, a2)):
            w = Collineation(m)
            return DiagOutcome(True, witness=w, images=_check_diagonal(ctx, w, (c1, c2)))
    return DiagOutcome(False)


def _offdiag_zero(m: la.Mat) -> bool:
    return m[0][1] == 0 and m[0][2] == 0 and m[1][2] == 0
