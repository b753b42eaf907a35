"""Pencils of conics: members, partition property, shape taxonomy, nesting."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .conic import (
    Conic,
    ConicClass,
    ConicTag,
    PointClass,
    classify,
    conic,
    intersect,
    is_proper,
    point_class,
    tangents,
    zero_mask,
    zero_set,
)
from .errors import (
    AllDegenerate,
    BadIndices,
    DomainError,
    HasBasePoints,
    IdenticalConics,
    NotDisjoint,
    NotProper,
    StructureViolation,
)
from .gf import FieldCtx
from .pg2 import Point


class ShapeTag(str, enum.Enum):
    Q_FORM = "q-form"
    QM1_FORM = "q-1-form"
    QM2_FORM = "q-2-form"
    ONE_POINT_A = "one-point-a"
    ONE_POINT_B = "one-point-b"
    TWO_POINT_DIAGONALIZABLE = "two-point-diagonalizable"
    TWO_POINT_NON_DIAGONALIZABLE = "two-point-non-diagonalizable"
    THREE_POINT = "three-point"
    FOUR_POINT = "four-point"
    ALL_DEGENERATE = "all-degenerate"

    def __str__(self) -> str:
        return self.value


DIAGONALIZABLE_SHAPES = frozenset({
    ShapeTag.QM1_FORM,
    ShapeTag.QM2_FORM,
    ShapeTag.TWO_POINT_DIAGONALIZABLE,
    ShapeTag.FOUR_POINT,
})


@dataclass(frozen=True)
class PencilShape:
    tag: ShapeTag
    # (member index, class) for every degenerate member
    degenerate_summary: tuple[tuple[int, ConicClass], ...] = ()

    def __str__(self) -> str:
        return str(self.tag)


@dataclass(frozen=True)
class Pencil:
    """The q+1 conics spanned by two quadratic forms.

    Members are ordered as ``C1, C2, V(E2 + alpha^k E1)`` for k = 0..q-2.
    """

    ctx: FieldCtx
    base: tuple[Conic, Conic]
    members: tuple[Conic, ...]
    member_classes: tuple[ConicClass, ...]
    base_points: tuple[Point, ...]

    @property
    def degenerate(self) -> tuple[tuple[int, ConicClass], ...]:
        return tuple((i, c) for i, c in enumerate(self.member_classes) if not c.proper)

    @property
    def all_degenerate(self) -> bool:
        return len(self.degenerate) > 3

    @property
    def proper_members(self) -> tuple[Conic, ...]:
        return tuple(m for m, c in zip(self.members, self.member_classes) if c.proper)

    def members_of(self, tag: ConicTag) -> list[tuple[Conic, ConicClass]]:
        return [(m, c) for m, c in zip(self.members, self.member_classes) if c.tag is tag]


def build_pencil(ctx: FieldCtx, c1: Conic, c2: Conic) -> Pencil:
    if c1 == c2:
        raise IdenticalConics("a pencil needs two distinct conics")
    e1, e2 = c1.coeffs, c2.coeffs
    members = [c1, c2]
    for k in range(ctx.q - 1):
        ak = ctx.alpha_pow(k)
        members.append(conic(ctx, [ctx.add(y, ctx.mul(ak, x)) for x, y in zip(e1, e2)]))
    assert len(set(members)) == ctx.q + 1
    base_points = intersect(ctx, c1, c2)
    return Pencil(
        ctx=ctx,
        base=(c1, c2),
        members=tuple(members),
        member_classes=tuple(classify(ctx, m) for m in members),
        base_points=base_points,
    )


def verify_partition(pencil: Pencil) -> bool:
    """True iff the member zero sets partition the whole plane."""
    if pencil.base_points:
        raise HasBasePoints("only pencils of disjoint conics partition the plane")
    ctx = pencil.ctx
    counts = np.zeros_like(zero_mask(ctx, pencil.members[0]), dtype=np.int64)
    for m in pencil.members:
        counts += zero_mask(ctx, m)
    return bool(np.all(counts == 1))


def _shape_tag(n_base: int, tags: Counter) -> ShapeTag | None:
    pt, ln, pair = tags[ConicTag.SINGLE_POINT], tags[ConicTag.REPEATED_LINE], tags[ConicTag.LINE_PAIR]
    if n_base == 0:
        return {
            (1, 0, 0): ShapeTag.Q_FORM,
            (1, 1, 0): ShapeTag.QM1_FORM,
            (2, 0, 1): ShapeTag.QM2_FORM,
        }.get((pt, ln, pair))
    if n_base == 1:
        # the table allows extra line members in both rows
        if pt == 1 and pair == 1:
            return ShapeTag.ONE_POINT_A
        if pt == 0 and pair == 0:
            return ShapeTag.ONE_POINT_B
        return None
    if n_base == 2:
        return {
            (0, 1, 1): ShapeTag.TWO_POINT_DIAGONALIZABLE,
            (0, 0, 1): ShapeTag.TWO_POINT_NON_DIAGONALIZABLE,
        }.get((pt, ln, pair))
    if n_base == 3 and (pt, ln, pair) == (0, 0, 2):
        return ShapeTag.THREE_POINT
    if n_base == 4 and (pt, ln, pair) == (0, 0, 3):
        return ShapeTag.FOUR_POINT
    return None


def shape(pencil: Pencil) -> PencilShape:
    """Shape of the pencil from its base points and degenerate members."""
    if pencil.all_degenerate:
        raise AllDegenerate("every member of this pencil is degenerate")
    degenerate = pencil.degenerate
    tag = _shape_tag(len(pencil.base_points), Counter(c.tag for _, c in degenerate))
    if tag is None:
        found = sorted(str(c.tag) for _, c in degenerate)
        raise StructureViolation(
            f"{len(pencil.base_points)} base points with degenerate members {found}"
        )
    return PencilShape(tag, degenerate)


# -- nested position ---------------------------------------------------------

class Uniformity(str, enum.Enum):
    ALL_EXTERNAL = "all-external"
    ALL_INTERNAL = "all-internal"
    MIXED = "mixed"


@dataclass(frozen=True)
class NestedReport:
    direction1: Uniformity  # points of C1 relative to C2
    direction2: Uniformity  # points of C2 relative to C1
    common_tangents: int

    @property
    def nested(self) -> bool:
        return Uniformity.MIXED not in (self.direction1, self.direction2)


def _uniformity(ctx: FieldCtx, pts, c: Conic) -> Uniformity:
    classes = {point_class(ctx, c, p) for p in pts}
    if classes == {PointClass.EXTERNAL}:
        return Uniformity.ALL_EXTERNAL
    if classes == {PointClass.INTERNAL}:
        return Uniformity.ALL_INTERNAL
    assert PointClass.ON not in classes
    return Uniformity.MIXED


def nested_position(ctx: FieldCtx, c1: Conic, c2: Conic) -> NestedReport:
    for c in (c1, c2):
        if not is_proper(ctx, c):
            raise NotProper(f"{c} is not a proper conic")
    if c1 == c2 or intersect(ctx, c1, c2):
        raise NotDisjoint("nested position needs disjoint conics")
    common = len(set(tangents(ctx, c1)) & set(tangents(ctx, c2)))
    return NestedReport(
        _uniformity(ctx, zero_set(ctx, c1), c2),
        _uniformity(ctx, zero_set(ctx, c2), c1),
        common,
    )


def nested_character_check(ctx: FieldCtx, c: int, i: int, j: int) -> bool:
    """Whether the points of C_i are external to C_j in the diagonal pencil.

    The pencil is spanned by V(x^2) and V(y^2 + c z^2), with members
    C_k = V(x^2 + alpha^k y^2 + alpha^k c z^2).  The verdict is the same for
    every point of C_i: external iff (-alpha^i / c)(alpha^i - alpha^j) is a
    square.
    """
    if (i - j) % (ctx.q - 1) == 0:
        raise BadIndices("i and j must differ modulo q-1")
    if c == 0 or ctx.is_square(ctx.neg(c)):
        raise DomainError("y^2 + c z^2 must be irreducible, i.e. -c a nonsquare")
    ai, aj = ctx.alpha_pow(i), ctx.alpha_pow(j)
    return ctx.is_square(ctx.mul(ctx.neg(ctx.div(ai, c)), ctx.sub(ai, aj)))
