"""Exhaustive censuses over all conics of PG(2, q) for small q.

Every conic is enumerated once (canonical scaling), its properness decided by
a vectorised determinant and its zero set stored as a boolean row, so
intersection counts reduce to array operations.  Pencil shapes still go
through :mod:`pgconics.pencil`, which is what the census is checking.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Optional

import numpy as np

from .conic import Conic, evaluate_many, is_proper, zero_mask
from .errors import BoundExceeded, DegeneratePointSet, NoneExist, NotProper
from .gf import FieldCtx
from .pencil import (
    ShapeTag,
    build_pencil,
    nested_position,
    shape,
    verify_partition,
)
from .pg2 import Point, enumerate_points, in_general_position, point_index

DEFAULT_BOUND = 9

DISJOINT_FORMS = (ShapeTag.QM1_FORM, ShapeTag.QM2_FORM, ShapeTag.Q_FORM)

_BASE_POINT_COUNT = {
    ShapeTag.Q_FORM: 0,
    ShapeTag.QM1_FORM: 0,
    ShapeTag.QM2_FORM: 0,
    ShapeTag.ONE_POINT_A: 1,
    ShapeTag.ONE_POINT_B: 1,
    ShapeTag.TWO_POINT_DIAGONALIZABLE: 2,
    ShapeTag.TWO_POINT_NON_DIAGONALIZABLE: 2,
    ShapeTag.THREE_POINT: 3,
    ShapeTag.FOUR_POINT: 4,
}


class ConicFilter(str, enum.Enum):
    ALL = "all"
    PROPER_ONLY = "proper"


# -- closed forms ------------------------------------------------------------

def proper_total(q: int) -> int:
    return q**5 - q**2


def through_points_formula(q: int, k: int) -> int:
    return {4: q - 2, 3: (q - 1) ** 2, 2: q**2 * (q - 1), 1: q**2 * (q**2 - 1)}[k]


def intersection_formulas(q: int) -> dict[int, int]:
    n5 = 1
    n4 = comb(q + 1, 4) * (q - 3)
    n3 = comb(q + 1, 3) * ((q - 1) ** 2 - 1) - 4 * n4
    n2 = comb(q + 1, 2) * (q**2 * (q - 1) - 1) - 6 * n4 - 3 * n3
    n1 = (q + 1) * (q**2 * (q**2 - 1) - 1) - 4 * n4 - 3 * n3 - 2 * n2
    n0 = proper_total(q) - n5 - n4 - n3 - n2 - n1
    return {0: n0, 1: n1, 2: n2, 3: n3, 4: n4, 5: n5}


def pencil_form_formulas(q: int) -> dict[ShapeTag, int]:
    forms = {
        ShapeTag.QM1_FORM: Fraction(2 * q - 3 * q**2 + q**3, 2),
        ShapeTag.QM2_FORM: Fraction(-6 * q + 5 * q**2 + 5 * q**3 - 5 * q**4 + q**5, 4),
        ShapeTag.Q_FORM: Fraction(6 * q - 3 * q**2 - 7 * q**3 + 3 * q**4 + q**5, 8),
    }
    assert all(v.denominator == 1 for v in forms.values())
    return {k: int(v) for k, v in forms.items()}


def pencil_form_recount(q: int) -> dict[ShapeTag, int]:
    """Pencil form counts with line pairs counted as unordered pairs.

    ``pencil_form_formulas`` counts ordered pairs of external lines for the
    (q-2)-form; halving that term and moving the excess to the q-form
    matches the enumeration.
    """
    ext = q * (q - 1) // 2
    qm1 = ext * (q - 2)
    qm2 = comb(ext, 2) * (q - 3)
    return {
        ShapeTag.QM1_FORM: qm1,
        ShapeTag.QM2_FORM: qm2,
        ShapeTag.Q_FORM: intersection_formulas(q)[0] - qm1 - qm2,
    }


# -- the conic table ---------------------------------------------------------

@dataclass(frozen=True)
class ConicTable:
    coeffs: np.ndarray   # (K, 6) canonical coefficient rows
    proper: np.ndarray   # (K,) bool
    zeros: np.ndarray    # (K, N) bool, zero set of each conic

    def conic(self, i: int) -> Conic:
        return Conic(tuple(int(x) for x in self.coeffs[i]))


def _check_bound(ctx: FieldCtx, bound: int) -> None:
    if ctx.q > bound:
        raise BoundExceeded(f"q = {ctx.q} exceeds the exhaustive bound {bound}")


def _canonical_coeffs(q: int) -> np.ndarray:
    blocks = []
    for lead in range(6):
        tail = np.array(list(itertools.product(range(q), repeat=5 - lead)), dtype=np.int64)
        tail = tail.reshape(q ** (5 - lead), 5 - lead)
        head = np.zeros((len(tail), lead + 1), dtype=np.int64)
        head[:, lead] = 1
        blocks.append(np.hstack([head, tail]))
    return np.vstack(blocks)


def _half_det(ctx: FieldCtx, co: np.ndarray) -> np.ndarray:
    """4abc + def - af^2 - be^2 - cd^2, i.e. det(A)/2."""
    a, b, c, d, e, f = (co[:, i] for i in range(6))
    m = ctx.vmul
    four = ctx.from_int(4)
    plus = ctx.vadd(m(four, m(a, m(b, c))), m(d, m(e, f)))
    minus = ctx.vadd(ctx.vadd(m(a, m(f, f)), m(b, m(e, e))), m(c, m(d, d)))
    return ctx.vsub(plus, minus)


@lru_cache(maxsize=None)
def conic_table(ctx: FieldCtx) -> ConicTable:
    co = _canonical_coeffs(ctx.q)
    table = ConicTable(co, _half_det(ctx, co) != 0, evaluate_many(ctx, co) == 0)
    for arr in (table.coeffs, table.proper, table.zeros):
        arr.flags.writeable = False
    return table


def enumerate_conics(
    ctx: FieldCtx, filter: ConicFilter = ConicFilter.ALL, bound: int = DEFAULT_BOUND
) -> Iterator[Conic]:
    """Every projective conic once, in canonical coefficient order."""
    _check_bound(ctx, bound)
    table = conic_table(ctx)
    idx = np.flatnonzero(table.proper) if filter is ConicFilter.PROPER_ONLY else range(len(table.coeffs))
    for i in idx:
        yield table.conic(i)


def _row_of(ctx: FieldCtx, c: Conic) -> int:
    table = conic_table(ctx)
    key = np.array(c.coeffs)
    return int(np.flatnonzero((table.coeffs == key).all(axis=1))[0])


# -- counting ----------------------------------------------------------------

def count_through_points(ctx: FieldCtx, pts, bound: int = DEFAULT_BOUND) -> int:
    """Number of proper conics through 1 to 4 points in general position."""
    _check_bound(ctx, bound)
    pts = tuple(pts)
    if not 1 <= len(pts) <= 4 or len(set(pts)) != len(pts) or not in_general_position(ctx, pts):
        raise DegeneratePointSet("need 1..4 distinct points, no three collinear")
    table = conic_table(ctx)
    index = point_index(ctx)
    cols = [index[p] for p in pts]
    return int(np.count_nonzero(table.proper & table.zeros[:, cols].all(axis=1)))


def intersection_census(ctx: FieldCtx, base: Conic, bound: int = DEFAULT_BOUND) -> dict[int, int]:
    """N_k: proper conics meeting ``base`` in exactly k points.

    Slot 5 counts ``base`` itself (a proper conic is fixed by five points).
    """
    _check_bound(ctx, bound)
    if not is_proper(ctx, base):
        raise NotProper("intersection census needs a proper base conic")
    table = conic_table(ctx)
    row = _row_of(ctx, base)
    sizes = (table.zeros & table.zeros[row]).sum(axis=1)
    proper = table.proper.copy()
    proper[row] = False
    counts = {k: int(np.count_nonzero(proper & (sizes == k))) for k in range(5)}
    counts[5] = 1
    assert sum(counts.values()) == int(np.count_nonzero(table.proper))
    return counts


def disjoint_partners(ctx: FieldCtx, base: Conic, bound: int = DEFAULT_BOUND) -> list[Conic]:
    """Proper conics disjoint from ``base``, in canonical order."""
    _check_bound(ctx, bound)
    table = conic_table(ctx)
    sizes = (table.zeros & zero_mask(ctx, base)).sum(axis=1)
    return [table.conic(i) for i in np.flatnonzero(table.proper & (sizes == 0))]


def pencil_form_census(ctx: FieldCtx, base: Conic, bound: int = DEFAULT_BOUND) -> dict[ShapeTag, int]:
    """Shape counts of P(base, C) over proper C disjoint from ``base``."""
    if not is_proper(ctx, base):
        raise NotProper("pencil form census needs a proper base conic")
    counts = {tag: 0 for tag in DISJOINT_FORMS}
    for other in disjoint_partners(ctx, base, bound):
        counts[shape(build_pencil(ctx, base, other)).tag] += 1
    return counts


@dataclass
class NestedVerdicts:
    """Per disjoint form: pencils seen and how many have every proper pair nested."""

    pencils: dict[ShapeTag, int] = field(default_factory=dict)
    all_nested: dict[ShapeTag, int] = field(default_factory=dict)


def pencil_all_nested(ctx: FieldCtx, pencil) -> bool:
    props = pencil.proper_members
    return all(nested_position(ctx, a, b).nested for a, b in itertools.combinations(props, 2))


def nested_census(ctx: FieldCtx, base: Conic, bound: int = DEFAULT_BOUND) -> NestedVerdicts:
    verdicts = NestedVerdicts({t: 0 for t in DISJOINT_FORMS}, {t: 0 for t in DISJOINT_FORMS})
    memo: dict[frozenset, bool] = {}
    for other in disjoint_partners(ctx, base, bound):
        pencil = build_pencil(ctx, base, other)
        tag = shape(pencil).tag
        key = frozenset(pencil.members)
        if key not in memo:
            memo[key] = pencil_all_nested(ctx, pencil)
        verdicts.pencils[tag] += 1
        verdicts.all_nested[tag] += memo[key]
    return verdicts


def partition_census(ctx: FieldCtx, bound: int = DEFAULT_BOUND) -> tuple[int, int]:
    """(pencils checked, failures) over every pair of distinct disjoint conics."""
    _check_bound(ctx, bound)
    table = conic_table(ctx)
    checked = failures = 0
    for i in range(len(table.coeffs)):
        meets = (table.zeros[i + 1:] & table.zeros[i]).any(axis=1)
        for j in np.flatnonzero(~meets) + i + 1:
            pencil = build_pencil(ctx, table.conic(i), table.conic(j))
            checked += 1
            failures += not verify_partition(pencil)
    return checked, failures


def find_instances(
    ctx: FieldCtx, tag: ShapeTag, count: int = 1, bound: int = DEFAULT_BOUND
) -> list[tuple[Conic, Conic]]:
    """First ``count`` proper pairs (in canonical pair order) with pencil shape ``tag``."""
    _check_bound(ctx, bound)
    if tag not in _BASE_POINT_COUNT:
        raise NoneExist(f"no pair of proper conics has a {tag} pencil")
    want = _BASE_POINT_COUNT[tag]
    table = conic_table(ctx)
    proper = np.flatnonzero(table.proper)
    zeros = table.zeros[proper]
    found: list[tuple[Conic, Conic]] = []
    for a in range(len(proper)):
        sizes = (zeros[a + 1:] & zeros[a]).sum(axis=1)
        for b in np.flatnonzero(sizes == want) + a + 1:
            c1, c2 = table.conic(proper[a]), table.conic(proper[b])
            if shape(build_pencil(ctx, c1, c2)).tag is tag:
                found.append((c1, c2))
                if len(found) == count:
                    return found
    if not found:
        raise NoneExist(f"no pair of proper conics over GF({ctx.q}) has a {tag} pencil")
    return found


# -- full report -------------------------------------------------------------

@dataclass
class CensusReport:
    q: int
    total_conics: int
    proper_conics: tuple[int, int]
    through_k_points: dict[int, tuple[int, int]]
    intersections: dict[int, tuple[int, int]]
    pencil_forms: dict[ShapeTag, tuple[int, int]]
    pencil_forms_recount: dict[ShapeTag, int]
    nested_verdicts: NestedVerdicts
    base: Conic
    discrepancies: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "base": str(self.base),
            "total_conics": self.total_conics,
            "proper_conics": list(self.proper_conics),
            "through_k_points": {str(k): list(v) for k, v in self.through_k_points.items()},
            "N": {str(k): list(v) for k, v in self.intersections.items()},
            "pencil_forms": {t.value: list(v) for t, v in self.pencil_forms.items()},
            "pencil_forms_recount": {t.value: v for t, v in self.pencil_forms_recount.items()},
            "nested": {
                t.value: [self.nested_verdicts.pencils[t], self.nested_verdicts.all_nested[t]]
                for t in DISJOINT_FORMS
            },
            "discrepancies": list(self.discrepancies),
        }


def _standard_points() -> tuple[Point, ...]:
    return (Point((1, 0, 0)), Point((0, 1, 0)), Point((0, 0, 1)), Point((1, 1, 1)))


def default_base(ctx: FieldCtx, bound: int = DEFAULT_BOUND) -> Conic:
    """The first proper conic in canonical order."""
    return next(enumerate_conics(ctx, ConicFilter.PROPER_ONLY, bound))


def run_census(ctx: FieldCtx, base: Optional[Conic] = None, bound: int = DEFAULT_BOUND) -> CensusReport:
    _check_bound(ctx, bound)
    q = ctx.q
    base = default_base(ctx, bound) if base is None else base
    if not is_proper(ctx, base):
        raise NotProper("census base must be a proper conic")
    table = conic_table(ctx)
    bad: list[str] = []

    def pair(label, enumerated, formula):
        if enumerated != formula:
            bad.append(f"{label}: enumerated {enumerated}, formula {formula}")
        return (enumerated, formula)

    assert len(enumerate_points(ctx)) == q * q + q + 1
    total = len(table.coeffs)
    proper = pair("proper conics", int(np.count_nonzero(table.proper)), proper_total(q))
    through = {
        k: pair(f"through {k} points", count_through_points(ctx, _standard_points()[:k], bound),
                through_points_formula(q, k))
        for k in (4, 3, 2, 1)
    }
    n_enum = intersection_census(ctx, base, bound)
    n_form = intersection_formulas(q)
    inter = {k: pair(f"N_{k}", n_enum[k], n_form[k]) for k in range(6)}

    nested = nested_census(ctx, base, bound)
    f_form = pencil_form_formulas(q)
    forms = {t: pair(f"pencils in {t}", nested.pencils[t], f_form[t]) for t in DISJOINT_FORMS}
    pair("sum of pencil forms vs N_0", sum(nested.pencils.values()), n_form[0])

    qm1 = ShapeTag.QM1_FORM
    if nested.all_nested[qm1] != nested.pencils[qm1]:
        bad.append(f"{qm1}: {nested.pencils[qm1] - nested.all_nested[qm1]} pencils with a non-nested pair")
    for t in (ShapeTag.Q_FORM, ShapeTag.QM2_FORM):
        # a single proper member (q-2 form at q = 3) has no pairs to test
        if q - {ShapeTag.Q_FORM: 0, ShapeTag.QM2_FORM: 2}[t] >= 2 and nested.all_nested[t]:
            bad.append(f"{t}: {nested.all_nested[t]} pencils with every proper pair nested")

    return CensusReport(q, total, proper, through, inter, forms, pencil_form_recount(q),
                        nested, base, bad)
