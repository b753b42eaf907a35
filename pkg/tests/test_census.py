from __future__ import annotations

import pytest

from pgconics.census import (
    ConicFilter,
    count_through_points,
    default_base,
    enumerate_conics,
    find_instances,
    intersection_census,
    intersection_formulas,
    nested_census,
    partition_census,
    pencil_form_census,
    pencil_form_formulas,
    pencil_form_recount,
    proper_total,
    run_census,
    through_points_formula,
)
from pgconics.conic import conic
from pgconics.errors import BoundExceeded, DegeneratePointSet, NoneExist, NotProper
from pgconics.gf import field_create
from pgconics.pencil import ShapeTag
from pgconics.pg2 import point

STANDARD = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


@pytest.mark.parametrize("q,total", [(3, 234), (5, 3100), (7, 16758)])
def test_proper_conic_totals(q, total):
    ctx = field_create(q)
    assert proper_total(q) == total
    assert sum(1 for _ in enumerate_conics(ctx, ConicFilter.PROPER_ONLY)) == total
    assert sum(1 for _ in enumerate_conics(ctx)) == (q**6 - 1) // (q - 1)


@pytest.mark.parametrize("q,expected", [(3, (1, 4, 18, 72)), (5, (3, 16, 100, 600))])
def test_conics_through_points(q, expected):
    ctx = field_create(q)
    pts = [point(ctx, *c) for c in STANDARD]
    got = tuple(count_through_points(ctx, pts[:k]) for k in (4, 3, 2, 1))
    assert got == expected
    assert got == tuple(through_points_formula(q, k) for k in (4, 3, 2, 1))


def test_collinear_points_rejected(gf5):
    pts = [point(gf5, 1, 0, 0), point(gf5, 0, 1, 0), point(gf5, 1, 1, 0)]
    with pytest.raises(DegeneratePointSet):
        count_through_points(gf5, pts)


@pytest.mark.parametrize("q,expected", [
    (3, (39, 116, 66, 12, 0, 1)),
    (5, (720, 1404, 765, 180, 30, 1)),
    (7, (4473, 7160, 4004, 840, 280, 1)),
])
def test_intersection_numbers(q, expected):
    ctx = field_create(q)
    assert tuple(intersection_formulas(q).values()) == expected
    got = intersection_census(ctx, default_base(ctx))
    assert tuple(got[k] for k in range(6)) == expected


def test_intersection_census_needs_proper_base(gf5):
    with pytest.raises(NotProper):
        intersection_census(gf5, conic(gf5, (1, 0, 0, 0, 0, 0)))


def test_pencil_form_closed_forms():
    assert pencil_form_formulas(3) == {ShapeTag.QM1_FORM: 3, ShapeTag.QM2_FORM: 0, ShapeTag.Q_FORM: 36}
    assert tuple(pencil_form_formulas(5).values()) == (30, 180, 510)
    assert tuple(pencil_form_formulas(7).values()) == (105, 1680, 2688)
    for q in (3, 5, 7, 9, 11):
        assert sum(pencil_form_formulas(q).values()) == intersection_formulas(q)[0]
        assert sum(pencil_form_recount(q).values()) == intersection_formulas(q)[0]


@pytest.mark.parametrize("q", [3, 5, 7])
def test_pencil_form_census_matches_recount(q):
    """Enumeration agrees with the count that treats line pairs as unordered."""
    ctx = field_create(q)
    assert pencil_form_census(ctx, default_base(ctx)) == pencil_form_recount(q)


def test_pencil_form_census_independent_of_base(gf5):
    base = conic(gf5, (1, 1, 1, 0, 0, 0))
    assert pencil_form_census(gf5, base) == pencil_form_census(gf5, default_base(gf5))


def test_nested_census_q5(gf5):
    verdicts = nested_census(gf5, default_base(gf5))
    assert verdicts.all_nested[ShapeTag.QM1_FORM] == verdicts.pencils[ShapeTag.QM1_FORM] == 30
    assert verdicts.all_nested[ShapeTag.Q_FORM] == 0
    assert verdicts.all_nested[ShapeTag.QM2_FORM] == 0


def test_partition_census_q3(gf3):
    checked, failures = partition_census(gf3)
    assert checked > 0 and failures == 0


def test_find_instances(gf3, gf5):
    assert len(find_instances(gf3, ShapeTag.Q_FORM)) == 1
    assert len(find_instances(gf5, ShapeTag.FOUR_POINT)) == 1
    assert len(find_instances(gf5, ShapeTag.QM2_FORM, count=4)) == 4
    with pytest.raises(NoneExist):
        find_instances(gf3, ShapeTag.QM2_FORM)
    with pytest.raises(NoneExist):
        find_instances(gf3, ShapeTag.ALL_DEGENERATE)


def test_bound_enforced():
    with pytest.raises(BoundExceeded):
        run_census(field_create(11))
    with pytest.raises(BoundExceeded):
        find_instances(field_create(7), ShapeTag.Q_FORM, bound=5)


def test_report_q3_is_clean(gf3):
    report = run_census(gf3)
    assert report.ok
    assert report.total_conics == 364
    data = report.to_dict()
    assert data["N"]["4"] == [0, 0]
    assert data["pencil_forms"]["q-form"] == [36, 36]


def test_report_q5_flags_pencil_forms(gf5):
    report = run_census(gf5)
    assert not report.ok
    assert len(report.discrepancies) == 2
    assert all("pencils in q-" in d for d in report.discrepancies)
    assert report.pencil_forms[ShapeTag.QM1_FORM] == (30, 30)
    assert report.pencil_forms_recount == {ShapeTag.QM1_FORM: 30, ShapeTag.QM2_FORM: 90, ShapeTag.Q_FORM: 600}
