from __future__ import annotations

import itertools
import random

import pytest

from pgconics.census import conic_table, find_instances
from pgconics.conic import conic, substitute
from pgconics.diag import (
    construct_qm1,
    construct_qm2,
    construct_twopt,
    decide,
    oracle_pgl,
    oracle_triangle,
    verify_witness,
)
from pgconics.errors import (
    BoundExceeded,
    IdenticalConics,
    UnsupportedDegenerate,
    WitnessError,
    WrongShape,
)
from pgconics.gf import field_create
from pgconics.pencil import DIAGONALIZABLE_SHAPES, ShapeTag, build_pencil
from pgconics.pg2 import apply_point, collineation, point

C_EX = (0, 0, 0, 1, 3, 1)
C_EX2 = (1, 1, 1, 0, 1, 0)
M_EX = ((1, 0, 1), (4, 1, 1), (1, 4, 3))


def _assert_yes(ctx, outcome, c1, c2):
    assert outcome.decision
    img1, img2 = outcome.images
    assert img1.is_diagonal() and img2.is_diagonal()
    assert verify_witness(ctx, outcome.witness, c1, c2) == outcome.images


def test_worked_example(gf5):
    c1, c2 = conic(gf5, C_EX), conic(gf5, C_EX2)
    outcome = decide(gf5, c1, c2)
    _assert_yes(gf5, outcome, c1, c2)
    assert outcome.shape.tag is ShapeTag.QM1_FORM
    img1, img2 = verify_witness(gf5, M_EX, c1, c2)
    assert (img1.coeffs, img2.coeffs) == ((1, 4, 3, 0, 0, 0), (1, 3, 1, 0, 0, 0))


def test_qm1_construction_follows_the_example_steps(gf5):
    pencil = build_pencil(gf5, conic(gf5, C_EX), conic(gf5, C_EX2))
    m = construct_qm1(pencil)
    # the point member ends up as y^2 + 2z^2 after the shear
    point_member = pencil.members[2]
    assert substitute(gf5, point_member, m).coeffs == (0, 1, 2, 0, 0, 0)
    assert apply_point(gf5, m, point(gf5, 1, 0, 0)) == point(gf5, 1, 4, 1)


def test_oracle_agrees_on_the_example(gf5):
    c1, c2 = conic(gf5, C_EX), conic(gf5, C_EX2)
    verdict = oracle_triangle(gf5, c1, c2)
    _assert_yes(gf5, verdict, c1, c2)
    # the example triangle is self-polar too
    cols = [point(gf5, *[M_EX[r][k] for r in range(3)]) for k in range(3)]
    m = collineation(gf5, [[p.coords[r] for p in cols] for r in range(3)])
    verify_witness(gf5, m, c1, c2)


def test_already_canonical_qm1_input(gf5):
    c1, c2 = conic(gf5, (1, 0, 0, 0, 0, 0)), conic(gf5, (0, 1, 2, 0, 0, 0))
    _assert_yes(gf5, decide(gf5, c1, c2), c1, c2)


def test_q_form_pair_is_refused(gf3):
    [(c1, c2)] = find_instances(gf3, ShapeTag.Q_FORM)
    outcome = decide(gf3, c1, c2)
    assert not outcome.decision
    assert outcome.refusal.tag is ShapeTag.Q_FORM
    assert not oracle_triangle(gf3, c1, c2).decision
    assert not oracle_pgl(gf3, c1, c2).decision


def test_three_point_pair_is_refused(gf5):
    [(c1, c2)] = find_instances(gf5, ShapeTag.THREE_POINT)
    outcome = decide(gf5, c1, c2)
    assert not outcome.decision and outcome.shape.tag is ShapeTag.THREE_POINT
    assert not oracle_triangle(gf5, c1, c2).decision


@pytest.mark.parametrize("tag", sorted(DIAGONALIZABLE_SHAPES))
def test_census_instances_get_verified_witnesses(gf5, tag):
    for c1, c2 in find_instances(gf5, tag, count=3):
        outcome = decide(gf5, c1, c2)
        assert outcome.shape.tag is tag
        _assert_yes(gf5, outcome, c1, c2)


def test_canonical_two_point_and_four_point_inputs(gf5):
    x2_y2, z2, x2_z2 = (conic(gf5, c) for c in [(1, 4, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (1, 0, 4, 0, 0, 0)])
    pencil = build_pencil(gf5, x2_y2, z2)
    m = construct_twopt(pencil)
    assert all(substitute(gf5, c, m).is_diagonal() for c in pencil.members)
    four = build_pencil(gf5, x2_y2, x2_z2)
    assert all(c.is_diagonal() for c in four.members)


def test_canonical_qm2_triangle(gf5):
    # c = 2 gives y^2 + 2z^2 irreducible; x^2 - y^2 is the line pair
    pencil = build_pencil(gf5, conic(gf5, (0, 1, 2, 0, 0, 0)), conic(gf5, (1, 4, 0, 0, 0, 0)))
    assert all(c.is_diagonal() for c in pencil.members)
    m = construct_qm2(pencil)
    assert all(substitute(gf5, c, m).is_diagonal() for c in pencil.members)


def test_wrong_shape_rejected(gf5):
    [(c1, c2)] = find_instances(gf5, ShapeTag.TWO_POINT_NON_DIAGONALIZABLE)
    with pytest.raises(WrongShape):
        construct_twopt(build_pencil(gf5, c1, c2))


def test_decide_preconditions(gf5):
    c = conic(gf5, C_EX)
    with pytest.raises(IdenticalConics):
        decide(gf5, c, c)
    with pytest.raises(UnsupportedDegenerate):
        decide(gf5, conic(gf5, (1, 4, 0, 0, 0, 0)), conic(gf5, (0, 0, 1, 0, 0, 0)))


def test_bad_witness_detected(gf5):
    with pytest.raises(WitnessError):
        verify_witness(gf5, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), conic(gf5, C_EX), conic(gf5, C_EX2))
    with pytest.raises(WitnessError):
        verify_witness(gf5, ((1, 0, 0), (1, 0, 0), (0, 0, 1)), conic(gf5, C_EX), conic(gf5, C_EX2))


def test_pgl_oracle_is_bounded(gf5):
    with pytest.raises(BoundExceeded):
        oracle_pgl(gf5, conic(gf5, C_EX), conic(gf5, C_EX2))


def test_decide_matches_pgl_oracle_on_q3_sample(gf3):
    table = conic_table(gf3)
    rng = random.Random(3)
    proper = [table.conic(i) for i in range(len(table.coeffs)) if table.proper[i]]
    for c1, c2 in rng.sample(list(itertools.combinations(proper, 2)), 25):
        assert decide(gf3, c1, c2).decision == oracle_pgl(gf3, c1, c2).decision


@pytest.mark.parametrize("q", [7, 9])
def test_worked_pattern_in_other_fields(q):
    ctx = field_create(q)
    for tag in (ShapeTag.QM1_FORM, ShapeTag.FOUR_POINT):
        [(c1, c2)] = find_instances(ctx, tag)
        outcome = decide(ctx, c1, c2)
        _assert_yes(ctx, outcome, c1, c2)
        assert oracle_triangle(ctx, c1, c2).decision
