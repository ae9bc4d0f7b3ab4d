import pytest

from detloci.detschemes import (
    build_flag,
    delete_last_column,
    dimension_estimate,
    generic_matrix,
    has_expected_codim,
    minors,
    power_matrix,
    random_matrix,
    random_matrix_with_expected_codim,
)
from detloci.gfpoly import MultiPoly, PolyRing, PrimeField, graded_dim
from detloci.invariants import DegreeData, mdg

F = PrimeField(101)
LIN33 = DegreeData(3, 1, 2, 8, (1, 1, 1), (0, 0, 0))


def test_generic_matrix_layout():
    m = generic_matrix(LIN33, F)
    # row-major variable grid x0..x8
    for i in range(3):
        for j in range(3):
            assert m.entry(i, j) == MultiPoly.variable(9, F, 3 * i + j)
    d16 = DegreeData(4, 1, 2, 15, (1,) * 4, (0,) * 4)
    m16 = generic_matrix(d16, F)
    assert m16.entry(3, 3) == MultiPoly.variable(16, F, 15)
    with pytest.raises(ValueError):
        generic_matrix(DegreeData(3, 1, 2, 8, (1, 1, 2), (0, 0, 0)), F)
    with pytest.raises(ValueError):
        generic_matrix(DegreeData(3, 2, 2, 8, (1,) * 4, (0, 0, 0)), F)


def test_power_matrix():
    d = DegreeData(4, 1, 2, 15, (1, 1, 1, 2), (0,) * 4)
    m = power_matrix(d, F)
    assert m.entry(0, 3) == MultiPoly.variable(16, F, 3, power=2)
    assert m.pattern == (1, 1, 1, 2)
    with pytest.raises(ValueError):
        power_matrix(d, F, pattern=(1, 1, 1, 3))


def test_random_matrix_reproducible():
    d = DegreeData(3, 1, 2, 5, (1, 1, 1), (0, 0, 0))
    m1 = random_matrix(d, F, seed=4)
    m2 = random_matrix(d, F, seed=4)
    assert all(m1.entry(i, j) == m2.entry(i, j) for i in range(3) for j in range(3))
    m3 = random_matrix(d, F, seed=5)
    assert any(m1.entry(i, j) != m3.entry(i, j) for i in range(3) for j in range(3))


def test_minors_counts_and_degrees():
    m23 = generic_matrix(DegreeData(2, 2, 1, 5, (1, 1, 1), (0, 0)), F)
    i23 = minors(m23, 2)
    assert len(i23.gens) == 3 and set(i23.gen_degrees) == {2}
    i33 = minors(generic_matrix(LIN33, F), 2)
    assert len(i33.gens) == 9
    m44 = generic_matrix(DegreeData(4, 1, 2, 15, (1,) * 4, (0,) * 4), F)
    i44 = minors(m44, 3)
    assert len(i44.gens) == 16 and set(i44.gen_degrees) == {3}
    # every minor degree is bounded by the generator-degree formula
    dmix = DegreeData(4, 1, 2, 15, (1, 1, 1, 2), (0,) * 4)
    imix = minors(power_matrix(dmix, F), 3)
    assert max(imix.gen_degrees) == mdg(dmix)


def test_flag_structure_and_inclusion():
    d = DegreeData(3, 2, 2, 11, (1,) * 4, (0, 0, 0))
    flag = build_flag(generic_matrix(d, F))
    assert len(flag.stages) == d.c + d.r - 1
    assert [s.data.ncols for s in flag.stages] == [2, 3, 4]
    terms = lambda I: {frozenset(g.terms.items()) for g in I.gens}
    for lower, upper in zip(flag.stages, flag.stages[1:]):
        assert terms(lower) <= terms(upper)
    # stage generators are exactly the minors avoiding the deleted columns
    m = flag.matrix
    assert terms(minors(delete_last_column(m), 2)) == terms(flag.stages[1])


def test_flag_rejects_unit_entries():
    ring = PolyRing(9, F)
    x = lambda v: MultiPoly.variable(9, F, v)
    one = MultiPoly.constant(9, F, 1)
    # b_3 = a_j makes the whole bottom row unit-degree, including the
    # deleted third column
    d = DegreeData(3, 1, 2, 8, (1, 1, 1), (0, 0, 1))
    entries = [[x(0), x(1), x(2)], [x(3), x(4), x(5)], [one, one, one]]
    from detloci.detschemes import explicit_matrix
    m = explicit_matrix(d, ring, entries)
    with pytest.raises(ValueError):
        build_flag(m)


def test_dimension_estimate():
    # full polynomial ring
    ring = PolyRing(5, F)
    from detloci.detschemes import MinorsIdeal, HomMatrix

    i33 = minors(generic_matrix(LIN33, F), 2)
    assert dimension_estimate(i33) == 5           # dim R/I = 5, codim 4
    d = DegreeData(4, 1, 2, 15, (1,) * 4, (0,) * 4)
    i44 = minors(generic_matrix(d, F), 3)
    assert 16 - dimension_estimate(i44) == d.expected_codim
    with pytest.raises(ValueError):
        dimension_estimate(i33, window=(3, 4))


def test_dimension_estimate_zero_ideal_convention():
    # I = (x0): hypersurface, dim = n
    ring = PolyRing(4, F)
    from detloci.detschemes import HomMatrix
    d = DegreeData(2, 1, 1, 3, (1, 1), (0, 0))
    x = lambda v: MultiPoly.variable(4, F, v)
    from detloci.detschemes import explicit_matrix
    m = explicit_matrix(d, ring, [[x(0), x(1)], [x(2), x(3)]])
    det = minors(m, 2)
    assert dimension_estimate(det, window=(1, 6)) == 3


def test_expected_codim_certificate_and_retry():
    d = DegreeData(3, 1, 2, 8, (1, 1, 1), (0, 0, 0))
    ideal = minors(random_matrix(d, F, seed=3), 2)
    assert has_expected_codim(ideal, seed=3)
    m = random_matrix_with_expected_codim(d, F, seed=0)
    assert m.generic
    # expected codimension achieved in nearly all seeded draws
    hits = sum(
        1 for s in range(20)
        if has_expected_codim(minors(random_matrix(d, F, seed=s), 2), seed=s)
    )
    assert hits >= 19
