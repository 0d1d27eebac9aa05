import pytest

from motivekit.fibration import FibrationScenario, split_motive
from motivekit.inference import FiberDescriptor
from motivekit.motives import MotiveObject
from motivekit.realization import (GradedPoly, INFINITE, Rank, RealizationError,
                                   check_decomposition_realization, descriptor_poly,
                                   family, poincare_of)
from motivekit.corr import Presentation


def test_projective_line_polynomial():
    entry = family("projective_space", dim=1)
    assert entry.poincare == GradedPoly.of(1, 0, 1)


def test_tower_polynomial_by_convolution():
    # twisted tower over the plane: sum of three shifted copies
    pres = Presentation()
    b = pres.add_atom("B", 2)
    tower = MotiveObject.twisted_tower(b, range(3))
    plane = family("projective_space", dim=2).poincare
    table = {"B": plane}
    total = poincare_of(tower, table)
    by_hand = plane + plane.shift(2) + plane.shift(4)
    assert total == by_hand == GradedPoly.of(1, 0, 2, 0, 3, 0, 2, 0, 1)


def test_empty_object_gives_zero():
    assert poincare_of(MotiveObject(()), {}).is_zero()


def test_missing_atom_entry():
    pres = Presentation()
    b = pres.add_atom("B", 1)
    with pytest.raises(RealizationError, match="no Poincare"):
        poincare_of(MotiveObject.of((b, 0)), {})


def test_quadric_polynomials():
    assert family("quadric", dim=3).poincare == GradedPoly.of(1, 0, 1, 0, 1, 0, 1)
    assert family("quadric", dim=2).poincare == GradedPoly.of(1, 0, 2, 0, 1)
    assert family("quadric", dim=4).poincare == \
        GradedPoly.of(1, 0, 1, 0, 2, 0, 1, 0, 1)


def test_quadric_triviality_levels():
    assert family("quadric", dim=3).chow_trivial_below == 2
    assert family("quadric", dim=2).chow_trivial_below == 1
    assert family("quadric", dim=2).chow_ranks[1] == Rank(2)


def test_cubic_triviality():
    entry = family("cubic", dim=5)
    assert entry.chow_trivial_below == 2
    # classical surface check: the cubic surface has middle Betti number 7
    assert family("cubic", dim=2).poincare == GradedPoly.of(1, 0, 7, 0, 1)


def test_curve_entries():
    g2 = family("curve", genus=2)
    assert g2.poincare == GradedPoly.of(1, 4, 1)
    assert g2.chow_ranks[0] == INFINITE
    assert family("curve", genus=0).chow_trivial_below == 2


def test_unknown_family():
    with pytest.raises(RealizationError, match="unknown family"):
        family("abelian_threefold")


def test_total_betti_conservation():
    p = family("quadric", dim=4).poincare
    q = family("projective_space", dim=2).poincare
    assert (p + q.shift(2)).total() == p.total() + q.total()


# -- residual ledger -------------------------------------------------------------

def quadric_bundle(total_dim, base_dim):
    return FibrationScenario(total_dim, base_dim, flat=True,
                             fiber=FiberDescriptor("quadric",
                                                   total_dim - base_dim))


def smooth_family_total(base_poly, c):
    total = GradedPoly.zero()
    for i in range(c + 1):
        total = total + base_poly.shift(2 * i)
    if c % 2 == 0 and c > 0:
        total = total + base_poly.shift(c)
    return total


def test_odd_quadric_bundle_zero_residual():
    for base_dim, base_poly in ((1, family("projective_space", dim=1).poincare),
                                (2, family("projective_space", dim=2).poincare)):
        dec = split_motive(quadric_bundle(base_dim + 3, base_dim))
        total = smooth_family_total(base_poly, 3)
        report = check_decomposition_realization(dec, total, base_poly)
        assert report.accepted
        assert report.residual.is_zero()


@pytest.mark.parametrize("genus", [0, 1, 2])
def test_even_quadric_bundle_over_curves(genus):
    base_poly = family("curve", genus=genus).poincare
    dec = split_motive(quadric_bundle(3, 1))
    total = base_poly.multiply(family("quadric", dim=2).poincare)
    report = check_decomposition_realization(dec, total, base_poly)
    assert report.accepted
    assert report.residual == base_poly.shift(2)
    assert report.candidate_remainder == base_poly
    assert report.total_rank_conserved


def test_tampered_total_rejected():
    base_poly = family("curve", genus=1).poincare
    dec = split_motive(quadric_bundle(3, 1))
    good = base_poly.multiply(family("quadric", dim=2).poincare)
    bad = good - GradedPoly.of(0, 1)  # remove one odd-degree class
    report = check_decomposition_realization(dec, bad, base_poly)
    assert not report.accepted
    assert not report.nonnegative


def test_degree_mismatch_rejected():
    dec = split_motive(quadric_bundle(3, 1))
    with pytest.raises(RealizationError, match="degree"):
        check_decomposition_realization(dec, GradedPoly.of(1), GradedPoly.of(1, 0, 1))


def test_divisibility_gate():
    # residual with support below twice the twist must be rejected
    base_poly = family("projective_space", dim=1).poincare
    dec = split_motive(quadric_bundle(4, 1))  # twist 2 remainder
    total = smooth_family_total(base_poly, 3)
    tampered = total + GradedPoly.of(0, 0, 1, 0, 0, 0, 0, 0, 1)
    report = check_decomposition_realization(dec, tampered, base_poly)
    assert not report.accepted


def test_descriptor_polys_align_with_catalog():
    assert descriptor_poly(FiberDescriptor("quadric", 3)) == \
        family("quadric", dim=3).poincare
    assert descriptor_poly(FiberDescriptor("curve", 1, genus=2)) == \
        family("curve", genus=2).poincare


# -- bigraded refinement ------------------------------------------------------

def test_bigraded_collapse_matches_betti():
    from motivekit.realization import BigradedTable
    # an abelian-surface-shaped table: h^{0,0}=1, h^{1,0}=h^{0,1}=2, ...
    table = BigradedTable.from_rows([[1, 2, 1], [2, 4, 2], [1, 2, 1]])
    assert table.to_poincare() == GradedPoly.of(1, 4, 6, 4, 1)
    shifted = table.shift(1)
    assert shifted.entry(1, 1) == 1 and shifted.entry(0, 0) == 0
    assert shifted.to_poincare() == table.to_poincare().shift(2)


def test_bigraded_residual_for_even_quadric_bundle():
    from motivekit.realization import BigradedTable, check_decomposition_bigraded
    base = BigradedTable.from_rows([[1, 1], [1, 1]])  # genus-1 curve
    fiber = BigradedTable.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    total_rows = [[0] * 5 for _ in range(5)]
    for p in range(2):
        for q in range(2):
            for r in range(3):
                for s in range(3):
                    total_rows[p + r][q + s] += base.entry(p, q) * fiber.entry(r, s)
    total = BigradedTable.from_rows(total_rows)
    dec = split_motive(quadric_bundle(3, 1))
    residual, accepted = check_decomposition_bigraded(dec, total, base)
    assert accepted
    assert residual == base.shift(1)
    # collapsing the bigraded residual reproduces the Betti-level one
    betti = check_decomposition_realization(
        dec, total.to_poincare(), base.to_poincare())
    assert residual.to_poincare() == betti.residual


def test_bigraded_tamper_rejected():
    from motivekit.realization import BigradedTable, check_decomposition_bigraded
    base = BigradedTable.from_rows([[1]])
    dec = split_motive(quadric_bundle(2, 0))
    total = BigradedTable.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    residual, accepted = check_decomposition_bigraded(dec, total, base)
    assert accepted  # the middle class (1,1) is the point remainder
    tampered = BigradedTable.from_rows([[1, 1, 0], [0, 0, 0], [0, 0, 1]])
    _, bad = check_decomposition_bigraded(dec, tampered, base)
    assert not bad
