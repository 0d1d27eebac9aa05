import pytest

from motivekit.corr import Term, Word
from motivekit.fibration import (FibrationScenario, ScenarioError,
                                 build_base_inclusion, build_base_projection,
                                 build_fibration_presentation, build_projector,
                                 chow_rank_map, split_motive)
from motivekit.inference import FiberDescriptor
from motivekit.motives import compose_morphisms, transpose_morphism
from motivekit.realization import INFINITE, Rank
from motivekit.scalars import Scalar

N = Scalar.degree_symbol()


# -- presentation -------------------------------------------------------------

def test_rule_count_matches_relative_dimension():
    pres = build_fibration_presentation(FibrationScenario(4, 2))
    assert len(pres.generators) == 3
    # one degree rule plus one vanishing rule per level below the top
    names = [r.name for r in pres.rules]
    assert names == ["degree", "vanishing-0", "vanishing-1"]


def test_equal_dimensions_only_degree_rule():
    pres = build_fibration_presentation(FibrationScenario(2, 2))
    assert [r.name for r in pres.rules] == ["degree"]
    push, pull = pres.generator("f_push"), pres.generator("f_pull")
    assert pres.normalize(Term.from_word(Word((push, pull)))) == \
        Term.delta(pres.atom("B"), N)


def test_base_point_case():
    pres = build_fibration_presentation(FibrationScenario(3, 0))
    assert len(pres.rules) == 4  # degree + three vanishing levels


def test_invalid_dimensions_rejected():
    with pytest.raises(ScenarioError):
        FibrationScenario(2, 3)


def test_fiber_dimension_must_match():
    with pytest.raises(ScenarioError, match="fiber dimension"):
        FibrationScenario(5, 2, fiber=FiberDescriptor("quadric", 2))


# -- the two split morphisms -----------------------------------------------------

def test_inclusion_components():
    pres = build_fibration_presentation(FibrationScenario(4, 2))
    phi = build_base_inclusion(pres)
    pull, h = pres.generator("f_pull"), pres.generator("h")
    assert phi.entry(0, 0) == Term.from_word(Word((h, h, pull)))
    assert phi.entry(0, 1) == Term.from_word(Word((h, pull)))
    assert phi.entry(0, 2) == Term.from_word(Word((pull,)))


def test_projection_components():
    pres = build_fibration_presentation(FibrationScenario(4, 2))
    psi = build_base_projection(pres)
    push, h = pres.generator("f_push"), pres.generator("h")
    assert psi.entry(0, 0) == Term.from_word(Word((push,)))
    assert psi.entry(1, 0) == Term.from_word(Word((push, h)))
    assert psi.entry(2, 0) == Term.from_word(Word((push, h, h)))


def test_inclusion_twist_bookkeeping():
    # component i has shift i: it maps the i-twisted base summand into the
    # untwisted total motive
    pres = build_fibration_presentation(FibrationScenario(5, 2))
    phi = build_base_inclusion(pres)
    for i in range(4):
        assert phi.entry(0, i).shift == i


def test_single_component_when_dimensions_agree():
    pres = build_fibration_presentation(FibrationScenario(3, 3))
    phi = build_base_inclusion(pres)
    psi = build_base_projection(pres)
    assert phi.entry(0, 0) == Term.from_word(Word((pres.generator("f_pull"),)))
    assert psi.entry(0, 0) == Term.from_word(Word((pres.generator("f_push"),)))


def test_transpose_of_inclusion_is_projection_up_to_reordering():
    pres = build_fibration_presentation(FibrationScenario(5, 2))
    flipped = transpose_morphism(build_base_inclusion(pres))
    psi = build_base_projection(pres)
    flipped_entries = {t.items() for t in
                       (flipped.entry(i, 0) for i in range(4))}
    psi_entries = {t.items() for t in (psi.entry(i, 0) for i in range(4))}
    assert flipped_entries == psi_entries


# -- projector -----------------------------------------------------------------

def test_projector_birational_case():
    # relative dimension zero: the projector is (1/n) pull . push
    pres = build_fibration_presentation(FibrationScenario(2, 2))
    witness = build_projector(pres)
    push, pull = pres.generator("f_push"), pres.generator("f_pull")
    expected = Term.from_word(Word((pull, push)), N.inverse())
    assert witness.projector.entry(0, 0) == expected


def test_projector_relative_dimension_one_expansion():
    pres = build_fibration_presentation(FibrationScenario(3, 2))
    witness = build_projector(pres)
    push, pull, h = (pres.generator(g) for g in ("f_push", "f_pull", "h"))
    inv_n = N.inverse()
    expected = (Term.from_word(Word((h, pull, push)), inv_n)
                + Term.from_word(Word((pull, push, h)), inv_n)
                + Term.from_word(Word((pull, push, h, h, pull, push)),
                                 -(inv_n * inv_n)))
    assert witness.projector.entry(0, 0) == expected


@pytest.mark.parametrize("c", [0, 1, 2, 3])
def test_projector_self_dual_and_idempotent(c):
    pres = build_fibration_presentation(FibrationScenario(2 + c, 2))
    witness = build_projector(pres)
    assert witness.idempotent_ok
    assert witness.self_dual_ok


def test_isomorphism_onto_image_identities():
    # projection . p . (p . inclusion . inverse) is the identity of the tower,
    # and the reverse composite is the projector itself
    pres = build_fibration_presentation(FibrationScenario(4, 2))
    w = build_projector(pres)
    forward = compose_morphisms(w.base_projection, w.projector)
    backward = compose_morphisms(
        w.projector, compose_morphisms(w.base_inclusion, w.gram_inverse))
    assert compose_morphisms(forward, backward).is_identity()
    assert compose_morphisms(backward, forward) == w.projector


def test_triangularity_failure_surfaces():
    pres = build_fibration_presentation(FibrationScenario(4, 2))
    broken = pres.restricted(lambda r: r.name != "vanishing-1")
    with pytest.raises(Exception, match="unitriangular"):
        build_projector(broken)


# -- split_motive -----------------------------------------------------------------

def test_quadric_even_fiber_dimension():
    scn = FibrationScenario(4, 2, flat=True, fiber=FiberDescriptor("quadric", 2))
    dec = split_motive(scn)
    assert dec.remainder is not None
    assert dec.remainder.dim == 2 and dec.remainder.twist == 1
    assert dec.full_decomposition and dec.hypotheses_verified


def test_quadric_odd_fiber_dimension():
    scn = FibrationScenario(5, 2, flat=True, fiber=FiberDescriptor("quadric", 3))
    dec = split_motive(scn)
    assert dec.remainder.dim == 1 and dec.remainder.twist == 2
    assert len(dec.base_part.summands) == 4


def test_projective_bundle_has_no_remainder():
    scn = FibrationScenario(5, 3, flat=True,
                            fiber=FiberDescriptor("projective_space", 2))
    dec = split_motive(scn)
    assert dec.remainder is None


def test_no_triviality_still_splits():
    scn = FibrationScenario(4, 2, flat=False, chow_trivial_below=0)
    dec = split_motive(scn)
    assert not dec.full_decomposition
    assert dec.remainder is not None and dec.remainder.twist == 0
    assert dec.witness.idempotent_ok


def test_inflated_claim_rejected_then_forced():
    scn = FibrationScenario(4, 2, flat=True, fiber=FiberDescriptor("quadric", 2),
                            chow_trivial_below=2)
    with pytest.raises(ScenarioError, match="catalog"):
        split_motive(scn)
    dec = split_motive(scn, force=True)
    assert not dec.hypotheses_verified


def test_flatness_required_for_full_decomposition():
    scn = FibrationScenario(4, 2, flat=False, fiber=FiberDescriptor("quadric", 2))
    with pytest.raises(ScenarioError, match="flat"):
        split_motive(scn)


# -- rank ledger --------------------------------------------------------------------

def test_rank_map_direct_sum():
    # claimed triviality level 2 covers degree 1; base ranks are those of a
    # surface with trivial ledger
    scn = FibrationScenario(4, 2, flat=True, chow_trivial_below=2)
    assert chow_rank_map(scn, 1, [1, 1, 1]) == Rank(2)


def test_rank_map_degree_zero():
    scn = FibrationScenario(4, 2, flat=True, chow_trivial_below=1)
    assert chow_rank_map(scn, 0, [1, 1, 1]) == Rank(1)


def test_rank_map_absorbs_infinity():
    scn = FibrationScenario(3, 1, flat=True, chow_trivial_below=2)
    assert chow_rank_map(scn, 1, [INFINITE, 1]) == INFINITE


def test_rank_map_hypothesis_checked():
    scn = FibrationScenario(4, 2, flat=True, fiber=FiberDescriptor("quadric", 2))
    with pytest.raises(ScenarioError, match="triviality"):
        chow_rank_map(scn, 1, [1, 1, 1])
    with pytest.raises(ScenarioError, match="flat"):
        chow_rank_map(FibrationScenario(4, 2, flat=False, chow_trivial_below=2),
                      1, [1, 1, 1])
