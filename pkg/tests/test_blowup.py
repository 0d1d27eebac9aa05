import pytest

from motivekit.blowup import (AXIOM_MANIN, PROVED, BlowupError, BlowupScenario,
                              build_blowup_morphisms, build_blowup_presentation,
                              synthesize_chow_kunneth, verify_two_sided)
from motivekit.corr import Term, Word
from motivekit.motives import (TriangularityError, classify_triangular,
                               compose_morphisms, identity_morphism)
from motivekit.scalars import Scalar


def test_generator_count():
    pres = build_blowup_presentation(BlowupScenario(3, 1))
    assert len(pres.generators) == 7


def test_point_blowup_on_surface_smallest_case():
    pres = build_blowup_presentation(BlowupScenario(2, 0))
    assert pres.atom("D").dim == 1  # exceptional line
    assert "h_exc" in pres.generators


def test_self_intersection_relation():
    pres = build_blowup_presentation(BlowupScenario(3, 1))
    exc_push, exc_pull = pres.generator("exc_push"), pres.generator("exc_pull")
    h = pres.generator("h_exc")
    collapsed = pres.normalize(Term.from_word(Word((exc_pull, exc_push))))
    assert (collapsed + Term.from_word(Word((h,)))).is_zero()


def test_invalid_dimensions():
    with pytest.raises(BlowupError):
        BlowupScenario(2, 2)
    with pytest.raises(BlowupError):
        BlowupScenario(2, -1)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_unitriangular_table(r):
    scenario = BlowupScenario(r + 1, 1)
    morphisms = build_blowup_morphisms(scenario)
    gram = morphisms.gram
    pres = morphisms.presentation
    ambient, center = pres.atom("X"), pres.atom("Y")
    assert gram.entry(0, 0) == Term.delta(ambient)
    for i in range(1, r):
        assert gram.entry(i, i) == Term.delta(center)
        assert gram.entry(0, i).is_zero()
        assert gram.entry(i, 0).is_zero()
        for j in range(i + 1, r):
            assert gram.entry(i, j).is_zero()
    report = classify_triangular(gram)
    assert report.diagonal_scalar == Scalar.one() and report.strictly_upper_zero


def test_left_inverse_r2_matches_hand_expansion():
    # with a single nilpotent step the left inverse is (id + N) . disassembly
    scenario = BlowupScenario(3, 1)
    m = build_blowup_morphisms(scenario)
    ident = identity_morphism(m.gram.source, m.presentation)
    nilpotent = ident - m.gram
    expected = compose_morphisms(ident + nilpotent, m.disassembly)
    assert m.left_inverse == expected


def test_point_blowup_left_inverse_is_two_by_two_identity():
    m = build_blowup_morphisms(BlowupScenario(2, 0))
    product = compose_morphisms(m.left_inverse, m.assembly)
    assert product.is_identity() and len(product.source) == 2


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_two_sided_statuses(r):
    scenario = BlowupScenario(r + 1, 1)
    report = verify_two_sided(scenario)
    assert report.left_status == PROVED
    assert report.right_status == AXIOM_MANIN
    assert report.manin_axiom_used


def test_codimension_one_is_an_isomorphism():
    report = verify_two_sided(BlowupScenario(3, 2))
    assert report.left_status == PROVED
    assert report.right_status == PROVED
    assert not report.manin_axiom_used


def test_tampered_rules_surface_an_error():
    scenario = BlowupScenario(4, 1)
    pres = build_blowup_presentation(scenario)
    tampered = pres.restricted(
        lambda r: not r.name.startswith("exceptional-pushforward-vanishing"))
    with pytest.raises((BlowupError, TriangularityError)):
        build_blowup_morphisms(scenario, tampered)


# -- Chow-Kunneth synthesis ------------------------------------------------------

def test_point_blowup_ck_projector_count_and_middle_projector():
    scenario = BlowupScenario(2, 0, with_ck=True)
    morphisms, ck = synthesize_chow_kunneth(scenario)
    assert len(ck.projectors) == 5
    pres = morphisms.presentation
    bd_pull, bd_push = pres.generator("bd_pull"), pres.generator("bd_push")
    exc_push, exc_pull = pres.generator("exc_push"), pres.generator("exc_pull")
    pb_push, pb_pull = pres.generator("pb_push"), pres.generator("pb_pull")
    middle = ck.projectors[2].entry(0, 0)
    expected = (Term.from_word(Word((bd_pull, pres.generator("ckX2"), bd_push)))
                + Term.from_word(
                    Word((exc_push, pb_pull, pres.generator("ckY0"),
                          pb_push, exc_pull)), Scalar.integer(-1)))
    assert middle == expected


def test_ck_orthogonality_and_idempotence_verified_by_rewriting():
    _, ck = synthesize_chow_kunneth(BlowupScenario(3, 1, with_ck=True))
    v = ck.verification
    assert v.idempotent_ok and v.orthogonal_ok
    assert "input-chow-kunneth-orthogonality-idempotence" in \
        v.axioms_by_identity["orthogonality"]
    assert AXIOM_MANIN not in v.axioms_by_identity["orthogonality"]
    assert AXIOM_MANIN not in v.axioms_by_identity["idempotency"]


def test_ck_completeness_consumes_manin_once():
    _, ck = synthesize_chow_kunneth(BlowupScenario(2, 0, with_ck=True))
    v = ck.verification
    assert v.complete_ok
    assert v.manin_uses == 1
    assert v.axioms_by_identity["completeness"].count("Manin identity principle") == 1


def test_ck_out_of_range_center_indices_are_zero():
    # center of dimension 0: only index 0 exists; projector 1 has no center block
    scenario = BlowupScenario(2, 0, with_ck=True)
    morphisms, ck = synthesize_chow_kunneth(scenario)
    pres = morphisms.presentation
    term = ck.projectors[1].entry(0, 0)
    assert all(g.name != "ckY0" for w, _ in term.items() for g in w.factors)


def test_ck_requires_inputs():
    with pytest.raises(BlowupError, match="no Chow-Kunneth"):
        synthesize_chow_kunneth(BlowupScenario(2, 0, with_ck=False))
