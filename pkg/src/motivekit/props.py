"""Seeded property suites behind the ``verify`` subcommand.

Each suite returns (name, ok, detail) triples; the CLI renders one line
per property.  Sampling is deterministic given the seed.
"""

from __future__ import annotations

import random

from .blowup import BlowupScenario, build_blowup_morphisms, verify_two_sided
from .corr import (Presentation, Term, Word, check_confluence_sample,
                   compose_terms, transpose_term)
from .fibration import FibrationScenario, build_fibration_presentation
from .motives import classify_triangular
from .scalars import Scalar


def _random_word(pres: Presentation, rng: random.Random, max_len: int = 7) -> Word:
    gens = sorted(pres.generators.values(), key=lambda g: g.index)
    by_target = {}
    for g in gens:
        by_target.setdefault(g.target, []).append(g)
    first = rng.choice(gens)
    factors = [first]
    for _ in range(rng.randint(0, max_len - 1)):
        nxt = by_target.get(factors[-1].source)
        if not nxt:
            break
        factors.append(rng.choice(nxt))
    return Word(tuple(factors), _trusted=True)


def _random_term(pres: Presentation, rng: random.Random) -> Term:
    word = _random_word(pres, rng)
    scalar = Scalar.integer(rng.randint(-3, 3)) + Scalar.degree_symbol() * rng.randint(0, 1)
    if scalar.is_zero():
        scalar = Scalar.one()
    term = Term.from_word(word, scalar)
    if rng.random() < 0.5:
        extra = _random_word(pres, rng)
        if extra.source is word.source and extra.target is word.target \
                and extra.shift == word.shift:
            term = term + Term.from_word(extra, Scalar.integer(rng.randint(1, 2)))
    return term


def core_suite(trials: int, seed: int) -> list[tuple[str, bool, str]]:
    rng = random.Random(seed)
    pres = build_fibration_presentation(FibrationScenario(5, 2))
    shift_ok = transpose_ok = anti_ok = idem_ok = signature_ok = True
    for _ in range(max(trials, 1)):
        t1 = _random_term(pres, rng)
        t2 = _random_term(pres, rng)
        if t1.target is t2.source:
            composite = compose_terms(t2, t1)
            if composite.shift != t1.shift + t2.shift:
                shift_ok = False
            if transpose_term(composite) != compose_terms(transpose_term(t1),
                                                          transpose_term(t2)):
                anti_ok = False
            normal = pres.normalize(composite)
            if pres.normalize(normal) != normal:
                idem_ok = False
            if not normal.is_zero() and normal.signature() != composite.signature():
                signature_ok = False
        if transpose_term(transpose_term(t1)) != t1:
            transpose_ok = False
    a = Scalar((1, 2), (3, 1))  # (1 + 2n) / (3 + n)
    field_ok = ((a * a.inverse()).is_one()
                and (Scalar.degree_symbol() / Scalar.degree_symbol()).is_one())
    return [
        ("shift additivity under composition", shift_ok, ""),
        ("transpose is an involution", transpose_ok, ""),
        ("transpose is an anti-homomorphism", anti_ok, ""),
        ("normalisation is idempotent", idem_ok, ""),
        ("rewriting preserves the signature", signature_ok, ""),
        ("scalars form an exact field", field_ok, ""),
    ]


def blowup_suite() -> list[tuple[str, bool, str]]:
    out = []
    for r in range(2, 6):
        scenario = BlowupScenario(total_dim=r + 1, center_dim=1)
        morphisms = build_blowup_morphisms(scenario)
        table = classify_triangular(morphisms.gram)
        two = verify_two_sided(scenario, morphisms)
        ok = table.invertible_by_neumann and two.left_ok
        out.append((f"codimension {r}: unitriangular table and left inverse",
                    ok, f"diagonal scalar {table.diagonal_scalar}"))
    return out


def confluence_suite(trials: int, seed: int) -> list[tuple[str, bool, str]]:
    fib = build_fibration_presentation(FibrationScenario(5, 2))
    fib_report = check_confluence_sample(fib, trials, seed)
    blow = build_blowup_morphisms(BlowupScenario(4, 1)).presentation
    blow_report = check_confluence_sample(blow, trials, seed + 1)
    return [
        ("fibration rules: strategy-independent normal forms", fib_report.ok,
         f"{fib_report.words_tested} words, "
         f"{len(fib_report.discrepancies)} discrepancies"),
        ("blow-up rules: strategy-independent normal forms", blow_report.ok,
         f"{blow_report.words_tested} words, "
         f"{len(blow_report.discrepancies)} discrepancies"),
    ]
