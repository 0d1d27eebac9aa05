"""Motive decompositions along a projective surjection onto a smooth base.

The presentation of a fibration has three generators: the pushforward
graph of the structure map, its transpose (the pullback), and the
hyperplane operator on the total space.  Two relation families close the
calculus: slicing down to a multisection makes the full-codimension
composite a multiple of the base diagonal by the generic degree n (kept
formal), and every lower-codimension composite vanishes for dimension
reasons.  Composites with exponent above the relative dimension carry no
relation and stay opaque.

From these the module builds the inclusion of the twisted base tower into
the total motive, its projection counterpart, the inverse of their
composite through the nilpotent part, and the self-dual projector that
splits off the base part; the remainder of the resulting decomposition is
recorded abstractly (name, dimension bound, twist) since only its
existence is certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .corr import AlgebraError, Presentation, Term, Word
from .inference import FiberDescriptor, chow_triviality_level
from .motives import (MotiveMorphism, MotiveObject, TriangularReport,
                      classify_triangular, compose_morphisms, neumann_inverse,
                      transpose_morphism, verify_idempotent)
from .realization import RANK_ZERO, Rank, as_rank
from .scalars import Scalar


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class FibrationScenario:
    """Input record for one fibration; geometric hypotheses are declared."""

    total_dim: int
    base_dim: int
    flat: bool = False
    fiber: Optional[FiberDescriptor] = None
    chow_trivial_below: Optional[int] = None
    base_facts: tuple[str, ...] = ()

    def __post_init__(self):
        if not (0 <= self.base_dim <= self.total_dim):
            raise ScenarioError(
                f"need 0 <= base_dim <= total_dim, got ({self.total_dim}, "
                f"{self.base_dim})")
        if self.chow_trivial_below is not None and self.chow_trivial_below < 0:
            raise ScenarioError("chow_trivial_below must be >= 0")
        if self.fiber is not None and self.fiber.dim != self.relative_dim:
            raise ScenarioError(
                f"fiber dimension {self.fiber.dim} != total_dim - base_dim "
                f"= {self.relative_dim}")

    @property
    def relative_dim(self) -> int:
        return self.total_dim - self.base_dim

    def triviality_level(self) -> int:
        """Claimed Chow-triviality level, defaulting to the catalog value."""
        if self.chow_trivial_below is not None:
            return self.chow_trivial_below
        if self.fiber is not None:
            return chow_triviality_level(self.fiber)
        return 0


DEGREE_RELATION = ("degree relation: slicing the total space down to a "
                   "multisection makes push-pull along the base a multiple of "
                   "the diagonal by the generic degree n")
VANISHING_RELATION = ("vanishing relation: push-pull through fewer hyperplane "
                      "cuts than the relative dimension lands in too small a "
                      "dimension and is zero")


def build_fibration_presentation(scenario: FibrationScenario) -> Presentation:
    """Atoms X, B; generators f_push, f_pull, h; the two relation families."""
    pres = Presentation(f"fibration({scenario.total_dim},{scenario.base_dim})")
    d_x, d_b = scenario.total_dim, scenario.base_dim
    c = d_x - d_b
    total = pres.add_atom("X", d_x)
    base = pres.add_atom("B", d_b)
    push = pres.make_generator("f_push", total, base, d_x)
    pull = pres.make_generator("f_pull", base, total, d_x, transpose_of="f_push")
    if d_x >= 1:
        hyper = pres.make_generator("h", total, total, d_x - 1, transpose_of="h")
    n = Scalar.degree_symbol()
    hyper_run = (pres.generators["h"],) * c if c else ()
    pres.add_rule("degree",
                  Word((push,) + hyper_run + (pull,)),
                  Term.delta(base, n),
                  DEGREE_RELATION)
    for level in range(c):
        run = (pres.generators["h"],) * level if level else ()
        pres.add_rule(f"vanishing-{level}",
                      Word((push,) + run + (pull,)),
                      Term.zero(base, base, c - level),
                      VANISHING_RELATION)
    return pres


def base_tower(pres: Presentation) -> MotiveObject:
    """The twisted base object h(B)(0) + ... + h(B)(c)."""
    c = pres.atom("X").dim - pres.atom("B").dim
    return MotiveObject.twisted_tower(pres.atom("B"), range(c + 1))


def total_motive(pres: Presentation) -> MotiveObject:
    return MotiveObject.of((pres.atom("X"), 0))


def build_base_inclusion(pres: Presentation) -> MotiveMorphism:
    """Column morphism: component i is h^(c-i) after the pullback graph."""
    c = pres.atom("X").dim - pres.atom("B").dim
    pull = pres.generator("f_pull")
    hyper = pres.generators.get("h")
    entries = {}
    for i in range(c + 1):
        run = (hyper,) * (c - i) if c - i else ()
        entries[(0, i)] = Term.from_word(Word(run + (pull,), _trusted=True))
    return MotiveMorphism(pres, base_tower(pres), total_motive(pres), entries,
                          _normalized=True)


def build_base_projection(pres: Presentation) -> MotiveMorphism:
    """Row morphism: component i is the pushforward graph after h^i."""
    c = pres.atom("X").dim - pres.atom("B").dim
    push = pres.generator("f_push")
    hyper = pres.generators.get("h")
    entries = {}
    for i in range(c + 1):
        run = (hyper,) * i if i else ()
        entries[(i, 0)] = Term.from_word(Word((push,) + run, _trusted=True))
    return MotiveMorphism(pres, total_motive(pres), base_tower(pres), entries,
                          _normalized=True)


@dataclass(frozen=True)
class ProjectorWitness:
    """The verified splitting data of one fibration."""

    presentation: Presentation
    base_inclusion: MotiveMorphism
    base_projection: MotiveMorphism
    gram: MotiveMorphism            # projection after inclusion
    gram_report: TriangularReport
    gram_inverse: MotiveMorphism
    projector: MotiveMorphism
    idempotent_ok: bool
    self_dual_ok: bool

    @property
    def verified(self) -> bool:
        return (self.gram_report.invertible_by_neumann and self.idempotent_ok
                and self.self_dual_ok)


def build_projector(pres: Presentation) -> ProjectorWitness:
    """Split the base tower off the total motive and verify the projector.

    The composite projection-after-inclusion must classify as lower
    triangular with diagonal n * Delta; its inverse is the Neumann sum,
    and the projector inclusion . inverse . projection is checked to be
    idempotent and self-dual.
    """
    inclusion = build_base_inclusion(pres)
    projection = build_base_projection(pres)
    gram = compose_morphisms(projection, inclusion)
    report = classify_triangular(gram)
    if not report.invertible_by_neumann:
        raise AlgebraError(
            "fibration relations failed to make the composite unitriangular; "
            "the rule set is wrong")
    inverse = neumann_inverse(gram)
    projector = compose_morphisms(inclusion, compose_morphisms(inverse, projection))
    idempotent_ok = verify_idempotent(projector)
    self_dual_ok = transpose_morphism(projector) == projector
    return ProjectorWitness(pres, inclusion, projection, gram, report, inverse,
                            projector, idempotent_ok, self_dual_ok)


@dataclass(frozen=True)
class Remainder:
    """Abstract effective summand: certified to exist, never constructed."""

    name: str
    dim: int
    twist: int
    idempotent: str = "r"

    def __str__(self) -> str:
        return f"({self.name}, {self.idempotent}, {self.twist}) with dim {self.dim}"


@dataclass(frozen=True)
class Decomposition:
    """A verified split of the total motive into base tower plus remainder."""

    total_dim: int
    base_dim: int
    base_part: MotiveObject
    remainder: Optional[Remainder]
    projector: MotiveMorphism
    witness: ProjectorWitness
    chow_trivial_below: int
    full_decomposition: bool
    hypotheses_verified: bool


def decomposition_shape(scenario: FibrationScenario) -> tuple[int, Optional[Remainder]]:
    """Triviality level n and the abstract remainder it forces.

    The remainder has dimension total_dim - 2n; it is absent when that is
    negative or when triviality covers every fibre degree (projective
    bundles), where the tower alone exhausts the motive.
    """
    n = scenario.triviality_level()
    c = scenario.relative_dim
    if n >= c + 1 or scenario.total_dim - 2 * n < 0:
        return n, None
    dim_z = scenario.total_dim - (2 * n if n >= 1 else 0)
    return n, Remainder("Z", dim_z, n if n >= 1 else 0)


def split_motive(scenario: FibrationScenario, *, force: bool = False) -> Decomposition:
    """Decompose the total motive for the scenario, validating hypotheses.

    Requires flatness plus a claimed fibre triviality level consistent
    with the catalog tables; ``force`` downgrades violations to an
    unverified-hypotheses flag for exploratory runs.  A triviality level
    of zero still yields the projector split (split-injective base part),
    just without a dimension bound on the remainder.
    """
    n = scenario.triviality_level()
    verified = True
    problems = []
    if scenario.fiber is not None:
        catalog_level = chow_triviality_level(scenario.fiber)
        if n > catalog_level:
            problems.append(
                f"claimed triviality level {n} exceeds the catalog level "
                f"{catalog_level} for this fibre family")
    if n >= 1 and not scenario.flat:
        problems.append("full decomposition requires a flat scenario")
    if problems:
        if not force:
            raise ScenarioError("; ".join(problems))
        verified = False
    pres = build_fibration_presentation(scenario)
    witness = build_projector(pres)
    _, remainder = decomposition_shape(scenario)
    full = scenario.flat and n >= 1 and verified
    return Decomposition(total_dim=scenario.total_dim, base_dim=scenario.base_dim,
                         base_part=base_tower(pres), remainder=remainder,
                         projector=witness.projector, witness=witness,
                         chow_trivial_below=n, full_decomposition=full,
                         hypotheses_verified=verified)


def chow_rank_map(scenario: FibrationScenario, degree: int,
                  base_ranks: Sequence) -> Rank:
    """Rank of the degree-th Chow group of the total space from base ranks.

    Valid for flat scenarios with fibre triviality covering the degree:
    the group is the direct sum of the base groups shifted through the
    relative dimension.  Ranks below index zero are zero; infinity
    absorbs.
    """
    if not scenario.flat:
        raise ScenarioError("the rank map needs a flat scenario")
    if degree >= scenario.triviality_level():
        raise ScenarioError(
            f"degree {degree} is not covered by the claimed triviality level "
            f"{scenario.triviality_level()}")
    ranks = [as_rank(r) for r in base_ranks]
    if len(ranks) != scenario.base_dim + 1:
        raise ScenarioError(
            f"need {scenario.base_dim + 1} base ranks, got {len(ranks)}")
    total = RANK_ZERO
    for i in range(scenario.relative_dim + 1):
        j = degree - i
        if 0 <= j <= scenario.base_dim:
            total = total + ranks[j]
    return total
