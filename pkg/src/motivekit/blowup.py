"""Explicit motive isomorphisms for a smooth blow-up.

The presentation has four atoms (the ambient space, the smooth center,
the blown-up space and the exceptional divisor) and seven generators: the
blow-down graph with its transpose, the exceptional-inclusion graph with
its transpose, the exceptional-bundle graph with its transpose, and the
relative hyperplane operator on the exceptional divisor.

Relations: blow-down collapse (push after pull is the ambient diagonal),
the self-intersection of the exceptional divisor (minus the relative
hyperplane), the projective-bundle degree and vanishing relations on the
exceptional divisor (degree one), and the vanishing of pushforwards of
low exceptional classes together with its transpose.  With these, the
assembly morphism out of ambient-plus-center pieces acquires an explicit
left inverse through the nilpotent part; that it is also a right inverse
is imported as a named axiom (Manin's identity principle), never silently
assumed, and every report says which of the two statuses each identity
has.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .corr import (AlgebraError, Generator, Presentation, Term, Word,
                   compose_terms)
from .motives import (MotiveMorphism, MotiveObject, Summand,
                      compose_morphisms, neumann_inverse)
from .scalars import Scalar

MANIN_AXIOM = "Manin identity principle"

PROVED = "PROVED-BY-REWRITING"
AXIOM_MANIN = f"AXIOM({MANIN_AXIOM})"
FAILED = "FAILED"

BLOWDOWN_RELATION = ("blow-down collapse: a birational projection composed "
                     "with its transpose is the ambient diagonal")
SELF_INTERSECTION_RELATION = ("exceptional self-intersection: restricting the "
                              "exceptional divisor to itself is minus the "
                              "relative hyperplane")
BUNDLE_DEGREE_RELATION = ("bundle degree: the full-codimension relative slice "
                          "of the exceptional bundle has degree one over the "
                          "center")
BUNDLE_VANISHING_RELATION = ("bundle vanishing: relative slices below full "
                             "codimension push forward to zero on the center")
PUSHFORWARD_VANISHING_RELATION = ("exceptional pushforward vanishing: "
                                  "exceptional classes of low relative degree "
                                  "die in the ambient space")
ISO_RELATION = ("codimension-one blow-up: the blow-down is an isomorphism, "
                "so pull after push is the diagonal upstairs")
CK_INPUT_RELATION = ("Chow-Kunneth inputs: the given projectors are mutually "
                     "orthogonal idempotents")


class BlowupError(AlgebraError):
    pass


@dataclass(frozen=True)
class BlowupScenario:
    """Blow-up of a smooth ambient space along a smooth center."""

    total_dim: int
    center_dim: int
    with_ck: bool = False

    def __post_init__(self):
        if self.center_dim < 0 or self.codimension < 1:
            raise BlowupError(
                f"need 0 <= center_dim < total_dim, got ({self.total_dim}, "
                f"{self.center_dim})")

    @property
    def codimension(self) -> int:
        return self.total_dim - self.center_dim


def build_blowup_presentation(scenario: BlowupScenario) -> Presentation:
    d_x, d_y = scenario.total_dim, scenario.center_dim
    r = scenario.codimension
    pres = Presentation(f"blowup({d_x},{d_y})")
    ambient = pres.add_atom("X", d_x)
    center = pres.add_atom("Y", d_y)
    blown = pres.add_atom("Xt", d_x)
    divisor = pres.add_atom("D", d_x - 1)
    bd_push = pres.make_generator("bd_push", blown, ambient, d_x)
    bd_pull = pres.make_generator("bd_pull", ambient, blown, d_x,
                                  transpose_of="bd_push")
    exc_push = pres.make_generator("exc_push", divisor, blown, d_x - 1)
    exc_pull = pres.make_generator("exc_pull", blown, divisor, d_x - 1,
                                   transpose_of="exc_push")
    pb_push = pres.make_generator("pb_push", divisor, center, d_x - 1)
    pb_pull = pres.make_generator("pb_pull", center, divisor, d_x - 1,
                                  transpose_of="pb_push")
    hyper: Optional[Generator] = None
    if d_x >= 2:
        hyper = pres.make_generator("h_exc", divisor, divisor, d_x - 2,
                                    transpose_of="h_exc")

    def run(e: int) -> tuple:
        return (hyper,) * e if e else ()

    pres.add_rule("blowdown-collapse", Word((bd_push, bd_pull)),
                  Term.delta(ambient), BLOWDOWN_RELATION)
    if r == 1:
        pres.add_rule("blowdown-iso", Word((bd_pull, bd_push)),
                      Term.delta(blown), ISO_RELATION)
    if hyper is not None:
        pres.add_rule("exceptional-self-intersection",
                      Word((exc_pull, exc_push)),
                      Term.from_word(Word((hyper,), _trusted=True),
                                     Scalar.integer(-1)),
                      SELF_INTERSECTION_RELATION)
    pres.add_rule("bundle-degree", Word((pb_push,) + run(r - 1) + (pb_pull,)),
                  Term.delta(center), BUNDLE_DEGREE_RELATION)
    for e in range(r - 1):
        pres.add_rule(f"bundle-vanishing-{e}",
                      Word((pb_push,) + run(e) + (pb_pull,)),
                      Term.zero(center, center, r - 1 - e),
                      BUNDLE_VANISHING_RELATION)
    for e in range(r - 1):
        pres.add_rule(f"exceptional-pushforward-vanishing-{e}",
                      Word((bd_push, exc_push) + run(e) + (pb_pull,)),
                      Term.zero(center, ambient, r - 1 - e),
                      PUSHFORWARD_VANISHING_RELATION)
        pres.add_rule(f"exceptional-pushforward-vanishing-t-{e}",
                      Word((pb_push,) + run(e) + (exc_pull, bd_pull)),
                      Term.zero(ambient, center, -(e + 1)),
                      PUSHFORWARD_VANISHING_RELATION + " (transposed)")
    if scenario.with_ck:
        _add_ck_generators(pres, ambient, d_x, "ckX")
        _add_ck_generators(pres, center, d_y, "ckY")
    return pres


def _add_ck_generators(pres: Presentation, atom, dim: int, prefix: str) -> None:
    gens = [pres.make_generator(f"{prefix}{i}", atom, atom, atom.dim,
                                transpose_of=f"{prefix}{i}")
            for i in range(2 * dim + 1)]
    for i, gi in enumerate(gens):
        for k, gk in enumerate(gens):
            if i == k:
                repl = Term.from_word(Word((gi,), _trusted=True))
            else:
                repl = Term.zero(atom, atom, 0)
            pres.add_rule(f"{prefix}-pair-{i}-{k}", Word((gi, gk)), repl,
                          CK_INPUT_RELATION)


def pieces_object(pres: Presentation, r: int) -> MotiveObject:
    """h(X) + h(Y)(1) + ... + h(Y)(r-1), the source of the assembly map."""
    parts = [Summand(pres.atom("X"), 0)]
    parts.extend(Summand(pres.atom("Y"), i) for i in range(1, r))
    return MotiveObject(tuple(parts))


def blown_up_motive(pres: Presentation) -> MotiveObject:
    return MotiveObject.of((pres.atom("Xt"), 0))


@dataclass(frozen=True)
class BlowupMorphisms:
    presentation: Presentation
    assembly: MotiveMorphism       # pieces -> blown-up motive
    disassembly: MotiveMorphism    # blown-up motive -> pieces
    gram: MotiveMorphism           # disassembly after assembly
    left_inverse: MotiveMorphism   # explicit left inverse of the assembly


def build_blowup_morphisms(scenario: BlowupScenario,
                           pres: Optional[Presentation] = None) -> BlowupMorphisms:
    """Assembly/disassembly pair and the Neumann-built left inverse.

    The composite disassembly-after-assembly must reproduce the
    unitriangular table (ambient diagonal, center diagonals, zero above
    and on the border); its inverse times the disassembly is the left
    inverse, re-verified against the assembly by rewriting.
    """
    if pres is None:
        pres = build_blowup_presentation(scenario)
    r = scenario.codimension
    pieces = pieces_object(pres, r)
    blown = blown_up_motive(pres)
    bd_push, bd_pull = pres.generator("bd_push"), pres.generator("bd_pull")
    exc_push, exc_pull = pres.generator("exc_push"), pres.generator("exc_pull")
    pb_push, pb_pull = pres.generator("pb_push"), pres.generator("pb_pull")
    hyper = pres.generators.get("h_exc")

    def run(e: int) -> tuple:
        return (hyper,) * e if e else ()

    asm_entries = {(0, 0): Term.from_word(Word((bd_pull,), _trusted=True))}
    for i in range(1, r):
        asm_entries[(0, i)] = Term.from_word(
            Word((exc_push,) + run(r - 1 - i) + (pb_pull,), _trusted=True))
    assembly = MotiveMorphism(pres, pieces, blown, asm_entries, _normalized=True)

    dis_entries = {(0, 0): Term.from_word(Word((bd_push,), _trusted=True))}
    for i in range(1, r):
        dis_entries[(i, 0)] = Term.from_word(
            Word((pb_push,) + run(i - 1) + (exc_pull,), _trusted=True),
            Scalar.integer(-1))
    disassembly = MotiveMorphism(pres, blown, pieces, dis_entries, _normalized=True)

    gram = compose_morphisms(disassembly, assembly)
    inverse = neumann_inverse(gram)
    left = compose_morphisms(inverse, disassembly)
    if not compose_morphisms(left, assembly).is_identity():
        raise BlowupError("left inverse failed to verify by rewriting")
    return BlowupMorphisms(pres, assembly, disassembly, gram, left)


@dataclass(frozen=True)
class TwoSidedReport:
    """Inverse statuses: the left side is equational, the right imported."""

    left_status: str
    right_status: str
    left_ok: bool
    manin_axiom_used: bool

    @property
    def ok(self) -> bool:
        return self.left_ok


def verify_two_sided(scenario: BlowupScenario,
                     morphisms: Optional[BlowupMorphisms] = None) -> TwoSidedReport:
    """Left inverse by rewriting; right inverse by the Manin axiom.

    The right-hand identity is not equational in this calculus (its proof
    runs through Chow groups of products), so it is recorded as an
    imported axiom, except in codimension one where the blow-down is an
    isomorphism and both sides rewrite to diagonals.
    """
    if morphisms is None:
        morphisms = build_blowup_morphisms(scenario)
    left_ok = compose_morphisms(morphisms.left_inverse,
                                morphisms.assembly).is_identity()
    right = compose_morphisms(morphisms.assembly, morphisms.left_inverse)
    if right.is_identity():
        return TwoSidedReport(PROVED if left_ok else FAILED, PROVED, left_ok, False)
    return TwoSidedReport(PROVED if left_ok else FAILED, AXIOM_MANIN, left_ok, True)


# ---------------------------------------------------------------------------
# Chow-Kunneth synthesis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CKVerification:
    idempotent_ok: bool
    orthogonal_ok: bool
    complete_ok: bool
    axioms_by_identity: dict
    manin_uses: int


@dataclass(frozen=True)
class CKProjectorSet:
    projectors: tuple[MotiveMorphism, ...]
    verification: CKVerification


def _collapse_complete_family(term: Term, family: frozenset) -> tuple[Term, bool]:
    """Apply the input completeness axiom: a full bucket of siblings that
    differ only in one projector symbol, with one common scalar, collapses
    to the symbol-free word."""
    passthrough: dict = {}
    buckets: dict = {}
    for word, scalar in term.raw_items():
        pos = next((k for k, g in enumerate(word.factors) if g in family), None)
        if pos is None:
            cur = passthrough.get(word)
            passthrough[word] = scalar if cur is None else cur + scalar
            continue
        key = (word.factors[:pos], word.factors[pos + 1:])
        buckets.setdefault(key, {})[word.factors[pos]] = scalar
    used = False
    for (pre, suf), seen in buckets.items():
        scalars = set(seen.values())
        if frozenset(seen) == family and len(scalars) == 1:
            used = True
            s = scalars.pop()
            factors = pre + suf
            word = (Word(factors, _trusted=True) if factors
                    else Word.identity(term.source))
            cur = passthrough.get(word)
            passthrough[word] = s if cur is None else cur + s
        else:
            for gen, s in seen.items():
                word = Word(pre + (gen,) + suf, _trusted=True)
                cur = passthrough.get(word)
                passthrough[word] = s if cur is None else cur + s
    return (Term(term.source, term.target, term.shift, passthrough,
                 _trusted=True), used)


def synthesize_chow_kunneth(scenario: BlowupScenario) -> tuple[BlowupMorphisms,
                                                               CKProjectorSet]:
    """Conjugate the input projectors through the assembly isomorphism.

    Projector i upstairs is assembly . (input_X^i + sum_j input_Y^(i-2j))
    . left_inverse; out-of-range center indices contribute zero.
    Idempotence and orthogonality are verified by rewriting alone (the
    input axioms are rewrite rules); completeness additionally consumes
    the input completeness of both factors and the Manin axiom, exactly
    once.
    """
    if not scenario.with_ck:
        raise BlowupError("scenario carries no Chow-Kunneth inputs")
    morphisms = build_blowup_morphisms(scenario)
    pres = morphisms.presentation
    d_x, d_y = scenario.total_dim, scenario.center_dim
    r = scenario.codimension
    pieces = morphisms.assembly.source
    blown = morphisms.assembly.target
    ck_x = [pres.generator(f"ckX{i}") for i in range(2 * d_x + 1)]
    ck_y = [pres.generator(f"ckY{i}") for i in range(2 * d_y + 1)]

    projectors = []
    for i in range(2 * d_x + 1):
        entries = {(0, 0): Term.from_word(Word((ck_x[i],), _trusted=True))}
        for j in range(1, r):
            m = i - 2 * j
            if 0 <= m <= 2 * d_y:
                entries[(j, j)] = Term.from_word(Word((ck_y[m],), _trusted=True))
        block = MotiveMorphism(pres, pieces, pieces, entries, _normalized=True)
        proj = compose_morphisms(morphisms.assembly,
                                 compose_morphisms(block, morphisms.left_inverse))
        projectors.append(proj)

    # idempotence and orthogonality: pure rewriting, tracked for the report
    idempotent_ok = True
    orthogonal_ok = True
    idem_citations: set = set()
    orth_citations: set = set()
    zero_term = Term.zero(pres.atom("Xt"), pres.atom("Xt"), 0)
    terms = [p.entry(0, 0) for p in projectors]
    for i, ti in enumerate(terms):
        for k, tk in enumerate(terms):
            product, citations = pres.normalize_traced(compose_terms(ti, tk))
            if i == k:
                idem_citations |= citations
                if product != ti:
                    idempotent_ok = False
            else:
                orth_citations |= citations
                if product != zero_term:
                    orthogonal_ok = False

    # completeness: collapse the two input families, then the Manin axiom
    total = zero_term
    for t in terms:
        total = total + t
    collapsed, used_x = _collapse_complete_family(total, frozenset(ck_x))
    collapsed, used_y = _collapse_complete_family(collapsed, frozenset(ck_y))
    collapsed = pres.normalize(collapsed)
    right = compose_morphisms(morphisms.assembly, morphisms.left_inverse)
    complete_ok = collapsed == right.entry(0, 0)
    manin_uses = 1  # the final step Sum = assembly . left_inverse = Delta

    def _axioms(citations: set) -> tuple[str, ...]:
        out = []
        if CK_INPUT_RELATION in citations:
            out.append("input-chow-kunneth-orthogonality-idempotence")
        return tuple(out)

    axioms = {
        "idempotency": _axioms(idem_citations),
        "orthogonality": _axioms(orth_citations),
        "completeness": (("input-chow-kunneth-completeness[X]",) if used_x else ())
                        + (("input-chow-kunneth-completeness[Y]",) if used_y else ())
                        + (MANIN_AXIOM,),
    }
    verification = CKVerification(idempotent_ok=idempotent_ok,
                                  orthogonal_ok=orthogonal_ok,
                                  complete_ok=complete_ok,
                                  axioms_by_identity=axioms,
                                  manin_uses=manin_uses)
    return morphisms, CKProjectorSet(tuple(projectors), verification)
