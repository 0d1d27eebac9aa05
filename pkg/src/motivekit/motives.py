"""Formal direct sums of twisted atoms and matrices of terms between them.

A morphism between direct sums is a matrix of :class:`~motivekit.corr.Term`
values whose entry (i, j) sends source summand j to target summand i and
must carry shift ``twist_source(j) - twist_target(i)``.  That bookkeeping
is re-verified on every construction, so a twist inconsistency surfaces as
an error at the point of the bug rather than as a silently wrong identity.

Matrix entries are kept in normal form; composition therefore uses the
junction-local fast path of the underlying presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .corr import AlgebraError, Atom, Presentation, Term, transpose_term
from .scalars import ONE, Scalar


class MotiveError(AlgebraError):
    pass


class TriangularityError(MotiveError):
    """The matrix is not scaled-unitriangular, so no Neumann inverse exists."""


@dataclass(frozen=True)
class Summand:
    atom: Atom
    twist: int
    label: Optional[str] = None

    def __str__(self) -> str:
        base = f"h({self.atom.name})"
        return base if self.twist == 0 else f"{base}({self.twist})"


@dataclass(frozen=True)
class MotiveObject:
    """An ordered direct sum of twisted atom motives; order is matrix order."""

    summands: tuple[Summand, ...]

    @classmethod
    def of(cls, *parts) -> "MotiveObject":
        out = []
        for p in parts:
            if isinstance(p, Summand):
                out.append(p)
            else:
                atom, twist = p
                out.append(Summand(atom, twist))
        return cls(tuple(out))

    @classmethod
    def twisted_tower(cls, atom: Atom, twists: Iterable[int]) -> "MotiveObject":
        return cls(tuple(Summand(atom, t) for t in twists))

    def __len__(self) -> int:
        return len(self.summands)

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.summands) if self.summands else "0"


class MotiveMorphism:
    """A matrix of terms with enforced twist bookkeeping.

    ``entries`` maps (target index i, source index j) to a nonzero Term;
    absent entries are zero.  Entries are normalised with respect to the
    presentation's rules.
    """

    __slots__ = ("presentation", "source", "target", "entries")

    def __init__(self, presentation: Presentation, source: MotiveObject,
                 target: MotiveObject, entries: Mapping[tuple[int, int], Term],
                 *, _normalized: bool = False):
        cleaned: dict = {}
        for (i, j), term in entries.items():
            if not (0 <= i < len(target) and 0 <= j < len(source)):
                raise MotiveError(f"entry index ({i}, {j}) out of range")
            if not _normalized:
                term = presentation.normalize(term)
            if term.is_zero():
                continue
            src = source.summands[j]
            tgt = target.summands[i]
            if term.source is not src.atom or term.target is not tgt.atom:
                raise MotiveError(
                    f"entry ({i}, {j}) has atoms {term.source.name}->{term.target.name}, "
                    f"summands need {src.atom.name}->{tgt.atom.name}")
            if term.shift != src.twist - tgt.twist:
                raise MotiveError(
                    f"twist inconsistency at ({i}, {j}): shift {term.shift} != "
                    f"{src.twist} - {tgt.twist}")
            cleaned[(i, j)] = term
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "entries", cleaned)

    def __setattr__(self, *_):
        raise AttributeError("MotiveMorphism is immutable")

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> Term:
        term = self.entries.get((i, j))
        if term is not None:
            return term
        src = self.source.summands[j]
        tgt = self.target.summands[i]
        return Term.zero(src.atom, tgt.atom, src.twist - tgt.twist)

    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def is_zero(self) -> bool:
        return not self.entries

    def is_identity(self) -> bool:
        if not self.is_endomorphism():
            return False
        for (i, j), term in self.entries.items():
            if i != j or term != Term.delta(self.source.summands[i].atom):
                return False
        return len(self.entries) == len(self.source)

    # -- linear structure -------------------------------------------------------

    def _require_parallel(self, other: "MotiveMorphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise MotiveError("morphisms between different objects")

    def __add__(self, other: "MotiveMorphism") -> "MotiveMorphism":
        self._require_parallel(other)
        out = dict(self.entries)
        for key, term in other.entries.items():
            cur = out.get(key)
            out[key] = term if cur is None else cur + term
        return MotiveMorphism(self.presentation, self.source, self.target, out,
                              _normalized=True)

    def __neg__(self) -> "MotiveMorphism":
        return MotiveMorphism(self.presentation, self.source, self.target,
                              {k: -t for k, t in self.entries.items()},
                              _normalized=True)

    def __sub__(self, other: "MotiveMorphism") -> "MotiveMorphism":
        return self + (-other)

    def scale(self, scalar: Scalar) -> "MotiveMorphism":
        if scalar.is_zero():
            return MotiveMorphism(self.presentation, self.source, self.target, {})
        return MotiveMorphism(self.presentation, self.source, self.target,
                              {k: t.scale(scalar) for k, t in self.entries.items()},
                              _normalized=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotiveMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.entries.items())))

    def __str__(self) -> str:
        rows = []
        for i in range(len(self.target)):
            cells = [str(self.entry(i, j)) for j in range(len(self.source))]
            rows.append("[" + ", ".join(cells) + "]")
        return "[" + ", ".join(rows) + "]"

    def __repr__(self) -> str:
        return (f"MotiveMorphism({self.source} -> {self.target}, "
                f"{len(self.entries)} nonzero entries)")


def identity_morphism(obj: MotiveObject, presentation: Presentation) -> MotiveMorphism:
    entries = {(i, i): Term.delta(s.atom) for i, s in enumerate(obj.summands)}
    return MotiveMorphism(presentation, obj, obj, entries, _normalized=True)


def compose_morphisms(later: MotiveMorphism, earlier: MotiveMorphism) -> MotiveMorphism:
    """Matrix product with entry-wise composition and normalisation."""
    if later.source != earlier.target:
        raise MotiveError("object mismatch in morphism composition")
    pres = later.presentation
    out: dict = {}
    for (i, j), left in later.entries.items():
        for (jj, k), right in earlier.entries.items():
            if jj != j:
                continue
            prod = pres.compose_normal(left, right)
            if prod.is_zero():
                continue
            cur = out.get((i, k))
            out[(i, k)] = prod if cur is None else cur + prod
    return MotiveMorphism(pres, earlier.source, later.target, out, _normalized=True)


def _dual_object(obj: MotiveObject, level: int) -> MotiveObject:
    return MotiveObject(tuple(Summand(s.atom, level - s.atom.dim - s.twist, s.label)
                              for s in obj.summands))


def transpose_morphism(morphism: MotiveMorphism) -> MotiveMorphism:
    """Transpose the matrix and every entry, swapping and dualising the objects.

    Twists of the dual objects are fixed by requiring that self-dual
    statements about endomorphisms of an untwisted motive stay
    endomorphisms of the same object; the duality level is the largest
    ``dim + twist`` over all summands involved.
    """
    summands = morphism.source.summands + morphism.target.summands
    level = max((s.atom.dim + s.twist for s in summands), default=0)
    new_source = _dual_object(morphism.target, level)
    new_target = _dual_object(morphism.source, level)
    entries = {(j, i): transpose_term(term)
               for (i, j), term in morphism.entries.items()}
    # transpose-closed rule sets keep normal words normal; normalising again
    # costs one scan and guards presentations that are not transpose-closed
    return MotiveMorphism(morphism.presentation, new_source, new_target, entries)


@dataclass(frozen=True)
class TriangularReport:
    """Shape summary of a normalised endomorphism matrix."""

    dimension: int
    is_diagonal_scalar: bool
    diagonal_scalar: Optional[Scalar]
    strictly_upper_zero: bool
    lower_entries: tuple[Term, ...]

    @property
    def invertible_by_neumann(self) -> bool:
        return (self.is_diagonal_scalar and self.strictly_upper_zero
                and self.diagonal_scalar is not None
                and not self.diagonal_scalar.is_zero())


def classify_triangular(morphism: MotiveMorphism) -> TriangularReport:
    """Check for a scaled-unitriangular shape after full normalisation.

    Reports whether every diagonal entry is s * Delta for one common
    scalar s, whether the strict upper block vanishes, and lists the
    surviving (irreducible) strictly-lower entries verbatim.
    """
    if not morphism.is_endomorphism():
        raise MotiveError("triangularity classification needs an endomorphism")
    n = len(morphism.source)
    diag_scalar: Optional[Scalar] = None
    diagonal_ok = True
    for i in range(n):
        scalar = morphism.entry(i, i).is_delta_multiple()
        if scalar is None:
            diagonal_ok = False
            break
        if diag_scalar is None:
            diag_scalar = scalar
        elif scalar != diag_scalar:
            diagonal_ok = False
            break
    upper_zero = all(i >= j for (i, j) in morphism.entries)
    lower = tuple(term for (i, j), term in
                  sorted(morphism.entries.items(), key=lambda kv: kv[0])
                  if i > j)
    if n == 0:
        return TriangularReport(0, True, ONE, True, ())
    return TriangularReport(n, diagonal_ok, diag_scalar if diagonal_ok else None,
                            upper_zero, lower)


def neumann_inverse(morphism: MotiveMorphism) -> MotiveMorphism:
    """Invert a scaled-unitriangular endomorphism through its nilpotent part.

    For M = s*(id - N) with N strictly lower triangular, returns
    (1/s)*(id + N + ... + N^(dim-1)); the bound is the matrix dimension,
    which dominates the nilpotency index of any strictly triangular N.
    The two-sided identity is re-verified symbolically before returning,
    with irreducible lower entries treated as free noncommuting symbols.
    """
    report = classify_triangular(morphism)
    if not report.is_diagonal_scalar or report.diagonal_scalar is None:
        raise TriangularityError("diagonal is not a common scalar multiple of Delta")
    if report.diagonal_scalar.is_zero():
        raise TriangularityError("diagonal scalar is zero")
    if not report.strictly_upper_zero:
        raise TriangularityError("strictly upper entries survive normalisation")
    pres = morphism.presentation
    obj = morphism.source
    ident = identity_morphism(obj, pres)
    scale = report.diagonal_scalar
    nilpotent = ident - morphism.scale(scale.inverse())
    total = ident
    power = ident
    for _ in range(len(obj) - 1):
        power = compose_morphisms(power, nilpotent)
        if power.is_zero():
            break
        total = total + power
    inverse = total.scale(scale.inverse())
    if not compose_morphisms(inverse, morphism).is_identity():
        raise TriangularityError("left inverse verification failed")
    if not compose_morphisms(morphism, inverse).is_identity():
        raise TriangularityError("right inverse verification failed")
    return inverse


def verify_idempotent(morphism: MotiveMorphism) -> bool:
    """True iff p.p - p normalises to the zero matrix."""
    if not morphism.is_endomorphism():
        raise MotiveError("idempotency is a property of endomorphisms")
    return (compose_morphisms(morphism, morphism) - morphism).is_zero()
