"""Graded numerical shadows of motive decompositions.

Poincare polynomials here are tuples of homology ranks indexed by degree;
a twist by n shifts degree by 2n.  The module checks a claimed direct-sum
decomposition against homology by forming the residual polynomial and
validating nonnegativity, twist divisibility and the dimension bound of
the abstract remainder.  Homology ranks are always finite; Chow ranks live
in the extended semiring with an absorbing infinity.

The total-space polynomial is always an input (or a catalog product for
smooth families): degenerate fibres change homology, so consistency is
checked rather than multiplicativity assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .inference import FiberDescriptor, chow_triviality_level


class RealizationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# extended ranks for Chow-group ledgers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rank:
    """A rank in {0, 1, 2, ...} u {infinite}; addition absorbs infinity."""

    value: Optional[int]  # None encodes infinite

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise RealizationError("negative rank")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "Rank") -> "Rank":
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return Rank(self.value + other.value)  # type: ignore[operator]

    def __str__(self) -> str:
        return "infinite" if self.is_infinite else str(self.value)


INFINITE = Rank(None)
RANK_ZERO = Rank(0)


def as_rank(value: Union[Rank, int, str, None]) -> Rank:
    if isinstance(value, Rank):
        return value
    if value is None or value == "infinite":
        return INFINITE
    return Rank(int(value))


# ---------------------------------------------------------------------------
# graded polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedPoly:
    """Coefficient i = rank of homology in degree i; finitely supported."""

    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, *coeffs: int) -> "GradedPoly":
        return cls.from_coeffs(coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "GradedPoly":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(int(c) for c in cs))

    @classmethod
    def zero(cls) -> "GradedPoly":
        return cls(())

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def shift(self, k: int) -> "GradedPoly":
        """Multiply by t^k (a twist by n shifts by k = 2n)."""
        if self.is_zero():
            return self
        if k < 0:
            raise RealizationError("negative degree shift")
        return GradedPoly(((0,) * k) + self.coeffs)

    def deshift(self, k: int) -> "GradedPoly":
        if self.is_zero():
            return self
        if any(c != 0 for c in self.coeffs[:k]):
            raise RealizationError(f"polynomial not divisible by t^{k}")
        return GradedPoly.from_coeffs(self.coeffs[k:])

    def divisible_by(self, k: int) -> bool:
        return all(c == 0 for c in self.coeffs[:k])

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return GradedPoly.from_coeffs(
            [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return GradedPoly.from_coeffs(
            [self.coefficient(i) - other.coefficient(i) for i in range(n)])

    def multiply(self, other: "GradedPoly") -> "GradedPoly":
        if self.is_zero() or other.is_zero():
            return GradedPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return GradedPoly.from_coeffs(out)

    def total(self) -> int:
        """Evaluation at t = 1: the total Betti number."""
        return sum(self.coeffs)

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.coeffs)) + "]"


@dataclass(frozen=True)
class BigradedTable:
    """Optional Hodge-level refinement: entry (p, q) is a bigraded rank.

    A twist shifts both indices by one.  Only the collapsed Betti-level
    checks are acceptance-gated; this refinement carries the identical
    additivity structure for scenarios that know their bigraded data.
    """

    rows: tuple[tuple[int, ...], ...]  # rows indexed by p, columns by q

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BigradedTable":
        trimmed = [list(r) for r in rows]
        while trimmed and not any(trimmed[-1]):
            trimmed.pop()
        width = 0
        for r in trimmed:
            while r and r[-1] == 0:
                r.pop()
            width = max(width, len(r))
        return cls(tuple(tuple(r + [0] * (width - len(r))) for r in trimmed))

    @classmethod
    def zero(cls) -> "BigradedTable":
        return cls(())

    def entry(self, p: int, q: int) -> int:
        if 0 <= p < len(self.rows) and 0 <= q < len(self.rows[p]):
            return self.rows[p][q]
        return 0

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.rows for c in row)

    def nonnegative(self) -> bool:
        return all(c >= 0 for row in self.rows for c in row)

    def shift(self, k: int) -> "BigradedTable":
        if k < 0:
            raise RealizationError("negative bigraded shift")
        if not self.rows:
            return self
        return BigradedTable.from_rows(
            [[0]] * k + [[0] * k + list(r) for r in self.rows])

    def _binop(self, other: "BigradedTable", op) -> "BigradedTable":
        height = max(len(self.rows), len(other.rows))
        width = max((len(r) for r in self.rows + other.rows), default=0)
        return BigradedTable.from_rows(
            [[op(self.entry(p, q), other.entry(p, q)) for q in range(width)]
             for p in range(height)])

    def __add__(self, other: "BigradedTable") -> "BigradedTable":
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other: "BigradedTable") -> "BigradedTable":
        return self._binop(other, lambda a, b: a - b)

    def to_poincare(self) -> GradedPoly:
        """Collapse the bigrading: degree i rank is the (p + q = i) diagonal sum."""
        if not self.rows:
            return GradedPoly.zero()
        width = max(len(r) for r in self.rows)
        coeffs = [0] * (len(self.rows) + width - 1)
        for p, row in enumerate(self.rows):
            for q, c in enumerate(row):
                coeffs[p + q] += c
        return GradedPoly.from_coeffs(coeffs)


def check_decomposition_bigraded(decomposition, total: BigradedTable,
                                 base: BigradedTable):
    """Bigraded residual with the same gates as the Betti-level check."""
    d_x = decomposition.total_dim
    d_b = decomposition.base_dim
    tower = BigradedTable.zero()
    for i in range(d_x - d_b + 1):
        tower = tower + base.shift(i)
    residual = total - tower
    nonnegative = residual.nonnegative()
    remainder = decomposition.remainder
    if remainder is None:
        accepted = nonnegative and residual.is_zero()
        return residual, accepted
    n = remainder.twist
    supported = all(c == 0 for p, row in enumerate(residual.rows)
                    for q, c in enumerate(row) if c and (p < n or q < n))
    deshifted_ok = all(c == 0 for p, row in enumerate(residual.rows)
                       for q, c in enumerate(row)
                       if c and (p - n > remainder.dim or q - n > remainder.dim))
    accepted = nonnegative and supported and deshifted_ok
    return residual, accepted


def poincare_of(expr, table: Mapping[str, GradedPoly]) -> GradedPoly:
    """Poincare polynomial of a direct sum, one table entry per atom name.

    Each summand contributes its atom's polynomial shifted up by twice the
    twist; abstract summands need a user-supplied entry.
    """
    out = GradedPoly.zero()
    for s in expr.summands:
        poly = table.get(s.atom.name)
        if poly is None:
            raise RealizationError(f"no Poincare polynomial for atom {s.atom.name!r}")
        out = out + poly.shift(2 * s.twist)
    return out


# ---------------------------------------------------------------------------
# the family catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyEntry:
    name: str
    dimension: int
    poincare: GradedPoly
    chow_ranks: tuple[Optional[Rank], ...]  # None = not stated by the tables
    chow_trivial_below: int

    def __post_init__(self):
        if self.poincare.degree != 2 * self.dimension:
            raise RealizationError(
                f"catalog entry {self.name}: polynomial degree "
                f"{self.poincare.degree} != {2 * self.dimension}")


def _euler_characteristic_ci(degrees: Sequence[int], dim: int) -> int:
    """Euler characteristic of a smooth complete intersection, exactly.

    Coefficient extraction from (1+h)^(n+1) / prod(1 + d_i h) truncated at
    h^dim, times the product of the degrees; n = dim + #degrees.
    """
    n = dim + len(degrees)
    series = [Fraction(0)] * (dim + 1)
    series[0] = Fraction(1)
    # multiply by (1+h)^(n+1)
    coeffs = [Fraction(0)] * (dim + 1)
    binom = Fraction(1)
    for k in range(dim + 1):
        coeffs[k] = binom
        binom = binom * (n + 1 - k) / (k + 1)
    series = coeffs
    # divide by each (1 + d h): multiply by sum (-d h)^k
    for d in degrees:
        new = [Fraction(0)] * (dim + 1)
        for k in range(dim + 1):
            sign = Fraction((-d) ** k)
            for j in range(dim + 1 - k):
                new[j + k] += series[j] * sign
        series = new
    total = series[dim]
    for d in degrees:
        total *= d
    if total.denominator != 1:
        raise RealizationError("non-integral Euler characteristic")
    return int(total)


def _hypersurface_like_poly(degrees: Sequence[int], dim: int) -> GradedPoly:
    """Betti numbers of a smooth complete intersection: 1 off the middle."""
    coeffs = [0] * (2 * dim + 1)
    for i in range(0, 2 * dim + 1, 2):
        coeffs[i] = 1
    chi = _euler_characteristic_ci(degrees, dim)
    baseline = dim + 1  # even degrees 0..2*dim
    primitive = (chi - baseline) if dim % 2 == 0 else (baseline - chi)
    if primitive < 0:
        raise RealizationError("negative primitive middle Betti number")
    coeffs[dim] += primitive
    return GradedPoly.from_coeffs(coeffs)


def family(name: str, **params) -> FamilyEntry:
    """Catalog lookup: named families with exact graded data.

    Known names: point, projective_space(dim), curve(genus), quadric(dim),
    cubic(dim), complete_intersection(dim, degrees).
    """
    if name == "point":
        return FamilyEntry("point", 0, GradedPoly.of(1), (Rank(1),), 1)
    if name == "projective_space":
        n = int(params["dim"])
        coeffs = [1 if i % 2 == 0 else 0 for i in range(2 * n + 1)]
        return FamilyEntry(name, n, GradedPoly.from_coeffs(coeffs),
                           tuple(Rank(1) for _ in range(n + 1)), n + 1)
    if name == "curve":
        g = int(params.get("genus", 0))
        ranks = (Rank(1) if g == 0 else INFINITE, Rank(1))
        return FamilyEntry(name, 1, GradedPoly.of(1, 2 * g, 1), ranks,
                           2 if g == 0 else 0)
    if name in ("quadric", "cubic", "complete_intersection"):
        dim = int(params["dim"])
        if name == "quadric":
            degrees: tuple[int, ...] = (2,)
        elif name == "cubic":
            degrees = (3,)
        else:
            degrees = tuple(sorted((int(d) for d in params["degrees"]), reverse=True))
        fd = FiberDescriptor("complete_intersection", dim, degrees)
        level = chow_triviality_level(fd)
        ranks: list[Optional[Rank]] = [None] * (dim + 1)
        for l in range(min(level, dim + 1)):
            ranks[l] = Rank(1)
        if dim >= 0:
            ranks[dim] = Rank(1)
        poly = _hypersurface_like_poly(degrees, dim)
        if name == "quadric" and dim % 2 == 0 and dim > 0:
            ranks[dim // 2] = Rank(2)
        return FamilyEntry(name, dim, poly, tuple(ranks), level)
    raise RealizationError(f"unknown family {name!r}")


def descriptor_poly(fd: FiberDescriptor) -> GradedPoly:
    if fd.family == "point":
        return family("point").poincare
    if fd.family == "projective_space":
        return family("projective_space", dim=fd.dim).poincare
    if fd.family == "curve":
        return family("curve", genus=fd.genus).poincare
    if fd.family in ("quadric", "cubic", "complete_intersection"):
        return family("complete_intersection", dim=fd.dim,
                      degrees=fd.normalized_degrees()).poincare
    raise RealizationError(f"no Poincare polynomial for family {fd.family!r}")


# ---------------------------------------------------------------------------
# decomposition consistency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizationReport:
    """Residual ledger for a claimed decomposition against homology."""

    residual: GradedPoly
    candidate_remainder: Optional[GradedPoly]
    nonnegative: bool
    twist_divisible: bool
    degree_bounded: bool
    accepted: bool
    total_rank_conserved: bool

    def status(self) -> str:
        return "PROVED-BY-REWRITING" if self.accepted else "FAILED"


def check_decomposition_realization(decomposition, total_poly: GradedPoly,
                                    base_poly: GradedPoly) -> RealizationReport:
    """Subtract the base tower from the total polynomial and vet the rest.

    The residual must be coefficientwise nonnegative, divisible by t^(2n)
    for the remainder twist n, and of bounded degree after deshifting; it
    is reported as the candidate polynomial of the abstract remainder.
    When the decomposition has no remainder the residual must vanish.
    """
    d_x = decomposition.total_dim
    d_b = decomposition.base_dim
    if total_poly.degree != 2 * d_x:
        raise RealizationError(
            f"total polynomial degree {total_poly.degree} != {2 * d_x}")
    if base_poly.degree != 2 * d_b:
        raise RealizationError(
            f"base polynomial degree {base_poly.degree} != {2 * d_b}")
    tower = GradedPoly.zero()
    for i in range(d_x - d_b + 1):
        tower = tower + base_poly.shift(2 * i)
    residual = total_poly - tower
    nonnegative = residual.nonnegative()
    remainder = decomposition.remainder
    if remainder is None:
        twist_div = True
        degree_ok = residual.is_zero()
        candidate = None
        accepted = nonnegative and residual.is_zero()
    else:
        twist_div = residual.divisible_by(2 * remainder.twist)
        candidate = (residual.deshift(2 * remainder.twist)
                     if (nonnegative and twist_div) else None)
        degree_ok = (candidate is not None
                     and candidate.degree <= 2 * remainder.dim)
        accepted = nonnegative and twist_div and degree_ok
    conserved = total_poly.total() == tower.total() + residual.total()
    return RealizationReport(residual=residual, candidate_remainder=candidate,
                             nonnegative=nonnegative, twist_divisible=twist_div,
                             degree_bounded=degree_ok, accepted=accepted,
                             total_rank_conserved=conserved)
