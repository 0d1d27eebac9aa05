"""Forward-chaining inference over typed geometric facts.

Facts are positive assertions about a single fibration scenario
(dimensions, fibre Chow-group levels, structural flags); rules carry the
citation of the mathematical result they encode and fire deterministically
in catalog order until saturation.  Every derived fact keeps a derivation
tree terminating in scenario inputs, and replaying the leaves of a trace
re-derives the fact.

Hypotheses the engine cannot check (flatness, generic smoothness, a finite
singular locus) enter as input facts; the engine never asserts that a
conjecture fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence


class InferenceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# facts
# ---------------------------------------------------------------------------

#: Predicates with an integer argument carry it in ``args``;
#: level-style predicates (*_chow_*) mean "for every index <= the argument".
KNOWN_PREDICATES = frozenset({
    "fiber_chow_trivial",            # CH_i(fibre) = Q for all i <= l, all points
    "fiber_chow_trivial_cofinite",   # same, for all but finitely many points
    "fiber_chow_fg",                 # CH_i(fibre) finitely generated for all i <= l
    "niveau",                        # (i, r): CH_i(total) has niveau <= r
    "has_murre", "kimura_fd", "standard_conj", "hodge_conj", "rat_eq_num",
    "flat", "generically_smooth", "finite_singular_locus",
    "base_dim", "total_dim", "over_finite_field",
    "fibers_cellular", "fibers_connected", "fibers_quadric_type",
    "base_has_murre",
})


@dataclass(frozen=True)
class Fact:
    pred: str
    args: tuple[int, ...] = ()
    subject: str = "scenario"

    def __post_init__(self):
        if self.pred not in KNOWN_PREDICATES:
            raise InferenceError(f"unknown predicate {self.pred!r}")

    def sort_key(self) -> tuple:
        return (self.pred, self.args, self.subject)

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        if self.pred == "niveau":
            return f"niveau(CH_{self.args[0]}, <= {self.args[1]})"
        return f"{self.pred}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Citation:
    """Named mathematical result with a one-line statement in our own words."""

    result: str
    statement: str

    def __str__(self) -> str:
        return f"{self.result}: {self.statement}"


@dataclass(frozen=True)
class Trace:
    """Derivation tree; rule_id None marks a scenario input leaf."""

    fact: Fact
    rule_id: Optional[str] = None
    citation: str = ""
    premises: tuple["Trace", ...] = ()

    def leaves(self) -> tuple[Fact, ...]:
        if self.rule_id is None:
            return (self.fact,)
        out: list[Fact] = []
        for p in self.premises:
            out.extend(p.leaves())
        seen: set = set()
        uniq = []
        for f in out:
            if f not in seen:
                seen.add(f)
                uniq.append(f)
        return tuple(uniq)

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.rule_id is None:
            return f"{pad}{self.fact}  [input]"
        lines = [f"{pad}{self.fact}  [{self.rule_id}]"]
        for p in self.premises:
            lines.append(p.render(indent + 1))
        return "\n".join(lines)


class _FactView:
    """Query helper over a fact set during rule evaluation."""

    def __init__(self, facts: Iterable[Fact]):
        self._facts = set(facts)
        self._by_pred: dict[str, list[Fact]] = {}
        for f in self._facts:
            self._by_pred.setdefault(f.pred, []).append(f)

    def has(self, pred: str, *args: int) -> Optional[Fact]:
        f = Fact(pred, tuple(args))
        return f if f in self._facts else None

    def level(self, pred: str) -> tuple[Optional[int], Optional[Fact]]:
        """Largest argument of a level predicate and its witnessing fact."""
        best: Optional[Fact] = None
        for f in self._by_pred.get(pred, ()):
            if best is None or f.args[0] > best.args[0]:
                best = f
        return (best.args[0] if best else None), best

    def unique_arg(self, pred: str) -> tuple[Optional[int], Optional[Fact]]:
        facts = self._by_pred.get(pred, ())
        if not facts:
            return None, None
        f = min(facts, key=lambda x: x.args)
        return f.args[0], f

    def niveau_bound(self, i: int) -> tuple[Optional[int], Optional[Fact]]:
        """Smallest known niveau bound for CH_i and its witnessing fact."""
        best: Optional[Fact] = None
        for f in self._by_pred.get("niveau", ()):
            if f.args[0] == i and (best is None or f.args[1] < best.args[1]):
                best = f
        return (best.args[1] if best else None), best


# ---------------------------------------------------------------------------
# the Esnault-Levine-Viehweg criterion and the fibre-fact tables
# ---------------------------------------------------------------------------

def elv_check(multidegree: Sequence[int], n: int, l: int) -> bool:
    """Triviality test for complete intersections in projective n-space.

    Decides whether a smooth complete intersection of the given multidegree
    in P^n has CH_{l'} = Q for all l' <= l, per the Esnault-Levine-Viehweg
    inequality: the binomial-sum bound in general, and the sharper linear
    bound when every degree is 2 and there are at most l quadrics.
    Binomials are computed exactly.
    """
    degrees = sorted(multidegree, reverse=True)
    if not degrees or any(d < 2 for d in degrees):
        raise InferenceError("multidegree entries must all be >= 2")
    if l < 0:
        return True
    r = len(degrees)
    if all(d == 2 for d in degrees) and r <= l:
        return r * (l + 2) <= n - l + r - 1
    return sum(math.comb(l + d, l + 1) for d in degrees) <= n


@dataclass(frozen=True)
class FiberDescriptor:
    """A named fibre family: quadrics, complete intersections, cells, ..."""

    family: str
    dim: int = 0
    degrees: tuple[int, ...] = ()
    genus: int = 0

    def normalized_degrees(self) -> tuple[int, ...]:
        if self.family == "quadric":
            return (2,)
        if self.family == "cubic":
            return (3,)
        return tuple(sorted(self.degrees, reverse=True))

    def __str__(self) -> str:
        if self.family == "curve":
            return f"curve of genus {self.genus}"
        if self.family == "complete_intersection":
            return f"complete intersection {self.degrees} of dim {self.dim}"
        if self.family == "point":
            return "point"
        return f"{self.family} of dim {self.dim}"


#: Sharper triviality levels than the binomial criterion provides, each with
#: its literature citation; consulted after the criterion, stronger value wins.
TRIVIALITY_OVERRIDES: tuple = (
    ((3,), 8, 3, Citation(
        "Otwinowska",
        "cubic hypersurfaces of dimension >= 8 have trivial CH_2")),
    ((3, 2), 6, 2, Citation(
        "Hirschowitz-Iyer",
        "(2,3) complete intersections of dimension >= 6 have trivial CH_0 and CH_1")),
)


def chow_triviality_level(fd: FiberDescriptor) -> int:
    """Largest n with CH_l = Q guaranteed for all l < n, from the tables."""
    if fd.family == "point":
        return 1
    if fd.family == "projective_space":
        return fd.dim + 1
    if fd.family == "curve":
        return 2 if fd.genus == 0 else 0
    if fd.family == "cellular":
        return 0
    if fd.family in ("quadric", "cubic", "complete_intersection"):
        degrees = fd.normalized_degrees()
        ambient = fd.dim + len(degrees)
        level = 0
        while level <= fd.dim and elv_check(degrees, ambient, level):
            level += 1
        for deg, min_dim, override_level, _ in TRIVIALITY_OVERRIDES:
            if degrees == deg and fd.dim >= min_dim:
                level = max(level, override_level)
        return level
    raise InferenceError(f"unknown fibre family {fd.family!r}")


def chow_fg_level(fd: FiberDescriptor) -> int:
    """Largest n with CH_l finitely generated for all l < n."""
    if fd.family == "cellular":
        return fd.dim + 1
    if fd.family == "curve" and fd.genus > 0:
        return 0
    return chow_triviality_level(fd)


def fiber_facts(fd: FiberDescriptor) -> list[Fact]:
    """Facts the catalog guarantees for every closed fibre of the family."""
    facts: list[Fact] = []
    trivial = chow_triviality_level(fd)
    fg = chow_fg_level(fd)
    if trivial >= 1:
        facts.append(Fact("fiber_chow_trivial", (trivial - 1,)))
        facts.append(Fact("fiber_chow_trivial_cofinite", (trivial - 1,)))
    if fg >= 1:
        facts.append(Fact("fiber_chow_fg", (fg - 1,)))
    if fd.family == "cellular":
        facts.append(Fact("fibers_cellular"))
    if fd.family == "quadric":
        facts.append(Fact("fibers_quadric_type"))
    return facts


# ---------------------------------------------------------------------------
# rule catalog
# ---------------------------------------------------------------------------

Derivation = tuple[Fact, tuple[Fact, ...]]


@dataclass(frozen=True)
class Rule:
    id: str
    citation: Citation
    fire: Callable[[_FactView], list[Derivation]] = field(compare=False)


def _quadric_type_level(view: _FactView) -> Optional[tuple[int, tuple[Fact, ...]]]:
    """Fibre dimension c and premises when triviality reaches the quadric level.

    The quadric-type hypothesis asks CH_l = Q for all l < c/2, i.e. a
    triviality level of at least ceil(c/2) - 1.
    """
    d, f_d = view.unique_arg("total_dim")
    b, f_b = view.unique_arg("base_dim")
    if d is None or b is None:
        return None
    c = d - b
    needed = -(-c // 2) - 1  # ceil(c/2) - 1
    premises: list[Fact] = [f_d, f_b]
    if needed >= 0:
        level, f_t = view.level("fiber_chow_trivial")
        if level is None or level < needed:
            return None
        premises.append(f_t)
    return c, tuple(premises)


def _rule_niveau_linear(view: _FactView) -> list[Derivation]:
    level, f_t = view.level("fiber_chow_trivial")
    b, f_b = view.unique_arg("base_dim")
    if level is None or b is None:
        return []
    return [(Fact("niveau", (i, b)), (f_t, f_b)) for i in range(level + 1)]


def _rule_niveau_curve(view: _FactView) -> list[Derivation]:
    f_b = view.has("base_dim", 1)
    f_s = view.has("generically_smooth")
    level, f_fg = view.level("fiber_chow_fg")
    if f_b is None or f_s is None or level is None:
        return []
    return [(Fact("niveau", (i, 1)), (f_b, f_s, f_fg)) for i in range(level + 1)]


def _rule_niveau_finite_singularities(view: _FactView) -> list[Derivation]:
    f_fin = view.has("finite_singular_locus")
    b, f_b = view.unique_arg("base_dim")
    fg_level, f_fg = view.level("fiber_chow_fg")
    cof_level, f_cof = view.level("fiber_chow_trivial_cofinite")
    if f_fin is None or b is None or fg_level is None or cof_level is None:
        return []
    top = min(fg_level, cof_level + 1)
    return [(Fact("niveau", (i, b)), (f_fin, f_b, f_fg, f_cof))
            for i in range(top + 1)]


def _conjecture_rule(target: str, niveau_cap: int, index_of: Callable[[int], int]):
    def fire(view: _FactView) -> list[Derivation]:
        d, f_d = view.unique_arg("total_dim")
        if d is None:
            return []
        top = index_of(d)
        premises: list[Fact] = [f_d]
        for i in range(top + 1):
            bound, f_n = view.niveau_bound(i)
            if bound is None or bound > niveau_cap:
                return []
            premises.append(f_n)
        return [(Fact(target), tuple(premises))]
    return fire


def _rule_quadric_murre(view: _FactView) -> list[Derivation]:
    f_flat = view.has("flat")
    got = _quadric_type_level(view)
    if f_flat is None or got is None:
        return []
    c, premises = got
    b, _ = view.unique_arg("base_dim")
    premises = (f_flat,) + premises
    out: list[Derivation] = []
    if b is not None and b <= 2:
        out.append((Fact("has_murre"), premises))
    if b == 1:
        out.append((Fact("kimura_fd"), premises))
    if b == 3 and c % 2 == 1:
        f_bm = view.has("base_has_murre")
        if f_bm is not None:
            out.append((Fact("has_murre"), premises + (f_bm,)))
    return out


def _rule_rational_numerical(view: _FactView) -> list[Derivation]:
    f_ff = view.has("over_finite_field")
    f_flat = view.has("flat")
    got = _quadric_type_level(view)
    b, _ = view.unique_arg("base_dim")
    if f_ff is None or f_flat is None or got is None or b is None or b > 2:
        return []
    _, premises = got
    return [(Fact("rat_eq_num"), (f_ff, f_flat) + premises)]


def _rule_mumford_zero_cycles(view: _FactView) -> list[Derivation]:
    f_conn = view.has("fibers_connected")
    f_fin = view.has("finite_singular_locus")
    fg_level, f_fg = view.level("fiber_chow_fg")
    if f_conn is None or f_fin is None or fg_level is None or fg_level < 0:
        return []
    return [(Fact("fiber_chow_trivial_cofinite", (0,)), (f_conn, f_fin, f_fg))]


RULES: tuple[Rule, ...] = (
    Rule("R-niv-lin",
         Citation("niveau from fibrewise-trivial Chow groups",
                  "if every closed fibre has trivial Chow groups in degrees <= l, "
                  "the i-cycles of the total space are supported in dimension "
                  "i + dim(base) for all i <= l"),
         _rule_niveau_linear),
    Rule("R-niv-curve",
         Citation("niveau over a curve from finitely generated fibre Chow groups",
                  "over a smooth curve, generically smooth with fibrewise finitely "
                  "generated Chow groups in degrees <= l, the total space has "
                  "niveau <= 1 in degrees <= l"),
         _rule_niveau_curve),
    Rule("R-niv-sing",
         Citation("niveau with a finite singular locus",
                  "with finitely many singular points, fibrewise finitely generated "
                  "Chow groups in degrees <= l and cofinitely trivial ones below l "
                  "give niveau <= dim(base) in degrees <= l"),
         _rule_niveau_finite_singularities),
    Rule("R-conj-hodge",
         Citation("Hodge conjecture from small niveau",
                  "niveau <= 3 for CH_0..CH_floor((d-4)/2) implies the Hodge "
                  "conjecture in dimension d"),
         _conjecture_rule("hodge_conj", 3, lambda d: (d - 4) // 2)),
    Rule("R-conj-std",
         Citation("Lefschetz standard conjecture from small niveau",
                  "niveau <= 2 for CH_0..CH_floor((d-3)/2) implies the Lefschetz "
                  "standard conjecture in dimension d"),
         _conjecture_rule("standard_conj", 2, lambda d: (d - 3) // 2)),
    Rule("R-conj-murre",
         Citation("Murre decomposition from small niveau",
                  "niveau <= 1 for CH_0..CH_floor((d-3)/2) yields a Murre "
                  "decomposition in dimension d"),
         _conjecture_rule("has_murre", 1, lambda d: (d - 3) // 2)),
    Rule("R-conj-kimura",
         Citation("Kimura finite-dimensionality from small niveau",
                  "niveau <= 1 for CH_0..CH_floor((d-2)/2) yields Kimura "
                  "finite-dimensionality in dimension d"),
         _conjecture_rule("kimura_fd", 1, lambda d: (d - 2) // 2)),
    Rule("R-quad-murre",
         Citation("Murre decompositions for low-dimensional bases",
                  "a flat family with quadric-level fibre triviality has a Murre "
                  "decomposition over bases of dimension <= 2, is Kimura "
                  "finite-dimensional over a curve, and inherits a Murre "
                  "decomposition over a 3-dimensional Murre base when the fibre "
                  "dimension is odd"),
         _rule_quadric_murre),
    Rule("R-ratnum",
         Citation("rational equals numerical over finite fields",
                  "for flat quadric-level families over a base of dimension <= 2 "
                  "defined over a finite field, rational and numerical equivalence "
                  "agree"),
         _rule_rational_numerical),
    Rule("R-mumford",
         Citation("Mumford-type zero-cycle collapse",
                  "a connected smooth projective fibre with finitely generated "
                  "CH_0 has CH_0 generated by a point; away from the finite "
                  "singular locus this makes CH_0 of the fibres trivial"),
         _rule_mumford_zero_cycles),
)


# ---------------------------------------------------------------------------
# saturation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InferenceResult:
    facts: tuple[Fact, ...]
    traces: dict

    def derived(self, pred: str, *args: int) -> bool:
        return Fact(pred, tuple(args)) in self.traces

    def conjecture_facts(self) -> tuple[Fact, ...]:
        kinds = {"has_murre", "kimura_fd", "standard_conj", "hodge_conj",
                 "rat_eq_num"}
        return tuple(f for f in self.facts if f.pred in kinds)

    def trace(self, fact: Fact) -> Trace:
        return self.traces[fact]


def infer(inputs: Iterable[Fact]) -> InferenceResult:
    """Saturate the rule catalog over the input facts.

    Deterministic: rules fire in catalog order, first derivation of a fact
    wins, and iteration continues until a full pass adds nothing.  The
    fact universe of a scenario is finite (indices are bounded by the
    total dimension), so saturation terminates.
    """
    traces: dict[Fact, Trace] = {}
    for f in inputs:
        if f not in traces:
            traces[f] = Trace(f)
    changed = True
    while changed:
        changed = False
        view = _FactView(traces.keys())
        for rule in RULES:
            for fact, premises in rule.fire(view):
                if fact in traces:
                    continue
                traces[fact] = Trace(fact, rule.id, str(rule.citation),
                                     tuple(traces[p] for p in premises))
                changed = True
        # a pass that added facts may enable more rules; rebuild the view
    facts = tuple(sorted(traces.keys(), key=lambda f: f.sort_key()))
    return InferenceResult(facts=facts, traces=traces)


def replay(trace: Trace) -> bool:
    """Re-run inference on the trace's leaf inputs and re-derive its fact."""
    result = infer(trace.leaves())
    return trace.fact in result.traces


def rule_catalog_lines() -> list[str]:
    out = []
    for rule in RULES:
        out.append(f"{rule.id}: {rule.citation}")
    return out
