"""Free algebra of correspondence words with exact rewriting.

Values here are immutable and freely shareable.  A :class:`Word` is a
finite composite of named generators (composition is read right to left:
the rightmost factor acts first); a :class:`Term` is a finitely supported
Q(n)-linear combination of words sharing one (source, target, shift)
signature.  A :class:`Presentation` owns the atoms, generators and
length-decreasing rewrite rules of one geometric scenario and provides
memoised normalisation.

Generators and atoms compare by identity: each is registered exactly once
with its presentation, which keeps word matching cheap and rules out
accidental mixing of scenarios.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .scalars import ONE, Scalar, ScalarLike, ZERO


class AlgebraError(ValueError):
    """Violation of a construction precondition in the correspondence algebra."""


@dataclass(frozen=True, eq=False)
class Atom:
    """A named smooth projective variety placeholder with its dimension."""

    name: str
    dim: int

    def __repr__(self) -> str:
        return f"Atom({self.name}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Generator:
    """A named correspondence class between two atoms.

    ``chow_dim`` is the k for which the generator denotes a class in
    CH_k(source x target); the induced degree shift is
    ``chow_dim - source.dim`` and may be negative (hyperplane operators).
    """

    name: str
    source: Atom
    target: Atom
    chow_dim: int
    index: int
    transpose_name: Optional[str] = None
    _partner: Optional["Generator"] = field(default=None, repr=False)

    @property
    def shift(self) -> int:
        return self.chow_dim - self.source.dim

    @property
    def partner(self) -> "Generator":
        if self._partner is None:
            raise AlgebraError(f"generator {self.name} has no declared transpose")
        return self._partner

    def has_partner(self) -> bool:
        return self._partner is not None

    def __repr__(self) -> str:
        return f"Generator({self.name})"


class Word:
    """A composable sequence of generators; the empty word is the diagonal.

    Factors are stored leftmost-acts-last, so ``Word((g1, g2))`` denotes
    g1 after g2 and requires ``g1.source is g2.target``.  An empty word
    carries the atom whose diagonal it denotes.
    """

    __slots__ = ("factors", "atom", "_hash")

    def __init__(self, factors: Sequence[Generator] = (), atom: Optional[Atom] = None,
                 *, _trusted: bool = False):
        factors = tuple(factors)
        if not _trusted:
            if factors:
                if atom is not None:
                    raise AlgebraError("atom annotation is only for the empty word")
                for k in range(len(factors) - 1):
                    if factors[k].source is not factors[k + 1].target:
                        raise AlgebraError(
                            f"non-composable factors {factors[k].name} after "
                            f"{factors[k + 1].name}")
            elif atom is None:
                raise AlgebraError("empty word needs an atom")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "atom", atom)
        object.__setattr__(self, "_hash", hash((factors, id(atom))))

    def __setattr__(self, *_):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls, atom: Atom) -> "Word":
        return cls((), atom, _trusted=True)

    @property
    def source(self) -> Atom:
        return self.factors[-1].source if self.factors else self.atom  # type: ignore

    @property
    def target(self) -> Atom:
        return self.factors[0].target if self.factors else self.atom  # type: ignore

    @property
    def shift(self) -> int:
        return sum(g.shift for g in self.factors)

    @property
    def chow_dim(self) -> int:
        return self.source.dim + self.shift

    def __len__(self) -> int:
        return len(self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.factors == other.factors and self.atom is other.atom

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (len(self.factors), tuple(g.index for g in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return f"Delta_{self.atom.name}"  # type: ignore[union-attr]
        parts = []
        i = 0
        fs = self.factors
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] is fs[i]:
                j += 1
            run = j - i
            parts.append(fs[i].name if run == 1 else f"{fs[i].name}^{run}")
            i = j
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Word({self})"


def compose_words(later: Word, earlier: Word) -> Word:
    """Concatenation realising ``later`` after ``earlier``."""
    if later.source is not earlier.target:
        raise AlgebraError(
            f"cannot compose: {later} expects source {later.source.name}, "
            f"got {earlier.target.name}")
    if not later.factors and not earlier.factors:
        return later
    return Word(later.factors + earlier.factors, _trusted=True)


class Term:
    """A homogeneous Q(n)-linear combination of words.

    Every word in the support shares the term's (source, target, shift);
    the zero term keeps that signature explicitly so bookkeeping checks
    apply uniformly.
    """

    __slots__ = ("source", "target", "shift", "_entries", "_hash")

    def __init__(self, source: Atom, target: Atom, shift: int,
                 entries: Optional[dict] = None, *, _trusted: bool = False):
        cleaned: dict = {}
        if entries:
            for word, scalar in entries.items():
                if scalar.is_zero():
                    continue
                if not _trusted and (word.source is not source or word.target is not target
                                     or word.shift != shift):
                    raise AlgebraError(
                        f"word {word} breaks homogeneity of "
                        f"({source.name} -> {target.name}, shift {shift})")
                cleaned[word] = scalar
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "_entries", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("Term is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, source: Atom, target: Atom, shift: int) -> "Term":
        return cls(source, target, shift)

    @classmethod
    def delta(cls, atom: Atom, scalar: ScalarLike = ONE) -> "Term":
        s = scalar if isinstance(scalar, Scalar) else Scalar.integer(scalar)
        return cls(atom, atom, 0, {Word.identity(atom): s}, _trusted=True)

    @classmethod
    def from_word(cls, word: Word, scalar: ScalarLike = ONE) -> "Term":
        s = scalar if isinstance(scalar, Scalar) else Scalar.integer(scalar)
        return cls(word.source, word.target, word.shift, {word: s}, _trusted=True)

    # -- views ---------------------------------------------------------------

    def items(self) -> tuple:
        """Support in canonical order (word length, then registration indices)."""
        return tuple(sorted(self._entries.items(), key=lambda kv: kv[0].sort_key()))

    def raw_items(self):
        return self._entries.items()

    def coefficient(self, word: Word) -> Scalar:
        return self._entries.get(word, ZERO)

    def is_zero(self) -> bool:
        return not self._entries

    def support_size(self) -> int:
        return len(self._entries)

    def signature(self) -> tuple:
        return (self.source, self.target, self.shift)

    def is_delta_multiple(self) -> Optional[Scalar]:
        """The scalar s if this term equals s * Delta, else None."""
        if self.source is not self.target or self.shift != 0:
            return None
        if len(self._entries) != 1:
            return None
        word, scalar = next(iter(self._entries.items()))
        return scalar if not word.factors else None

    # -- linear structure ----------------------------------------------------

    def _check_signature(self, other: "Term") -> None:
        if self.signature() != other.signature():
            raise AlgebraError(
                f"signature mismatch: ({self.source.name}->{self.target.name}, "
                f"{self.shift}) vs ({other.source.name}->{other.target.name}, "
                f"{other.shift})")

    def __add__(self, other: "Term") -> "Term":
        self._check_signature(other)
        out = dict(self._entries)
        for w, s in other._entries.items():
            acc = out.get(w)
            out[w] = s if acc is None else acc + s
        return Term(self.source, self.target, self.shift, out, _trusted=True)

    def __neg__(self) -> "Term":
        return Term(self.source, self.target, self.shift,
                    {w: -s for w, s in self._entries.items()}, _trusted=True)

    def __sub__(self, other: "Term") -> "Term":
        return self + (-other)

    def scale(self, scalar: ScalarLike) -> "Term":
        s = scalar if isinstance(scalar, Scalar) else Scalar.integer(scalar)
        if s.is_zero():
            return Term.zero(self.source, self.target, self.shift)
        return Term(self.source, self.target, self.shift,
                    {w: c * s for w, c in self._entries.items()}, _trusted=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return (self.signature() == other.signature()
                and self._entries == other._entries)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((id(self.source), id(self.target), self.shift,
                      frozenset(self._entries.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        if not self._entries:
            return "0"
        parts = []
        for word, scalar in self.items():
            ss = str(scalar)
            if ss == "1":
                parts.append(str(word))
            elif ss == "-1":
                parts.append(f"-{word}")
            else:
                if ("+" in ss or " - " in ss) and not ss.startswith("("):
                    ss = f"({ss})"
                parts.append(f"{ss}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Term({self})"


def compose_terms(later: Term, earlier: Term) -> Term:
    """Bilinear extension of word concatenation; the result is not normalised."""
    if later.source is not earlier.target:
        raise AlgebraError(
            f"cannot compose terms: source {later.source.name} != "
            f"target {earlier.target.name}")
    out: dict = {}
    for w1, s1 in later._entries.items():
        for w2, s2 in earlier._entries.items():
            w = compose_words(w1, w2)
            s = s1 * s2
            acc = out.get(w)
            out[w] = s if acc is None else acc + s
    return Term(earlier.source, later.target, later.shift + earlier.shift,
                out, _trusted=True)


def transpose_word(word: Word) -> Word:
    if not word.factors:
        return word
    return Word(tuple(g.partner for g in reversed(word.factors)), _trusted=True)


def transpose_term(term: Term) -> Term:
    """Reverse every word, replacing each factor by its transpose partner.

    Requires every generator in the support to have a declared transpose
    (self-transpose counts).  Scalars are unchanged.
    """
    out = {transpose_word(w): s for w, s in term._entries.items()}
    chow = term.source.dim + term.shift
    return Term(term.target, term.source, chow - term.target.dim, out, _trusted=True)


@dataclass(frozen=True, eq=False)
class RewriteRule:
    """A length-decreasing replacement of a contiguous subword.

    ``citation`` names the mathematical fact the rule encodes; it is
    carried into reports verbatim.
    """

    name: str
    pattern: Word
    replacement: Term
    citation: str

    def __post_init__(self):
        if len(self.pattern) < 1:
            raise AlgebraError("rewrite pattern must be a nonempty word")
        if (self.pattern.source is not self.replacement.source
                or self.pattern.target is not self.replacement.target
                or self.pattern.shift != self.replacement.shift):
            raise AlgebraError(f"rule {self.name}: pattern/replacement signature mismatch")
        for word in self.replacement._entries:
            if len(word) >= len(self.pattern):
                raise AlgebraError(
                    f"rule {self.name}: replacement word {word} not shorter than pattern")

    def __repr__(self) -> str:
        return f"RewriteRule({self.name}: {self.pattern} -> {self.replacement})"


class _RunFamily:
    """Compiled form of an exponent-conditional rule family.

    Patterns of the shape  prefix . run^e . suffix  (nonempty prefix and
    suffix, e >= 0) are matched in one step by walking the run; distinct
    exponents land on distinct rules, so matching stays deterministic.
    """

    __slots__ = ("prefix", "run", "suffix", "by_exponent")

    def __init__(self, prefix, run, suffix):
        self.prefix = prefix
        self.run = run
        self.suffix = suffix
        self.by_exponent: dict = {}

    def match(self, factors, pos: int):
        pre, suf = self.prefix, self.suffix
        n = len(factors)
        if pos + len(pre) + len(suf) > n:
            return None
        for k, g in enumerate(pre):
            if factors[pos + k] is not g:
                return None
        i = pos + len(pre)
        run = self.run
        e = 0
        while i < n and factors[i] is run:
            i += 1
            e += 1
        rule = self.by_exponent.get(e)
        if rule is None:
            return None
        if i + len(suf) > n:
            return None
        for k, g in enumerate(suf):
            if factors[i + k] is not g:
                return None
        return rule


class _ExactMatcher:
    __slots__ = ("pattern", "rule")

    def __init__(self, rule: RewriteRule):
        self.pattern = rule.pattern.factors
        self.rule = rule

    def match(self, factors, pos: int):
        pat = self.pattern
        end = pos + len(pat)
        if end > len(factors):
            return None
        if factors[pos:end] == pat:
            return self.rule
        return None


def _split_run(pattern: tuple):
    """Decompose a pattern as (prefix, run generator, exponent, suffix).

    The run generator is the first self-composable factor not at either
    end of the pattern; returns None when no such block exists.
    """
    for i in range(1, len(pattern) - 1):
        g = pattern[i]
        if g.source is g.target:
            j = i
            while j < len(pattern) - 1 and pattern[j] is g:
                j += 1
            return pattern[:i], g, j - i, pattern[j:]
    return None


class RuleIndex:
    """Rules compiled for fast leftmost/rightmost redex search."""

    def __init__(self, rules: Sequence[RewriteRule]):
        self.rules = tuple(rules)
        self.max_pattern = max((len(r.pattern) for r in rules), default=1)
        by_first: dict = {}
        families: dict = {}
        order = 0
        for rule in rules:
            pat = rule.pattern.factors
            split = _split_run(pat)
            if split is not None:
                prefix, run, exponent, suffix = split
                key = (prefix, run, suffix)
                fam = families.get(key)
                if fam is None:
                    fam = _RunFamily(prefix, run, suffix)
                    families[key] = fam
                    by_first.setdefault(prefix[0], []).append((order, fam))
                    order += 1
                fam.by_exponent[exponent] = rule
            else:
                by_first.setdefault(pat[0], []).append((order, _ExactMatcher(rule)))
                order += 1
        # fold runless siblings (exponent zero) into an existing family
        for (prefix, run, suffix), fam in families.items():
            flat = prefix + suffix
            for matchers in by_first.values():
                for idx, (_, m) in enumerate(matchers):
                    if isinstance(m, _ExactMatcher) and m.pattern == flat:
                        if 0 not in fam.by_exponent:
                            fam.by_exponent[0] = m.rule
                            matchers.pop(idx)
                        break
        self._by_first = {g: tuple(m for _, m in sorted(ms, key=lambda t: t[0]))
                          for g, ms in by_first.items()}

    def find(self, factors: tuple, *, rightmost: bool = False):
        """First (pos, rule) whose pattern occurs at pos, or None."""
        by_first = self._by_first
        positions = range(len(factors) - 1, -1, -1) if rightmost else range(len(factors))
        for pos in positions:
            matchers = by_first.get(factors[pos])
            if matchers is None:
                continue
            for m in matchers:
                rule = m.match(factors, pos)
                if rule is not None:
                    return pos, rule
        return None

    def find_in_window(self, factors: tuple, lo: int, hi: int):
        """Leftmost redex starting in [lo, hi); callers guarantee none before lo."""
        by_first = self._by_first
        lo = max(lo, 0)
        hi = min(hi, len(factors))
        for pos in range(lo, hi):
            matchers = by_first.get(factors[pos])
            if matchers is None:
                continue
            for m in matchers:
                rule = m.match(factors, pos)
                if rule is not None:
                    return pos, rule
        return None


class Presentation:
    """Registry of one scenario: atoms, generators, transpose pairing, rules.

    Registration order fixes the canonical display order of words.  The
    normalisation cache is an implementation detail; all returned values
    are immutable.
    """

    def __init__(self, name: str = ""):
        self.name = name
        self.atoms: dict[str, Atom] = {}
        self.generators: dict[str, Generator] = {}
        self.rules: list[RewriteRule] = []
        self._index: Optional[RuleIndex] = None
        self._nf_cache: dict = {"leftmost": {}, "rightmost": {}}

    # -- registration --------------------------------------------------------

    def add_atom(self, name: str, dim: int) -> Atom:
        if name in self.atoms:
            raise AlgebraError(f"duplicate atom name {name!r}")
        if dim < 0:
            raise AlgebraError(f"atom {name!r} with negative dimension")
        atom = Atom(name, dim)
        self.atoms[name] = atom
        return atom

    def make_generator(self, name: str, source: Atom, target: Atom, chow_dim: int,
                       transpose_of: Optional[str] = None) -> Generator:
        if name in self.generators:
            raise AlgebraError(f"duplicate generator name {name!r}")
        gen = Generator(name, source, target, chow_dim, index=len(self.generators),
                        transpose_name=transpose_of)
        if transpose_of is not None:
            if transpose_of == name:
                if source is not target:
                    raise AlgebraError(
                        f"self-transpose generator {name!r} must be an endomorphism")
                object.__setattr__(gen, "_partner", gen)
            else:
                other = self.generators.get(transpose_of)
                if other is None:
                    raise AlgebraError(f"transpose partner {transpose_of!r} not registered")
                if other.has_partner():
                    raise AlgebraError(f"generator {transpose_of!r} already paired")
                if (other.source is not target or other.target is not source
                        or other.chow_dim != chow_dim):
                    raise AlgebraError(
                        f"transpose mismatch between {name!r} and {transpose_of!r}")
                object.__setattr__(gen, "_partner", other)
                object.__setattr__(other, "_partner", gen)
                object.__setattr__(other, "transpose_name", name)
        self.generators[name] = gen
        return gen

    def add_rule(self, name: str, pattern, replacement: Term, citation: str) -> RewriteRule:
        if not isinstance(pattern, Word):
            pattern = Word(tuple(pattern))
        rule = RewriteRule(name, pattern, replacement, citation)
        self.rules.append(rule)
        self._index = None
        self._nf_cache = {"leftmost": {}, "rightmost": {}}
        return rule

    def restricted(self, keep: Callable[[RewriteRule], bool]) -> "Presentation":
        """A clone sharing atoms/generators but with a filtered rule set."""
        clone = Presentation(self.name + "/restricted")
        clone.atoms = self.atoms
        clone.generators = self.generators
        clone.rules = [r for r in self.rules if keep(r)]
        return clone

    # -- convenience builders --------------------------------------------------

    def generator(self, name: str) -> Generator:
        return self.generators[name]

    def atom(self, name: str) -> Atom:
        return self.atoms[name]

    def word(self, *names_or_gens) -> Word:
        factors = tuple(self.generators[f] if isinstance(f, str) else f
                        for f in names_or_gens)
        return Word(factors)

    @property
    def index(self) -> RuleIndex:
        if self._index is None:
            self._index = RuleIndex(self.rules)
        return self._index

    # -- normalisation -----------------------------------------------------------

    def _nf_word(self, word: Word, strategy: str):
        """Normal form of a single word as ((word, scalar), ...) plus citations."""
        cache = self._nf_cache[strategy]
        hit = cache.get(word)
        if hit is not None:
            return hit
        found = self.index.find(word.factors, rightmost=(strategy == "rightmost"))
        if found is None:
            value = ((word, ONE),), frozenset()
            cache[word] = value
            return value
        pos, rule = found
        acc: dict = {}
        citations = {rule.citation}
        pat_len = len(rule.pattern)
        prefix = word.factors[:pos]
        suffix = word.factors[pos + pat_len:]
        for rw, rs in rule.replacement._entries.items():
            mid = rw.factors
            spliced = prefix + mid + suffix
            child = (Word(spliced, _trusted=True) if spliced
                     else Word.identity(rw.atom if rw.atom is not None else word.source))
            child_items, child_cits = self._nf_word(child, strategy)
            citations |= child_cits
            for w2, s2 in child_items:
                s = rs * s2
                cur = acc.get(w2)
                acc[w2] = s if cur is None else cur + s
        items = tuple((w, s) for w, s in acc.items() if not s.is_zero())
        value = items, frozenset(citations)
        cache[word] = value
        return value

    def normalize(self, term: Term, strategy: str = "leftmost") -> Term:
        """Rewrite to the fixed point and collect like words.

        The default strategy replaces the leftmost occurrence of any
        pattern as a contiguous subword; termination is guaranteed by the
        length-decreasing rule invariant.
        """
        return self.normalize_traced(term, strategy)[0]

    def normalize_traced(self, term: Term, strategy: str = "leftmost"):
        """Like :meth:`normalize`, also reporting the citations of fired rules."""
        acc: dict = {}
        citations: set = set()
        for word, scalar in term._entries.items():
            items, cits = self._nf_word(word, strategy)
            citations |= cits
            for w, s in items:
                v = scalar * s
                cur = acc.get(w)
                acc[w] = v if cur is None else cur + v
        return (Term(term.source, term.target, term.shift, acc, _trusted=True),
                frozenset(citations))

    def compose_normal(self, later: Term, earlier: Term) -> Term:
        """Compose two already-normal terms, normalising on the fly.

        New redexes in a concatenation of normal words can only straddle
        the junction, so the search window stays local to each splice;
        the result agrees with ``normalize(compose_terms(...))``.
        """
        if later.source is not earlier.target:
            raise AlgebraError(
                f"cannot compose terms: source {later.source.name} != "
                f"target {earlier.target.name}")
        index = self.index
        maxpat = index.max_pattern
        acc: dict = {}

        def reduce_from(factors: tuple, scalar: Scalar, lo: int, hi: int,
                        empty_atom: Atom) -> None:
            # invariant: every redex of `factors` starts at a position in [lo, hi)
            while True:
                found = index.find_in_window(factors, lo, hi)
                if found is None:
                    word = (Word(factors, _trusted=True) if factors
                            else Word.identity(empty_atom))
                    cur = acc.get(word)
                    acc[word] = scalar if cur is None else cur + scalar
                    return
                pos, rule = found
                pat_len = len(rule.pattern)
                prefix = factors[:pos]
                suffix = factors[pos + pat_len:]
                repl = rule.replacement._entries
                if not repl:
                    return
                if len(repl) == 1:
                    (rw, rs), = repl.items()
                    delta = len(rw.factors) - pat_len
                    factors = prefix + rw.factors + suffix
                    scalar = scalar * rs
                    lo, hi = pos - maxpat + 1, max(pos + len(rw.factors), hi + delta)
                    continue
                for rw, rs in repl.items():
                    delta = len(rw.factors) - pat_len
                    reduce_from(prefix + rw.factors + suffix, scalar * rs,
                                pos - maxpat + 1, max(pos + len(rw.factors), hi + delta),
                                empty_atom)
                return

        for w1, s1 in later._entries.items():
            for w2, s2 in earlier._entries.items():
                factors = w1.factors + w2.factors
                junction = len(w1.factors)
                reduce_from(factors, s1 * s2,
                            junction - maxpat + 1, junction, earlier.source)
        return Term(earlier.source, later.target, later.shift + earlier.shift,
                    acc, _trusted=True)


def normalize(term: Term, rules: Sequence[RewriteRule],
              strategy: str = "leftmost") -> Term:
    """One-shot normalisation against an explicit rule list."""
    scratch = Presentation("scratch")
    scratch.rules = list(rules)
    return scratch.normalize(term, strategy)


@dataclass(frozen=True)
class ConfluenceReport:
    """Outcome of double-strategy normalisation over seeded random words."""

    trials: int
    seed: int
    max_length: int
    words_tested: int
    discrepancies: tuple

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def check_confluence_sample(presentation: Presentation, trials: int, seed: int,
                            max_length: int = 8) -> ConfluenceReport:
    """Normalise random composable words under both scan directions.

    The rule sets here are fixed finite lists taken from proved relations;
    confluence is sampled, not proved, so any leftmost/rightmost
    disagreement is surfaced as a counterexample.
    """
    if trials <= 0:
        raise AlgebraError("trials must be positive")
    rng = random.Random(seed)
    gens = sorted(presentation.generators.values(), key=lambda g: g.index)
    by_target: dict = {}
    for g in gens:
        by_target.setdefault(g.target, []).append(g)
    discrepancies = []
    tested = 0
    for _ in range(trials):
        if not gens:
            break
        length = rng.randint(1, max_length)
        first = rng.choice(gens)
        factors = [first]
        while len(factors) < length:
            nxt = by_target.get(factors[-1].source)
            if not nxt:
                break
            factors.append(rng.choice(nxt))
        word = Word(tuple(factors), _trusted=True)
        term = Term.from_word(word)
        tested += 1
        left = presentation.normalize(term, "leftmost")
        right = presentation.normalize(term, "rightmost")
        if left != right:
            discrepancies.append(word)
    return ConfluenceReport(trials=trials, seed=seed, max_length=max_length,
                            words_tested=tested, discrepancies=tuple(discrepancies))
