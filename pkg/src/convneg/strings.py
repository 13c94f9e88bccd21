"""Conversational negation of word strings.

Negating "red wine" does not say which word the speaker rejects, so the
negation is a weighted mixture over every non-empty negation set: subsets of
positions whose words are replaced by their single-word negation while the
rest stay put. Weights come from a follow-up sentence (entailment product,
word by word) shaped by a size prior that favors negating few words.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .entailment import SIGMA_DEFAULT, overlap_score
from .errors import AlignmentError, TooManyWords, ZeroNegation
from .lexicon import Lexicon, resolve_word
from .negation import DEFAULTS, NegationConfig, cn_word
from .operators import Operator

MAX_STRING_WORDS = 20
LAMBDA_DEFAULT = 0.75
WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Slot:
    """One string position: a word plus the lexicon providing its space."""

    word: str
    lex: Lexicon

    def __post_init__(self) -> None:
        self.lex.require(self.word)


@dataclass(frozen=True)
class WordString:
    positions: tuple[Slot, ...]

    def __post_init__(self) -> None:
        if not self.positions:
            raise ValueError("a word string needs at least one position")

    @classmethod
    def resolve(cls, words: Sequence[str], lexicons: Sequence[Lexicon]) -> "WordString":
        """Build a string by locating each word's unique lexicon."""
        return cls(tuple(Slot(w, resolve_word(w, lexicons)) for w in words))

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(slot.word for slot in self.positions)

    def originals(self) -> tuple[Operator, ...]:
        return tuple(slot.lex.word_operator(slot.word) for slot in self.positions)


@dataclass(frozen=True)
class MixtureTerm:
    subset: tuple[int, ...]
    weight: float
    states: tuple[Operator, ...]


@dataclass(frozen=True)
class NegationMixture:
    terms: tuple[MixtureTerm, ...]

    def __post_init__(self) -> None:
        total = sum(t.weight for t in self.terms)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"mixture weights sum to {total!r}, expected 1")

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(t.weight for t in self.terms)

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(t.subset for t in self.terms)


def enumerate_negation_sets(n: int) -> list[tuple[int, ...]]:
    """All non-empty position subsets, smallest first, lexicographic within size."""
    if not 1 <= n <= MAX_STRING_WORDS:
        raise TooManyWords(f"string length must lie in 1..{MAX_STRING_WORDS}, got {n}")
    out: list[tuple[int, ...]] = []
    for size in range(1, n + 1):
        out.extend(combinations(range(n), size))
    return out


class _CnCache:
    """Per-position word negations, computed on first use.

    A failed negation is reported against the first subset that needs it.
    """

    def __init__(self, s: WordString, cfg: NegationConfig):
        self.s = s
        self.cfg = cfg
        self.originals = s.originals()
        self.done: dict[int, Operator] = {}

    def states(self, subset: tuple[int, ...]) -> tuple[Operator, ...]:
        picked = list(self.originals)
        for i in subset:
            if i not in self.done:
                slot = self.s.positions[i]
                try:
                    self.done[i] = cn_word(slot.word, slot.lex, self.cfg)
                except ZeroNegation as exc:
                    raise ZeroNegation(f"negation set {set(subset)}: {exc}") from exc
            picked[i] = self.done[i]
        return tuple(picked)


def cn_string(
    s: WordString, weights: Sequence[float], cfg: NegationConfig = DEFAULTS
) -> NegationMixture:
    """The mixture over negation sets with the given per-subset weights."""
    subsets = enumerate_negation_sets(len(s))
    if len(weights) != len(subsets):
        raise ValueError(f"need {len(subsets)} weights, got {len(weights)}")
    ws = [float(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValueError("subset weights must be nonnegative")
    total = sum(ws)
    if total <= 0:
        raise ValueError("subset weights must not all vanish")
    cache = _CnCache(s, cfg)
    terms = tuple(
        MixtureTerm(subset, w / total, cache.states(subset))
        for subset, w in zip(subsets, ws)
    )
    return NegationMixture(terms)


def _check_alignment(n: int, target: WordString, spaces: Sequence[tuple[str, ...]]) -> None:
    if n != len(target):
        raise AlignmentError(f"length mismatch: {n} positions vs {len(target)}")
    for i, slot in enumerate(target.positions):
        if slot.lex.leaves != spaces[i]:
            raise AlignmentError(
                f"position {i}: slot spaces differ "
                f"({', '.join(spaces[i])}) vs ({', '.join(slot.lex.leaves)})"
            )


def string_score(
    states: Sequence[Operator],
    target: WordString,
    sigma: float = SIGMA_DEFAULT,
) -> float:
    """Word-by-word overlap with ``target``, multiplied across positions."""
    if len(states) != len(target):
        raise AlignmentError(f"length mismatch: {len(states)} states vs {len(target)}")
    score = 1.0
    for i, (op, slot) in enumerate(zip(states, target.positions)):
        if op.dim != slot.lex.dim:
            raise AlignmentError(
                f"position {i}: state dim {op.dim} vs slot space dim {slot.lex.dim}"
            )
        if op.labels and tuple(op.labels) != slot.lex.leaves:
            raise AlignmentError(
                f"position {i}: state space ({', '.join(op.labels)}) "
                f"vs slot space ({', '.join(slot.lex.leaves)})"
            )
        score *= overlap_score(op, slot.word, slot.lex, sigma)
    return score


def derive_weights(
    s: WordString,
    context: WordString,
    lambda_size: float = LAMBDA_DEFAULT,
    sigma: float = SIGMA_DEFAULT,
    cfg: NegationConfig = DEFAULTS,
) -> tuple[float, ...]:
    """Subset weights from a follow-up sentence.

    weight(S') is proportional to lambda_size^(|S'|-1) times the word-by-word
    overlap of the S'-interpretation with the follow-up. When the follow-up
    rules out every interpretation, the size prior alone decides.
    """
    raw = interpretation_scores(s, context, lambda_size, sigma, cfg)
    total = sum(raw)
    if total <= 0:
        subsets = enumerate_negation_sets(len(s))
        prior = [lambda_size ** (len(sub) - 1) for sub in subsets]
        total = sum(prior)
        return tuple(p / total for p in prior)
    return tuple(r / total for r in raw)


def interpretation_scores(
    s: WordString,
    context: WordString,
    lambda_size: float = LAMBDA_DEFAULT,
    sigma: float = SIGMA_DEFAULT,
    cfg: NegationConfig = DEFAULTS,
) -> list[float]:
    """Size-weighted match of every interpretation against ``context``, in
    canonical subset order (the unnormalized quantity behind derive_weights
    and best_interpretation)."""
    if not 0.0 < lambda_size <= 1.0:
        raise ValueError(f"lambda_size must lie in (0, 1], got {lambda_size}")
    _check_alignment(len(s), context, tuple(slot.lex.leaves for slot in s.positions))
    cache = _CnCache(s, cfg)
    return [
        lambda_size ** (len(subset) - 1)
        * string_score(cache.states(subset), context, sigma)
        for subset in enumerate_negation_sets(len(s))
    ]


def best_interpretation(
    s: WordString,
    target: WordString,
    lambda_size: float = LAMBDA_DEFAULT,
    sigma: float = SIGMA_DEFAULT,
    cfg: NegationConfig = DEFAULTS,
) -> tuple[tuple[int, ...], float]:
    """The negation set whose interpretation best matches ``target``.

    Ties (including the all-zero case) go to the earliest subset in canonical
    order, so a fully uninformative target yields the first singleton.
    """
    raw = interpretation_scores(s, target, lambda_size, sigma, cfg)
    subsets = enumerate_negation_sets(len(s))
    best = max(range(len(raw)), key=lambda i: (raw[i], -i))
    return subsets[best], raw[best]
