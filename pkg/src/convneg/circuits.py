"""Text circuits: actor wires updated by attribute and verb gates.

A script line like ``Alice is a human`` applies a predicate to Alice's wire;
``Alice loves Bob`` entangles two wires. Reading all updates to a wire as one
long word string lets the string-negation machinery negate an actor: every
word that touched the wire, directly or through an entangling verb, is a
candidate for the negation set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .entailment import SIGMA_DEFAULT
from .errors import (
    AlignmentError,
    DimMismatch,
    ParseError,
    TooLarge,
    UnknownActor,
    UnknownWord,
)
from .lexicon import Lexicon, resolve_word
from .negation import DEFAULTS, NegationConfig
from .operators import Operator, _psd_sqrt, normalize
from .strings import (
    LAMBDA_DEFAULT,
    NegationMixture,
    Slot,
    WordString,
    best_interpretation,
    cn_string,
    derive_weights,
    enumerate_negation_sets,
)

MAX_COMPOSITE_DIM = 4096


@dataclass(frozen=True)
class Actor:
    """A wire: display name as written, name word, and its name lexicon."""

    name: str
    word: str
    lex: Lexicon


@dataclass(frozen=True)
class UnaryGate:
    actor: str
    word: str
    lex: Lexicon
    position: int


@dataclass(frozen=True)
class BinaryGate:
    subject: str
    verb: str
    lex: Lexicon
    object: str
    position: int


Gate = UnaryGate | BinaryGate


@dataclass(frozen=True)
class TextCircuit:
    actors: tuple[Actor, ...]
    gates: tuple[Gate, ...]
    links: frozenset[frozenset[str]]

    def actor(self, name: str) -> Actor:
        for a in self.actors:
            if a.name == name:
                return a
        raise UnknownActor(f"actor {name!r} is not declared in this script")

    @property
    def actor_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.actors)


@dataclass(frozen=True)
class ViewSlot:
    """One update on a wire; gate=None marks the name slot."""

    gate: Gate | None
    word: str
    lex: Lexicon

    @property
    def operator(self) -> Operator:
        return self.lex.word_operator(self.word)


@dataclass(frozen=True)
class ActorView:
    actor: Actor
    slots: tuple[ViewSlot, ...]

    def unary_string(self) -> WordString:
        """Name + attribute words as a word string (verb slots dropped)."""
        return WordString(
            tuple(
                Slot(s.word, s.lex)
                for s in self.slots
                if not isinstance(s.gate, BinaryGate)
            )
        )


# ---------------------------------------------------------------------------
# script parsing


def _resolve(word: str, lexicons: Sequence[Lexicon], lineno: int) -> Lexicon:
    try:
        return resolve_word(word, lexicons)
    except UnknownWord as exc:
        raise ParseError(str(exc), line=lineno) from exc


def parse_script(text: str, lexicons: Sequence[Lexicon]) -> TextCircuit:
    """Line grammar: ``actor <Name>``, ``<Name> is [a|an] <word>``,
    ``<Name> <verb> <Name>``; ``#`` comments; trailing punctuation ignored.

    Capitalized names auto-declare on first mention; lowercase actor names
    need an explicit ``actor`` line.
    """
    actors: dict[str, Actor] = {}
    order: list[Actor] = []
    gates: list[Gate] = []
    links: set[frozenset[str]] = set()

    def declare(token: str, lineno: int) -> Actor:
        for cand in (token, token.lower()):
            if any(cand in lx for lx in lexicons):
                a = Actor(token, cand, _resolve(cand, lexicons, lineno))
                actors[token] = a
                order.append(a)
                return a
        raise ParseError(f"actor name {token!r} not found in any lexicon", line=lineno)

    def reference(token: str, lineno: int) -> Actor:
        if token in actors:
            return actors[token]
        if token[:1].isupper():
            return declare(token, lineno)
        raise ParseError(
            f"unknown actor {token!r} (declare lowercase actors with 'actor {token}')",
            line=lineno,
        )

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().rstrip(".!?").strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "actor":
            if len(tokens) != 2:
                raise ParseError("actor lines read 'actor <Name>'", line=lineno)
            if tokens[1] in actors:
                raise ParseError(f"actor {tokens[1]!r} already declared", line=lineno)
            declare(tokens[1], lineno)
        elif len(tokens) >= 3 and tokens[1] == "is":
            rest = tokens[2:]
            if rest[0] in ("a", "an") and len(rest) > 1:
                rest = rest[1:]
            if len(rest) != 1:
                raise ParseError(f"cannot parse attribute line {line!r}", line=lineno)
            actor = reference(tokens[0], lineno)
            lex = _resolve(rest[0], lexicons, lineno)
            gates.append(UnaryGate(actor.name, rest[0], lex, len(gates)))
        elif len(tokens) == 3:
            subject = reference(tokens[0], lineno)
            obj = reference(tokens[2], lineno)
            lex = _resolve(tokens[1], lexicons, lineno)
            gates.append(BinaryGate(subject.name, tokens[1], lex, obj.name, len(gates)))
            if subject.name != obj.name:
                links.add(frozenset((subject.name, obj.name)))
        else:
            raise ParseError(f"cannot parse line {line!r}", line=lineno)

    return TextCircuit(tuple(order), tuple(gates), frozenset(links))


def load_script(path, lexicons: Sequence[Lexicon]) -> TextCircuit:
    with open(path, encoding="utf-8") as fh:
        return parse_script(fh.read(), lexicons)


# ---------------------------------------------------------------------------
# views and contributing words


def actor_view(c: TextCircuit, name: str) -> ActorView:
    a = c.actor(name)
    slots = [ViewSlot(None, a.word, a.lex)]
    for g in c.gates:
        if isinstance(g, UnaryGate) and g.actor == a.name:
            slots.append(ViewSlot(g, g.word, g.lex))
        elif isinstance(g, BinaryGate) and a.name in (g.subject, g.object):
            slots.append(ViewSlot(g, g.verb, g.lex))
    return ActorView(a, tuple(slots))


def _link_closure(c: TextCircuit, name: str) -> set[str]:
    group = {name}
    frontier = [name]
    while frontier:
        current = frontier.pop()
        for pair in c.links:
            if current in pair:
                for other in pair:
                    if other not in group:
                        group.add(other)
                        frontier.append(other)
    return group


def contributing_words(c: TextCircuit, name: str) -> list[tuple[Actor | Gate, str]]:
    """Everything negating ``name`` may touch: its own name and gates plus, via
    entangling verbs, the names and gates of linked actors; text order, each
    actor's name just before its first gate."""
    a = c.actor(name)
    group = _link_closure(c, a.name)
    out: list[tuple[Actor | Gate, str]] = []
    named: set[str] = set()

    def emit_name(actor_name: str) -> None:
        if actor_name not in named:
            named.add(actor_name)
            act = c.actor(actor_name)
            out.append((act, act.word))

    for g in c.gates:
        if isinstance(g, UnaryGate) and g.actor in group:
            emit_name(g.actor)
            out.append((g, g.word))
        elif isinstance(g, BinaryGate) and (g.subject in group or g.object in group):
            emit_name(g.subject)
            emit_name(g.object)
            out.append((g, g.verb))
    emit_name(a.name)  # an actor with no gates still contributes its name
    return out


# ---------------------------------------------------------------------------
# circuit semantics


class _Cluster:
    """A set of entangled wires sharing one joint state."""

    def __init__(self, actor: Actor):
        self.actors = {actor.name}
        self.factors: list[tuple[str, Lexicon]] = [(actor.name, actor.lex)]
        self.dims = [actor.lex.dim]
        self.state = normalize(actor.lex.word_operator(actor.word), "trace").matrix

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def factor_index(self, actor_name: str, lex: Lexicon) -> int | None:
        for i, (owner, flex) in enumerate(self.factors):
            if owner == actor_name and flex is lex:
                return i
        return None

    def grow(self, actor_name: str, lex: Lexicon) -> int:
        if self.dim * lex.dim > MAX_COMPOSITE_DIM:
            raise TooLarge(
                f"composite for {sorted(self.actors)} would reach dim "
                f"{self.dim * lex.dim} > {MAX_COMPOSITE_DIM}"
            )
        self.state = np.kron(self.state, np.eye(lex.dim) / lex.dim)
        self.factors.append((actor_name, lex))
        self.dims.append(lex.dim)
        return len(self.dims) - 1

    def conjugate(self, small: np.ndarray, idx: int) -> None:
        # sqrt commutes with lifting, so take it on the small factor
        root = _lift(_psd_sqrt(small), self.dims, idx)
        out = root @ self.state @ root
        self.state = (out + out.T) / 2.0

    def absorb(self, other: "_Cluster") -> None:
        if self.dim * other.dim > MAX_COMPOSITE_DIM:
            raise TooLarge(
                f"joining {sorted(self.actors)} with {sorted(other.actors)} "
                f"would reach dim {self.dim * other.dim} > {MAX_COMPOSITE_DIM}"
            )
        self.state = np.kron(self.state, other.state)
        self.factors.extend(other.factors)
        self.dims.extend(other.dims)
        self.actors |= other.actors


def _lift(small: np.ndarray, dims: Sequence[int], idx: int) -> np.ndarray:
    before = int(np.prod(dims[:idx])) if idx else 1
    after = int(np.prod(dims[idx + 1 :])) if idx + 1 < len(dims) else 1
    return np.kron(np.eye(before), np.kron(small, np.eye(after)))


def _trace_out(mat: np.ndarray, dims: list[int], idx: int) -> tuple[np.ndarray, list[int]]:
    n = len(dims)
    t = mat.reshape(*dims, *dims)
    t = np.trace(t, axis1=idx, axis2=n + idx)
    rest = [d for i, d in enumerate(dims) if i != idx]
    flat = int(np.prod(rest)) if rest else 1
    return t.reshape(flat, flat), rest


Effects = Mapping[str, tuple[Operator | None, Operator | None]]


def _evolve(c: TextCircuit, effects: Effects | None) -> dict[str, _Cluster]:
    clusters = {a.name: _Cluster(a) for a in c.actors}
    for g in c.gates:
        if isinstance(g, UnaryGate):
            cl = clusters[g.actor]
            idx = cl.factor_index(g.actor, g.lex)
            if idx is None:
                idx = cl.grow(g.actor, g.lex)
            cl.conjugate(g.lex.word_operator(g.word).matrix, idx)
        else:
            cl = clusters[g.subject]
            other = clusters[g.object]
            if cl is not other:
                cl.absorb(other)
                for member in other.actors:
                    clusters[member] = cl
            if effects and g.verb in effects:
                for actor_name, eff in zip((g.subject, g.object), effects[g.verb]):
                    if eff is None:
                        continue
                    act = c.actor(actor_name)
                    if eff.dim != act.lex.dim:
                        raise DimMismatch(
                            f"effect for {g.verb!r} on {actor_name} has dim "
                            f"{eff.dim}, name space has dim {act.lex.dim}"
                        )
                    name_idx = cl.factor_index(actor_name, act.lex)
                    cl.conjugate(eff.matrix, name_idx)
    return clusters


def _marginal(cl: _Cluster, keep: set[int]) -> tuple[np.ndarray, list[tuple[str, Lexicon]]]:
    mat, dims = cl.state, list(cl.dims)
    factors = list(cl.factors)
    for i in sorted(set(range(len(dims))) - keep, reverse=True):
        mat, dims = _trace_out(mat, dims, i)
        del factors[i]
    return mat, factors


def composed_state(c: TextCircuit, name: str, effects: Effects | None = None) -> Operator:
    """The actor's evolved state on its own factors (name space first, then
    one space per attribute lexicon in first-touch order), trace-normalized.

    Entangled partners are traced out.
    """
    a = c.actor(name)
    cl = _evolve(c, effects)[a.name]
    keep = {i for i, (owner, _) in enumerate(cl.factors) if owner == a.name}
    mat, factors = _marginal(cl, keep)
    labels: tuple[str, ...] = ()
    if len(factors) == 1:
        labels = factors[0][1].leaves
    return normalize(Operator((mat + mat.T) / 2.0, labels), "trace")


def composed_factors(
    c: TextCircuit, name: str, effects: Effects | None = None
) -> dict[str, Operator]:
    """Per-space marginals of the actor's evolved state, trace-normalized,
    keyed by lexicon name (positional key for unnamed lexicons)."""
    a = c.actor(name)
    cl = _evolve(c, effects)[a.name]
    out: dict[str, Operator] = {}
    for i, (owner, lex) in enumerate(cl.factors):
        if owner != a.name:
            continue
        mat, _ = _marginal(cl, {i})
        key = lex.name or f"factor{i}"
        if key in out:
            key = f"{key}@{i}"
        out[key] = normalize(Operator((mat + mat.T) / 2.0, lex.leaves), "trace")
    return out


# ---------------------------------------------------------------------------
# actor negation and ranking


def contribution_string(c: TextCircuit, name: str) -> tuple[WordString, tuple[str, ...]]:
    """contributing_words as a WordString, plus display labels (actor names
    keep their script capitalization)."""
    entries = contributing_words(c, name)
    slots = []
    display = []
    for source, word in entries:
        if isinstance(source, Actor):
            slots.append(Slot(word, source.lex))
            display.append(source.name)
        else:
            slots.append(Slot(word, source.lex))
            display.append(word)
    return WordString(tuple(slots)), tuple(display)


def cn_actor(
    c: TextCircuit,
    name: str,
    cfg: NegationConfig = DEFAULTS,
    *,
    weights: Sequence[float] | None = None,
    context: WordString | None = None,
    lambda_size: float = LAMBDA_DEFAULT,
    sigma: float = SIGMA_DEFAULT,
) -> NegationMixture:
    """Negate an actor: mixture over negation sets of its contributing words.

    Weights come from an explicit vector, from a context string, or from the
    size prior alone, in that order of preference.
    """
    if weights is not None and context is not None:
        raise ValueError("pass explicit weights or a context string, not both")
    s, _ = contribution_string(c, name)
    if weights is None:
        if context is not None:
            weights = derive_weights(s, context, lambda_size, sigma, cfg)
        else:
            prior = [lambda_size ** (len(sub) - 1) for sub in enumerate_negation_sets(len(s))]
            total = sum(prior)
            weights = [p / total for p in prior]
    return cn_string(s, weights, cfg)


def rank_alternatives(
    c: TextCircuit,
    name: str,
    cfg: NegationConfig = DEFAULTS,
    lambda_size: float = LAMBDA_DEFAULT,
    sigma: float = SIGMA_DEFAULT,
) -> list[tuple[Actor, tuple[int, ...], float]]:
    """Who else the speaker might have meant: every other actor scored by the
    best interpretation of "not <name>" against that actor's word sequence.

    Actors must be structurally parallel (same slot count, same spaces per
    position); the negated actor must not be entangled.
    """
    negated = c.actor(name)
    if any(negated.name in pair for pair in c.links):
        raise AlignmentError(
            f"actor {name!r} shares binary gates; ranking needs a link-free actor"
        )
    s = actor_view(c, negated.name).unary_string()
    rows = []
    for position, other in enumerate(c.actors):
        if other.name == negated.name:
            continue
        target = actor_view(c, other.name).unary_string()
        subset, score = best_interpretation(s, target, lambda_size, sigma, cfg)
        rows.append((-score, position, other, subset))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [(other, subset, -neg_score) for neg_score, _, other, subset in rows]
