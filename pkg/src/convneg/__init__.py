"""Conversational negation over positive-operator word meanings.

The package splits into layers: `operators` (PSD matrices with labelled
diagonals), `taxonomy`/`lexicon` (hyponymy DAGs and the operator lexicons
built from them), `entailment` (graded hyponymy and overlap scores),
`negation` (single-word negation in context), `strings` (negation of
multi-word strings as mixtures over negation sets), and `circuits`
(actor negation inside text circuits).  `cli` wraps the lot.
"""

from .circuits import (
    Actor,
    ActorView,
    BinaryGate,
    TextCircuit,
    UnaryGate,
    actor_view,
    cn_actor,
    composed_factors,
    composed_state,
    contributing_words,
    contribution_string,
    load_script,
    parse_script,
    rank_alternatives,
)
from .entailment import (
    SIGMA_DEFAULT,
    loewner_k,
    loewner_k_raw,
    overlap_score,
    smoothed_predicate,
)
from .errors import (
    AlignmentError,
    AmbiguousWord,
    ConvnegError,
    CyclicTaxonomy,
    DimMismatch,
    EmptyMixture,
    InvalidIndex,
    InvalidOperator,
    NotSubnormalized,
    ParseError,
    TooLarge,
    TooManyWords,
    UnknownActor,
    UnknownWord,
    ZeroNegation,
    ZeroOperator,
)
from .lexicon import (
    DEFAULT_DECAY,
    Lexicon,
    build_lexicon,
    load_lexicon,
    resolve_word,
    save_lexicon,
)
from .negation import (
    DEFAULTS,
    NegationConfig,
    alternatives,
    cn_word,
    logical_not_complement,
    logical_not_pinv,
)
from .operators import (
    Operator,
    conjugate_update,
    diagonal,
    hadamard,
    identity,
    mix,
    normalize,
    partial_trace,
    pseudoinverse,
    pure,
    support_projector,
    tensor,
    validate,
)
from .strings import (
    LAMBDA_DEFAULT,
    MixtureTerm,
    NegationMixture,
    WordString,
    best_interpretation,
    cn_string,
    derive_weights,
    enumerate_negation_sets,
    interpretation_scores,
    string_score,
)
from .taxonomy import Taxonomy, load_taxonomy, parse_taxonomy

__all__ = [name for name in dir() if not name.startswith("_")]
