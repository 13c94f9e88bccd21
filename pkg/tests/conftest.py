from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from convneg.lexicon import build_lexicon
from convneg.operators import Operator
from convneg.taxonomy import load_taxonomy

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def story_lexicons():
    """The names/kinds/roles triple backing the 8-line story fixture."""
    return tuple(
        build_lexicon(load_taxonomy(FIXTURES / f"{n}.tsv"), name=n)
        for n in ("names", "kinds", "roles")
    )

FIG1_TSV = """\
# four-leaf hierarchy used throughout the tests
hamster\trodent
guinea_pig\trodent
rodent\tanimal
dog\tanimal
animal\tentity
planet\tentity
"""

COLORS_TSV = "red\tcolor\nwhite\tcolor\nrosé\tcolor\n"
DRINKS_TSV = "wine\tdrink\nbeer\tdrink\njuice\tdrink\n"


def rand_psd(rng: np.random.Generator, dim: int, rank: int | None = None,
             scale: float = 1.0) -> Operator:
    """Random PSD operator with entries O(scale); rank defaults to full."""
    r = dim if rank is None else rank
    x = rng.standard_normal((dim, r))
    m = x @ x.T
    m *= scale / max(dim, 1)
    return Operator((m + m.T) / 2.0)


def rand_full_rank_psd(rng: np.random.Generator, dim: int, ridge: float = 0.1) -> Operator:
    base = rand_psd(rng, dim)
    return Operator(base.matrix + ridge * np.eye(dim))


@st.composite
def psd_operators(draw, min_dim: int = 1, max_dim: int = 5, nonzero: bool = True):
    """Hypothesis strategy for small PSD operators built as X @ X.T."""
    dim = draw(st.integers(min_value=min_dim, max_value=max_dim))
    rank = draw(st.integers(min_value=1, max_value=dim))
    entries = draw(
        st.lists(
            st.floats(min_value=-1.5, max_value=1.5, allow_nan=False, width=32),
            min_size=dim * rank,
            max_size=dim * rank,
        )
    )
    x = np.asarray(entries, dtype=np.float64).reshape(dim, rank)
    m = x @ x.T
    if nonzero and float(np.trace(m)) <= 1e-9:
        m = m + np.eye(dim)
    return Operator((m + m.T) / 2.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
