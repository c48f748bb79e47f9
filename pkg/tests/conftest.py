from functools import lru_cache

import pytest

from deonmf.corpus.manifest import THEORY_FILE, bundled_text, load_corpus
from deonmf.semantics.oracle import enumerate_frames
from deonmf.semantics.scope import Scope
from deonmf.surface.checker import sort_check
from deonmf.surface.parser import parse_theory


def theory_from(text: str):
    return sort_check(parse_theory(text))


@lru_cache(maxsize=None)
def frames_at(n_c: int, n_e: int, n_w: int):
    return tuple(enumerate_frames(Scope(n_c, n_e, n_w)))


@pytest.fixture(scope="session")
def gewirth():
    """The bundled Gewirth theory on its own, sort-checked."""
    return theory_from(bundled_text(THEORY_FILE))


@pytest.fixture(scope="session")
def corpus():
    """The bundled theory with the manifest on top, and the manifest entries."""
    return load_corpus()


@pytest.fixture
def empty_theory():
    return theory_from("")


@pytest.fixture
def one_constant():
    return theory_from("consts A : m")
