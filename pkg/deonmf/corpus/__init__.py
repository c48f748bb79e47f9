"""
The bundled Gewirth theory, its regression manifest and the corpus runner.
"""

from .manifest import KINDS, CorpusEntry, load_corpus, manifest_entries
from .runner import run_corpus, run_entry

__all__ = [
    "KINDS",
    "CorpusEntry",
    "load_corpus",
    "manifest_entries",
    "run_corpus",
    "run_entry",
]
