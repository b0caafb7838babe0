"""Lexibridge: a workbench for localizing a wordnet-style lexical database.

The package ingests the fixed-format database files of an English source
wordnet, keeps one translation record per synset, and moves each record
through a translate / correct / expert-review pipeline with validation
gates, statistics, persistence, an HTTP API, and a command line interface.
"""

from lexibridge.model import (
    Finding,
    LexibridgeError,
    PartOfSpeech,
    Role,
    Severity,
    SourceSynset,
    Synonym,
    SynsetId,
    TranslationRecord,
    WorkflowEvent,
    WorkflowState,
    new_record,
    normalize_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "Finding",
    "LexibridgeError",
    "PartOfSpeech",
    "Role",
    "Severity",
    "SourceSynset",
    "Synonym",
    "SynsetId",
    "TranslationRecord",
    "WorkflowEvent",
    "WorkflowState",
    "new_record",
    "normalize_lemma",
    "__version__",
]
