"""Python bindings for the qhc checker."""

from ._core import (
    Formula,
    QhcError,
    check_proof,
    corpus_run,
    decide_ipc,
    decide_s4,
    parse,
    refute,
    translate,
)

__all__ = [
    "Formula",
    "QhcError",
    "check_proof",
    "corpus_run",
    "decide_ipc",
    "decide_s4",
    "parse",
    "refute",
    "translate",
]
