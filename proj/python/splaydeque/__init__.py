"""Splay trees under deque operations, their general-tree model and pattern tools."""

from ._splaydeque import (
    RotationLedger,
    SplayTree,
    alpha,
    alpha_star,
    contains_pattern,
    ex_bruteforce,
    find_babba,
    generate,
    is_regular,
    log_star,
    remove_repetitions,
    run,
    transcribe,
)

__all__ = [
    "RotationLedger",
    "SplayTree",
    "alpha",
    "alpha_star",
    "contains_pattern",
    "ex_bruteforce",
    "find_babba",
    "generate",
    "is_regular",
    "log_star",
    "remove_repetitions",
    "run",
    "transcribe",
]
