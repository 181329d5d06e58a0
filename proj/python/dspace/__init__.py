"""Python surface of the data-space collaboration engine."""

from ._core import (
    CorruptSnapshotError,
    DanglingReferenceError,
    MalformedTraceError,
    PremiseViolationError,
    ScenarioSyntaxErrorError,
    Space,
    TranslationFailureError,
    UnionViolationError,
    automaton_run,
    automaton_success,
    check_interoperability,
    check_preserving,
    compatible,
    run_scenario,
    satisfies,
    validate_trace,
)

__all__ = [
    "CorruptSnapshotError",
    "DanglingReferenceError",
    "MalformedTraceError",
    "PremiseViolationError",
    "ScenarioSyntaxErrorError",
    "Space",
    "TranslationFailureError",
    "UnionViolationError",
    "automaton_run",
    "automaton_success",
    "check_interoperability",
    "check_preserving",
    "compatible",
    "run_scenario",
    "satisfies",
    "validate_trace",
]
