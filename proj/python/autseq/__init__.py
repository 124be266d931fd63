"""Lyndon factorizations and factor counts of automatic sequences."""

from ._core import (
    Automaton,
    CompiledPredicate,
    DivergenceError,
    Error,
    InputError,
    LinearRepresentation,
    ResourceError,
    Sequence,
    StructuralError,
    builtin_predicate,
    builtin_sequence,
    builtin_sequence_names,
    compile,
    count_representation,
    equivalent,
    factorization_finite,
    marker_bits,
    minimize,
    negate,
    oracle,
    prefix_factorization,
    project,
    synthesize,
    term_starts,
)

__version__ = "0.1.0"
