"""Hypergraph states: exact correlations, Bell/Hardy expressions and polytope tests."""

from .dyadic import Dyadic
from .hypergraph import (
    Hypergraph,
    StabilizerGenerator,
    complete_k_uniform,
    parse_hypergraph,
    single_edge,
    stabilizer_generators,
)
from .statevec import (
    Behavior,
    PauliString,
    SignState,
    behavior_table,
    build_state,
    expectation,
    outcome_distribution,
    outcome_probability,
    verify_stabilizers,
)

__all__ = [
    "Behavior",
    "Dyadic",
    "Hypergraph",
    "PauliString",
    "SignState",
    "StabilizerGenerator",
    "behavior_table",
    "build_state",
    "complete_k_uniform",
    "expectation",
    "outcome_distribution",
    "outcome_probability",
    "parse_hypergraph",
    "single_edge",
    "stabilizer_generators",
    "verify_stabilizers",
]
