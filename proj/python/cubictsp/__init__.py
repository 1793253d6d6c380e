from ._cubictsp import (
    Instance,
    InvalidState,
    ParseError,
    audit,
    cycle_graph,
    exhaustive,
    held_karp,
    inject_forced,
    is_tour,
    leaf_bound,
    measure,
    named_graph,
    parse,
    random_cubic,
    read,
    reduce,
    solve,
    verify_config,
)

__all__ = [
    "Instance",
    "InvalidState",
    "ParseError",
    "audit",
    "cycle_graph",
    "exhaustive",
    "held_karp",
    "inject_forced",
    "is_tour",
    "leaf_bound",
    "measure",
    "named_graph",
    "parse",
    "random_cubic",
    "read",
    "reduce",
    "solve",
    "verify_config",
]
