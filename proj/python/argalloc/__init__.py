"""Compile argumentation frameworks into general allocators."""

from ._core import (
    Allocator,
    ArgumentationFramework,
    CapacityError,
    DomainError,
    Error,
    Expr,
    Network,
    ParseError,
    TriValue,
    UsageError,
    af_to_network,
    build_general_legacy,
    complete_labelings,
    equivalent,
    grounded_labeling,
    instantiate,
    instantiation_set,
    is_complete_allocator,
    is_general,
    parse_adfx,
    parse_apx,
    parse_expression,
    parse_tgf,
    run_cli,
    simplify,
    solve,
    stable_labelings,
    substitute,
)

__all__ = [name for name in dir() if not name.startswith("_")]
