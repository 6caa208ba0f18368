"""Relaxed greedy deterministic row/column solvers (Python bindings)."""

from ._core import (
    SizeGuardError,
    certify,
    cgls,
    column_losses,
    flops_rgdc,
    flops_rgdr,
    generate,
    methods,
    relaxed_greedy_set,
    rgdc_step,
    rgdr_step,
    row_losses,
    singular_values,
    solve,
)

__all__ = [
    "SizeGuardError",
    "certify",
    "cgls",
    "column_losses",
    "flops_rgdc",
    "flops_rgdr",
    "generate",
    "methods",
    "relaxed_greedy_set",
    "rgdc_step",
    "rgdr_step",
    "row_losses",
    "singular_values",
    "solve",
]
