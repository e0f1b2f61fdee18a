"""Chain-adapted exact representations: local blocks, assembly, traces, oracle."""

from .core import (
    DEFAULT_Q,
    AdaptedRep,
    LocalBlock,
    SemisimplicityReport,
    adapted_rep,
    assemble_dense,
    assemble_matrix,
    gram_dual,
    iter_local_blocks,
    local_blocks,
    naive_transform_matrix,
    rep_of_diagram,
    trace_tau,
    verify_semisimple,
)
from .oracle import OracleIrrep, OracleRep, oracle_irreps, oracle_matrix
from .seminormal import chebyshev_u, sn_block_table, tl_block_table

__all__ = [
    "DEFAULT_Q",
    "AdaptedRep",
    "LocalBlock",
    "SemisimplicityReport",
    "adapted_rep",
    "assemble_dense",
    "assemble_matrix",
    "iter_local_blocks",
    "gram_dual",
    "local_blocks",
    "naive_transform_matrix",
    "rep_of_diagram",
    "trace_tau",
    "verify_semisimple",
    "OracleIrrep",
    "OracleRep",
    "oracle_irreps",
    "oracle_matrix",
    "chebyshev_u",
    "sn_block_table",
    "tl_block_table",
]
