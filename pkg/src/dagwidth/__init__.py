"""Minimum path covers, maximum antichains and width-preserving sparsification of DAGs."""

from ._backend import BACKEND
from .antichain import Antichain, max_antichain, verify_antichain
from .cover import PathCover, multiplicity, splice_along, verify_cover
from .dnc import DncResult, solve_dnc, solve_dnc_parallel
from .errors import (CycleError, DagWidthError, InvalidCoverError, InvalidCycleError, InvariantViolation,
                     MalformedDecrementError, MissingEdgeError, NotAFlowError, NotASubgraphError, NotMinimumError,
                     ParamError, SelfLoopError, StaleResidualError, TooLargeError, VertexRangeError)
from .flow import FlowView, apply_decrementing, decompose, find_decrementing_path, lift, shrink, shrink_cover
from .graph import Dag, IntervalSubgraph, build_dag, generate, interval_subgraph, layered_dag, random_dag, tight2
from .oracle import brute_width, closure, enumerate_owcuts
from .progressive import check_invariants, solve_progressive
from .sparsify import merge_sparsification, sparsify_all, sparsify_incoming
from .support import find_red_cycle, sparsify_support, splice_cycle, width_preserving_subgraph

__all__ = [
    "BACKEND", "Antichain", "max_antichain", "verify_antichain", "PathCover", "multiplicity", "splice_along",
    "verify_cover", "DncResult", "solve_dnc", "solve_dnc_parallel", "CycleError", "DagWidthError",
    "InvalidCoverError", "InvalidCycleError", "InvariantViolation", "MalformedDecrementError", "MissingEdgeError",
    "NotAFlowError", "NotASubgraphError", "NotMinimumError", "ParamError", "SelfLoopError", "StaleResidualError",
    "TooLargeError", "VertexRangeError", "FlowView", "apply_decrementing", "decompose", "find_decrementing_path",
    "lift", "shrink", "shrink_cover", "Dag", "IntervalSubgraph", "build_dag", "generate", "interval_subgraph",
    "layered_dag", "random_dag", "tight2", "brute_width", "closure", "enumerate_owcuts", "check_invariants",
    "solve_progressive", "merge_sparsification", "sparsify_all", "sparsify_incoming", "find_red_cycle",
    "sparsify_support", "splice_cycle", "width_preserving_subgraph",
]
