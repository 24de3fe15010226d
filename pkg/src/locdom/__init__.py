"""Exact solvers, kernels and lower-bound reductions for Locating-Dominating
Set and Test Cover."""
from .errors import CapExceeded, DecompositionError, FormatError, InputError
from .instances import (
    BLUE,
    RED,
    CnfFormula,
    Decision,
    Graph,
    SolutionKind,
    SolutionSet,
    Status,
    TestCoverInstance,
    aux_graph,
    is_locating_dominating_set,
    is_test_cover,
    tc_from_aux,
)

__version__ = "0.1.0"

__all__ = [
    "BLUE",
    "RED",
    "CapExceeded",
    "CnfFormula",
    "Decision",
    "DecompositionError",
    "FormatError",
    "Graph",
    "InputError",
    "SolutionKind",
    "SolutionSet",
    "Status",
    "TestCoverInstance",
    "aux_graph",
    "is_locating_dominating_set",
    "is_test_cover",
    "tc_from_aux",
]
