"""Lower-bound constructions and their equivalence harness."""
from .constructions import (
    LDS_K,
    LDS_TW,
    REDUCTIONS,
    TC_K,
    TC_TW,
    ReducedInstance,
    lds_padded_root,
    lds_solsize_reduction,
    lds_tw_reduction,
    occurrence_slots,
    reduce,
    tc_padded_n,
    tc_solsize_reduction,
    tc_tw_reduction,
)
from .gadgets import BitRep, SpernerAssignment, bitrep_gadget, colex_subsets, sperner_family, sperner_p
from .sat33 import CONTRADICTION, check_33sat, check_gadget_capacity, eliminate_pure_literals, is_33sat, to_33sat
from .verify import VerifyReport, build_for, parse_sweep, sweep_formulas, verify_reduction

__all__ = [
    "LDS_K", "LDS_TW", "REDUCTIONS", "TC_K", "TC_TW", "ReducedInstance", "lds_padded_root",
    "lds_solsize_reduction", "lds_tw_reduction", "occurrence_slots", "reduce", "tc_padded_n",
    "tc_solsize_reduction", "tc_tw_reduction", "BitRep", "SpernerAssignment", "bitrep_gadget",
    "colex_subsets", "sperner_family", "sperner_p", "check_33sat", "check_gadget_capacity",
    "CONTRADICTION", "eliminate_pure_literals", "is_33sat", "to_33sat", "VerifyReport", "build_for", "parse_sweep",
    "sweep_formulas", "verify_reduction",
]
