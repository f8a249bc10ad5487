"""Finite-type tests for root subalgebras of simple Lie algebras.

A root subalgebra ``l = k + n`` is of finite type exactly when the cone
condition and the centralizer condition hold.  The package decides both
with exact rational arithmetic, produces certificates (separating
covectors, relations and infinite weights) and enumerates all root
subalgebras of a simple type up to symmetry.
"""

from .census import CensusOptions, CensusSummary, ClassificationRecord, run_census
from .conditions import (
    ConeFails,
    ConeHolds,
    ExtensionNeeded,
    Relation,
    StrictlyInfinite,
    Verdict,
    centralizer_condition,
    classify,
    cone_condition,
    find_certificate,
    minimal_relations,
)
from .rootsystem import DynkinType, RootSystem, build, format_root, parse_root
from .subalgebra import RootSubalgebra, make_subalgebra
from .symmetry import restricted_symmetry_group

__all__ = [
    "CensusOptions", "CensusSummary", "ClassificationRecord", "ConeFails", "ConeHolds", "DynkinType",
    "ExtensionNeeded", "Relation", "RootSubalgebra", "RootSystem", "StrictlyInfinite", "Verdict", "build",
    "centralizer_condition", "classify", "cone_condition", "find_certificate", "format_root",
    "make_subalgebra", "minimal_relations", "parse_root", "restricted_symmetry_group", "run_census",
]
__version__ = "0.1.0"
