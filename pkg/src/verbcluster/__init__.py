"""Argument-composition grammar for Dutch cross-serial and German nested
verb clusters: typed feature structures, ID schemas, an LP parameter,
a chart parser and event-semantic read-out."""

from .avm import build, format_avm
from .featstruct import (
    FeatureStructure,
    UnificationFailure,
    cons,
    iso,
    path_get,
    subsumes,
    unify,
)
from .grammar import (
    Derivation,
    LpMode,
    Reject,
    apply_clause_schema,
    apply_cluster_schema,
    apply_cp_schema,
    apply_np_schema,
    lp_admissible,
)
from .hierarchy import TypeHierarchy, builtin_hierarchy
from .lexicon import Lexicon, builtin_lexicon, load_lexicon
from .parser import UnknownWord, enumerate_orders, parse, tokenize
from .ulf import extract_ulf, print_ulf

__version__ = "0.1.0"
