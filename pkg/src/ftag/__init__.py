"""Feature-based Tree Adjoining Grammar.

Flat feature structures, elementary trees with top/bottom features,
substitution and adjunction, an exhaustive parser, and a tree-local
multi-component composer used to cross-check feature-based analyses of
displaced constituents.
"""
from __future__ import annotations

from .composer import (
    ADJUNCTION, SUBSTITUTION, CompositionError, DerivedTree, FinalTree,
    Rejected, adjoin, bracket, finalize, instantiate, substitute, tree_yield,
)
from .derivation import (
    CompositionRecord, Derivation, derivation_of, derivation_yield,
    parse_derivation, realize,
)
from .features import (
    EMPTY, FeatureStructure, Var, format_fs, parse_fs, resolve, unify,
)
from .grammar_io import (
    GrammarSyntaxError, GrammarValidationError, bundled_grammar, dump_grammar,
    load_grammar, load_grammar_file,
)
from .lint import lint_extraction_pair
from .mc import (
    EquivalenceReport, MCFailure, Placement, TreeLocalityError, compare,
    language_sample, mc_compose, mc_parse, mc_realize,
)
from .parser import Diagnostic, ParseResult, explain, parse, tokenize
from .trees import ElementaryTree, Grammar, TreeNode, TreeSet, validate_grammar

__all__ = [
    "ADJUNCTION", "SUBSTITUTION", "CompositionError", "DerivedTree",
    "FinalTree", "Rejected", "adjoin", "bracket", "finalize", "instantiate",
    "substitute", "tree_yield", "CompositionRecord", "Derivation",
    "derivation_of", "derivation_yield", "parse_derivation", "realize",
    "EMPTY", "FeatureStructure", "Var", "format_fs", "parse_fs", "resolve",
    "unify", "GrammarSyntaxError", "GrammarValidationError", "bundled_grammar",
    "dump_grammar", "load_grammar", "load_grammar_file",
    "lint_extraction_pair", "EquivalenceReport", "MCFailure", "Placement",
    "TreeLocalityError", "compare", "language_sample", "mc_compose",
    "mc_parse", "mc_realize", "Diagnostic", "ParseResult", "explain", "parse",
    "tokenize", "ElementaryTree", "Grammar", "TreeNode", "TreeSet",
    "validate_grammar",
]

__version__ = "0.1.0"
