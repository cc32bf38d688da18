"""Capture-annotated PEGs: parse strings into labeled trees, and infer a
regular expression type for the trees a grammar can produce."""

from .analysis import (
    RecursionInfo, WellFormednessReport, check_well_formed,
    recursive_nonterminals, reject_left_recursion,
)
from .engine import Failure, ParserState, Success, evaluate, parse
from .errors import (
    CPEGError, FormatError, GrammarError, GrammarSyntaxError, LeftRecursionError,
    ParseDepthError, UnboundTypeVariableError, UnguardedTypeError,
    UnknownNonterminalError, WellFormednessError,
)
from .expressions import desugar
from .grammar import Grammar, load_grammar, lookup_rule, parse_grammar, serialize_grammar
from .inference import FreshSupply, InferenceResult, alpha_equal, dedupe, infer_expr, infer_grammar
from .ret import check_guarded, member, read_types, resolve, serialize_types, string_nullable
from .trees import Node, Nodes, Str, concat, deserialize, make_node, serialize

__version__ = "0.1.0"
