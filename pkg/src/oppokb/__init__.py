"""Executable knowledge base for the OPPO privacy-policy ontology."""

from .namespaces import default_prefixes
from .query import BindingTable, CqId, QueryAst, execute, parse_query, run_cq
from .reasoner import Closure, ConsistencyReport, RuleId, check_consistency, explain, materialize
from .schema import ClassDef, PropertyDef, Schema, build_schema, schema_to_graph, validate_schema
from .store import Graph, isomorphic, merge
from .terms import BlankNode, Iri, Literal, Triple, WellFormednessError
from .transparency import DetailDimension, TransparencyReport, compare, score_policy
from .turtle import ParseError, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "BindingTable", "BlankNode", "ClassDef", "Closure", "ConsistencyReport", "CqId",
    "DetailDimension", "Graph", "Iri", "Literal", "ParseError", "PropertyDef", "QueryAst",
    "RuleId", "Schema", "TransparencyReport", "Triple", "WellFormednessError",
    "build_schema", "check_consistency", "compare", "default_prefixes", "execute", "explain",
    "isomorphic", "materialize", "merge", "parse", "parse_query", "run_cq", "schema_to_graph",
    "score_policy", "serialize", "validate_schema",
]
