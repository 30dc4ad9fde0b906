"""RDF term model: IRIs, literals, blank nodes and triples."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_BOOLEAN = XSD + "boolean"

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_FORBIDDEN = re.compile(r'[\s<>"{}|^`\\]')
_INTEGER = re.compile(r"^[+-]?[0-9]+$")


class WellFormednessError(ValueError):
    """A term or triple violates the RDF positional or lexical rules."""


def valid_lexical(lexical: str, datatype: str) -> bool:
    if datatype == XSD_INTEGER:
        return bool(_INTEGER.match(lexical))
    if datatype == XSD_BOOLEAN:
        return lexical in ("true", "false")
    return datatype == XSD_STRING


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value or _FORBIDDEN.search(self.value) or not _SCHEME.match(self.value):
            raise WellFormednessError(f"not an absolute IRI: {self.value!r}")

    def __hash__(self):
        return hash(self.value)

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self):
        return self.value


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: Iri = Iri(XSD_STRING)

    def __post_init__(self):
        if self.datatype.value not in (XSD_STRING, XSD_INTEGER, XSD_BOOLEAN):
            raise WellFormednessError(f"unsupported datatype {self.datatype.value}")
        if not valid_lexical(self.lexical, self.datatype.value):
            raise WellFormednessError(
                f"{self.lexical!r} is not a valid lexical form for {self.datatype.value}"
            )

    @classmethod
    def of(cls, value) -> "Literal":
        """Build a literal from a Python ``str``, ``int`` or ``bool``."""
        if isinstance(value, bool):
            return cls("true" if value else "false", Iri(XSD_BOOLEAN))
        if isinstance(value, int):
            return cls(str(value), Iri(XSD_INTEGER))
        return cls(str(value))

    @property
    def is_integer(self) -> bool:
        return self.datatype.value == XSD_INTEGER

    def to_python(self):
        if self.datatype.value == XSD_INTEGER:
            return int(self.lexical)
        if self.datatype.value == XSD_BOOLEAN:
            return self.lexical == "true"
        return self.lexical

    def n3(self) -> str:
        quoted = '"' + escape_string(self.lexical) + '"'
        if self.datatype.value == XSD_STRING:
            return quoted
        return f"{quoted}^^{self.datatype.n3()}"


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A graph-scoped blank node, identified by a non-negative integer."""

    id: int

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 0:
            raise WellFormednessError(f"blank node id must be a non-negative int, got {self.id!r}")

    def n3(self) -> str:
        return f"_:b{self.id}"


Term = Union[Iri, Literal, BlankNode]

_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def escape_string(s: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in s)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: Iri
    object: Term
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise WellFormednessError(f"subject must be an IRI or blank node: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise WellFormednessError(f"predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise WellFormednessError(f"object is not an RDF term: {self.object!r}")
        # triples live in several index sets; hashing dominates reasoning time
        object.__setattr__(self, "_hash", hash((self.subject, self.predicate, self.object)))

    def __hash__(self):
        return self._hash

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."

    def sort_key(self) -> tuple[str, str, str]:
        return (self.subject.n3(), self.predicate.n3(), self.object.n3())

    def __iter__(self):
        yield self.subject
        yield self.predicate
        yield self.object


def term_key(term: Term) -> str:
    return term.n3()
