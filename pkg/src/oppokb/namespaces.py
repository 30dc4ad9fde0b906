"""Namespace constants and the default prefix map."""

from __future__ import annotations

import os

from .terms import XSD, Iri

DEFAULT_OPPO = "https://example.org/oppo#"
OPPO_ENV = "OPPO_PREFIX_BASE"

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
BFO = "http://purl.obolibrary.org/obo/bfo.owl#"
IAO = "http://purl.obolibrary.org/obo/iao.owl#"
OBI = "http://purl.obolibrary.org/obo/obi.owl#"
OMRSE = "http://purl.obolibrary.org/obo/omrse.owl#"
DPVO = "https://w3id.org/dpv#"
TIME = "http://www.w3.org/2006/time#"

RDF_TYPE = Iri(RDF + "type")
RDFS_SUBCLASSOF = Iri(RDFS + "subClassOf")
RDFS_SUBPROPERTYOF = Iri(RDFS + "subPropertyOf")
RDFS_DOMAIN = Iri(RDFS + "domain")
RDFS_RANGE = Iri(RDFS + "range")
RDFS_LABEL = Iri(RDFS + "label")
OWL_DISJOINTWITH = Iri(OWL + "disjointWith")
SKOS_DEFINITION = Iri(SKOS + "definition")


class Namespace(str):
    """A namespace IRI string; attribute or item access mints member IRIs."""

    def __getattr__(self, name: str) -> Iri:
        if name.startswith("__"):
            raise AttributeError(name)
        return Iri(str(self) + name)

    def __getitem__(self, name):
        if isinstance(name, str):
            return Iri(str(self) + name)
        return str.__getitem__(self, name)


def oppo_namespace(override: str | None = None) -> str:
    """Resolve the oppo: namespace: explicit override, then env var, then default."""
    return override or os.environ.get(OPPO_ENV) or DEFAULT_OPPO


def default_prefixes(oppo: str | None = None) -> dict[str, str]:
    return {
        "bfo": BFO,
        "dpvo": DPVO,
        "iao": IAO,
        "obi": OBI,
        "omrse": OMRSE,
        "oppo": oppo_namespace(oppo),
        "owl": OWL,
        "rdf": RDF,
        "rdfs": RDFS,
        "skos": SKOS,
        "time": TIME,
        "xsd": XSD,
    }
