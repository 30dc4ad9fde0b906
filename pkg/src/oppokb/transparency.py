"""Transparency scorecards for encoded privacy policies.

Every practice reached through ``hasDataPractice`` gets a set of applicable
detail dimensions (from its practice classes) and the subset it actually
specifies (from the edges and literals present). The policy score is the
weighted ratio of specified to applicable dimensions.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .namespaces import RDF_TYPE, RDFS_SUBCLASSOF
from .schema import Schema
from .store import Graph
from .terms import Iri, Literal, Term, Triple


class DetailDimension(str, enum.Enum):
    DURATION = "DURATION"
    LOCATION = "LOCATION"
    STORAGE_ENTITY = "STORAGE_ENTITY"
    MODIFICATION_REQUEST = "MODIFICATION_REQUEST"
    MODIFICATION_RESPONSE = "MODIFICATION_RESPONSE"
    RESPONSE_DELAY = "RESPONSE_DELAY"
    SECURITY_MECHANISM = "SECURITY_MECHANISM"
    PURPOSE = "PURPOSE"
    DATA_TYPE_SPECIFICITY = "DATA_TYPE_SPECIFICITY"


D = DetailDimension
DEFAULT_WEIGHTS: Mapping[DetailDimension, Fraction] = {d: Fraction(1) for d in D}

# practice class (oppo: local name) -> dimensions it makes applicable
_BY_CLASS = {
    "DataPractice": {D.PURPOSE, D.DATA_TYPE_SPECIFICITY},
    "DataStorageDurationPractice": {D.DURATION},
    "DataStorageLocationPractice": {D.LOCATION, D.STORAGE_ENTITY},
    "DataStorageModificationPractice": {
        D.MODIFICATION_REQUEST, D.MODIFICATION_RESPONSE, D.RESPONSE_DELAY,
    },
    "DataSecurityPractice": {D.SECURITY_MECHANISM},
}


class UnknownPolicyError(LookupError):
    pass


@dataclass(frozen=True)
class PracticeRow:
    practice: Term
    specified: frozenset[DetailDimension]
    applicable: frozenset[DetailDimension]
    indefinite: bool = False

    def to_dict(self) -> dict:
        return {
            "practice": self.practice.n3(),
            "specified": sorted(d.value for d in self.specified),
            "applicable": sorted(d.value for d in self.applicable),
            "indefinite": self.indefinite,
        }


@dataclass(frozen=True)
class TransparencyReport:
    policy: Iri
    per_practice: tuple[PracticeRow, ...]
    score: Fraction
    strict: bool = False
    weights: Mapping[DetailDimension, Fraction] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))

    def to_dict(self) -> dict:
        return {
            "policy": self.policy.value,
            "score": round(float(self.score), 4),
            "score_exact": f"{self.score.numerator}/{self.score.denominator}",
            "strict": self.strict,
            "practices": [row.to_dict() for row in self.per_practice],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def render(self, compact=None) -> str:
        name = compact or (lambda t: t.n3())
        lines = [f"policy: {name(self.policy)}", f"score:  {float(self.score):.4f}"]
        if self.per_practice:
            rows = [("practice", "specified", "applicable", "missing")]
            for r in self.per_practice:
                missing = sorted(d.value for d in r.applicable - r.specified)
                rows.append((
                    name(r.practice) + (" (indefinite)" if r.indefinite else ""),
                    str(len(r.specified)),
                    str(len(r.applicable)),
                    ", ".join(missing) or "-",
                ))
            widths = [max(len(row[i]) for row in rows) for i in range(4)]
            for row in rows:
                lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        else:
            lines.append("no data practices")
        return "\n".join(lines) + "\n"


def _types(g: Graph, x: Term) -> set[Term]:
    return g.objects(x, RDF_TYPE)


def score_policy(
    g: Graph,
    policy: Iri,
    schema: Schema,
    strict: bool = False,
    weights: Mapping[DetailDimension, Fraction | int | float] | None = None,
) -> TransparencyReport:
    """Scorecard for ``policy`` over a materialized graph.

    Indefinite durations count as specified (and are flagged) unless
    ``strict`` is set. ``weights`` override the per-dimension default of 1.
    Raises :class:`UnknownPolicyError` if ``policy`` is not typed PrivacyPolicy.
    """
    oppo = schema.iri
    if not isinstance(policy, Iri) or Triple(policy, RDF_TYPE, oppo("oppo:PrivacyPolicy")) not in g:
        raise UnknownPolicyError(f"{policy.n3()} is not a PrivacyPolicy in this graph")
    w = dict(DEFAULT_WEIGHTS)
    for k, v in (weights or {}).items():
        w[DetailDimension(k)] = Fraction(v)

    by_class = {oppo("oppo:" + local): dims for local, dims in _BY_CLASS.items()}
    data_item = oppo("iao:DataItem")
    indefinite_cls = oppo("oppo:IndefiniteDurationDescription")
    specific_data_classes = {
        t.subject for t in g.iter_match(None, RDFS_SUBCLASSOF, data_item) if t.subject != data_item
    }
    specific_data_classes |= {c for c in schema.subclasses(data_item) if c != data_item}

    def has(s, local):
        return next(g.iter_match(s, oppo("oppo:" + local), None), None) is not None

    rows = []
    for practice in sorted(g.objects(policy, oppo("oppo:hasDataPractice")), key=lambda t: t.n3()):
        types = _types(g, practice)
        applicable = set(by_class[oppo("oppo:DataPractice")])
        for cls, dims in by_class.items():
            if cls in types:
                applicable |= dims
        targets = g.objects(practice, oppo("oppo:actsOn"))
        if targets:
            applicable.add(D.SECURITY_MECHANISM)

        specified = set()
        indefinite = False
        durations = g.objects(practice, oppo("oppo:hasDuration"))
        if durations:
            indefinite = all(indefinite_cls in _types(g, d) for d in durations)
            if not (indefinite and strict):
                specified.add(D.DURATION)
        if has(practice, "hasStorageLocation"):
            specified.add(D.LOCATION)
        if has(practice, "hasStorageEntity"):
            specified.add(D.STORAGE_ENTITY)
        if any(isinstance(o, Literal) for o in g.objects(practice, oppo("oppo:RequestType"))):
            specified.add(D.MODIFICATION_REQUEST)
        if any(isinstance(o, Literal) for o in g.objects(practice, oppo("oppo:ResponseType"))):
            specified.add(D.MODIFICATION_RESPONSE)
        if has(practice, "hasResponseDelay"):
            specified.add(D.RESPONSE_DELAY)
        if has(practice, "hasPurpose"):
            specified.add(D.PURPOSE)
        if any(_types(g, d) & specific_data_classes for d in targets):
            specified.add(D.DATA_TYPE_SPECIFICITY)
        secured = has(practice, "usesSecurityMechanism") or any(
            next(g.iter_match(None, oppo("oppo:appliesTo"), d), None) is not None for d in targets
        )
        if secured:
            specified.add(D.SECURITY_MECHANISM)

        specified &= applicable
        rows.append(PracticeRow(practice, frozenset(specified), frozenset(applicable), indefinite))

    num = sum((w[d] for r in rows for d in r.specified), Fraction(0))
    den = sum((w[d] for r in rows for d in r.applicable), Fraction(0))
    score = num / den if den else Fraction(0)
    return TransparencyReport(policy, tuple(rows), score, strict, w)


def compare(reports: Sequence[TransparencyReport]) -> list[TransparencyReport]:
    """Rank reports by score (descending), ties broken by policy IRI."""
    if not reports:
        raise ValueError("compare needs at least one report")
    return sorted(reports, key=lambda r: (-r.score, r.policy.value))
