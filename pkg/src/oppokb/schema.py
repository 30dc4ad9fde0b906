"""The OPPO vocabulary as Python values, plus validation and graph emission.

The class list is a reconstruction. Placement of upper-ontology stubs below
``bfo:Entity`` and the eleven topical PersonalData categories are choices
made here, not imported definitions; see README.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping

from .namespaces import (
    OWL_DISJOINTWITH,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    SKOS_DEFINITION,
    default_prefixes,
)
from .store import Graph
from .terms import XSD, XSD_BOOLEAN, XSD_INTEGER, XSD_STRING, Iri, Literal

DATA_RANGES = frozenset({Iri(XSD_STRING), Iri(XSD_INTEGER), Iri(XSD_BOOLEAN)})


class PropertyKind(str, enum.Enum):
    OBJECT = "object"
    DATA = "data"


@dataclass(frozen=True)
class ClassDef:
    iri: Iri
    label: str
    parents: tuple[Iri, ...] = ()
    disjoint_with: tuple[Iri, ...] = ()
    definition: str | None = None

    @property
    def is_root(self) -> bool:
        return not self.parents


@dataclass(frozen=True)
class PropertyDef:
    iri: Iri
    kind: PropertyKind
    domain: Iri
    range: Iri
    label: str
    parents: tuple[Iri, ...] = ()


@dataclass(frozen=True)
class Diagnostic:
    code: str
    iris: tuple[Iri, ...]
    message: str


class SchemaError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(d.message for d in diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Schema:
    classes: Mapping[Iri, ClassDef] = field(default_factory=dict)
    properties: Mapping[Iri, PropertyDef] = field(default_factory=dict)
    prefixes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "classes", MappingProxyType(dict(self.classes)))
        object.__setattr__(self, "properties", MappingProxyType(dict(self.properties)))
        object.__setattr__(self, "prefixes", MappingProxyType(dict(self.prefixes)))

    def __eq__(self, other):
        if not isinstance(other, Schema):
            return NotImplemented
        return (
            dict(self.classes) == dict(other.classes)
            and dict(self.properties) == dict(other.properties)
            and dict(self.prefixes) == dict(other.prefixes)
        )

    def __hash__(self):
        return hash((frozenset(self.classes), frozenset(self.properties)))

    def iri(self, curie: str) -> Iri:
        """Expand ``prefix:local`` against this schema's prefix map."""
        label, _, local = curie.partition(":")
        return Iri(self.prefixes[label] + local)

    @property
    def oppo(self) -> str:
        return self.prefixes["oppo"]

    def superclasses(self, iri: Iri) -> set[Iri]:
        """Reflexive-transitive superclasses (cycle-safe)."""
        seen = set()
        stack = [iri]
        while stack:
            c = stack.pop()
            if c in seen:
                continue
            seen.add(c)
            cdef = self.classes.get(c)
            if cdef:
                stack.extend(cdef.parents)
        return seen

    def subclasses(self, iri: Iri) -> set[Iri]:
        """Reflexive-transitive subclasses."""
        children: dict[Iri, list[Iri]] = {}
        for c in self.classes.values():
            for p in c.parents:
                children.setdefault(p, []).append(c.iri)
        seen = set()
        stack = [iri]
        while stack:
            c = stack.pop()
            if c not in seen:
                seen.add(c)
                stack.extend(children.get(c, ()))
        return seen

    def direct_subclasses(self, iri: Iri) -> list[Iri]:
        return sorted((c.iri for c in self.classes.values() if iri in c.parents), key=str)

    def disjoint_pairs(self) -> list[tuple[Iri, Iri]]:
        """Unordered disjoint pairs, each once with the smaller IRI first."""
        pairs = set()
        for c in self.classes.values():
            for d in c.disjoint_with:
                pairs.add((c.iri, d) if c.iri.value <= d.value else (d, c.iri))
        return sorted(pairs, key=lambda p: (p[0].value, p[1].value))

    def roots(self) -> list[Iri]:
        return sorted((c.iri for c in self.classes.values() if c.is_root), key=str)

    def extend(
        self,
        classes: Iterable[ClassDef] = (),
        properties: Iterable[PropertyDef] = (),
        validate: bool = True,
    ) -> "Schema":
        """Return a new normalized schema with extra definitions registered.

        Raises :class:`SchemaError` if the result fails validation.
        """
        cls = dict(self.classes)
        props = dict(self.properties)
        for c in classes:
            cls[c.iri] = c
        for p in properties:
            props[p.iri] = p
        out = normalize(Schema(cls, props, self.prefixes))
        if validate:
            diags = validate_schema(out)
            if diags:
                raise SchemaError(diags)
        return out


def normalize(schema: Schema) -> Schema:
    """Symmetric disjointness; parent lists de-duplicated and sorted by IRI."""
    partners: dict[Iri, set[Iri]] = {iri: set() for iri in schema.classes}
    for a, b in schema.disjoint_pairs():
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    classes = {}
    for iri, c in schema.classes.items():
        classes[iri] = replace(
            c,
            parents=tuple(sorted(set(c.parents), key=str)),
            disjoint_with=tuple(sorted(partners[iri], key=str)),
        )
    props = {
        iri: replace(p, parents=tuple(sorted(set(p.parents), key=str)))
        for iri, p in schema.properties.items()
    }
    return Schema(classes, props, schema.prefixes)


def _cycles(schema: Schema) -> list[list[Iri]]:
    """Strongly connected components of the subclass graph that contain a cycle."""
    index: dict[Iri, int] = {}
    low: dict[Iri, int] = {}
    on_stack: set[Iri] = set()
    stack: list[Iri] = []
    out = []
    counter = [0]

    def edges(c):
        cdef = schema.classes.get(c)
        return [p for p in cdef.parents if p in schema.classes] if cdef else []

    def strongconnect(v):
        # iterative Tarjan to stay clear of the recursion limit on deep hierarchies
        work = [(v, iter(edges(v)))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1 or node in edges(node):
                    out.append(sorted(comp, key=str))

    for c in sorted(schema.classes, key=str):
        if c not in index:
            strongconnect(c)
    return sorted(out, key=lambda comp: [str(x) for x in comp])


def validate_schema(schema: Schema) -> list[Diagnostic]:
    """Structural checks; an empty list means the schema is sound."""
    diags: list[Diagnostic] = []
    classes = schema.classes

    for comp in _cycles(schema):
        names = ", ".join(str(c) for c in comp)
        diags.append(Diagnostic("subclass-cycle", tuple(comp), f"subclass cycle among {names}"))

    for iri in sorted(classes, key=str):
        c = classes[iri]
        for p in c.parents:
            if p not in classes:
                diags.append(
                    Diagnostic("unknown-class", (iri, p), f"{iri} has undefined parent {p}")
                )
        for d in c.disjoint_with:
            if d not in classes:
                diags.append(
                    Diagnostic("unknown-class", (iri, d), f"{iri} is disjoint with undefined {d}")
                )
            elif iri not in classes[d].disjoint_with:
                diags.append(
                    Diagnostic(
                        "asymmetric-disjoint",
                        (iri, d),
                        f"{iri} lists {d} as disjoint but not vice versa",
                    )
                )

    for iri in sorted(schema.properties, key=str):
        p = schema.properties[iri]
        if p.domain not in classes:
            diags.append(
                Diagnostic("unresolved-domain", (iri, p.domain), f"{iri} has unknown domain {p.domain}")
            )
        if p.kind is PropertyKind.DATA:
            if p.range not in DATA_RANGES:
                diags.append(
                    Diagnostic(
                        "bad-datatype-range", (iri, p.range), f"{iri} has unsupported datatype {p.range}"
                    )
                )
        elif p.range not in classes:
            diags.append(
                Diagnostic("unresolved-range", (iri, p.range), f"{iri} has unknown range {p.range}")
            )
        for parent in p.parents:
            if parent not in schema.properties:
                diags.append(
                    Diagnostic(
                        "unknown-property", (iri, parent), f"{iri} has undefined parent property {parent}"
                    )
                )

    pairs = schema.disjoint_pairs()
    if pairs:
        ancestors = {iri: schema.superclasses(iri) for iri in classes}
        for iri in sorted(classes, key=str):
            anc = ancestors[iri]
            for a, b in pairs:
                if a not in anc or b not in anc:
                    continue
                # report only the topmost offender; its descendants inherit the clash
                if any(a in ancestors.get(p, ()) and b in ancestors.get(p, ())
                       for p in classes[iri].parents if p != iri):
                    continue
                diags.append(
                    Diagnostic(
                        "disjoint-descendant",
                        (iri, a, b),
                        f"{iri} is a subclass of disjoint classes {a} and {b}",
                    )
                )
    return diags


def schema_to_graph(schema: Schema) -> Graph:
    g = Graph()
    for iri in sorted(schema.classes, key=str):
        c = schema.classes[iri]
        g.add(iri, RDFS_LABEL, Literal(c.label))
        for p in c.parents:
            g.add(iri, RDFS_SUBCLASSOF, p)
        if c.definition:
            g.add(iri, SKOS_DEFINITION, Literal(c.definition))
    for a, b in schema.disjoint_pairs():
        g.add(a, OWL_DISJOINTWITH, b)
    for iri in sorted(schema.properties, key=str):
        p = schema.properties[iri]
        g.add(iri, RDFS_LABEL, Literal(p.label))
        g.add(iri, RDFS_DOMAIN, p.domain)
        g.add(iri, RDFS_RANGE, p.range)
        for parent in p.parents:
            g.add(iri, RDFS_SUBPROPERTYOF, parent)
    return g


def graph_to_schema(g: Graph, prefixes: Mapping[str, str] | None = None) -> Schema:
    """Rebuild a Schema from the triples :func:`schema_to_graph` emits."""
    prop_iris = g.subjects(RDFS_DOMAIN) | g.subjects(RDFS_RANGE) | g.subjects(RDFS_SUBPROPERTYOF)
    class_iris = (
        g.subjects(RDFS_SUBCLASSOF)
        | g.objects(None, RDFS_SUBCLASSOF)
        | g.subjects(OWL_DISJOINTWITH)
        | g.objects(None, OWL_DISJOINTWITH)
        | (g.subjects(RDFS_LABEL) - prop_iris)
    )

    def label(iri):
        lit = g.value(iri, RDFS_LABEL)
        return lit.lexical if isinstance(lit, Literal) else _local(iri)

    def sorted_objs(s, p):
        return tuple(sorted((o for o in g.objects(s, p) if isinstance(o, Iri)), key=str))

    disjoint: dict[Iri, set[Iri]] = {}
    for t in g.iter_match(None, OWL_DISJOINTWITH, None):
        disjoint.setdefault(t.subject, set()).add(t.object)
    classes = {}
    for iri in class_iris:
        if not isinstance(iri, Iri):
            continue
        definition = g.value(iri, SKOS_DEFINITION)
        classes[iri] = ClassDef(
            iri,
            label(iri),
            parents=sorted_objs(iri, RDFS_SUBCLASSOF),
            disjoint_with=tuple(sorted(disjoint.get(iri, ()), key=str)),
            definition=definition.lexical if isinstance(definition, Literal) else None,
        )
    props = {}
    for iri in prop_iris:
        if not isinstance(iri, Iri):
            continue
        rng = g.value(iri, RDFS_RANGE)
        kind = PropertyKind.DATA if rng is not None and rng.value.startswith(XSD) else PropertyKind.OBJECT
        props[iri] = PropertyDef(
            iri, kind, g.value(iri, RDFS_DOMAIN), rng, label(iri),
            parents=sorted_objs(iri, RDFS_SUBPROPERTYOF),
        )
    return normalize(Schema(classes, props, prefixes or {}))


def _local(iri: Iri) -> str:
    v = iri.value
    for sep in ("#", "/"):
        if sep in v:
            v = v.rsplit(sep, 1)[1] or v
    return v


# (curie, label, parents, definition)
_CLASSES = [
    ("bfo:Entity", "entity", [], None),
    ("bfo:Continuant", "continuant", ["bfo:Entity"], None),
    ("bfo:IndependentContinuant", "independent continuant", ["bfo:Continuant"], None),
    ("bfo:MaterialEntity", "material entity", ["bfo:IndependentContinuant"], None),
    ("bfo:ImmaterialEntity", "immaterial entity", ["bfo:IndependentContinuant"], None),
    ("bfo:SpatialRegion", "spatial region", ["oppo:SpatialEntity"], None),
    ("bfo:Site", "site", ["oppo:SpatialEntity"], None),
    ("bfo:GenericallyDependentContinuant", "generically dependent continuant", ["bfo:Continuant"], None),
    ("bfo:SpecificallyDependentContinuant", "specifically dependent continuant", ["bfo:Continuant"], None),
    ("bfo:RealizableEntity", "realizable entity", ["bfo:SpecificallyDependentContinuant"], None),
    ("bfo:Role", "role", ["bfo:RealizableEntity"], None),
    ("bfo:Disposition", "disposition", ["bfo:RealizableEntity"], None),
    ("iao:InformationContentEntity", "information content entity", ["bfo:GenericallyDependentContinuant"], None),
    ("iao:DataItem", "data item", ["iao:InformationContentEntity"], None),
    ("obi:Organization", "organization", ["bfo:MaterialEntity"], None),
    ("omrse:LegalPersonRole", "legal person role", ["bfo:Role"], None),
    ("omrse:OrganizationRole", "organization role", ["bfo:Role"], None),
    ("dpvo:Purpose", "purpose", ["bfo:Disposition"], None),
    ("time:GeneralizedDurationDescription", "generalized duration description", ["bfo:Entity"], None),
    # core
    ("oppo:PrivacyPolicy", "privacy policy", ["iao:InformationContentEntity"],
     "The content of an organization's privacy notice taken as a whole."),
    ("oppo:DataPractice", "data practice", ["iao:InformationContentEntity"],
     "A part of a privacy policy stating one way the organization handles user data."),
    ("oppo:PrivacyRegulation", "privacy regulation", ["iao:InformationContentEntity"],
     "A legal instrument governing collection, storage or processing of personal data."),
    ("oppo:SecurityMechanism", "security mechanism", ["iao:InformationContentEntity"],
     "A technique or tool named by a policy for protecting data."),
    # data items
    ("oppo:IndividualData", "individual data", ["iao:DataItem"],
     "Data that concerns one single individual."),
    ("oppo:AggregatedData", "aggregated data", ["iao:DataItem"],
     "Data combined over many individuals."),
    ("oppo:AnonymizedData", "anonymized data", ["oppo:IndividualData"],
     "Individual data from which nobody can be identified."),
    ("oppo:PersonalData", "personal data", ["oppo:IndividualData"],
     "Individual data that can identify a person, directly or indirectly."),
    ("oppo:DemographicPersonalData", "demographic personal data", ["oppo:PersonalData"],
     "Personal data such as age, gender or nationality."),
    ("oppo:FinancialPersonalData", "financial personal data", ["oppo:PersonalData"],
     "Personal data about payments, accounts or cards."),
    ("oppo:IdentityPersonalData", "identity personal data", ["oppo:PersonalData"],
     "Names, usernames and official identifiers."),
    ("oppo:ActivityPersonalData", "activity personal data", ["oppo:PersonalData"],
     "Records of what a person does on the service."),
    ("oppo:BiometricPersonalData", "biometric personal data", ["oppo:PersonalData"],
     "Measurements of bodily features such as fingerprints or face geometry."),
    ("oppo:TechnicalPersonalData", "technical personal data", ["oppo:PersonalData"],
     "Device and network identifiers such as IP addresses."),
    ("oppo:HealthPersonalData", "health personal data", ["oppo:PersonalData"],
     "Data about physical or mental health."),
    ("oppo:LocationPersonalData", "location personal data", ["oppo:PersonalData"],
     "Data placing a person at a geographic position."),
    ("oppo:ContactPersonalData", "contact personal data", ["oppo:PersonalData"],
     "Phone numbers, e-mail addresses and address books."),
    ("oppo:MediaPersonalData", "media personal data", ["oppo:PersonalData"],
     "Photos, videos and other files a person uploads."),
    ("oppo:CommunicationPersonalData", "communication personal data", ["oppo:PersonalData"],
     "Message content and posts exchanged on the service."),
    ("oppo:PseudonymizedPersonalData", "pseudonymized personal data", ["oppo:PersonalData"],
     "Personal data whose identifiers were swapped for pseudonyms; re-identifiable with the key."),
    ("dpvo:InferredPersonalData", "inferred personal data", ["oppo:PersonalData"], None),
    ("oppo:StatisticalData", "statistical data", ["oppo:AggregatedData"],
     "Counts or other statistics computed over user data."),
    ("dpvo:SyntheticData", "synthetic data", ["oppo:AggregatedData"], None),
    # roles
    ("oppo:DataSubjectRole", "data subject role", ["omrse:LegalPersonRole"],
     "Role of the person a data item is about."),
    ("oppo:MinorDataSubjectRole", "minor data subject role", ["oppo:DataSubjectRole"],
     "Data subject role played by someone below a regulation's age threshold."),
    ("oppo:DataRecipientRole", "data recipient role", ["omrse:OrganizationRole"],
     "Role of an organization that receives data."),
    ("oppo:FirstPartyDataRecipientRole", "first-party data recipient role", ["oppo:DataRecipientRole"],
     "Recipient role of an organization getting data straight from the person."),
    ("oppo:ThirdPartyDataRecipientRole", "third-party data recipient role", ["oppo:DataRecipientRole"],
     "Recipient role of an organization getting data from another organization."),
    ("oppo:DataProviderRole", "data provider role", ["bfo:Role"],
     "Role of whoever hands data over to someone else."),
    ("oppo:LegalPersonDataProviderRole", "legal person data provider role",
     ["oppo:DataProviderRole", "omrse:LegalPersonRole"],
     "Provider role played by a person."),
    ("oppo:OrganizationalDataProviderRole", "organizational data provider role",
     ["oppo:DataProviderRole", "omrse:OrganizationRole"],
     "Provider role played by an organization."),
    # practices
    ("oppo:DataStoragePractice", "data storage practice", ["oppo:DataPractice"],
     "A practice about keeping data."),
    ("oppo:DataStorageDurationPractice", "data storage duration practice", ["oppo:DataStoragePractice"],
     "A storage practice stating how long data is kept."),
    ("oppo:DataStorageLocationPractice", "data storage location practice", ["oppo:DataStoragePractice"],
     "A storage practice stating where, or on what infrastructure, data is kept."),
    ("oppo:DataStorageModificationPractice", "data storage modification practice",
     ["oppo:DataStoragePractice"],
     "A storage practice about correcting or erasing kept data on request."),
    ("oppo:DataSecurityPractice", "data security practice", ["oppo:DataPractice"],
     "An organizational practice for keeping data secure."),
    ("oppo:DataSecurityAuditingPractice", "data security auditing practice", ["oppo:DataSecurityPractice"],
     "Checking that safeguards are in place and working."),
    ("oppo:DataSecurityRestorationPractice", "data security restoration practice",
     ["oppo:DataSecurityPractice"],
     "Recovering data after loss, theft or compromise."),
    ("oppo:DataSecurityAccessPractice", "data security access practice", ["oppo:DataSecurityPractice"],
     "Restricting who may access data."),
    # locations and durations
    ("oppo:SpatialEntity", "spatial entity", ["bfo:ImmaterialEntity"],
     "A place: either a spatial region or a site."),
    ("oppo:StorageEntity", "storage entity", ["bfo:MaterialEntity"],
     "Physical infrastructure holding data, such as a data center or a device."),
    ("oppo:DefiniteDurationDescription", "definite duration description",
     ["time:GeneralizedDurationDescription"],
     "A duration with a stated bound."),
    ("oppo:IndefiniteDurationDescription", "indefinite duration description",
     ["time:GeneralizedDurationDescription"],
     "A duration left open, e.g. for as long as needed."),
    # security mechanisms
    ("oppo:PseudonymizationMechanism", "pseudonymization mechanism", ["oppo:SecurityMechanism"],
     "Replacing identifiers with pseudonyms."),
    ("oppo:EncryptionMechanism", "encryption mechanism", ["oppo:SecurityMechanism"],
     "Making data unreadable without a decryption key."),
    ("oppo:HashingMechanism", "hashing mechanism", ["oppo:SecurityMechanism"],
     "Replacing data with a cryptographic digest."),
    ("oppo:AuthenticationMechanism", "authentication mechanism", ["oppo:SecurityMechanism"],
     "Verifying identity before granting access."),
    ("oppo:TwoFactorAuthenticationMechanism", "two-factor authentication mechanism",
     ["oppo:AuthenticationMechanism"],
     "Authentication requiring two independent factors."),
]

_DISJOINT = [
    ("oppo:AnonymizedData", "oppo:PersonalData"),
    ("oppo:IndividualData", "oppo:AggregatedData"),
    ("oppo:DefiniteDurationDescription", "oppo:IndefiniteDurationDescription"),
]

# (curie, kind, domain, range, label, parents)
_PROPERTIES = [
    ("oppo:hasDataPractice", "object", "oppo:PrivacyPolicy", "oppo:DataPractice", "has data practice", []),
    ("oppo:allows", "object", "oppo:PrivacyRegulation", "oppo:DataPractice", "allows", []),
    ("oppo:disallows", "object", "oppo:PrivacyRegulation", "oppo:DataPractice", "disallows", []),
    ("oppo:actsOn", "object", "oppo:DataPractice", "iao:DataItem", "acts on", []),
    ("oppo:isAbout", "object", "iao:DataItem", "oppo:DataSubjectRole", "is about", []),
    ("oppo:isProvidedBy", "object", "iao:DataItem", "oppo:DataProviderRole", "is provided by", []),
    ("oppo:isReceivedBy", "object", "iao:DataItem", "oppo:DataRecipientRole", "is received by", []),
    ("oppo:hasPurpose", "object", "oppo:DataPractice", "dpvo:Purpose", "has purpose", []),
    ("oppo:appliesTo", "object", "oppo:SecurityMechanism", "iao:DataItem", "applies to", []),
    ("oppo:hasResponseDelay", "object", "oppo:DataStorageModificationPractice",
     "time:GeneralizedDurationDescription", "has response delay", []),
    ("oppo:RequestType", "data", "oppo:DataStorageModificationPractice", "xsd:string", "request type", []),
    ("oppo:ResponseType", "data", "oppo:DataStorageModificationPractice", "xsd:string", "response type", []),
    # knowledge-base extensions needed to make practices queryable
    ("oppo:hasDuration", "object", "oppo:DataStorageDurationPractice",
     "time:GeneralizedDurationDescription", "has duration", []),
    ("oppo:storedAt", "object", "oppo:DataStorageLocationPractice", "bfo:IndependentContinuant",
     "stored at", []),
    ("oppo:hasStorageLocation", "object", "oppo:DataStorageLocationPractice", "oppo:SpatialEntity",
     "has storage location", ["oppo:storedAt"]),
    ("oppo:hasStorageEntity", "object", "oppo:DataStorageLocationPractice", "oppo:StorageEntity",
     "has storage entity", ["oppo:storedAt"]),
    ("oppo:usesSecurityMechanism", "object", "oppo:DataPractice", "oppo:SecurityMechanism",
     "uses security mechanism", []),
    ("oppo:hasMaxDurationMonths", "data", "oppo:DefiniteDurationDescription", "xsd:integer",
     "has maximum duration in months", []),
    ("oppo:hasMinDurationMonths", "data", "oppo:DefiniteDurationDescription", "xsd:integer",
     "has minimum duration in months", []),
]

CORE_PROPERTIES = tuple(p[0] for p in _PROPERTIES[:12])


def build_schema(oppo_namespace: str | None = None) -> Schema:
    """The built-in OPPO schema; ``oppo_namespace`` overrides the oppo: IRI base."""
    prefixes = default_prefixes(oppo_namespace)
    base = Schema(prefixes=prefixes)
    iri = base.iri
    partners: dict[str, list[str]] = {}
    for a, b in _DISJOINT:
        partners.setdefault(a, []).append(b)
        partners.setdefault(b, []).append(a)
    classes = [
        ClassDef(
            iri(curie),
            label,
            tuple(iri(p) for p in parents),
            tuple(iri(d) for d in partners.get(curie, ())),
            definition,
        )
        for curie, label, parents, definition in _CLASSES
    ]
    props = [
        PropertyDef(iri(curie), PropertyKind(kind), iri(dom), iri(rng), label,
                    tuple(iri(p) for p in parents))
        for curie, kind, dom, rng, label, parents in _PROPERTIES
    ]
    return base.extend(classes, props)
