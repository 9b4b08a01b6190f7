"""Corpus file reading, validation, and writing.

A corpus file is UTF-8 text holding one discourse in a line-oriented
format. Blank lines and lines starting with `#` are ignored. Directives:

    discourse <id>            required, before anything else
    mode <classic|extended>   optional, before the first utterance
    utterance <text>          opens a new utterance; text runs to end of line
    np key=value ...          one noun phrase of the current utterance

`np` fields use shell-style quoting (surface="Alfa Romeo"):

    id=<np-id>      required; unique within the utterance; what `contra`
                    references point at
    surface=<str>   required; the NP as it appears in the text
    kind=<pronoun|name|definite|indefinite>    required
    gf=<SUBJ|OBJ|OBJ2|OTHER|ADJ>               required
    agr=<gender,number,person>  optional; `-` leaves a feature
                    unspecified (agr=fem,sg,3 or agr=-,pl,-)
    entity=<ID>     optional semantic identity; forbidden for pronouns.
                    Names/definites default to an id derived from the
                    surface; indefinites default to their allocated X index.
    index=<A_/X_>   optional pre-assigned index: A-series for pronouns,
                    X-series for indefinites. Names and definites always
                    use their surface string and take no index field.
    contra=<id,..>  optional contraindexed sibling NPs (same utterance);
                    symmetry is normalized on load

Unknown directives and unknown `np` fields are rejected.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, replace
from importlib import resources

from .model import (
    INDEFINITE_INDEX,
    PRONOUN_INDEX,
    Agreement,
    Entity,
    EntityKind,
    GrammaticalFunction,
    MarkerKind,
    Mode,
    ReferenceMarker,
    Utterance,
)

GF_TOKENS = {
    "SUBJ": GrammaticalFunction.SUBJECT,
    "OBJ": GrammaticalFunction.OBJECT,
    "OBJ2": GrammaticalFunction.OBJECT2,
    "OTHER": GrammaticalFunction.OTHER_SUBCAT,
    "ADJ": GrammaticalFunction.ADJUNCT,
}
GF_NAMES = {v: k for k, v in GF_TOKENS.items()}
KIND_TOKENS = {k.value: k for k in MarkerKind}
NP_FIELDS = ("id", "surface", "kind", "gf", "agr", "entity", "index", "contra")
REQUIRED_NP_FIELDS = ("id", "surface", "kind", "gf")


class CorpusError(Exception):
    """Base for corpus validation problems; carries a position."""

    def __init__(self, message: str, line: int | None = None, fieldname: str | None = None):
        self.line = line
        self.fieldname = fieldname
        where = f"line {line}: " if line is not None else ""
        what = f"{fieldname}: " if fieldname else ""
        super().__init__(f"{where}{what}{message}")


class SchemaError(CorpusError):
    """Missing field, bad enum value, or malformed structure."""


class DanglingContraRef(CorpusError):
    """A contra reference names an NP id not present in the utterance."""


class DuplicateNpId(CorpusError):
    """Two NPs in one utterance share an id."""


@dataclass(frozen=True)
class CorpusNp:
    id: str
    surface: str
    kind: MarkerKind
    gf: GrammaticalFunction
    agr: Agreement = Agreement()
    contra: frozenset[str] = frozenset()
    entity: str | None = None
    index: str | None = None


@dataclass(frozen=True)
class CorpusUtterance:
    text: str
    nps: tuple[CorpusNp, ...] = ()


@dataclass(frozen=True)
class CorpusDocument:
    id: str
    mode: Mode = Mode.EXTENDED
    utterances: tuple[CorpusUtterance, ...] = ()


def _parse_agreement(value: str, line: int) -> Agreement:
    parts = value.split(",")
    if len(parts) != 3:
        raise SchemaError(f"agr needs gender,number,person, got {value!r}", line, "agr")
    try:
        return Agreement(*(None if p == "-" else p for p in parts))
    except ValueError as exc:
        raise SchemaError(str(exc), line, "agr") from None


def _parse_np(tokens: list[str], line: int) -> CorpusNp:
    fields: dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise SchemaError(f"expected key=value, got {token!r}", line)
        if key not in NP_FIELDS:
            raise SchemaError(f"unknown np field {key!r}", line, key)
        if key in fields:
            raise SchemaError(f"duplicate np field {key!r}", line, key)
        fields[key] = value
    for key in REQUIRED_NP_FIELDS:
        if key not in fields:
            raise SchemaError(f"missing required np field {key!r}", line, key)
    kind = KIND_TOKENS.get(fields["kind"])
    if kind is None:
        raise SchemaError(f"bad kind {fields['kind']!r}", line, "kind")
    gf = GF_TOKENS.get(fields["gf"])
    if gf is None:
        raise SchemaError(f"bad gf {fields['gf']!r}", line, "gf")
    agr = _parse_agreement(fields["agr"], line) if "agr" in fields else Agreement()
    entity = fields.get("entity")
    if entity is not None and kind is MarkerKind.PRONOUN:
        raise SchemaError("pronouns cannot carry an entity id", line, "entity")
    index = fields.get("index")
    if index is not None:
        if kind is MarkerKind.PRONOUN and not PRONOUN_INDEX.match(index):
            raise SchemaError(f"pronoun index must be A-series, got {index!r}", line, "index")
        if kind is MarkerKind.INDEFINITE and not INDEFINITE_INDEX.match(index):
            raise SchemaError(f"indefinite index must be X-series, got {index!r}", line, "index")
        if kind in (MarkerKind.NAME, MarkerKind.DEFINITE):
            raise SchemaError("names and definites take their surface as index", line, "index")
    contra = frozenset(c for c in fields.get("contra", "").split(",") if c)
    if fields["id"] in contra:
        raise SchemaError(f"np {fields['id']!r} is contraindexed with itself", line, "contra")
    return CorpusNp(fields["id"], fields["surface"], kind, gf, agr, contra, entity, index)


def _close_utterance(
    text: str, nps: list[tuple[CorpusNp, int]], line: int
) -> CorpusUtterance:
    ids = {}
    for np, np_line in nps:
        if np.id in ids:
            raise DuplicateNpId(f"np id {np.id!r} already used in this utterance", np_line, "id")
        ids[np.id] = np_line
    for np, np_line in nps:
        for ref in np.contra:
            if ref not in ids:
                raise DanglingContraRef(f"contra reference {ref!r} names no np here", np_line, "contra")
    # Normalize contra symmetry: if a lists b, b lists a.
    mutual: dict[str, set[str]] = {np.id: set(np.contra) for np, _ in nps}
    for np, _ in nps:
        for ref in np.contra:
            mutual[ref].add(np.id)
    closed = tuple(replace(np, contra=frozenset(mutual[np.id])) for np, _ in nps)
    return CorpusUtterance(text, closed)


def parse_corpus(text: str) -> CorpusDocument:
    """Parse and validate one corpus document; errors carry line positions."""
    doc_id: str | None = None
    mode = Mode.EXTENDED
    utterances: list[CorpusUtterance] = []
    current: tuple[str, int] | None = None  # (text, opening line)
    nps: list[tuple[CorpusNp, int]] = []
    seen_indices: dict[str, int] = {}

    def flush() -> None:
        nonlocal current, nps
        if current is not None:
            utterances.append(_close_utterance(current[0], nps, current[1]))
        current, nps = None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        directive, _, rest = line.partition(" ")
        rest = rest.strip()
        if directive == "discourse":
            if doc_id is not None:
                raise SchemaError("duplicate discourse directive", lineno)
            if utterances or current is not None:
                raise SchemaError("discourse directive must come first", lineno)
            if not rest:
                raise SchemaError("discourse needs an id", lineno)
            doc_id = rest
        elif directive == "mode":
            if utterances or current is not None:
                raise SchemaError("mode must precede the first utterance", lineno)
            try:
                mode = Mode(rest)
            except ValueError:
                raise SchemaError(f"bad mode {rest!r}", lineno, "mode") from None
        elif directive == "utterance":
            if doc_id is None:
                raise SchemaError("discourse directive must come first", lineno)
            if not rest:
                raise SchemaError("utterance text missing", lineno)
            flush()
            current = (rest, lineno)
        elif directive == "np":
            if current is None:
                raise SchemaError("np outside any utterance", lineno)
            try:
                tokens = shlex.split(rest)
            except ValueError as exc:
                raise SchemaError(f"bad quoting: {exc}", lineno) from None
            np = _parse_np(tokens, lineno)
            if np.index is not None:
                if np.index in seen_indices:
                    raise SchemaError(
                        f"index {np.index} already assigned at line {seen_indices[np.index]}",
                        lineno,
                        "index",
                    )
                seen_indices[np.index] = lineno
            nps.append((np, lineno))
        else:
            raise SchemaError(f"unknown directive {directive!r}", lineno)
    if doc_id is None:
        raise SchemaError("missing discourse directive", 1)
    flush()
    return CorpusDocument(doc_id, mode, tuple(utterances))


def _quote(value: str) -> str:
    return shlex.quote(value)


def _format_np(np: CorpusNp) -> str:
    parts = [f"np id={_quote(np.id)}", f"surface={_quote(np.surface)}"]
    parts.append(f"kind={np.kind.value}")
    parts.append(f"gf={GF_NAMES[np.gf]}")
    if (np.agr.gender, np.agr.number, np.agr.person) != (None, None, None):
        feats = ",".join(v if v is not None else "-" for v in (np.agr.gender, np.agr.number, np.agr.person))
        parts.append(f"agr={feats}")
    if np.entity is not None:
        parts.append(f"entity={_quote(np.entity)}")
    if np.index is not None:
        parts.append(f"index={np.index}")
    if np.contra:
        parts.append("contra=" + ",".join(sorted(np.contra)))
    return " ".join(parts)


def format_corpus(doc: CorpusDocument) -> str:
    """Write a document back out; parse(format_corpus(doc)) == doc."""
    lines = [f"discourse {doc.id}", f"mode {doc.mode.value}"]
    for cu in doc.utterances:
        lines.append("")
        lines.append(f"utterance {cu.text}")
        lines.extend(_format_np(np) for np in cu.nps)
    return "\n".join(lines) + "\n"


def derive_entity_id(surface: str) -> str:
    """Fallback semantic id for names/definites without an explicit one."""
    derived = re.sub(r"[^0-9A-Za-z]+", "-", surface).strip("-").upper()
    return derived or "UNNAMED"


def build_utterances(doc: CorpusDocument) -> list[Utterance]:
    """Instantiate model utterances, interning entities by id across the
    discourse so co-specification and display names stay consistent."""
    registry: dict[str, Entity] = {}

    def intern(eid: str, kind: EntityKind, surface: str) -> Entity:
        if eid not in registry:
            registry[eid] = Entity(eid, kind, surface)
        return registry[eid]

    utterances = []
    for position, cu in enumerate(doc.utterances, start=1):
        markers = []
        for np in cu.nps:
            entity = None
            if np.kind is not MarkerKind.PRONOUN:
                if np.entity is not None:
                    eid = np.entity
                elif np.kind in (MarkerKind.NAME, MarkerKind.DEFINITE):
                    eid = derive_entity_id(np.surface)
                else:
                    eid = None  # anonymous indefinite; bound at index allocation
                if eid is not None:
                    ekind = (
                        EntityKind.INDEFINITE
                        if np.kind is MarkerKind.INDEFINITE
                        else EntityKind.NAMED
                    )
                    entity = intern(eid, ekind, np.surface)
            markers.append(
                ReferenceMarker(
                    surface=np.surface,
                    kind=np.kind,
                    gf=np.gf,
                    agr=np.agr,
                    contra=np.contra,
                    entity=entity,
                    index=np.index,
                    mid=np.id,
                )
            )
        utterances.append(Utterance(cu.text, tuple(markers), position))
    return utterances


def bundled_corpora() -> dict[str, str]:
    """Map bundled corpus id -> file contents."""
    out = {}
    data = resources.files(__package__) / "data"
    for entry in sorted(data.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".corpus"):
            out[entry.name.removesuffix(".corpus")] = entry.read_text(encoding="utf-8")
    return out


def load_bundled(name: str) -> CorpusDocument:
    """Parse a bundled corpus by id (with or without the .corpus suffix)."""
    corpora = bundled_corpora()
    key = name.removesuffix(".corpus")
    if key not in corpora:
        raise KeyError(f"no bundled corpus {name!r}; have {sorted(corpora)}")
    return parse_corpus(corpora[key])
