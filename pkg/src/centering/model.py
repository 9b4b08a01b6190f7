"""Domain model for tracking local attention in discourse.

Everything the pipeline shares lives here: grammatical functions and
their prominence order, agreement features, discourse entities,
per-utterance reference markers, forward-center lists, candidate
anchors, transition types, and the rolling per-discourse state. All
types are immutable values after construction; only DiscourseState is
mutable, and only the engine advances it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum

PRONOUN_INDEX = re.compile(r"A[1-9][0-9]*\Z")
INDEFINITE_INDEX = re.compile(r"X[1-9][0-9]*\Z")

GENDERS = frozenset({"fem", "masc", "neut"})
NUMBERS = frozenset({"sg", "pl"})
PERSONS = frozenset({"1", "2", "3"})


class GrammaticalFunction(IntEnum):
    """Obliqueness rank of a marker; a lower value is more prominent."""

    SUBJECT = 0
    OBJECT = 1
    OBJECT2 = 2
    OTHER_SUBCAT = 3
    ADJUNCT = 4


class MarkerKind(Enum):
    """Surface category of a noun phrase."""

    PRONOUN = "pronoun"
    NAME = "name"
    DEFINITE = "definite"
    INDEFINITE = "indefinite"


class EntityKind(Enum):
    NAMED = "named"
    INDEFINITE = "indefinite"
    UNRESOLVED = "unresolved"


class Mode(Enum):
    """Transition typology: classic three-way or extended four-way."""

    CLASSIC = "classic"
    EXTENDED = "extended"


class Transition(Enum):
    """How an utterance relates to the previous center of attention.

    Extended preference order is CONTINUING > RETAINING > SHIFTING_1 >
    SHIFTING; classic mode never produces SHIFTING_1.
    """

    CONTINUING = "CONTINUING"
    RETAINING = "RETAINING"
    SHIFTING_1 = "SHIFTING-1"
    SHIFTING = "SHIFTING"

    @property
    def label(self) -> str:
        return self.value


@dataclass(frozen=True)
class Agreement:
    """Gender/number/person features; None leaves a feature unspecified."""

    gender: str | None = None
    number: str | None = None
    person: str | None = None

    def __post_init__(self) -> None:
        for value, allowed in (
            (self.gender, GENDERS),
            (self.number, NUMBERS),
            (self.person, PERSONS),
        ):
            if value is not None and value not in allowed:
                raise ValueError(f"bad agreement feature {value!r}")


def unify_agreement(a: Agreement, b: Agreement) -> bool:
    """True iff no specified feature clashes; unspecified matches anything."""
    return all(
        x is None or y is None or x == y
        for x, y in (
            (a.gender, b.gender),
            (a.number, b.number),
            (a.person, b.person),
        )
    )


@dataclass(frozen=True, eq=False)
class Entity:
    """A discourse-level individual.

    Identity, and hence co-specification, is by `id` alone; `name` is the
    display form used in binding reports (the surface that introduced the
    entity, e.g. "Carl" for POLLARD).
    """

    id: str
    kind: EntityKind = EntityKind.NAMED
    name: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            object.__setattr__(self, "name", self.id)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Entity) and self.id == other.id

    def __hash__(self) -> int:
        return hash(self.id)

    def __repr__(self) -> str:
        return f"Entity({self.id})"


@dataclass(frozen=True)
class ReferenceMarker:
    """One NP occurrence in an utterance.

    `mid` identifies the marker within its utterance and is what contra
    sets refer to. `index` is the display index: A-series for pronouns,
    X-series for indefinites, the surface string for names and definites.
    Pronouns stay unbound (`entity` None); proposed bindings live in
    CfList entries, never on the marker itself.
    """

    surface: str
    kind: MarkerKind
    gf: GrammaticalFunction
    agr: Agreement = Agreement()
    contra: frozenset[str] = frozenset()
    entity: Entity | None = None
    index: str | None = None
    mid: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.contra, frozenset):
            object.__setattr__(self, "contra", frozenset(self.contra))
        if self.index is None and self.kind in (MarkerKind.NAME, MarkerKind.DEFINITE):
            object.__setattr__(self, "index", self.surface)
        if self.index is not None:
            if self.kind is MarkerKind.PRONOUN and not PRONOUN_INDEX.match(self.index):
                raise ValueError(f"pronoun index must be A-series, got {self.index!r}")
            if self.kind is MarkerKind.INDEFINITE and not INDEFINITE_INDEX.match(self.index):
                raise ValueError(f"indefinite index must be X-series, got {self.index!r}")
        if self.kind is MarkerKind.PRONOUN and self.entity is not None:
            raise ValueError(f"pronoun {self.surface!r} cannot carry a pre-bound entity")
        if self.mid is None:
            object.__setattr__(self, "mid", self.index or self.surface)
        if self.mid in self.contra:
            raise ValueError(f"marker {self.mid!r} is contraindexed with itself")

    @property
    def is_pronoun(self) -> bool:
        return self.kind is MarkerKind.PRONOUN


def rank_markers(markers: list[ReferenceMarker]) -> list[ReferenceMarker]:
    """Stable sort by grammatical-function rank; input order breaks ties."""
    return sorted(markers, key=lambda m: m.gf)


@dataclass(frozen=True)
class Utterance:
    """One utterance; markers are (re)ordered by obliqueness on construction."""

    text: str
    markers: tuple[ReferenceMarker, ...]
    position: int = 1

    def __post_init__(self) -> None:
        ordered = tuple(rank_markers(list(self.markers)))
        object.__setattr__(self, "markers", ordered)
        mids = [m.mid for m in ordered]
        if len(set(mids)) != len(mids):
            raise ValueError(f"duplicate marker ids in utterance {self.position}")


@dataclass(frozen=True)
class CfEntry:
    """One forward-center slot: an entity plus the marker realizing it."""

    entity: Entity
    marker: ReferenceMarker

    def __post_init__(self) -> None:
        if self.entity is None:
            raise ValueError(f"entry for marker {self.marker.mid!r} has no entity")

    @property
    def display(self) -> str:
        # Anonymous indefinites have entity id == index; showing the surface
        # there keeps displays like [X2:Alfa Romeo] readable.
        tag = self.marker.surface if self.marker.index == self.entity.id else self.marker.index
        return f"[{self.entity.id}:{tag}]"


@dataclass(frozen=True)
class CfList:
    """Forward-looking centers in obliqueness order; head is the preferred center."""

    entries: tuple[CfEntry, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def cp(self) -> Entity | None:
        return self.entries[0].entity if self.entries else None

    def entities(self) -> tuple[Entity, ...]:
        return tuple(e.entity for e in self.entries)

    def assignment(self) -> dict[str, Entity]:
        """Map marker mid -> bound entity."""
        return {e.marker.mid: e.entity for e in self.entries}


@dataclass(frozen=True)
class Anchor:
    """A candidate pairing of backward center (None = null center) and Cf.

    `ordinal` is the 1-based construction-order position; it labels the
    anchor in traces and provides the deterministic tie-break.
    """

    cb: CfEntry | None
    cf: CfList
    ordinal: int | None = None


@dataclass
class DiscourseState:
    """Rolling per-discourse bookkeeping; owned and advanced by the engine."""

    mode: Mode = Mode.EXTENDED
    prev: tuple[Anchor, Utterance] | None = None
    pronoun_count: int = 0
    indefinite_count: int = 0
    used_indices: set[str] = field(default_factory=set)
    last_transition: Transition | None = None


def _register_index(state: DiscourseState, marker: ReferenceMarker) -> None:
    if marker.index in state.used_indices:
        raise ValueError(f"index {marker.index} already used in this discourse")
    state.used_indices.add(marker.index)
    numeral = int(marker.index[1:])
    if marker.kind is MarkerKind.PRONOUN:
        state.pronoun_count = max(state.pronoun_count, numeral)
    else:
        state.indefinite_count = max(state.indefinite_count, numeral)


def _next_index(state: DiscourseState, prefix: str) -> str:
    count = state.pronoun_count if prefix == "A" else state.indefinite_count
    count += 1
    while f"{prefix}{count}" in state.used_indices:
        count += 1
    index = f"{prefix}{count}"
    state.used_indices.add(index)
    if prefix == "A":
        state.pronoun_count = count
    else:
        state.indefinite_count = count
    return index


def allocate_indices(u: Utterance, state: DiscourseState) -> Utterance:
    """Fill in missing A-/X-series indices, advancing the state's counters.

    Pre-annotated indices are registered first so fresh ones never collide
    with them, and they pull the counters forward to stay monotonic.
    Anonymous indefinites (no entity id given) are bound to a fresh entity
    named after their surface and identified by their new index.
    """
    for m in u.markers:
        if m.index is not None and m.kind in (MarkerKind.PRONOUN, MarkerKind.INDEFINITE):
            _register_index(state, m)
    out = []
    for m in u.markers:
        if m.index is None:
            if m.kind is MarkerKind.PRONOUN:
                m = replace(m, index=_next_index(state, "A"))
            elif m.kind is MarkerKind.INDEFINITE:
                m = replace(m, index=_next_index(state, "X"))
        if m.kind is MarkerKind.INDEFINITE and m.entity is None:
            m = replace(m, entity=Entity(m.index, EntityKind.INDEFINITE, m.surface))
        out.append(m)
    return replace(u, markers=tuple(out))
