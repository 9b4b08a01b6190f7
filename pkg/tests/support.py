"""Shared test helpers: marker factories, brute-force oracles, random
discourse generation, and an independent validator for committed anchors.

The oracles deliberately avoid the library's own enumeration and
filtering code paths so they stay meaningful as checks.
"""

from __future__ import annotations

import random
from itertools import combinations

from centering import (
    Agreement,
    Anchor,
    CfEntry,
    CfList,
    Entity,
    EntityKind,
    GrammaticalFunction,
    MarkerKind,
    ReferenceMarker,
    Utterance,
)
from centering.engine import FAILURE_DIAGNOSTICS, UtteranceResult

FEM = Agreement("fem", "sg", "3")
MASC = Agreement("masc", "sg", "3")
NEUT = Agreement("neut", "sg", "3")

SUBJ = GrammaticalFunction.SUBJECT
OBJ = GrammaticalFunction.OBJECT
OBJ2 = GrammaticalFunction.OBJECT2
OTHER = GrammaticalFunction.OTHER_SUBCAT
ADJ = GrammaticalFunction.ADJUNCT


def name(surface, entity_id, gf=SUBJ, agr=None, contra=(), mid=None):
    return ReferenceMarker(
        surface=surface,
        kind=MarkerKind.NAME,
        gf=gf,
        agr=agr if agr is not None else Agreement(),
        contra=frozenset(contra),
        entity=Entity(entity_id, EntityKind.NAMED, surface),
        mid=mid,
    )


def pronoun(surface, index=None, gf=SUBJ, agr=None, contra=(), mid=None):
    return ReferenceMarker(
        surface=surface,
        kind=MarkerKind.PRONOUN,
        gf=gf,
        agr=agr if agr is not None else Agreement(),
        contra=frozenset(contra),
        index=index,
        mid=mid,
    )


def indefinite(surface, entity_id=None, index=None, gf=ADJ, agr=None, contra=(), mid=None):
    entity = Entity(entity_id, EntityKind.INDEFINITE, surface) if entity_id else None
    return ReferenceMarker(
        surface=surface,
        kind=MarkerKind.INDEFINITE,
        gf=gf,
        agr=agr if agr is not None else NEUT,
        contra=frozenset(contra),
        entity=entity,
        index=index,
        mid=mid,
    )


def utt(text, *markers, position=1):
    return Utterance(text, tuple(markers), position)


def cf_of(*markers):
    """CfList over already-bound markers (names/indefinites)."""
    return CfList(tuple(CfEntry(m.entity, m) for m in markers))


def bind(marker, entity):
    return CfEntry(entity, marker)


def race_scene():
    """The two-pronoun shift scenario, built directly: prior centers
    (FRIEDMAN:Friedman, BRENNAN:A8, WEEKEND:X3), current utterance
    "She often beats her" with contraindexed A9/A10, previous center
    BRENNAN."""
    friedman_m = name("Friedman", "FRIEDMAN", gf=SUBJ, agr=FEM)
    her_prior = pronoun("her", index="A8", gf=OBJ, agr=FEM)
    weekends = indefinite("weekends", entity_id="WEEKEND", index="X3", gf=ADJ,
                          agr=Agreement("neut", "pl", "3"))
    brennan = Entity("BRENNAN", EntityKind.NAMED, "Brennan")
    prior_cf = CfList((
        CfEntry(friedman_m.entity, friedman_m),
        CfEntry(brennan, her_prior),
        CfEntry(weekends.entity, weekends),
    ))
    u = utt(
        "She often beats her.",
        pronoun("She", index="A9", gf=SUBJ, agr=FEM, contra={"A10"}),
        pronoun("her", index="A10", gf=OBJ, agr=FEM, contra={"A9"}),
        position=4,
    )
    return prior_cf, u, brennan


# --- independent oracles ---------------------------------------------------


def _agree(a: Agreement, b: Agreement) -> bool:
    pairs = ((a.gender, b.gender), (a.number, b.number), (a.person, b.person))
    return all(x is None or y is None or x == y for x, y in pairs)


def oracle_candidate_ids(p: ReferenceMarker, prior_cf: CfList) -> list[str]:
    ids: list[str] = []
    for entry in prior_cf.entries:
        if entry.entity.id not in ids and _agree(p.agr, entry.marker.agr):
            ids.append(entry.entity.id)
    return ids


def oracle_enumerate_anchors(u: Utterance, prior_cf: CfList):
    """All (cb id or None, pronoun-binding tuple) pairs by plain nested
    list-building; empty when some pronoun has no candidate."""
    pronouns = [m for m in u.markers if m.kind is MarkerKind.PRONOUN]
    assignments: list[list[str]] = [[]]
    for p in pronouns:
        ids = oracle_candidate_ids(p, prior_cf)
        assignments = [done + [eid] for done in assignments for eid in ids]
    cbs = [entry.entity.id for entry in prior_cf.entries] + [None]
    return [(cb, tuple(done)) for cb in cbs for done in assignments]


def oracle_passes_filters(anchor: Anchor, prior_cf: CfList, u: Utterance) -> bool:
    """Re-derivation of all three filters from their statements."""
    bound = {e.marker.mid: e.entity.id for e in anchor.cf.entries}
    for a, b in combinations(u.markers, 2):
        if (b.mid in a.contra or a.mid in b.contra) and bound.get(a.mid) == bound.get(b.mid):
            if bound.get(a.mid) is not None:
                return False
    realized = set(bound.values())
    top = None
    for entry in prior_cf.entries:
        if entry.entity.id in realized:
            top = entry.entity.id
            break
    cb_id = anchor.cb.entity.id if anchor.cb is not None else None
    if top is None:
        if cb_id is not None:
            return False
    elif cb_id != top:
        return False
    prior_ids = {entry.entity.id for entry in prior_cf.entries}
    pronoun_ids = {e.entity.id for e in anchor.cf.entries if e.marker.kind is MarkerKind.PRONOUN}
    if pronoun_ids & prior_ids and cb_id not in pronoun_ids:
        return False
    return True


# --- randomized inputs -----------------------------------------------------

_GENDERS = ("fem", "masc", "neut")


def random_scene(rng: random.Random):
    """A random (prior_cf, utterance) pair: prior centers realized by
    name-like markers, current utterance a mix of names and pronouns with
    random agreement and random symmetric contraindexing."""
    pool = [Entity(f"E{i}", EntityKind.NAMED, f"E{i}") for i in range(rng.randint(1, 5))]
    gender = {e.id: rng.choice(_GENDERS) for e in pool}

    prior_markers = []
    for j, e in enumerate(rng.sample(pool, rng.randint(0, len(pool)))):
        prior_markers.append(
            ReferenceMarker(
                surface=e.name.lower(),
                kind=MarkerKind.NAME,
                gf=rng.choice(list(GrammaticalFunction)),
                agr=Agreement(gender[e.id], "sg", "3"),
                entity=e,
                mid=f"p{j}",
            )
        )
    prior_cf = CfList(tuple(CfEntry(m.entity, m) for m in prior_markers))

    markers = []
    for j in range(rng.randint(0, 3)):
        gf = rng.choice(list(GrammaticalFunction))
        if rng.random() < 0.5:
            e = rng.choice(pool)
            markers.append(
                ReferenceMarker(
                    surface=e.name.lower(),
                    kind=MarkerKind.NAME,
                    gf=gf,
                    agr=Agreement(gender[e.id], "sg", "3"),
                    entity=e,
                    mid=f"n{j}",
                )
            )
        else:
            g = rng.choice(_GENDERS + (None,))
            markers.append(
                ReferenceMarker(
                    surface="pro",
                    kind=MarkerKind.PRONOUN,
                    gf=gf,
                    agr=Agreement(g, "sg", "3"),
                    index=f"A{j + 1}",
                    mid=f"n{j}",
                )
            )
    contra: dict[str, set[str]] = {m.mid: set() for m in markers}
    for a, b in combinations(markers, 2):
        if rng.random() < 0.4:
            contra[a.mid].add(b.mid)
            contra[b.mid].add(a.mid)
    markers = [
        ReferenceMarker(
            surface=m.surface, kind=m.kind, gf=m.gf, agr=m.agr,
            contra=frozenset(contra[m.mid]), entity=m.entity,
            index=m.index, mid=m.mid,
        )
        for m in markers
    ]
    return prior_cf, Utterance("random scene", tuple(markers), 2)


def random_discourse(rng: random.Random, max_utterances: int = 5) -> list[Utterance]:
    """A random well-formed discourse of unannotated names and pronouns."""
    pool = [Entity(f"E{i}", EntityKind.NAMED, f"E{i}") for i in range(rng.randint(2, 5))]
    gender = {e.id: rng.choice(_GENDERS) for e in pool}
    utterances = []
    for position in range(1, rng.randint(1, max_utterances) + 1):
        markers = []
        for j in range(rng.randint(0, 3)):
            gf = rng.choice(list(GrammaticalFunction))
            mid = f"u{position}n{j}"
            if rng.random() < 0.55:
                e = rng.choice(pool)
                markers.append(
                    ReferenceMarker(
                        surface=e.name.lower(), kind=MarkerKind.NAME, gf=gf,
                        agr=Agreement(gender[e.id], "sg", "3"), entity=e, mid=mid,
                    )
                )
            else:
                g = rng.choice(_GENDERS + (None,))
                markers.append(
                    ReferenceMarker(
                        surface="pro", kind=MarkerKind.PRONOUN, gf=gf,
                        agr=Agreement(g, "sg", "3"), mid=mid,
                    )
                )
        contra: dict[str, set[str]] = {m.mid: set() for m in markers}
        for a, b in combinations(markers, 2):
            if rng.random() < 0.4:
                contra[a.mid].add(b.mid)
                contra[b.mid].add(a.mid)
        markers = [
            ReferenceMarker(
                surface=m.surface, kind=m.kind, gf=m.gf, agr=m.agr,
                contra=frozenset(contra[m.mid]), entity=m.entity, mid=m.mid,
            )
            for m in markers
        ]
        utterances.append(Utterance(f"utterance {position}", tuple(markers), position))
    return utterances


# --- independent validator -------------------------------------------------


def validate_committed(results: list[UtteranceResult]) -> list[str]:
    """Re-check every committed anchor against the constraints and the
    pronoun rule, without reusing the engine's predicates.

    A discourse opener must center its own preferred center (or nothing,
    when it has no markers). Failed utterances are checked for the
    documented fallback shape instead: null center plus the fixed entities.
    """
    problems: list[str] = []
    prev_cf: CfList | None = None
    for r in results:
        u = r.utterance
        where = f"U{r.position}"
        if r.diagnostic_kind in FAILURE_DIAGNOSTICS:
            if r.cb is not None:
                problems.append(f"{where}: fallback commit must have a null center")
            fixed = [m.mid for m in u.markers if m.kind is not MarkerKind.PRONOUN]
            if [e.marker.mid for e in r.cf.entries] != fixed:
                problems.append(f"{where}: fallback Cf must hold the fixed entities")
            prev_cf = r.cf
            continue
        # Constraint 2: every marker realized exactly once, in order.
        if [e.marker.mid for e in r.cf.entries] != [m.mid for m in u.markers]:
            problems.append(f"{where}: committed Cf does not realize the markers 1:1")
        bound = {e.marker.mid: e.entity.id for e in r.cf.entries}
        if prev_cf is None:
            # Constraint 1 for an opener: the center is its own Cp.
            if r.cf.entries:
                if r.cb is None or r.cb.entity.id != r.cf.entries[0].entity.id:
                    problems.append(f"{where}: opener must center its preferred center")
            elif r.cb is not None:
                problems.append(f"{where}: empty opener must have a null center")
        else:
            realized = set(bound.values())
            top = next((e.entity.id for e in prev_cf.entries if e.entity.id in realized), None)
            cb_id = r.cb.entity.id if r.cb is not None else None
            if top is None:
                if cb_id is not None:
                    problems.append(f"{where}: nothing prior realized, center must be null")
            elif cb_id != top:
                problems.append(f"{where}: center {cb_id} is not the top realized prior entity {top}")
            prior_ids = {e.entity.id for e in prev_cf.entries}
            pronoun_entries = [e for e in r.cf.entries if e.marker.kind is MarkerKind.PRONOUN]
            pronoun_ids = {e.entity.id for e in pronoun_entries}
            if pronoun_ids & prior_ids and (cb_id is None or cb_id not in pronoun_ids):
                problems.append(f"{where}: a prior entity is pronominalized but the center is not")
            for e in pronoun_entries:
                sources = [p for p in prev_cf.entries if p.entity.id == e.entity.id]
                if not sources:
                    problems.append(f"{where}: pronoun {e.marker.mid} bound outside the prior centers")
                elif not any(_agree(e.marker.agr, s.marker.agr) for s in sources):
                    problems.append(f"{where}: pronoun {e.marker.mid} bound against agreement")
        # Contraindexing on the committed anchor.
        for a, b in combinations(u.markers, 2):
            if (b.mid in a.contra or a.mid in b.contra) and bound.get(a.mid) == bound.get(b.mid):
                if bound.get(a.mid) is not None:
                    problems.append(f"{where}: contraindexed markers {a.mid}/{b.mid} co-bound")
        prev_cf = r.cf
    return problems
