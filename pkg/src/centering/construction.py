"""Anchor construction: enumerate every candidate center/binding pair.

Enumeration is canonical and total so traces are byte-stable across
runs: backward-center candidates run through the prior forward-center
entries in order and end with the null center; within each, binding
assignments iterate the Cartesian product of per-pronoun candidate
lists, later pronouns varying fastest, candidates in prior-Cf order.
The anchor count is therefore always
(len(prior_cf) + 1) * product(len(candidates(p)) for each pronoun p).

Pronoun candidates come only from the previous utterance's committed
forward centers; an antecedent elsewhere in the same utterance is not
considered unless it also appears there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .model import (
    Anchor,
    CfEntry,
    CfList,
    Entity,
    ReferenceMarker,
    Utterance,
    unify_agreement,
)


class UnresolvablePronoun(Exception):
    """A pronoun has no agreement-compatible antecedent in the prior centers."""

    def __init__(self, marker: ReferenceMarker):
        self.marker = marker
        ref = marker.index or marker.mid
        super().__init__(f"pronoun {ref} ({marker.surface!r}) has no compatible antecedent")


@dataclass(frozen=True)
class CandidateSet:
    """Raw material for anchor construction: pronouns, their candidate
    entities (aligned by position), and the backward-center candidates."""

    pronouns: tuple[ReferenceMarker, ...]
    candidates: tuple[tuple[Entity, ...], ...]
    cb_candidates: tuple[CfEntry | None, ...]


def collect_pronouns(u: Utterance) -> list[ReferenceMarker]:
    """Pronoun markers of the utterance, in obliqueness order."""
    return [m for m in u.markers if m.is_pronoun]


def pronoun_candidates(p: ReferenceMarker, prior_cf: CfList) -> list[Entity]:
    """Prior-center entities whose source agreement unifies with the pronoun.

    Prior-Cf order is kept; an entity realized more than once in the prior
    utterance is listed only once (at its first unifying occurrence).
    """
    out: list[Entity] = []
    seen: set[str] = set()
    for entry in prior_cf.entries:
        if entry.entity.id in seen:
            continue
        if unify_agreement(p.agr, entry.marker.agr):
            seen.add(entry.entity.id)
            out.append(entry.entity)
    return out


def build_candidates(u: Utterance, prior_cf: CfList) -> CandidateSet:
    pronouns = tuple(collect_pronouns(u))
    candidates = tuple(tuple(pronoun_candidates(p, prior_cf)) for p in pronouns)
    cb_candidates: tuple[CfEntry | None, ...] = (*prior_cf.entries, None)
    return CandidateSet(pronouns, candidates, cb_candidates)


def propose_cf_lists(u: Utterance, prior_cf: CfList) -> list[CfList]:
    """All full binding assignments for the utterance's markers.

    Raises UnresolvablePronoun if any pronoun has an empty candidate list.
    An utterance without pronouns yields exactly one list: the fixed
    entities in marker order.
    """
    cand = build_candidates(u, prior_cf)
    for p, options in zip(cand.pronouns, cand.candidates):
        if not options:
            raise UnresolvablePronoun(p)
    results = []
    for combo in product(*cand.candidates):
        binding = {p.mid: e for p, e in zip(cand.pronouns, combo)}
        entries = []
        for m in u.markers:
            entity = binding[m.mid] if m.is_pronoun else m.entity
            if entity is None:
                raise ValueError(f"marker {m.mid!r} has no entity; allocate indices first")
            entries.append(CfEntry(entity, m))
        results.append(CfList(tuple(entries)))
    return results


def propose_anchors(u: Utterance, prior_cf: CfList) -> list[Anchor]:
    """Every candidate anchor, in canonical order with 1-based ordinals."""
    cf_lists = propose_cf_lists(u, prior_cf)
    anchors = []
    ordinal = 1
    for cb in (*prior_cf.entries, None):
        for cf in cf_lists:
            anchors.append(Anchor(cb, cf, ordinal))
            ordinal += 1
    return anchors
