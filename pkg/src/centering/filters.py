"""Anchor filters: contraindexing, center realization, and the pronoun rule.

Each filter is a pure pass/fail predicate over a single anchor, so they
can run in any order (or in parallel) without changing the outcome.
`run_filters` evaluates all three on every anchor; a verdict records
every violated filter, not just the first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Anchor, CfList, Utterance

CONTRA = "contra"
CONSTRAINT3 = "constraint3"
RULE1 = "rule1"
FILTER_NAMES = (CONTRA, CONSTRAINT3, RULE1)


@dataclass(frozen=True)
class FilterVerdict:
    """Outcome of all filters for one anchor (id = construction ordinal)."""

    anchor_id: int
    passed: bool
    eliminated_by: frozenset[str]

    def __post_init__(self) -> None:
        if self.passed != (not self.eliminated_by):
            raise ValueError("passed must mean an empty elimination set")


def filter_contraindex(anchor: Anchor, u: Utterance) -> bool:
    """False iff two contraindexed markers are bound to the same entity."""
    assignment = anchor.cf.assignment()
    for m in u.markers:
        bound = assignment.get(m.mid)
        if bound is None:
            continue
        for other in m.contra:
            if assignment.get(other) == bound:
                return False
    return True


def filter_constraint3(anchor: Anchor, prior_cf: CfList) -> bool:
    """The backward center must be the most prominent prior entity realized here.

    When nothing from the prior centers is realized, only the null center
    passes; that case keeps the predicate total for utterances sharing
    nothing with their context.
    """
    realized = {entry.entity.id for entry in anchor.cf.entries}
    top = next((pe for pe in prior_cf.entries if pe.entity.id in realized), None)
    if top is None:
        return anchor.cb is None
    return anchor.cb is not None and anchor.cb.entity == top.entity


def filter_rule1(anchor: Anchor, prior_cf: CfList, u: Utterance) -> bool:
    """If some prior entity is realized as a pronoun, the center must be too.

    Vacuously true when no pronoun picks up a prior entity.
    """
    prior_ids = {pe.entity.id for pe in prior_cf.entries}
    pronoun_ids = {e.entity.id for e in anchor.cf.entries if e.marker.is_pronoun}
    if pronoun_ids & prior_ids:
        return anchor.cb is not None and anchor.cb.entity.id in pronoun_ids
    return True


def run_filters(
    anchors: list[Anchor], prior_cf: CfList, u: Utterance
) -> tuple[list[Anchor], list[FilterVerdict]]:
    """Evaluate all three filters on every anchor.

    Survivors keep their input order; verdicts are aligned with the input
    and record the full elimination set per anchor.
    """
    survivors: list[Anchor] = []
    verdicts: list[FilterVerdict] = []
    for pos, anchor in enumerate(anchors, start=1):
        failed = []
        if not filter_contraindex(anchor, u):
            failed.append(CONTRA)
        if not filter_constraint3(anchor, prior_cf):
            failed.append(CONSTRAINT3)
        if not filter_rule1(anchor, prior_cf, u):
            failed.append(RULE1)
        anchor_id = anchor.ordinal if anchor.ordinal is not None else pos
        verdicts.append(FilterVerdict(anchor_id, not failed, frozenset(failed)))
        if not failed:
            survivors.append(anchor)
    return survivors, verdicts
