"""Per-utterance pipeline and discourse-state evolution.

For each utterance: allocate indices, construct the candidate anchors,
filter them, classify and rank the survivors, commit the winner into the
rolling state, and record a full trace of what happened. Resolution
failures never abort a run: the state advances with a null center and
the fixed (non-pronoun) entities, and the result carries the diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classification import (
    NO_PRIOR,
    ClassifiedAnchor,
    EmptyCf,
    NoViableAnchor,
    rank_and_select,
)
from .construction import UnresolvablePronoun, propose_anchors
from .filters import FilterVerdict, run_filters
from .model import (
    Anchor,
    CfEntry,
    CfList,
    DiscourseState,
    Entity,
    Mode,
    Transition,
    Utterance,
    allocate_indices,
)

DIAG_UNRESOLVABLE = "unresolvable-pronoun"
DIAG_NO_VIABLE = "no-viable-anchor"
DIAG_EMPTY = "empty-utterance"
DIAG_TIE = "tie"
FAILURE_DIAGNOSTICS = frozenset({DIAG_UNRESOLVABLE, DIAG_NO_VIABLE, DIAG_EMPTY})


@dataclass(frozen=True)
class UtteranceResult:
    """Everything recorded about one processed utterance.

    `bindings` maps pronoun index to bound entity and covers exactly the
    pronouns of the utterance; it is None when resolution failed. `cb`
    keeps the realizing marker, so its display shows the prior utterance's
    index for the center (the current utterance's own preferred-center
    marker on a discourse opener).
    """

    position: int
    text: str
    utterance: Utterance
    transition: Transition | None
    cb: CfEntry | None
    cf: CfList
    bindings: dict[str, Entity] | None
    anchors: tuple[Anchor, ...]
    anchors_constructed: int
    verdicts: tuple[FilterVerdict, ...]
    ranked: tuple[ClassifiedAnchor, ...]
    tie: bool
    after_retention: bool
    diagnostic_kind: str | None = None
    diagnostic: str | None = None


def _promote_initial(anchor: Anchor) -> Anchor:
    # A discourse opener centers its own preferred center. Promotion runs
    # after filtering because the realization filter only passes the null
    # center when nothing precedes.
    if anchor.cb is None and anchor.cf.entries:
        return Anchor(anchor.cf.entries[0], anchor.cf, anchor.ordinal)
    return anchor


def _commit_fallback(
    state: DiscourseState,
    u: Utterance,
    kind: str,
    message: str,
    after_retention: bool,
    anchors: tuple[Anchor, ...] = (),
    verdicts: tuple[FilterVerdict, ...] = (),
) -> tuple[DiscourseState, UtteranceResult]:
    fixed = tuple(CfEntry(m.entity, m) for m in u.markers if not m.is_pronoun and m.entity is not None)
    committed = Anchor(None, CfList(fixed))
    state.prev = (committed, u)
    state.last_transition = None
    result = UtteranceResult(
        position=u.position,
        text=u.text,
        utterance=u,
        transition=None,
        cb=None,
        cf=committed.cf,
        bindings=None,
        anchors=anchors,
        anchors_constructed=len(anchors),
        verdicts=verdicts,
        ranked=(),
        tie=False,
        after_retention=after_retention,
        diagnostic_kind=kind,
        diagnostic=message,
    )
    return state, result


def process_utterance(state: DiscourseState, u: Utterance) -> tuple[DiscourseState, UtteranceResult]:
    """Run the full pipeline on one utterance and advance the state."""
    u = allocate_indices(u, state)
    after_retention = state.last_transition is Transition.RETAINING
    if state.prev is not None:
        prior_anchor, _ = state.prev
        prior_cf = prior_anchor.cf
        prev_cb = prior_anchor.cb.entity if prior_anchor.cb is not None else None
    else:
        prior_cf = CfList()
        prev_cb = NO_PRIOR
    try:
        anchors = propose_anchors(u, prior_cf)
    except UnresolvablePronoun as exc:
        return _commit_fallback(state, u, DIAG_UNRESOLVABLE, str(exc), after_retention)
    survivors, verdicts = run_filters(anchors, prior_cf, u)
    if state.prev is None:
        survivors = [_promote_initial(a) for a in survivors]
    try:
        winner, ranked, tie = rank_and_select(survivors, prev_cb, state.mode)
    except NoViableAnchor as exc:
        return _commit_fallback(
            state, u, DIAG_NO_VIABLE, str(exc), after_retention, tuple(anchors), tuple(verdicts)
        )
    except EmptyCf as exc:
        return _commit_fallback(
            state, u, DIAG_EMPTY, str(exc), after_retention, tuple(anchors), tuple(verdicts)
        )
    bindings = {e.marker.index: e.entity for e in winner.anchor.cf.entries if e.marker.is_pronoun}
    state.prev = (winner.anchor, u)
    state.last_transition = winner.transition
    kind = message = None
    if tie:
        top = sum(1 for c in ranked if c.transition is winner.transition)
        kind = DIAG_TIE
        message = (
            f"{top} anchors share transition {winner.transition.label}; "
            "kept the construction-order first"
        )
    result = UtteranceResult(
        position=u.position,
        text=u.text,
        utterance=u,
        transition=winner.transition,
        cb=winner.anchor.cb,
        cf=winner.anchor.cf,
        bindings=bindings,
        anchors=tuple(anchors),
        anchors_constructed=len(anchors),
        verdicts=tuple(verdicts),
        ranked=tuple(ranked),
        tie=tie,
        after_retention=after_retention,
        diagnostic_kind=kind,
        diagnostic=message,
    )
    return state, result


def process_discourse(utterances: list[Utterance], mode: Mode = Mode.EXTENDED) -> list[UtteranceResult]:
    """Fold process_utterance over a discourse from a fresh state."""
    state = DiscourseState(mode=mode)
    results = []
    for u in utterances:
        state, result = process_utterance(state, u)
        results.append(result)
    return results


def process_document(doc, mode: Mode | None = None) -> list[UtteranceResult]:
    """Process a parsed corpus document; `mode` overrides the document's."""
    from .corpus import build_utterances

    return process_discourse(build_utterances(doc), mode if mode is not None else doc.mode)
