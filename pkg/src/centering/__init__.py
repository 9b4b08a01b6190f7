"""Local attention tracking and pronoun binding over annotated discourses.

The pipeline per utterance: allocate indices, construct every candidate
(backward center, forward-center list) anchor, filter by contraindexing,
center realization and the pronoun rule, classify the survivors into
transition types, and commit the most coherent one.
"""

from .classification import (
    NO_PRIOR,
    ClassifiedAnchor,
    EmptyCf,
    NoViableAnchor,
    classify,
    preference_rank,
    rank_and_select,
)
from .construction import (
    CandidateSet,
    UnresolvablePronoun,
    build_candidates,
    collect_pronouns,
    pronoun_candidates,
    propose_anchors,
    propose_cf_lists,
)
from .corpus import (
    CorpusDocument,
    CorpusError,
    CorpusNp,
    CorpusUtterance,
    DanglingContraRef,
    DuplicateNpId,
    SchemaError,
    build_utterances,
    bundled_corpora,
    format_corpus,
    load_bundled,
    parse_corpus,
)
from .engine import (
    UtteranceResult,
    process_discourse,
    process_document,
    process_utterance,
)
from .filters import (
    CONSTRAINT3,
    CONTRA,
    FILTER_NAMES,
    RULE1,
    FilterVerdict,
    filter_constraint3,
    filter_contraindex,
    filter_rule1,
    run_filters,
)
from .model import (
    Agreement,
    Anchor,
    CfEntry,
    CfList,
    DiscourseState,
    Entity,
    EntityKind,
    GrammaticalFunction,
    MarkerKind,
    Mode,
    ReferenceMarker,
    Transition,
    Utterance,
    allocate_indices,
    rank_markers,
    unify_agreement,
)
from .render import render_trace, roman

__version__ = "0.1.0"

__all__ = [
    "Agreement",
    "Anchor",
    "CandidateSet",
    "CfEntry",
    "CfList",
    "ClassifiedAnchor",
    "CorpusDocument",
    "CorpusError",
    "CorpusNp",
    "CorpusUtterance",
    "CONSTRAINT3",
    "CONTRA",
    "DanglingContraRef",
    "DiscourseState",
    "DuplicateNpId",
    "EmptyCf",
    "Entity",
    "EntityKind",
    "FILTER_NAMES",
    "FilterVerdict",
    "GrammaticalFunction",
    "MarkerKind",
    "Mode",
    "NO_PRIOR",
    "NoViableAnchor",
    "ReferenceMarker",
    "RULE1",
    "SchemaError",
    "Transition",
    "UnresolvablePronoun",
    "Utterance",
    "UtteranceResult",
    "allocate_indices",
    "build_candidates",
    "build_utterances",
    "bundled_corpora",
    "classify",
    "collect_pronouns",
    "filter_constraint3",
    "filter_contraindex",
    "filter_rule1",
    "format_corpus",
    "load_bundled",
    "parse_corpus",
    "preference_rank",
    "process_discourse",
    "process_document",
    "process_utterance",
    "pronoun_candidates",
    "propose_anchors",
    "propose_cf_lists",
    "rank_and_select",
    "rank_markers",
    "render_trace",
    "roman",
    "run_filters",
    "unify_agreement",
]
