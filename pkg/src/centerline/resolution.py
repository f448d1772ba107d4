"""Antecedent proposal strategies and the sequential resolution driver.

Four ways of ordering candidate antecedents are implemented:

``functional``
    Anaphors in the first clause of an utterance look at the previous
    forward-looking centers (then, as a fallback, at material to their left).
    Anaphors in later clauses first look at already context-bound elements of
    the current utterance, then the previous centers, then the remaining
    elements of the current utterance.
``linear``
    Every clause is its own utterance; previous centers, then clause-mates.
``inter_first``
    Previous centers before anything in the current sentence.
``intra_first``
    Current sentence before the previous centers.

Whatever the strategy, the first candidate that survives the filters wins.
There is no scoring.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Tuple

from centerline.centering import compute_cb, compute_cf
from centerline.evaluation import detect_false_positive
from centerline.model import (
    Candidate,
    CenteringState,
    Document,
    EntityId,
    Kind,
    Markable,
    ReportRow,
    Resolution,
    ResolutionReport,
    ResolutionState,
    Status,
    Utterance,
    context_bound,
)
from centerline.segmentation import clause_segmentation_linear, segment


class Strategy(enum.Enum):
    FUNCTIONAL = "functional"
    LINEAR = "linear"
    INTER_FIRST = "inter_first"
    INTRA_FIRST = "intra_first"

    @classmethod
    def from_name(cls, name: str) -> "Strategy":
        aliases = {"inter": cls.INTER_FIRST, "intra": cls.INTRA_FIRST}
        if name in aliases:
            return aliases[name]
        return cls(name)


#: Column order used in comparison tables.
STRATEGIES = (
    Strategy.LINEAR,
    Strategy.INTER_FIRST,
    Strategy.INTRA_FIRST,
    Strategy.FUNCTIONAL,
)

ControlPredicate = Callable[[Markable, Markable], bool]


@dataclass(frozen=True)
class ResolutionConfig:
    strategy: Strategy = Strategy.FUNCTIONAL
    semantics_enabled: bool = False
    binding_filter_enabled: bool = True
    chain_correct: bool = False
    # hook for syntactic overrides such as control; None accepts everything
    control: Optional[ControlPredicate] = field(default=None, compare=False)


# source labels
INTRA_BOUND = "intra_bound"
PREV_CF = "prev_cf"
INTRA_REST = "intra_rest"
INTRA_LEFT = "intra_left"


def _preceding(anaphor: Markable, u: Utterance) -> List[Markable]:
    out = []
    for mark in u.markables():
        if mark.id == anaphor.id:
            return out
        out.append(mark)
    raise ValueError(f"markable {anaphor.id!r} is not part of utterance {u.index}")


class _Proposals:
    """Accumulates a duplicate-free (by entity) candidate list."""

    def __init__(self):
        self.items: List[Candidate] = []
        self._entities = set()

    def add(self, mark: Markable, entity: Optional[EntityId], source: str, stage: str):
        if entity is None or entity in self._entities:
            return
        self._entities.add(entity)
        self.items.append(Candidate(mark, entity, source, len(self.items), stage))

    def extend_cf(self, cf: Iterable[Tuple[EntityId, Markable]], stage: str):
        for entity, mark in cf:
            self.add(mark, entity, PREV_CF, stage)

    def extend(self, marks: Iterable[Markable], state, source: str, stage: str):
        for mark in marks:
            self.add(mark, state.entity_of(mark), source, stage)


def propose_functional(
    anaphor: Markable, u: Utterance, state: ResolutionState
) -> List[Candidate]:
    left = _preceding(anaphor, u)
    props = _Proposals()
    if u.is_first_clause(anaphor):
        props.extend_cf(state.prev_cf, "step1")
        props.extend(left, state, INTRA_LEFT, "fallback")
        return props.items
    bound = [m for m in left if context_bound(m, state)]
    props.extend(bound, state, INTRA_BOUND, "2a")
    props.extend_cf(state.prev_cf, "2b")
    checked = {m.id for m in bound}
    props.extend((m for m in left if m.id not in checked), state, INTRA_REST, "2c")
    return props.items


def propose_linear(
    anaphor: Markable, u_clause: Utterance, state: ResolutionState
) -> List[Candidate]:
    props = _Proposals()
    props.extend_cf(state.prev_cf, "cf")
    props.extend(_preceding(anaphor, u_clause), state, INTRA_LEFT, "intra")
    return props.items


def propose_inter_first(
    anaphor: Markable, u: Utterance, state: ResolutionState
) -> List[Candidate]:
    props = _Proposals()
    props.extend_cf(state.prev_cf, "cf")
    props.extend(_preceding(anaphor, u), state, INTRA_LEFT, "intra")
    return props.items


def propose_intra_first(
    anaphor: Markable, u: Utterance, state: ResolutionState
) -> List[Candidate]:
    props = _Proposals()
    props.extend(_preceding(anaphor, u), state, INTRA_LEFT, "intra")
    props.extend_cf(state.prev_cf, "cf")
    return props.items


PROPOSERS = {
    Strategy.FUNCTIONAL: propose_functional,
    Strategy.LINEAR: propose_linear,
    Strategy.INTER_FIRST: propose_inter_first,
    Strategy.INTRA_FIRST: propose_intra_first,
}


def binding_filter(anaphor: Markable, cand: Markable) -> bool:
    """Clause-mate exclusion for pronouns."""
    return not (anaphor.kind is Kind.PRONOUN and cand.clause == anaphor.clause)


def compatibility_filter(
    anaphor: Markable,
    cand: Markable,
    entity_sem: Optional[str],
    cfg: ResolutionConfig,
) -> bool:
    """Agreement check, plus a semantic type check when enabled."""
    if anaphor.agr and cand.agr and anaphor.agr != cand.agr:
        return False
    if cfg.semantics_enabled:
        cand_sem = cand.sem or entity_sem
        if anaphor.sem and cand_sem and anaphor.sem != cand_sem:
            return False
    return True


def _choose(
    anaphor: Markable,
    candidates: List[Candidate],
    doc: Document,
    cfg: ResolutionConfig,
) -> Optional[Candidate]:
    for cand in candidates:
        if cfg.binding_filter_enabled and not binding_filter(anaphor, cand.markable):
            continue
        if cfg.control is not None and not cfg.control(anaphor, cand.markable):
            continue
        if not compatibility_filter(
            anaphor, cand.markable, doc.entities.get(cand.entity), cfg
        ):
            continue
        return cand
    return None


def resolve_document(doc: Document, cfg: ResolutionConfig) -> ResolutionReport:
    """Resolve every anaphor of ``doc`` in one left-to-right pass.

    Only pronouns and nominals are attempted; other anaphoric kinds are
    reported as unresolved.  Gold entities of anaphors are read only when
    writing the report rows.
    """
    if cfg.strategy is Strategy.LINEAR:
        utterances = clause_segmentation_linear(doc)
    else:
        utterances = segment(doc)
    propose = PROPOSERS[cfg.strategy]
    state = ResolutionState(doc, chain_correct=cfg.chain_correct)
    report = ResolutionReport(doc.id, cfg.strategy.value)

    for u in utterances:
        state.start_utterance()
        for mark in u.markables():
            if mark.kind.resolvable:
                candidates = propose(mark, u, state)
                choice = _choose(mark, candidates, doc, cfg)
                if choice is None:
                    state.unresolved.add(mark.id)
                else:
                    state.resolved[mark.id] = Resolution(
                        choice.entity, choice.markable.id, choice.stage
                    )
                report.rows.append(_row(doc, mark, choice, tuple(candidates)))
            elif mark.anaphoric:
                state.unresolved.add(mark.id)
                report.rows.append(_row(doc, mark, None, ()))
            state.advance(mark)
        cf = compute_cf(u, state)
        cb = compute_cb(state.prev_cf, u, state)
        report.centering.append(CenteringState(cb, tuple(cf)))
        state.prev_cf = cf
    return report


def _row(
    doc: Document,
    mark: Markable,
    choice: Optional[Candidate],
    candidates: Tuple[Candidate, ...],
) -> ReportRow:
    if choice is None:
        return ReportRow(
            mark.id, mark.kind, None, None, mark.entity, None,
            Status.UNRESOLVED, False, candidates,
        )
    correct = choice.entity == mark.entity
    fp = not correct and detect_false_positive(mark, choice.markable.id, doc)
    return ReportRow(
        mark.id,
        mark.kind,
        choice.entity,
        choice.markable.id,
        mark.entity,
        choice.stage,
        Status.CORRECT if correct else Status.WRONG,
        fp,
        candidates,
    )


def resolve_all(doc: Document, **options) -> dict:
    """Run every strategy over ``doc`` with otherwise identical settings."""
    return {
        s: resolve_document(doc, ResolutionConfig(strategy=s, **options))
        for s in STRATEGIES
    }
