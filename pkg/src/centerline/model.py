"""Data model for annotated discourse, centering data and resolution state.

Documents are immutable trees: Document -> Sentence -> Clause -> Markable.
The only mutable object is :class:`ResolutionState`, which is owned by a
single sequential resolution pass.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

EntityId = str

#: Prefix for entities invented for anaphors that could not be resolved.
FRESH_PREFIX = "?"


class Kind(enum.Enum):
    """Anaphor kind of a markable. ``NONE`` marks a non-anaphoric mention."""

    NONE = "none"
    PRONOUN = "pron"
    NOMINAL = "nom"
    PREPOSITIONAL = "prep"
    PLURAL = "plural"
    SET_MEMBER = "setmem"
    SENTENCE_ANAPHOR = "sent"
    GLOBAL_FOCUS = "global"

    @property
    def anaphoric(self) -> bool:
        return self is not Kind.NONE

    @property
    def resolvable(self) -> bool:
        """Only pronouns and definite nominals enter the resolver."""
        return self in (Kind.PRONOUN, Kind.NOMINAL)


#: Kinds that are anaphoric but deliberately left unresolved.
UNHANDLED_KINDS = (
    Kind.PREPOSITIONAL,
    Kind.PLURAL,
    Kind.SET_MEMBER,
    Kind.SENTENCE_ANAPHOR,
    Kind.GLOBAL_FOCUS,
)


class Role(enum.Enum):
    SUBJECT = "subj"
    OTHER = "other"


class ClauseKind(enum.Enum):
    MATRIX = "matrix"
    SUBORDINATE = "subord"
    MAIN = "main"


@dataclass(frozen=True)
class Markable:
    """One occurrence of a referring expression."""

    id: str
    clause: str
    pos: int
    surface: str
    entity: EntityId
    agr: Optional[str] = None
    role: Role = Role.OTHER
    kind: Kind = Kind.NONE
    sem: Optional[str] = None

    @property
    def anaphoric(self) -> bool:
        return self.kind.anaphoric


@dataclass(frozen=True)
class Clause:
    id: str
    kind: ClauseKind
    pos: int
    markables: Tuple[Markable, ...] = ()


@dataclass(frozen=True)
class Sentence:
    id: str
    clauses: Tuple[Clause, ...] = ()
    raw_text: Optional[str] = None

    def markables(self) -> Iterator[Markable]:
        for clause in self.clauses:
            yield from clause.markables


@dataclass(frozen=True)
class Utterance:
    """The centering update unit.

    ``clauses`` are in surface order; ``matrix`` is the only clause whose
    markables contribute to the forward-looking centers.
    """

    index: int
    clauses: Tuple[Clause, ...]
    matrix: Clause
    sentence: str = ""

    def markables(self) -> Iterator[Markable]:
        for clause in self.clauses:
            yield from clause.markables

    def is_first_clause(self, markable: Markable) -> bool:
        return bool(self.clauses) and markable.clause == self.clauses[0].id


@dataclass(frozen=True)
class CenteringState:
    cb: Optional[Tuple[EntityId, Markable]]
    cf: Tuple[Tuple[EntityId, Markable], ...]

    def cf_entities(self) -> List[EntityId]:
        return [entity for entity, _ in self.cf]


@dataclass(frozen=True)
class Document:
    id: str
    sentences: Tuple[Sentence, ...] = ()
    entities: Mapping[EntityId, Optional[str]] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return (
            self.id == other.id
            and self.sentences == other.sentences
            and list(self.entities.items()) == list(other.entities.items())
        )

    __hash__ = None  # type: ignore[assignment]

    def clauses(self) -> Iterator[Clause]:
        for sentence in self.sentences:
            yield from sentence.clauses

    def markables(self) -> Iterator[Markable]:
        """All markables in global order: sentence, clause pos, markable pos."""
        for sentence in self.sentences:
            yield from sentence.markables()

    @cached_property
    def _index(self) -> Dict[str, Tuple[int, str]]:
        # markable id -> (global order, sentence id)
        index = {}
        for i, (sentence, mark) in enumerate(
            (s, m) for s in self.sentences for m in s.markables()
        ):
            index[mark.id] = (i, sentence.id)
        return index

    @cached_property
    def _by_id(self) -> Dict[str, Markable]:
        return {m.id: m for m in self.markables()}

    def markable(self, mark_id: str) -> Markable:
        return self._by_id[mark_id]

    def order(self, mark_id: str) -> int:
        return self._index[mark_id][0]

    def sentence_of(self, mark_id: str) -> str:
        return self._index[mark_id][1]

    def anaphors(self) -> List[Markable]:
        return [m for m in self.markables() if m.anaphoric]


def gold_antecedent(doc: Document, anaphor: Markable) -> Optional[Markable]:
    """Closest preceding markable sharing the anaphor's gold entity."""
    best = None
    for mark in doc.markables():
        if mark.id == anaphor.id:
            return best
        if mark.entity == anaphor.entity:
            best = mark
    return best


def is_intra_sentential(doc: Document, anaphor: Markable) -> bool:
    antecedent = gold_antecedent(doc, anaphor)
    return antecedent is not None and (
        doc.sentence_of(antecedent.id) == doc.sentence_of(anaphor.id)
    )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_document(doc: Document) -> List[str]:
    """Check structural invariants; return one message per violation."""
    problems: List[str] = []
    seen_ids: Dict[str, str] = {}

    def claim(ident: str, what: str) -> None:
        if not ident:
            problems.append(f"empty {what} id")
        elif ident in seen_ids:
            problems.append(
                f"{what} {ident!r}: id already used by a {seen_ids[ident]}"
            )
        else:
            seen_ids[ident] = what

    for entity in doc.entities:
        if not entity:
            problems.append("empty entity id in entity table")
        elif entity.startswith(FRESH_PREFIX):
            problems.append(f"entity {entity!r}: ids may not start with {FRESH_PREFIX!r}")

    for sentence in doc.sentences:
        claim(sentence.id, "sentence")
        if not sentence.clauses:
            problems.append(f"sentence {sentence.id!r}: has no clauses")
            continue
        positions = [c.pos for c in sentence.clauses]
        if positions != list(range(len(positions))):
            problems.append(
                f"sentence {sentence.id!r}: clause positions {positions} "
                "are not consecutive from 0"
            )
        kinds = [c.kind for c in sentence.clauses]
        n_matrix = kinds.count(ClauseKind.MATRIX)
        n_sub = kinds.count(ClauseKind.SUBORDINATE)
        n_main = kinds.count(ClauseKind.MAIN)
        if n_main and (n_matrix or n_sub):
            problems.append(
                f"sentence {sentence.id!r}: main clauses mixed with "
                "matrix/subordinate clauses"
            )
        elif n_sub and n_matrix != 1:
            problems.append(
                f"sentence {sentence.id!r}: complex sentence needs exactly "
                f"one matrix clause, found {n_matrix}"
            )
        elif n_matrix > 1:
            problems.append(
                f"sentence {sentence.id!r}: {n_matrix} matrix clauses"
            )
        for clause in sentence.clauses:
            claim(clause.id, "clause")
            mark_positions = set()
            for mark in clause.markables:
                claim(mark.id, "markable")
                if mark.clause != clause.id:
                    problems.append(
                        f"markable {mark.id!r}: clause reference "
                        f"{mark.clause!r} does not match parent {clause.id!r}"
                    )
                if mark.pos < 0:
                    problems.append(f"markable {mark.id!r}: negative pos")
                if mark.pos in mark_positions:
                    problems.append(
                        f"markable {mark.id!r}: pos {mark.pos} duplicated "
                        f"in clause {clause.id!r}"
                    )
                mark_positions.add(mark.pos)
                if not mark.surface:
                    problems.append(f"markable {mark.id!r}: empty surface")
                elif "\n" in mark.surface or "\r" in mark.surface:
                    problems.append(f"markable {mark.id!r}: line break in surface")
                if mark.entity not in doc.entities:
                    problems.append(
                        f"markable {mark.id!r}: undeclared entity {mark.entity!r}"
                    )
            pos_list = [m.pos for m in clause.markables]
            if pos_list != sorted(pos_list):
                problems.append(
                    f"clause {clause.id!r}: markables not in ascending pos order"
                )
    return problems


# ---------------------------------------------------------------------------
# resolution state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Resolution:
    entity: EntityId
    antecedent: str
    stage: str


@dataclass
class ResolutionState:
    """Bookkeeping for one left-to-right pass over a document.

    ``resolved`` only holds anaphors that found an antecedent; anaphors that
    were tried and failed are in ``unresolved``.  Every markable is fed to
    :meth:`advance` once, in processing order.
    """

    doc: Document
    resolved: Dict[str, Resolution] = field(default_factory=dict)
    unresolved: set = field(default_factory=set)
    prev_cf: List[Tuple[EntityId, Markable]] = field(default_factory=list)
    current_partial: List[Markable] = field(default_factory=list)
    chain_correct: bool = False
    _order: Dict[str, int] = field(default_factory=dict)
    _first_seen: Dict[EntityId, int] = field(default_factory=dict)

    def entity_of(self, mark: Markable) -> Optional[EntityId]:
        """The entity a markable denotes as far as the resolver knows.

        Non-anaphors denote their annotated entity.  Anaphors denote their
        predicted entity, a fresh singleton if resolution failed, and
        ``None`` while still unprocessed.
        """
        if not mark.anaphoric:
            return mark.entity
        if mark.id not in self._order:
            return None
        if self.chain_correct:
            return mark.entity
        if mark.id in self.resolved:
            return self.resolved[mark.id].entity
        return FRESH_PREFIX + mark.id

    def processed(self, mark: Markable) -> bool:
        return mark.id in self._order

    def advance(self, mark: Markable) -> None:
        """Mark ``mark`` as processed; its entity becomes known."""
        index = len(self._order)
        self._order[mark.id] = index
        entity = self.entity_of(mark)
        self._first_seen.setdefault(entity, index)
        self.current_partial.append(mark)

    def start_utterance(self) -> None:
        self.current_partial = []

    def seen_before(self, entity: EntityId, mark: Markable) -> bool:
        first = self._first_seen.get(entity)
        if first is None:
            return False
        own = self._order.get(mark.id)
        return own is None or first < own


def context_bound(markable: Markable, state: ResolutionState) -> bool:
    """Whether a markable's entity is already given by the discourse.

    An anaphor is bound once it has been resolved.  A non-anaphor is bound
    when its entity was mentioned earlier.  Gold entities of anaphors are
    never consulted.
    """
    if markable.anaphoric:
        return markable.id in state.resolved
    return state.seen_before(markable.entity, markable)


# ---------------------------------------------------------------------------
# resolution report
# ---------------------------------------------------------------------------


class Status(enum.Enum):
    CORRECT = "correct"
    WRONG = "wrong"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Candidate:
    markable: Markable
    entity: EntityId
    source: str
    rank: int
    stage: str = ""


@dataclass(frozen=True)
class ReportRow:
    mark_id: str
    kind: Kind
    predicted: Optional[EntityId]
    antecedent: Optional[str]
    gold: EntityId
    stage: Optional[str]
    status: Status
    false_positive: bool = False
    candidates: Tuple[Candidate, ...] = ()


@dataclass
class ResolutionReport:
    doc_id: str
    strategy: str
    rows: List[ReportRow] = field(default_factory=list)
    centering: List[CenteringState] = field(default_factory=list)

    def row(self, mark_id: str) -> ReportRow:
        for row in self.rows:
            if row.mark_id == mark_id:
                return row
        raise KeyError(mark_id)

    def counts(self) -> Dict[Status, int]:
        out = {status: 0 for status in Status}
        for row in self.rows:
            out[row.status] += 1
        return out
