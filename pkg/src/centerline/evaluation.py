"""Scoring, error classification and table rendering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from centerline.model import (
    UNHANDLED_KINDS,
    Document,
    Kind,
    Markable,
    ResolutionReport,
    Role,
    Status,
    gold_antecedent,
)

TOTAL_LABEL = "Σ"


# ---------------------------------------------------------------------------
# success rates
# ---------------------------------------------------------------------------


@dataclass
class ScoreRow:
    """Correct counts per strategy over ``n`` anaphors."""

    label: str
    n: int
    correct: Dict[str, int] = field(default_factory=dict)

    def rate(self, strategy: str) -> Optional[Fraction]:
        if self.n == 0:
            return None
        return Fraction(self.correct[strategy], self.n)

    def __add__(self, other: "ScoreRow") -> "ScoreRow":
        merged = dict(self.correct)
        for key, value in other.correct.items():
            merged[key] = merged.get(key, 0) + value
        return ScoreRow(self.label, self.n + other.n, merged)


def score(report: ResolutionReport, doc: Document, label: Optional[str] = None) -> ScoreRow:
    """Count correct resolutions; unresolved anaphors count as wrong."""
    if report.doc_id != doc.id:
        raise ValueError(
            f"report is for document {report.doc_id!r}, not {doc.id!r}"
        )
    predicted = {row.mark_id: row.predicted for row in report.rows}
    anaphors = doc.anaphors()
    correct = sum(1 for m in anaphors if predicted.get(m.id) == m.entity)
    return ScoreRow(label or doc.id, len(anaphors), {report.strategy: correct})


def sum_rows(rows: Sequence[ScoreRow], label: str = TOTAL_LABEL) -> ScoreRow:
    total = ScoreRow(label, 0, {})
    for row in rows:
        total = total + row
    total.label = label
    return total


def percent(correct: int, n: int) -> Optional[str]:
    """Percentage with one decimal, rounded half up; ``None`` for n == 0."""
    if n == 0:
        return None
    tenths = math.floor(Fraction(1000 * correct, n) + Fraction(1, 2))
    return f"{tenths // 10}.{tenths % 10}"


def format_cell(correct: int, n: int) -> str:
    pct = percent(correct, n)
    return f"{correct} ({pct}%)" if pct is not None else f"{correct} (-)"


@dataclass(frozen=True)
class PrintedCell:
    row: str
    column: str
    correct: int
    n: int
    printed: float

    @property
    def exact(self) -> float:
        return 100 * self.correct / self.n

    @property
    def deviation(self) -> float:
        return self.printed - self.exact

    def consistent(self) -> bool:
        """True if ``printed`` is one of the two one-decimal values around the exact rate."""
        exact = Fraction(1000 * self.correct, self.n)
        printed = Fraction(round(self.printed * 10))
        return math.floor(exact) <= printed <= math.ceil(exact)


def audit_printed(cells: Iterable[PrintedCell]) -> List[PrintedCell]:
    """Return the cells whose printed percentage cannot come from their counts."""
    return [cell for cell in cells if not cell.consistent()]


# ---------------------------------------------------------------------------
# false positives and error taxonomy
# ---------------------------------------------------------------------------


def detect_false_positive(anaphor: Markable, antecedent_id: str, doc: Document) -> bool:
    """A wrong resolution whose chosen markable looks exactly like the right one."""
    gold = gold_antecedent(doc, anaphor)
    if gold is None:
        return False
    return doc.markable(antecedent_id).surface == gold.surface


@dataclass
class ErrorTaxonomy:
    prepositional: int = 0
    plural: int = 0
    set_member: int = 0
    sentence_anaphor: int = 0
    global_focus: int = 0
    any_strategy_wrong: int = 0
    strategy_specific: int = 0
    false_positive: int = 0

    def total(self) -> int:
        """Errors counted once each (false positives are a sub-count)."""
        return sum(getattr(self, f.name) for f in fields(self)) - self.false_positive


_KIND_BUCKET = {
    Kind.PREPOSITIONAL: "prepositional",
    Kind.PLURAL: "plural",
    Kind.SET_MEMBER: "set_member",
    Kind.SENTENCE_ANAPHOR: "sentence_anaphor",
    Kind.GLOBAL_FOCUS: "global_focus",
}


def classify_errors(
    reports: Mapping[object, ResolutionReport], doc: Document
) -> Dict[str, ErrorTaxonomy]:
    """Bucket the errors of several strategies run over the same document.

    Unhandled kinds go to their kind bucket.  An anaphor every strategy gets
    wrong is ``any_strategy_wrong``; the rest are ``strategy_specific``.
    """
    rows = {
        report.strategy: {row.mark_id: row for row in report.rows}
        for report in reports.values()
    }
    out = {name: ErrorTaxonomy() for name in rows}
    for mark in doc.anaphors():
        wrong = {
            name: by_id.get(mark.id) is None or by_id[mark.id].status is not Status.CORRECT
            for name, by_id in rows.items()
        }
        for name, is_wrong in wrong.items():
            if not is_wrong:
                continue
            tax = out[name]
            if mark.kind in UNHANDLED_KINDS:
                bucket = _KIND_BUCKET[mark.kind]
            elif all(wrong.values()):
                bucket = "any_strategy_wrong"
            else:
                bucket = "strategy_specific"
            setattr(tax, bucket, getattr(tax, bucket) + 1)
            row = rows[name].get(mark.id)
            if row is not None and row.false_positive:
                tax.false_positive += 1
    return out


# ---------------------------------------------------------------------------
# corpus description
# ---------------------------------------------------------------------------


@dataclass
class TypologyRow:
    context_bound: int = 0
    not_bound: int = 0
    subject: int = 0
    not_subject: int = 0

    def __add__(self, other: "TypologyRow") -> "TypologyRow":
        return TypologyRow(
            self.context_bound + other.context_bound,
            self.not_bound + other.not_bound,
            self.subject + other.subject,
            self.not_subject + other.not_subject,
        )

    def astuple(self) -> Tuple[int, int, int, int]:
        return (self.context_bound, self.not_bound, self.subject, self.not_subject)


def antecedent_typology(doc: Document) -> TypologyRow:
    """Classify the gold antecedents of intra-sentential anaphors."""
    row = TypologyRow()
    first_sentence: Dict[str, int] = {}
    sentence_index = {s.id: i for i, s in enumerate(doc.sentences)}
    for mark in doc.markables():
        first_sentence.setdefault(mark.entity, sentence_index[doc.sentence_of(mark.id)])
    for mark in doc.anaphors():
        ante = gold_antecedent(doc, mark)
        if ante is None or doc.sentence_of(ante.id) != doc.sentence_of(mark.id):
            continue
        here = sentence_index[doc.sentence_of(mark.id)]
        if ante.anaphoric or first_sentence[ante.entity] < here:
            row.context_bound += 1
        else:
            row.not_bound += 1
        if ante.role is Role.SUBJECT:
            row.subject += 1
        else:
            row.not_subject += 1
    return row


@dataclass
class StatsRow:
    label: str = TOTAL_LABEL
    text: int = 0
    sentence: int = 0
    words: int = 0

    @property
    def total(self) -> int:
        return self.text + self.sentence

    def astuple(self) -> Tuple[int, int, int, int]:
        return (self.text, self.sentence, self.total, self.words)


def corpus_stats(docs: Iterable[Document], label: str = TOTAL_LABEL) -> StatsRow:
    """Count text-level vs. sentence-level anaphors and words."""
    row = StatsRow(label)
    for doc in docs:
        for mark in doc.anaphors():
            ante = gold_antecedent(doc, mark)
            if ante is not None and doc.sentence_of(ante.id) == doc.sentence_of(mark.id):
                row.sentence += 1
            else:
                row.text += 1
        row.words += sum(len((s.raw_text or "").split()) for s in doc.sentences)
    return row


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def emit_tables(
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
    fmt: str = "table",
    color: bool = False,
) -> str:
    """Render rows as an aligned text table or as TSV."""
    cells = [[str(c) for c in header]] + [[str(c) for c in row] for row in rows]
    if fmt == "tsv":
        return "".join("\t".join(row) + "\n" for row in cells)
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = []
    for i, row in enumerate(cells):
        parts = [row[0].ljust(widths[0])]
        parts += [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        line = "  ".join(parts).rstrip()
        if i == 0 and color:
            line = f"\x1b[1m{line}\x1b[0m"
        lines.append(line)
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def success_table(
    rows: Sequence[ScoreRow], strategies: Sequence[str], **kwargs
) -> str:
    header = ["", "N"] + list(strategies)
    body = [
        [row.label, row.n] + [format_cell(row.correct.get(s, 0), row.n) for s in strategies]
        for row in rows
    ]
    return emit_tables(header, body, **kwargs)


def stats_table(rows: Sequence[StatsRow], **kwargs) -> str:
    header = ["", "text ana.", "sent. ana.", "anaphors", "words"]
    return emit_tables(header, [[r.label, *r.astuple()] for r in rows], **kwargs)


def typology_table(rows: Sequence[Tuple[str, TypologyRow]], **kwargs) -> str:
    header = ["", "cont.-bound", "not bound", "subj.", "not subj."]
    return emit_tables(header, [[label, *r.astuple()] for label, r in rows], **kwargs)


def taxonomy_table(taxonomies: Mapping[str, ErrorTaxonomy], **kwargs) -> str:
    names = list(taxonomies)
    header = ["bucket"] + names
    body = [
        [f.name] + [getattr(taxonomies[n], f.name) for n in names]
        for f in fields(ErrorTaxonomy)
    ]
    return emit_tables(header, body, **kwargs)
