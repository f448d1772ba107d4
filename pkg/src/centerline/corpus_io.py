"""Reader and writer for the line-oriented ``.ctr`` annotation format.

Records, one per line (``#`` starts a comment, blank lines are ignored)::

    DOC <doc-id>
    ENT <entity-id> sem=<tag|->
    SENT <sent-id> [txt="<raw text>"]
    CL <clause-id> kind=<matrix|subord|main> pos=<int>
    M <mark-id> cl=<clause-id> pos=<int> surf="<string>" ent=<entity-id> \
agr=<tag|-> role=<subj|other> kind=<none|pron|nom|prep|plural|setmem|sent|global> [sem=<tag|->]

``CL`` binds to the most recent ``SENT``; an ``M`` line may appear anywhere
after its ``CL``.  Inside quoted strings only ``\\"`` and ``\\\\`` are
escapes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from centerline.model import (
    Clause,
    ClauseKind,
    Document,
    Kind,
    Markable,
    ReportRow,
    ResolutionReport,
    Role,
    Sentence,
    Status,
    validate_document,
)

FORMAT_VERSION = 1

_TOKEN = re.compile(
    r'\s*(?:([A-Za-z_]+)=(?:"((?:[^"\\]|\\.)*)(")?|(\S*))|(\S+))'
)
_ESCAPE = re.compile(r"\\(.)")

_FIELDS = {
    "DOC": (),
    "ENT": ("sem",),
    "SENT": ("txt",),
    "CL": ("kind", "pos"),
    "M": ("cl", "pos", "surf", "ent", "agr", "role", "kind", "sem"),
}
_REQUIRED = {
    "ENT": (),
    "SENT": (),
    "CL": ("kind", "pos"),
    "M": ("cl", "pos", "surf", "ent", "role", "kind"),
}
_QUOTED = {"txt", "surf"}


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"line {self.line}: {self.severity}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: List[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


def has_errors(diagnostics: List[ParseDiagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _unquote(body: str) -> str:
    bad = [c for c in _ESCAPE.findall(body) if c not in '"\\']
    if bad:
        raise ValueError(f"invalid escape '\\{bad[0]}'")
    return _ESCAPE.sub(r"\1", body)


def _split(rest: str) -> Tuple[List[str], Dict[str, str], List[str]]:
    """Split a record body into bare words, key/value fields and errors."""
    words, fields, errors = [], {}, []
    pos = 0
    while pos < len(rest):
        match = _TOKEN.match(rest, pos)
        if match is None or match.end() == pos:
            break
        pos = match.end()
        key, quoted, closed, plain, word = match.groups()
        if word is not None:
            words.append(word)
            continue
        if key in fields:
            errors.append(f"duplicate field {key!r}")
        if quoted is not None:
            if closed is None:
                errors.append(f"unterminated string in field {key!r}")
                continue
            try:
                fields[key] = ("q", _unquote(quoted))
            except ValueError as exc:
                errors.append(f"field {key!r}: {exc}")
        else:
            fields[key] = ("u", plain)
    return words, fields, errors


def _optional(value: str) -> Optional[str]:
    return None if value == "-" else value


class _Builder:
    """Mutable scaffolding used while reading records."""

    def __init__(self):
        self.doc_id: Optional[str] = None
        self.entities: Dict[str, Optional[str]] = {}
        self.sentences: List[dict] = []
        self.clauses: Dict[str, dict] = {}
        self.lines: Dict[str, int] = {}
        self.entity_lines: Dict[str, int] = {}

    def build(self) -> Document:
        sentences = []
        for sent in self.sentences:
            clauses = []
            for clause in sorted(sent["clauses"], key=lambda c: c["pos"]):
                marks = sorted(clause["marks"], key=lambda m: m.pos)
                clauses.append(
                    Clause(clause["id"], clause["kind"], clause["pos"], tuple(marks))
                )
            sentences.append(Sentence(sent["id"], tuple(clauses), sent["txt"]))
        return Document(self.doc_id or "", tuple(sentences), dict(self.entities))


def parse_document(text: str) -> Tuple[Document, List[ParseDiagnostic]]:
    """Parse ``.ctr`` text.

    Always returns a document (possibly partial) together with the
    diagnostics; callers must check :func:`has_errors` before trusting it.
    """
    diags: List[ParseDiagnostic] = []
    b = _Builder()
    current_sentence: Optional[dict] = None

    def error(line: int, message: str) -> None:
        diags.append(ParseDiagnostic(line, message, "error"))

    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip(" \t\r")
        if not stripped or stripped.startswith("#"):
            continue
        head, _, rest = stripped.partition(" ")
        if head not in _FIELDS:
            error(lineno, f"unknown record type {head!r}")
            continue
        if b.doc_id is None and head != "DOC":
            error(lineno, "missing DOC header")
            b.doc_id = ""
        words, raw_fields, problems = _split(rest)
        for problem in problems:
            error(lineno, problem)
        if not words:
            error(lineno, f"{head} record without id")
            continue
        ident = words[0]
        if len(words) > 1:
            error(lineno, f"unexpected token {words[1]!r}")
        for key in raw_fields:
            if key not in _FIELDS[head]:
                diags.append(
                    ParseDiagnostic(lineno, f"unknown field {key!r} ignored", "warning")
                )
        missing = [k for k in _REQUIRED.get(head, ()) if k not in raw_fields]
        if missing:
            error(lineno, f"{head} {ident}: missing field(s) {', '.join(missing)}")
            continue
        fields = {}
        bad = False
        for key, (style, value) in raw_fields.items():
            if key in _QUOTED and style != "q":
                error(lineno, f"field {key!r} must be a quoted string")
                bad = True
            fields[key] = value
        if bad:
            continue

        if head == "DOC":
            if b.doc_id:
                error(lineno, "duplicate DOC header")
            else:
                b.doc_id = ident
            continue

        if head == "ENT":
            if ident in b.entities:
                error(lineno, f"duplicate entity id {ident!r}")
                continue
            b.entities[ident] = _optional(fields.get("sem", "-"))
            b.entity_lines[ident] = lineno
            continue

        if ident in b.lines:
            error(lineno, f"duplicate id {ident!r} (first used on line {b.lines[ident]})")
            continue

        if head == "SENT":
            current_sentence = {"id": ident, "clauses": [], "txt": fields.get("txt")}
            b.sentences.append(current_sentence)
            b.lines[ident] = lineno
        elif head == "CL":
            if current_sentence is None:
                error(lineno, f"clause {ident!r} before any SENT record")
                continue
            try:
                kind = ClauseKind(fields["kind"])
            except ValueError:
                error(lineno, f"clause {ident!r}: bad kind {fields['kind']!r}")
                continue
            pos = _int(fields["pos"])
            if pos is None:
                error(lineno, f"clause {ident!r}: non-integer pos {fields['pos']!r}")
                continue
            clause = {"id": ident, "kind": kind, "pos": pos, "marks": []}
            current_sentence["clauses"].append(clause)
            b.clauses[ident] = clause
            b.lines[ident] = lineno
        else:
            clause = b.clauses.get(fields["cl"])
            if clause is None:
                error(lineno, f"markable {ident!r}: undeclared clause {fields['cl']!r}")
                continue
            pos = _int(fields["pos"])
            if pos is None:
                error(lineno, f"markable {ident!r}: non-integer pos {fields['pos']!r}")
                continue
            try:
                role = Role(fields["role"])
                kind = Kind(fields["kind"])
            except ValueError as exc:
                error(lineno, f"markable {ident!r}: {exc}")
                continue
            clause["marks"].append(
                Markable(
                    id=ident,
                    clause=fields["cl"],
                    pos=pos,
                    surface=fields["surf"],
                    entity=fields["ent"],
                    agr=_optional(fields.get("agr", "-")),
                    role=role,
                    kind=kind,
                    sem=_optional(fields.get("sem", "-")),
                )
            )
            b.lines[ident] = lineno

    if b.doc_id is None:
        error(1, "missing DOC header")
        b.doc_id = ""

    doc = b.build()
    if not has_errors(diags):
        for problem in validate_document(doc):
            ident = re.search(r"'([^']*)'", problem)
            key = ident.group(1) if ident else None
            line = b.lines.get(key) or b.entity_lines.get(key) or 1
            error(line, problem)
    return doc, diags


def _int(value: str) -> Optional[int]:
    if re.fullmatch(r"-?\d+", value):
        return int(value)
    return None


def load_document(path) -> Document:
    """Read and parse a file; raise :class:`ParseError` on any error."""
    with open(path, encoding="utf-8") as handle:
        doc, diags = parse_document(handle.read())
    if has_errors(diags):
        raise ParseError(diags)
    return doc


FORMAT_HEADER = "# format=1"


def serialize_document(doc: Document) -> str:
    out = [FORMAT_HEADER, f"DOC {doc.id}"]
    for entity, sem in doc.entities.items():
        out.append(f"ENT {entity} sem={sem or '-'}")
    for sentence in doc.sentences:
        line = f"SENT {sentence.id}"
        if sentence.raw_text is not None:
            line += f" txt={quote(sentence.raw_text)}"
        out.append(line)
        for clause in sentence.clauses:
            out.append(f"CL {clause.id} kind={clause.kind.value} pos={clause.pos}")
        for clause in sentence.clauses:
            for m in clause.markables:
                line = (
                    f"M {m.id} cl={m.clause} pos={m.pos} surf={quote(m.surface)} "
                    f"ent={m.entity} agr={m.agr or '-'} role={m.role.value} "
                    f"kind={m.kind.value}"
                )
                if m.sem is not None:
                    line += f" sem={m.sem}"
                out.append(line)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# resolution reports (TSV)
# ---------------------------------------------------------------------------

REPORT_COLUMNS = (
    "doc_id",
    "mark_id",
    "strategy",
    "predicted_entity",
    "gold_entity",
    "stage",
    "status",
    "false_positive",
)


def format_report(report: ResolutionReport, header: bool = True) -> str:
    lines = ["#" + "\t".join(REPORT_COLUMNS)] if header else []
    for row in report.rows:
        lines.append(
            "\t".join(
                (
                    report.doc_id,
                    row.mark_id,
                    report.strategy,
                    row.predicted or "-",
                    row.gold,
                    row.stage or "-",
                    row.status.value,
                    "fp" if row.false_positive else "-",
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> List[ResolutionReport]:
    """Read TSV report rows back; one report per (doc, strategy) run."""
    reports: Dict[Tuple[str, str], ResolutionReport] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != len(REPORT_COLUMNS):
            raise ValueError(f"line {lineno}: expected {len(REPORT_COLUMNS)} columns")
        doc_id, mark_id, strategy, predicted, gold, stage, status, fp = cells
        report = reports.setdefault(
            (doc_id, strategy), ResolutionReport(doc_id, strategy)
        )
        report.rows.append(
            ReportRow(
                mark_id=mark_id,
                kind=Kind.NONE,
                predicted=_optional(predicted),
                antecedent=None,
                gold=gold,
                stage=_optional(stage),
                status=Status(status),
                false_positive=fp == "fp",
            )
        )
    return list(reports.values())
