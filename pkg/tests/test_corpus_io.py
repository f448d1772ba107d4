import random

import pytest
from hypothesis import given, settings, strategies as st

from centerline.corpus_io import (
    ParseError,
    format_report,
    has_errors,
    load_document,
    parse_document,
    parse_report,
    quote,
    serialize_document,
)
from centerline.model import Document, validate_document
from centerline.resolution import ResolutionConfig, resolve_document

from conftest import data_path
from docgen import random_document


def test_worked_example_parses(worked):
    with open(data_path("worked_example.ctr"), encoding="utf-8") as f:
        doc, diags = parse_document(f.read())
    assert not has_errors(diags)
    assert len(doc.sentences) == 2
    assert sum(len(s.clauses) for s in doc.sentences) == 4
    assert len(list(doc.markables())) == 6
    assert doc.sentences[0].raw_text.startswith("Ist der Resume-Modus aktiviert")


def test_empty_input():
    doc, diags = parse_document("")
    assert [d.message for d in diags] == ["missing DOC header"]


def test_dangling_clause_reference():
    text = "DOC d\nENT e sem=-\nM m1 cl=c9 pos=0 surf=\"a\" ent=e agr=- role=subj kind=none\n"
    _, diags = parse_document(text)
    assert has_errors(diags)
    assert diags[0].line == 3
    assert "c9" in diags[0].message


@pytest.mark.parametrize(
    "line, fragment",
    [
        ('M m1 cl=c1 pos=x surf="a" ent=e agr=- role=subj kind=none', "non-integer pos"),
        ("M m1 cl=c1 pos=0 surf=a ent=e agr=- role=subj kind=none", "quoted"),
        ('M m1 cl=c1 pos=0 surf="a ent=e agr=- role=subj kind=none', "unterminated"),
        ('M m1 cl=c1 pos=0 surf="a\\n" ent=e agr=- role=subj kind=none', "invalid escape"),
        ('M m1 cl=c1 pos=0 surf="a" ent=e agr=- role=boss kind=none', "boss"),
        ('M m1 cl=c1 pos=0 surf="a" ent=e agr=- role=subj', "missing field"),
        ('M s1 cl=c1 pos=0 surf="a" ent=e agr=- role=subj kind=none', "duplicate id"),
        ("CL c2 kind=weird pos=1", "bad kind"),
        ('M m1 cl=c1 pos=0 surf="a" ent=zz agr=- role=subj kind=none', "zz"),
    ],
)
def test_malformed_lines(line, fragment):
    text = "DOC d\nENT e sem=-\nSENT s1\nCL c1 kind=matrix pos=0\n" + line + "\n"
    _, diags = parse_document(text)
    errors = [d for d in diags if d.severity == "error"]
    assert errors, diags
    assert any(fragment in d.message for d in errors), errors
    assert all(d.line >= 1 for d in diags)


def test_unknown_key_is_a_warning():
    text = "DOC d\nENT e sem=- colour=red\n"
    doc, diags = parse_document(text)
    assert not has_errors(diags)
    assert diags[0].severity == "warning"
    assert doc.entities == {"e": None}


def test_duplicates():
    _, diags = parse_document("DOC d\nDOC e\nENT a\nENT a\n")
    messages = [d.message for d in diags]
    assert "duplicate DOC header" in messages
    assert "duplicate entity id 'a'" in messages


def test_comments_and_blank_lines():
    doc, diags = parse_document("# format=1\n\n   \nDOC d\n# note\n")
    assert diags == []
    assert doc == Document("d", (), {})


def test_load_document_raises(tmp_path):
    path = tmp_path / "bad.ctr"
    path.write_text("ENT e\n")
    with pytest.raises(ParseError):
        load_document(path)


@pytest.mark.parametrize(
    "name", ["worked_example.ctr", "worked_example_context.ctr", "false_positive.ctr", "synthetic.ctr"]
)
def test_bundled_round_trip(name):
    doc = load_document(data_path(name))
    again, diags = parse_document(serialize_document(doc))
    assert diags == []
    assert again == doc


def test_empty_body_serialization():
    doc = Document("d", (), {"e1": "X", "e2": None})
    assert serialize_document(doc) == "# format=1\nDOC d\nENT e1 sem=X\nENT e2 sem=-\n"


@pytest.mark.parametrize("surface", ['a "quoted" b', "back\\slash", '\\"', '"', "\\"])
def test_escapes_round_trip(surface):
    assert parse_document(
        "DOC d\nENT e\nSENT s\nCL c kind=matrix pos=0\n"
        f"M m cl=c pos=0 surf={quote(surface)} ent=e agr=- role=subj kind=none\n"
    )[0].markable("m").surface == surface


def test_canonical_line_order(worked):
    lines = serialize_document(worked).splitlines()
    assert lines[0] == "# format=1"
    heads = [line.split()[0] for line in lines[1:]]
    assert heads == ["DOC"] + ["ENT"] * 4 + (["SENT"] + ["CL"] * 2) + ["M"] * 2 + (
        ["SENT"] + ["CL"] * 2
    ) + ["M"] * 4


@settings(max_examples=300)
@given(st.integers(0, 2**32))
def test_round_trip_generated(seed):
    doc = random_document(random.Random(seed), odd=True)
    assert validate_document(doc) == []
    again, diags = parse_document(serialize_document(doc))
    assert diags == []
    assert again == doc


@settings(max_examples=300)
@given(st.text())
def test_parse_never_raises(text):
    doc, diags = parse_document(text)
    assert isinstance(doc, Document)
    assert all(d.line >= 1 for d in diags)


@settings(max_examples=200)
@given(st.lists(st.sampled_from(
    ["DOC d", "ENT e sem=-", "SENT s", 'SENT t txt="a\\"b"', "CL c kind=matrix pos=0",
     "CL c2 kind=subord pos=1", 'M m cl=c pos=0 surf="x" ent=e agr=- role=subj kind=pron',
     "M", "CL", 'surf="', "ENT", "#", "", "M m2 cl=c2 pos=z"]), max_size=12))
def test_parse_never_raises_on_record_soup(lines):
    parse_document("\n".join(lines))


def test_report_tsv_round_trip(worked_ctx):
    report = resolve_document(worked_ctx, ResolutionConfig())
    text = format_report(report)
    assert text.splitlines()[0].startswith("#doc_id\tmark_id")
    assert text.splitlines()[1].split("\t") == [
        "t3100sx-context", "m3", "functional", "T3100SX", "T3100SX", "step1", "correct", "-"
    ]
    (back,) = parse_report(text)
    assert [(r.mark_id, r.predicted, r.stage, r.status) for r in back.rows] == [
        (r.mark_id, r.predicted, r.stage, r.status) for r in report.rows
    ]
