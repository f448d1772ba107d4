import random

import pytest
from hypothesis import given, settings, strategies as st

from centerline.evaluation import (
    ErrorTaxonomy,
    PrintedCell,
    ScoreRow,
    StatsRow,
    antecedent_typology,
    audit_printed,
    classify_errors,
    corpus_stats,
    detect_false_positive,
    emit_tables,
    format_cell,
    percent,
    score,
    success_table,
    sum_rows,
)
from centerline.model import Document, Status
from centerline.resolution import STRATEGIES, ResolutionConfig, Strategy, resolve_all, resolve_document
from centerline.synthetic import PATTERNS, _Writer, _emit_pattern

from docgen import random_document


@pytest.mark.parametrize(
    "correct, n, text",
    [(237, 308, "76.9"), (461, 563, "81.9"), (424, 563, "75.3"), (1, 3, "33.3"),
     (1, 8, "12.5"), (1, 16, "6.3"), (3, 16, "18.8"), (229, 308, "74.4"), (0, 5, "0.0")],
)
def test_percent_half_up(correct, n, text):
    assert percent(correct, n) == text


def test_format_cell():
    assert format_cell(424, 563) == "424 (75.3%)"
    assert format_cell(0, 0) == "0 (-)"
    assert format_cell(1, 3) == "1 (33.3%)"


def test_score_rate_is_exact():
    row = ScoreRow("IT", 308, {"linear": 237})
    assert row.rate("linear") * 308 == 237
    assert ScoreRow("x", 0, {"linear": 0}).rate("linear") is None


def test_score_counts_unresolved_as_wrong(worked_ctx):
    report = resolve_document(worked_ctx, ResolutionConfig())
    assert score(report, worked_ctx).correct == {"functional": 2}
    report.rows.pop()
    row = score(report, worked_ctx)
    assert (row.n, row.correct["functional"]) == (2, 1)


def test_score_rejects_mismatch(worked, worked_ctx):
    report = resolve_document(worked, ResolutionConfig())
    with pytest.raises(ValueError):
        score(report, worked_ctx)


def test_sum_rows():
    rows = [ScoreRow("a", 3, {"x": 1}), ScoreRow("b", 5, {"x": 4})]
    total = sum_rows(rows)
    assert (total.label, total.n, total.correct) == ("Σ", 8, {"x": 5})


def test_audit_flags_only_inconsistent_cells():
    cells = [
        PrintedCell("IT", "extra>intra", 229, 308, 74.3),
        PrintedCell("M", "linear", 105, 153, 68.8),
        PrintedCell("M", "linear", 105, 153, 68.6),
        PrintedCell("M", "linear", 105, 153, 68.7),
    ]
    flagged = audit_printed(cells)
    assert flagged == [cells[1]]


def test_false_positive_detection(fp_doc):
    pron = fp_doc.markable("m5")
    assert detect_false_positive(pron, "m2", fp_doc)  # other computer, same surface
    assert not detect_false_positive(pron, "m4", fp_doc)  # "Drucker"


def test_false_positive_flag_in_reports(fp_doc):
    reports = resolve_all(fp_doc)
    flags = {s: reports[s].row("m5").false_positive for s in STRATEGIES}
    assert flags == {
        Strategy.LINEAR: False,
        Strategy.INTER_FIRST: True,
        Strategy.INTRA_FIRST: False,
        Strategy.FUNCTIONAL: False,
    }


def test_classify_errors_on_false_positive_fixture(fp_doc):
    taxonomy = classify_errors(resolve_all(fp_doc), fp_doc)
    assert taxonomy["inter_first"] == ErrorTaxonomy(strategy_specific=1, false_positive=1)
    assert taxonomy["linear"] == ErrorTaxonomy(strategy_specific=1)
    assert taxonomy["functional"] == ErrorTaxonomy()
    assert taxonomy["intra_first"] == ErrorTaxonomy()


def _episode(name, seed=0):
    w = _Writer("d")
    _emit_pattern(w, random.Random(seed), PATTERNS[name])
    return w.document()


def test_unhandled_kind_bucket():
    doc = _episode("unhandled_prep")
    taxonomy = classify_errors(resolve_all(doc), doc)
    assert all(t == ErrorTaxonomy(prepositional=1) for t in taxonomy.values())


def test_wrong_everywhere_bucket():
    doc = _episode("lower_ranked")
    taxonomy = classify_errors(resolve_all(doc), doc)
    assert all(t == ErrorTaxonomy(any_strategy_wrong=1) for t in taxonomy.values())


def test_typology_of_worked_example(worked_ctx):
    # "er" -> "Rechners": anaphoric antecedent, not a subject
    assert antecedent_typology(worked_ctx).astuple() == (1, 0, 0, 1)


def test_typology_without_intra_anaphors():
    doc = _episode("continuation")
    assert antecedent_typology(doc).astuple() == (0, 0, 0, 0)


def test_corpus_stats(worked_ctx):
    row = corpus_stats([worked_ctx])
    assert row.astuple()[:3] == (1, 1, 2)
    assert row.words == sum(len(s.raw_text.split()) for s in worked_ctx.sentences)
    assert corpus_stats([]).astuple() == (0, 0, 0, 0)
    assert StatsRow("x", 498, 65).total == 563


def test_emit_tables_formats():
    table = emit_tables(["", "a"], [["row", 1], ["longer", 22]])
    lines = table.splitlines()
    assert lines[0].rstrip() == "         a"
    assert lines[2] == "row      1"
    assert emit_tables(["", "a"], [["row", 1]], fmt="tsv") == "\ta\nrow\t1\n"
    assert "\x1b[1m" in emit_tables(["h"], [["x"]], color=True)
    with pytest.raises(ValueError):
        emit_tables(["h"], [], fmt="xml")


def test_success_table():
    text = success_table([ScoreRow("Σ", 563, {"linear": 424})], ["linear"])
    assert "424 (75.3%)" in text


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@settings(max_examples=100)
@given(st.integers(0, 2**32), st.sampled_from(STRATEGIES))
def test_score_invariant_under_row_order(seed, strategy):
    rng = random.Random(seed)
    doc = random_document(rng)
    report = resolve_document(doc, ResolutionConfig(strategy=strategy))
    before = score(report, doc)
    rng.shuffle(report.rows)
    assert score(report, doc) == before


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_counts_partition(seed):
    doc = random_document(random.Random(seed))
    reports = resolve_all(doc)
    taxonomy = classify_errors(reports, doc)
    n = len(doc.anaphors())
    for strategy, report in reports.items():
        counts = report.counts()
        assert sum(counts.values()) == n
        wrong = counts[Status.WRONG] + counts[Status.UNRESOLVED]
        tax = taxonomy[strategy.value]
        assert tax.total() == wrong
        assert tax.false_positive <= tax.strategy_specific + tax.any_strategy_wrong
        assert score(report, doc).correct[strategy.value] == counts[Status.CORRECT]


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_typology_totals(seed):
    doc = random_document(random.Random(seed))
    row = antecedent_typology(doc)
    stats = corpus_stats([doc])
    assert row.context_bound + row.not_bound == row.subject + row.not_subject == stats.sentence


@given(st.integers(0, 10**6), st.integers(1, 10**6))
def test_percent_within_half_tenth(correct, n):
    pct = float(percent(correct, n))
    assert abs(pct - 100 * correct / n) <= 0.05 + 1e-9


def test_empty_document_scores():
    doc = Document("d")
    report = resolve_document(doc, ResolutionConfig())
    assert score(report, doc).n == 0
