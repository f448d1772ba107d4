import dataclasses
import random

from hypothesis import given, settings, strategies as st

from centerline.model import (
    Clause,
    ClauseKind,
    Document,
    Kind,
    Markable,
    Resolution,
    ResolutionState,
    Role,
    Sentence,
    context_bound,
    validate_document,
)
from centerline.resolution import ResolutionConfig, Strategy, resolve_document

from docgen import random_document


def _doc(*sentences, entities=("e1", "e2")):
    return Document("d", tuple(sentences), {e: None for e in entities})


def _mark(mid, cl, pos, ent="e1", kind=Kind.NONE):
    return Markable(mid, cl, pos, "x", ent, None, Role.OTHER, kind)


def test_well_formed_document_has_no_violations(worked):
    assert validate_document(worked) == []


def test_two_sentence_document_is_valid():
    doc = _doc(
        Sentence("s1", (Clause("c1", ClauseKind.MATRIX, 0, (_mark("m1", "c1", 0),)),)),
        Sentence("s2", (Clause("c2", ClauseKind.MAIN, 0, (_mark("m2", "c2", 0, "e2"),)),)),
    )
    assert validate_document(doc) == []


def test_mixed_main_and_subordinate_is_one_violation():
    doc = _doc(
        Sentence(
            "s1",
            (
                Clause("c1", ClauseKind.MAIN, 0),
                Clause("c2", ClauseKind.SUBORDINATE, 1),
            ),
        )
    )
    problems = validate_document(doc)
    assert len(problems) == 1
    assert "'s1'" in problems[0]


def test_undeclared_entity_is_reported():
    doc = _doc(
        Sentence("s1", (Clause("c1", ClauseKind.MATRIX, 0, (_mark("m1", "c1", 0, "e9"),)),))
    )
    problems = validate_document(doc)
    assert len(problems) == 1
    assert "e9" in problems[0]


def test_other_invariants():
    doc = _doc(
        Sentence(
            "s1",
            (
                Clause("c1", ClauseKind.MATRIX, 0, (_mark("m1", "c1", 0), _mark("m2", "c1", 0))),
                Clause("c2", ClauseKind.MATRIX, 2),
            ),
        ),
        Sentence("s1", ()),
    )
    text = "\n".join(validate_document(doc))
    assert "pos 0 duplicated" in text
    assert "not consecutive" in text
    assert "2 matrix clauses" in text
    assert "has no clauses" in text
    assert "already used" in text


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_validate_is_pure(seed):
    doc = random_document(random.Random(seed), odd=True)
    assert validate_document(doc) == validate_document(doc)


def test_context_bound_after_resolution(worked_ctx):
    # "er" is bound once resolved
    state = ResolutionState(worked_ctx)
    er = worked_ctx.markable("m5")
    assert not context_bound(er, state)
    state.resolved["m5"] = Resolution("T3100SX", "m3", "2a")
    assert context_bound(er, state)


def test_first_mention_is_not_bound(worked_ctx):
    state = ResolutionState(worked_ctx)
    first = worked_ctx.markable("m0")
    state.advance(first)
    assert not context_bound(first, state)
    # repeated name in the next sentence is bound
    again = worked_ctx.markable("m2")
    assert context_bound(again, state)


def test_failed_anaphor_is_not_bound():
    doc = _doc(
        Sentence("s1", (Clause("c1", ClauseKind.MATRIX, 0, (_mark("m1", "c1", 0, kind=Kind.PRONOUN),)),))
    )
    report = resolve_document(doc, ResolutionConfig())
    assert report.rows[0].predicted is None
    state = ResolutionState(doc)
    state.unresolved.add("m1")
    state.advance(doc.markable("m1"))
    assert not context_bound(doc.markable("m1"), state)


def _mask(doc, rng):
    """Replace the gold entity of every anaphor with a random one."""
    names = list(doc.entities)
    sentences = []
    for s in doc.sentences:
        clauses = []
        for c in s.clauses:
            marks = tuple(
                dataclasses.replace(m, entity=rng.choice(names)) if m.anaphoric else m
                for m in c.markables
            )
            clauses.append(dataclasses.replace(c, markables=marks))
        sentences.append(dataclasses.replace(s, clauses=tuple(clauses)))
    return Document(doc.id, tuple(sentences), dict(doc.entities))


@settings(max_examples=150)
@given(st.integers(0, 2**32))
def test_context_bound_ignores_anaphor_gold(seed):
    rng = random.Random(seed)
    doc = random_document(rng)
    masked = _mask(doc, rng)
    import centerline.centering as centering
    import centerline.resolution as resolution

    seen = []
    original = centering.context_bound

    def spy(mark, state):
        value = original(mark, state)
        seen.append((mark.id, value))
        return value

    for d in (doc, masked):
        seen.clear()
        centering.context_bound = resolution.context_bound = spy
        try:
            resolve_document(d, ResolutionConfig(strategy=Strategy.FUNCTIONAL))
        finally:
            centering.context_bound = resolution.context_bound = original
        if d is doc:
            first = list(seen)
    assert first == seen
