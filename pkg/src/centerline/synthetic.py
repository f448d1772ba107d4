"""Seeded generators for synthetic annotated corpora.

Two kinds of corpora are produced:

* :func:`strategy_corpus` strings together short *episodes*, each built
  around one anaphor whose configuration favours or defeats particular
  proposal strategies.  Every episode introduces fresh entities, so episodes
  do not interact and the per-strategy outcome of each one is fixed by its
  pattern; the seed only changes the vocabulary and the episode order.
* :func:`distribution_corpus` builds a document with a prescribed number of
  text-level and sentence-level anaphors, a prescribed split of
  intra-sentential antecedents (bound/unbound, subject/non-subject) and a
  prescribed word count.

Run ``python -m centerline.synthetic OUT.ctr`` to regenerate the bundled
strategy corpus.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from centerline.model import (
    Clause,
    ClauseKind,
    Document,
    Kind,
    Markable,
    Role,
    Sentence,
)

# noun, agreement, semantic class
LEXICON = {
    "masc-sg": [
        ("Rechner", "COMPUTER"), ("Drucker", "DEVICE"), ("Monitor", "DEVICE"),
        ("Server", "COMPUTER"), ("Akku", "PART"), ("Prozessor", "PART"),
        ("Scanner", "DEVICE"), ("Lüfter", "PART"),
    ],
    "fem-sg": [
        ("Festplatte", "PART"), ("Tastatur", "DEVICE"), ("Maus", "DEVICE"),
        ("Platine", "PART"), ("Batterie", "PART"), ("Workstation", "COMPUTER"),
        ("Kamera", "DEVICE"),
    ],
    "neut-sg": [
        ("Netzteil", "PART"), ("Gehäuse", "PART"), ("Laufwerk", "DEVICE"),
        ("Display", "DEVICE"), ("Notebook", "COMPUTER"), ("Modem", "DEVICE"),
    ],
}
PRONOUN = {"masc-sg": "er", "fem-sg": "sie", "neut-sg": "es"}
VERBS = ["läuft", "startet", "meldet", "arbeitet", "wartet", "hält", "zeigt", "prüft"]
FILLER = ["dann", "sofort", "wieder", "im", "Betrieb", "danach", "kurz", "noch"]


@dataclass(frozen=True)
class Spec:
    """Markable template inside a pattern: ``key`` names a local entity."""

    key: str
    noun: str = ""  # lexicon slot; "" means a pronoun
    kind: Kind = Kind.NONE
    role: Role = Role.SUBJECT
    sem: bool = False  # copy the entity's semantic class onto the markable


# A pattern is a list of sentences; a sentence a list of (clause kind, specs).
Pattern = List[List[Tuple[ClauseKind, List[Spec]]]]

M, S = ClauseKind.MATRIX, ClauseKind.SUBORDINATE
PRON = Kind.PRONOUN

PATTERNS: Dict[str, Pattern] = {
    # bound antecedent two clauses back, unbound distractor in between,
    # a different entity with the same surface tops the previous centers
    "bound_intra_diverted": [
        [(M, [Spec("A", "n1")])],
        [(M, [Spec("B", "n1")])],
        [(S, [Spec("A", "n1")]), (S, [Spec("D", "n2")]), (M, [Spec("A", kind=PRON)])],
    ],
    "bound_intra": [
        [(M, [Spec("A", "n1")])],
        [(M, [Spec("B", "n1")])],
        [(S, [Spec("A", "n1")]), (M, [Spec("A", kind=PRON)])],
    ],
    # inter-sentential antecedent, new compatible entity inside the sentence
    "inter_with_intra_distractor": [
        [(M, [Spec("A", "n1")])],
        [(S, [Spec("D", "n2")]), (M, [Spec("A", kind=PRON)])],
    ],
    # intra-sentential antecedent that is not context-bound
    "unbound_intra": [
        [(M, [Spec("A", "n1")])],
        [(S, [Spec("D", "n2")]), (M, [Spec("D", kind=PRON)])],
    ],
    # the previous sentence ends in a subordinate clause with a distractor
    "trailing_subordinate": [
        [(M, [Spec("A", "n1")]), (S, [Spec("D", "n2")])],
        [(M, [Spec("A", kind=PRON)])],
    ],
    "continuation": [
        [(M, [Spec("A", "n1"), Spec("Z", "x1", role=Role.OTHER)])],
        [(M, [Spec("A", kind=PRON)])],
    ],
    "nominal": [
        [(M, [Spec("A", "n1")])],
        [(S, [Spec("A", "n1", kind=Kind.NOMINAL, role=Role.OTHER, sem=True)]),
         (M, [Spec("Z", "x1")])],
    ],
    # the antecedent is ranked below a compatible entity of another type
    "lower_ranked": [
        [(M, [Spec("D", "n2"), Spec("A", "n1", role=Role.OTHER)])],
        [(M, [Spec("A", kind=PRON, sem=True)])],
    ],
}
# unhandled kinds, one pattern each
for _kind in (Kind.PREPOSITIONAL, Kind.PLURAL, Kind.SET_MEMBER,
              Kind.SENTENCE_ANAPHOR, Kind.GLOBAL_FOCUS):
    PATTERNS[f"unhandled_{_kind.value}"] = [
        [(M, [Spec("A", "n1")])],
        [(M, [Spec("A", "n1", kind=_kind, role=Role.OTHER)])],
    ]

DEFAULT_RECIPE: Dict[str, int] = {
    "continuation": 20,
    "nominal": 11,
    "bound_intra": 5,
    "inter_with_intra_distractor": 3,
    "bound_intra_diverted": 1,
    "unbound_intra": 1,
    "trailing_subordinate": 1,
    "lower_ranked": 2,
    "unhandled_prep": 2,
    "unhandled_plural": 1,
    "unhandled_setmem": 1,
    "unhandled_sent": 1,
    "unhandled_global": 1,
}
DEFAULT_SEED = 1996


class _Writer:
    """Allocates ids and accumulates sentences and entities."""

    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        self.sentences: List[Sentence] = []
        self.entities: Dict[str, Optional[str]] = {}
        self.n_marks = 0
        self.n_ents = 0

    def entity(self, sem: Optional[str]) -> str:
        self.n_ents += 1
        ident = f"e{self.n_ents}"
        self.entities[ident] = sem
        return ident

    def sentence(self, clauses: Sequence[Tuple[ClauseKind, Sequence[tuple]]], text: str):
        """``clauses`` hold (surface, entity, agr, role, kind, sem) tuples."""
        sid = f"s{len(self.sentences) + 1}"
        built = []
        for cpos, (ckind, marks) in enumerate(clauses):
            cid = f"{sid}c{cpos + 1}"
            items = []
            for mpos, (surface, entity, agr, role, kind, sem) in enumerate(marks):
                self.n_marks += 1
                items.append(
                    Markable(f"m{self.n_marks}", cid, mpos, surface, entity,
                             agr, role, kind, sem)
                )
            built.append(Clause(cid, ckind, cpos, tuple(items)))
        self.sentences.append(Sentence(sid, tuple(built), text))

    def document(self) -> Document:
        return Document(self.doc_id, tuple(self.sentences), dict(self.entities))


def _render(rng: random.Random, clauses) -> str:
    words = []
    for _, marks in clauses:
        for surface, *_ in marks:
            words.append(surface)
        words.append(rng.choice(VERBS))
    return " ".join(words) + "."


def _emit_pattern(w: _Writer, rng: random.Random, pattern: Pattern) -> None:
    agr = rng.choice(sorted(LEXICON))
    other_agr = rng.choice([a for a in sorted(LEXICON) if a != agr])
    n1, n2 = rng.sample(LEXICON[agr], 2)
    if n1[1] == n2[1]:
        # keep the two same-agreement nouns semantically distinct
        choices = [n for n in LEXICON[agr] if n[1] != n1[1]]
        n2 = rng.choice(choices)
    slots = {"n1": (n1, agr), "n2": (n2, agr), "x1": (rng.choice(LEXICON[other_agr]), other_agr)}
    ents: Dict[str, str] = {}
    ent_sem: Dict[str, str] = {}
    ent_agr: Dict[str, str] = {}
    for sentence in pattern:
        for _, specs in sentence:
            for spec in specs:
                if spec.key not in ents and spec.noun:
                    (noun, sem), a = slots[spec.noun]
                    ents[spec.key] = w.entity(sem)
                    ent_sem[spec.key] = sem
                    ent_agr[spec.key] = a
    for sentence in pattern:
        clauses = []
        for ckind, specs in sentence:
            marks = []
            for spec in specs:
                a = ent_agr[spec.key]
                if spec.noun:
                    surface = slots[spec.noun][0][0]
                else:
                    surface = PRONOUN[a]
                sem = ent_sem[spec.key] if spec.sem else None
                marks.append((surface, ents[spec.key], a, spec.role, spec.kind, sem))
            clauses.append((ckind, marks))
        w.sentence(clauses, _render(rng, clauses))


def strategy_corpus(
    seed: int = DEFAULT_SEED,
    recipe: Optional[Dict[str, int]] = None,
    doc_id: str = "synthetic",
) -> Document:
    recipe = DEFAULT_RECIPE if recipe is None else recipe
    rng = random.Random(seed)
    episodes = [name for name in sorted(recipe) for _ in range(recipe[name])]
    rng.shuffle(episodes)
    w = _Writer(doc_id)
    for name in episodes:
        _emit_pattern(w, rng, PATTERNS[name])
    return w.document()


def distribution_corpus(
    doc_id: str,
    text_level: int,
    sentence_level: int,
    bound: int,
    subject: int,
    words: int = 0,
    seed: int = DEFAULT_SEED,
    chain: int = 4,
) -> Document:
    """Build a document with exactly the requested anaphor distribution.

    ``bound`` and ``subject`` count intra-sentential anaphors whose gold
    antecedent is context-bound, respectively a subject.  Words are padded
    up to ``words`` when that is larger than the natural text length.
    """
    if not (0 <= bound <= sentence_level and 0 <= subject <= sentence_level):
        raise ValueError("bound and subject must lie within [0, sentence_level]")
    rng = random.Random(seed)
    w = _Writer(doc_id)

    def noun():
        agr = rng.choice(sorted(LEXICON))
        (n, sem) = rng.choice(LEXICON[agr])
        return n, sem, agr

    def simple(entity, surface, agr, kind=Kind.NONE, role=Role.SUBJECT):
        clauses = [(M, [(surface, entity, agr, role, kind, None)])]
        w.sentence(clauses, _render(rng, clauses))

    jobs = []
    for i in range(sentence_level):
        jobs.append(("intra", i < bound, i < subject))
    remaining = text_level
    while remaining:
        size = min(chain, remaining)
        jobs.append(("chain", size, None))
        remaining -= size
    rng.shuffle(jobs)

    text_kinds = [Kind.PRONOUN] * 6 + [Kind.NOMINAL] * 3 + [Kind.PREPOSITIONAL]
    for job, a, b in jobs:
        n, sem, agr = noun()
        entity = w.entity(sem)
        if job == "chain":
            simple(entity, n, agr)
            for _ in range(a):
                kind = rng.choice(text_kinds)
                surface = PRONOUN[agr] if kind is Kind.PRONOUN else n
                simple(entity, surface, agr, kind, Role.SUBJECT)
            continue
        is_bound, is_subject = a, b
        if is_bound:
            simple(entity, n, agr)
        role = Role.SUBJECT if is_subject else Role.OTHER
        clauses = [
            (S, [(n, entity, agr, role, Kind.NONE, None)]),
            (M, [(PRONOUN[agr], entity, agr, Role.SUBJECT, Kind.PRONOUN, None)]),
        ]
        w.sentence(clauses, _render(rng, clauses))

    doc = w.document()
    return _pad_words(doc, words, rng)


def _pad_words(doc: Document, target: int, rng: random.Random) -> Document:
    current = sum(len((s.raw_text or "").split()) for s in doc.sentences)
    missing = target - current
    if missing <= 0 or not doc.sentences:
        return doc
    sentences = list(doc.sentences)
    per, extra = divmod(missing, len(sentences))
    for i, sentence in enumerate(sentences):
        k = per + (1 if i < extra else 0)
        if k:
            pad = " ".join(rng.choice(FILLER) for _ in range(k))
            text = sentence.raw_text[:-1] + " " + pad + "."
            sentences[i] = Sentence(sentence.id, sentence.clauses, text)
    return Document(doc.id, tuple(sentences), dict(doc.entities))


def main(argv=None) -> int:
    from centerline.corpus_io import serialize_document

    argv = sys.argv[1:] if argv is None else argv
    doc = strategy_corpus()
    body = serialize_document(doc).split("\n", 1)[1]
    text = "# format=1\n# generated by centerline.synthetic (seed %d)\n" % DEFAULT_SEED + body
    if argv:
        with open(argv[0], "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
