"""Sentence classification and utterance segmentation."""

from __future__ import annotations

import enum
from typing import List

from centerline.model import ClauseKind, Document, Sentence, Utterance


class SentenceClass(enum.Enum):
    SIMPLE = "simple"
    COMPLEX = "complex"
    COMPOUND = "compound"


class SegmentationError(ValueError):
    pass


def classify_sentence(sentence: Sentence) -> SentenceClass:
    kinds = [c.kind for c in sentence.clauses]
    if not kinds:
        raise SegmentationError(f"sentence {sentence.id!r} has no clauses")
    n_main = kinds.count(ClauseKind.MAIN)
    n_matrix = kinds.count(ClauseKind.MATRIX)
    n_sub = kinds.count(ClauseKind.SUBORDINATE)
    if n_main and (n_matrix or n_sub):
        raise SegmentationError(
            f"sentence {sentence.id!r} mixes main and matrix/subordinate clauses"
        )
    if len(kinds) == 1:
        if n_sub:
            raise SegmentationError(
                f"sentence {sentence.id!r} consists of a lone subordinate clause"
            )
        return SentenceClass.SIMPLE
    if n_main:
        return SentenceClass.COMPOUND
    if n_matrix != 1:
        raise SegmentationError(
            f"sentence {sentence.id!r} needs exactly one matrix clause, "
            f"found {n_matrix}"
        )
    return SentenceClass.COMPLEX


def segment(doc: Document) -> List[Utterance]:
    """Build the utterance sequence.

    Simple and complex sentences are one utterance each; every main clause
    of a compound sentence is an utterance of its own.
    """
    utterances: List[Utterance] = []
    for sentence in doc.sentences:
        cls = classify_sentence(sentence)
        if cls is SentenceClass.COMPOUND:
            for clause in sentence.clauses:
                utterances.append(
                    Utterance(len(utterances), (clause,), clause, sentence.id)
                )
            continue
        if cls is SentenceClass.SIMPLE:
            matrix = sentence.clauses[0]
        else:
            matrix = next(c for c in sentence.clauses if c.kind is ClauseKind.MATRIX)
        utterances.append(
            Utterance(len(utterances), tuple(sentence.clauses), matrix, sentence.id)
        )
    return utterances


def clause_segmentation_linear(doc: Document) -> List[Utterance]:
    """One utterance per clause, in surface order (clause-at-a-time processing)."""
    utterances: List[Utterance] = []
    for sentence in doc.sentences:
        for clause in sentence.clauses:
            utterances.append(
                Utterance(len(utterances), (clause,), clause, sentence.id)
            )
    return utterances
