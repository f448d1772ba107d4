"""Forward- and backward-looking centers under functional ranking.

The ranking is the two-way split between context-bound and unbound
elements; ties inside each class are broken by surface position.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from centerline.model import (
    EntityId,
    Markable,
    ResolutionState,
    Utterance,
    context_bound,
)

CfList = List[Tuple[EntityId, Markable]]


def compute_cf(u: Utterance, state: ResolutionState) -> CfList:
    """Rank the matrix-clause elements of ``u``.

    Anaphors contribute the entity the state assigned them (a fresh
    singleton when unresolved).  Each entity appears once, at its best rank.
    """
    bound, unbound = [], []
    for mark in sorted(u.matrix.markables, key=lambda m: m.pos):
        entity = state.entity_of(mark)
        if entity is None:
            raise ValueError(f"anaphor {mark.id!r} has not been processed")
        (bound if context_bound(mark, state) else unbound).append((entity, mark))
    cf: CfList = []
    seen = set()
    for entity, mark in bound + unbound:
        if entity not in seen:
            seen.add(entity)
            cf.append((entity, mark))
    return cf


def compute_cb(
    prev_cf: Sequence[Tuple[EntityId, Markable]],
    u: Utterance,
    state: ResolutionState,
) -> Optional[Tuple[EntityId, Markable]]:
    """Highest-ranked element of ``prev_cf`` realized in ``u``.

    The realizing markable is taken from the matrix clause when possible,
    otherwise it is the earliest realization.
    """
    realizations = {}
    for mark in u.markables():
        entity = state.entity_of(mark)
        if entity is None:
            continue
        found = realizations.get(entity)
        in_matrix = mark.clause == u.matrix.id
        if found is None or (in_matrix and found.clause != u.matrix.id):
            realizations[entity] = mark
    for entity, _ in prev_cf:
        if entity in realizations:
            return entity, realizations[entity]
    return None
