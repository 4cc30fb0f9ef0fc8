"""Smatch alignment over graph triples, and the fine-grained decomposition.

A graph becomes three triple families: instance (node type), surface
(lower-cased trigger text), and relation triples in the stored head-first
orientation. Alignment is a partial injective node map maximizing matched
triples, searched by restarted hill climbing (see kernel backends).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from ..model import (CORE_ROLES, REENTRANT_ROLES, PegGraph, reentrant_nodes)
from . import kernel


@dataclass(frozen=True)
class TripleSet:
    nodes: tuple[str, ...]
    instance: dict[str, str]
    surface: dict[str, str]
    relations: tuple[tuple[str, str, str], ...]

    @property
    def size(self) -> int:
        return len(self.instance) + len(self.surface) + len(self.relations)


def graph_triples(g: PegGraph) -> TripleSet:
    nodes = tuple(sorted((n.id for n in g.nodes),
                         key=lambda nid: g.mention_of(nid).start))
    return TripleSet(
        nodes=nodes,
        instance={n.id: n.grounding.value for n in g.nodes},
        surface={n.id: g.mention_of(n.id).surface.lower() for n in g.nodes},
        relations=tuple((e.source, e.role.value, e.target) for e in g.edges),
    )


def argument_triples(g: PegGraph) -> TripleSet:
    full = graph_triples(g)
    keep = {n.id for n in g.arguments}
    return _restrict_nodes(full, keep, with_surface=True, relations=())


def predicate_triples(g: PegGraph) -> TripleSet:
    full = graph_triples(g)
    keep = {n.id for n in g.operations}
    return _restrict_nodes(full, keep, with_surface=True, relations=())


def core_role_triples(g: PegGraph) -> TripleSet:
    full = graph_triples(g)
    rels = tuple(r for r in full.relations if r[1] in {x.value for x in CORE_ROLES})
    keep = {r[0] for r in rels} | {r[2] for r in rels}
    return _restrict_nodes(full, keep, with_surface=False, relations=rels)


def reentrancy_triples(g: PegGraph) -> TripleSet:
    """Subgraph of reentrant argument nodes and their core/site edges."""
    full = graph_triples(g)
    reentrant = reentrant_nodes(g)
    roles = {x.value for x in REENTRANT_ROLES}
    rels = tuple(r for r in full.relations if r[1] in roles and r[2] in reentrant)
    keep = {r[0] for r in rels} | {r[2] for r in rels}
    return _restrict_nodes(full, keep, with_surface=False, relations=rels)


def _restrict_nodes(full: TripleSet, keep: set, with_surface: bool, relations) -> TripleSet:
    return TripleSet(
        nodes=tuple(n for n in full.nodes if n in keep),
        instance={n: t for n, t in full.instance.items() if n in keep},
        surface={n: s for n, s in full.surface.items() if n in keep} if with_surface else {},
        relations=tuple(relations),
    )


class Alignment(NamedTuple):
    mapping: dict  # gold node id -> pred node id (partial, injective)
    matched: int


class PRF(NamedTuple):
    precision: float
    recall: float
    f1: float


def _prf(matched: int, gold_total: int, pred_total: int) -> PRF:
    if gold_total == 0 and pred_total == 0:
        return PRF(1.0, 1.0, 1.0)
    p = matched / pred_total if pred_total else 0.0
    r = matched / gold_total if gold_total else 0.0
    f1 = 2 * p * r / (p + r) if p + r else 0.0
    return PRF(p, r, f1)


#: largest injection count solved exactly; beyond this, hill climbing
EXACT_LIMIT = 50_000


def _injection_count(n_small: int, n_big: int) -> int:
    total = 1
    for k in range(n_small):
        total *= n_big - k
        if total > EXACT_LIMIT:
            break
    return total


def align(gold: TripleSet, pred: TripleSet, restarts: int = 4, seed: int = 0) -> Alignment:
    """Best alignment: exact enumeration when the injection space is small
    (guaranteed optimal), else seeded + random-restart hill climbing.

    For the climbing path the first restart seeds exact (type, surface)
    matches in node order; the rest start from random injective maps drawn
    from one seeded RNG.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n_gold, n_pred = len(gold.nodes), len(pred.nodes)
    if n_gold == 0 or n_pred == 0:
        return Alignment({}, 0)
    gidx = {n: i for i, n in enumerate(gold.nodes)}
    pidx = {n: i for i, n in enumerate(pred.nodes)}
    roles = sorted({r for _, r, _ in gold.relations} | {r for _, r, _ in pred.relations})
    ridx = {r: i for i, r in enumerate(roles)}
    n_roles = max(len(roles), 1)

    pair_score = [
        [
            (gold.instance.get(u) is not None and gold.instance.get(u) == pred.instance.get(v))
            + (gold.surface.get(u) is not None and gold.surface.get(u) == pred.surface.get(v))
            for v in pred.nodes
        ]
        for u in gold.nodes
    ]
    rel_u = [gidx[u] for u, _, _ in gold.relations]
    rel_r = [ridx[r] for _, r, _ in gold.relations]
    rel_v = [gidx[v] for _, _, v in gold.relations]
    pred_rel = {
        (pidx[u] * n_roles + ridx[r]) * n_pred + pidx[v]
        for u, r, v in pred.relations
    }

    if _injection_count(min(n_gold, n_pred), max(n_gold, n_pred)) <= EXACT_LIMIT:
        mapping, score = kernel.exhaustive(pair_score, rel_u, rel_r, rel_v,
                                           pred_rel, n_roles, n_pred)
        return Alignment(
            {gold.nodes[i]: pred.nodes[j] for i, j in enumerate(mapping) if j >= 0},
            score,
        )

    rng = random.Random(seed)
    best_map: list[int] = []
    best_score = -1
    for restart in range(restarts):
        if restart == 0:
            start = [-1] * n_gold
            taken = [False] * n_pred
            for i, u in enumerate(gold.nodes):
                for j, v in enumerate(pred.nodes):
                    if (not taken[j]
                            and gold.instance.get(u) == pred.instance.get(v)
                            and gold.surface.get(u) == pred.surface.get(v)):
                        start[i] = j
                        taken[j] = True
                        break
        else:
            perm = list(range(n_pred))
            rng.shuffle(perm)
            start = [perm[i] if i < n_pred else -1 for i in range(n_gold)]
        mapping, score = kernel.climb(start, pair_score, rel_u, rel_r, rel_v,
                                      pred_rel, n_roles, n_pred)
        if score > best_score:
            best_score = score
            best_map = mapping
    return Alignment(
        {gold.nodes[i]: pred.nodes[j] for i, j in enumerate(best_map) if j >= 0},
        best_score,
    )


class SmatchResult(NamedTuple):
    precision: float
    recall: float
    f1: float
    alignment: Alignment


def _score(gold: TripleSet, pred: TripleSet, restarts: int, seed: int) -> SmatchResult:
    alignment = align(gold, pred, restarts=restarts, seed=seed)
    prf = _prf(alignment.matched, gold.size, pred.size)
    return SmatchResult(prf.precision, prf.recall, prf.f1, alignment)


def smatch(gold: PegGraph, pred: PegGraph, restarts: int = 4, seed: int = 0) -> SmatchResult:
    """Whole-graph Smatch: P = M/|pred triples|, R = M/|gold triples|."""
    return _score(graph_triples(gold), graph_triples(pred), restarts, seed)


@dataclass(frozen=True)
class ScoreReport:
    """Smatch plus the four decomposed agreement metrics."""

    metrics: dict  # name -> PRF, in report row order

    ROWS = ("smatch", "argument identification", "predicate identification",
            "core roles", "reentrancies")

    def to_dict(self) -> dict:
        return {
            name: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
            for name, m in self.metrics.items()
        }


def decompose(gold: PegGraph, pred: PegGraph, restarts: int = 4, seed: int = 0) -> ScoreReport:
    parts = {
        "smatch": (graph_triples(gold), graph_triples(pred)),
        "argument identification": (argument_triples(gold), argument_triples(pred)),
        "predicate identification": (predicate_triples(gold), predicate_triples(pred)),
        "core roles": (core_role_triples(gold), core_role_triples(pred)),
        "reentrancies": (reentrancy_triples(gold), reentrancy_triples(pred)),
    }
    metrics = {}
    for name, (g_ts, p_ts) in parts.items():
        result = _score(g_ts, p_ts, restarts, seed)
        metrics[name] = PRF(result.precision, result.recall, result.f1)
    return ScoreReport(metrics)
