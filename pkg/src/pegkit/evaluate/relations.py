"""Span-exact relation scoring: per-role P/R/F1, core/non-core aggregates,
temporal ordering, and the intra/inter-sentence split (with co-reference
closure applied when deciding locality)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..model import CORE_ROLES, Edge, PegGraph, node_sentence_sets
from .smatch import PRF, _prf

#: report row order for individual roles
ROLE_ROWS = ("ARG0", "ARG1", "ARG2", "site", "setting", "usage", "co-ref",
             "measure", "modifier", "located-at", "part-of")


class RoleScore(NamedTuple):
    gold_count: int
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class RelationReport:
    roles: dict  # role label -> RoleScore
    core: RoleScore
    non_core: RoleScore
    temporal: RoleScore
    intra: RoleScore  # core roles triggered within one sentence (coref-closed)
    inter: RoleScore

    def to_dict(self) -> dict:
        def row(s: RoleScore) -> dict:
            return {"gold": s.gold_count, "precision": s.precision,
                    "recall": s.recall, "f1": s.f1}
        return {
            "roles": {r: row(s) for r, s in self.roles.items()},
            "core": row(self.core),
            "non_core": row(self.non_core),
            "temporal_ordering": row(self.temporal),
            "intra_sentence": row(self.intra),
            "inter_sentence": row(self.inter),
        }


def _edge_key(g: PegGraph, e: Edge) -> tuple:
    head = g.mention_of(e.source)
    dep = g.mention_of(e.target)
    return (e.role.value, head.start, head.end, dep.start, dep.end)


def _is_intra(g: PegGraph, e: Edge, sentences: dict) -> bool:
    return bool(sentences[e.source] & sentences[e.target])


def _counted_prf(gold_keys: list, pred_keys: list) -> RoleScore:
    gold_bag: dict = {}
    for k in gold_keys:
        gold_bag[k] = gold_bag.get(k, 0) + 1
    tp = 0
    for k in pred_keys:
        if gold_bag.get(k, 0) > 0:
            gold_bag[k] -= 1
            tp += 1
    prf = _prf(tp, len(gold_keys), len(pred_keys))
    return RoleScore(len(gold_keys), prf.precision, prf.recall, prf.f1)


def relation_prf(gold: PegGraph, pred: PegGraph) -> RelationReport:
    """A predicted edge is a true positive iff its role matches and both
    endpoint mention spans match a gold edge exactly."""
    if gold.document.id != pred.document.id:
        raise ValueError(
            f"mismatched documents: {gold.document.id} vs {pred.document.id}")

    gold_keys = [_edge_key(gold, e) for e in gold.edges]
    pred_keys = [_edge_key(pred, e) for e in pred.edges]

    def select(keys, predicate):
        return [k for k in keys if predicate(k[0])]

    roles = {}
    for role in ROLE_ROWS:
        roles[role] = _counted_prf(select(gold_keys, lambda r: r == role),
                                   select(pred_keys, lambda r: r == role))
    core_labels = {r.value for r in CORE_ROLES}
    non_core_labels = set(ROLE_ROWS) - core_labels
    core = _counted_prf(select(gold_keys, core_labels.__contains__),
                        select(pred_keys, core_labels.__contains__))
    non_core = _counted_prf(select(gold_keys, non_core_labels.__contains__),
                            select(pred_keys, non_core_labels.__contains__))
    temporal = _counted_prf(select(gold_keys, lambda r: r == "succ"),
                            select(pred_keys, lambda r: r == "succ"))

    gold_sent = node_sentence_sets(gold)
    pred_sent = node_sentence_sets(pred)
    split = {"intra": ([], []), "inter": ([], [])}
    for g, sent, slot in ((gold, gold_sent, 0), (pred, pred_sent, 1)):
        for e in g.edges:
            if e.role in CORE_ROLES:
                where = "intra" if _is_intra(g, e, sent) else "inter"
                split[where][slot].append(_edge_key(g, e))
    intra = _counted_prf(*split["intra"])
    inter = _counted_prf(*split["inter"])
    return RelationReport(roles, core, non_core, temporal, intra, inter)
