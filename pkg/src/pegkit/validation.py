"""Whole-graph validation against the ontology, plus the connectivity linter."""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from typing import Optional

from .model import CORE_ROLES, Edge, PegGraph, Role
from .ontology import edge_legal, required_roles


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    locus: str  # node id or "source -role-> target"
    message: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True)
class LintReport:
    component_count: int
    isolated_mentions: tuple[str, ...]
    score: int


def _edge_locus(e: Edge) -> str:
    return f"{e.source} -{e.role.value}-> {e.target}"


def check_edge(g: PegGraph, e: Edge) -> Optional[Diagnostic]:
    """Ontology legality of one stored (head, role, dependent) edge.

    Stored edges are head-first; edge_legal expects the argument-first
    orientation, so role edges are flipped before the check. succ edges
    keep their temporal direction.
    """
    if e.role is Role.SUCC:
        source_t = g.node(e.source).grounding
        target_t = g.node(e.target).grounding
    else:
        source_t = g.node(e.target).grounding  # the dependent
        target_t = g.node(e.source).grounding  # the head
    legal, why = edge_legal(source_t, e.role, target_t)
    if not legal:
        return Diagnostic("error", "illegal-edge", _edge_locus(e), why)
    if why == "relaxed-target":
        return Diagnostic("warning", "relaxed-target", _edge_locus(e),
                          f"{e.role.value} edge targets an operation (relaxed rule)")
    return None


def validate(g: PegGraph) -> list[Diagnostic]:
    """One error per illegal edge and per missing required role; relaxed
    non-core targets surface as warnings. Empty list iff fully valid."""
    diags: list[Diagnostic] = []
    for e in g.edges:
        d = check_edge(g, e)
        if d is not None:
            diags.append(d)
    filled: dict[str, set[str]] = {}
    for e in g.edges:
        if e.role in CORE_ROLES or e.role is Role.SITE:
            filled.setdefault(e.source, set()).add(e.role.value)
    for op in g.operations:
        missing = sorted(required_roles(op.grounding) - filled.get(op.id, set()))
        for role in missing:
            diags.append(Diagnostic(
                "error", "missing-role", op.id,
                f"missing required {role} on {op.grounding.value}",
            ))
    return diags


def lint(g: PegGraph) -> LintReport:
    """Connectivity heuristic: fewer components and no unused mentions is
    better. score = component count + unused/isolated mention count."""
    parent = {n.id: n.id for n in g.nodes}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    degree = {n.id: 0 for n in g.nodes}
    for e in g.edges:
        parent[find(e.source)] = find(e.target)
        degree[e.source] += 1
        degree[e.target] += 1
    components = len({find(n) for n in parent})
    backed = {n.mention: n.id for n in g.nodes}
    isolated = []
    for m in g.document.mentions:
        node_id = backed.get(m.id)
        if node_id is None or degree[node_id] == 0:
            isolated.append(m.id)
    return LintReport(components, tuple(isolated), components + len(isolated))


def semantic_underspecified_ops(g: PegGraph) -> list[str]:
    """Operation nodes with no core-role edge in either direction."""
    with_core: set[str] = set()
    for e in g.edges:
        if e.role in CORE_ROLES:
            with_core.add(e.source)
            with_core.add(e.target)
    return [op.id for op in g.operations if op.id not in with_core]
