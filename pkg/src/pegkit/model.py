"""Core data model: documents, mentions, typed graph nodes/edges.

Edges are stored head-first, as drawn in graph renderings: a core edge
runs from the operation to its argument, ``(swirl, ARG0, culture tubes)``.
Legality checks (see :mod:`pegkit.ontology`) normalize to the
argument-first orientation internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Union

from .ontology import ArgumentType, OperationType


class Role(str, Enum):
    ARG0 = "ARG0"
    ARG1 = "ARG1"
    ARG2 = "ARG2"
    SITE = "site"
    SETTING = "setting"
    USAGE = "usage"
    COREF = "co-ref"
    LOCATED_AT = "located-at"
    MEASURE = "measure"
    MODIFIER = "modifier"
    PART_OF = "part-of"
    SUCC = "succ"


CORE_ROLES = frozenset({Role.ARG0, Role.ARG1, Role.ARG2})
#: roles that can produce reentrancies: an argument filling two operations
REENTRANT_ROLES = frozenset({Role.ARG0, Role.ARG1, Role.ARG2, Role.SITE})
NON_CORE_ROLES = frozenset(
    {Role.SITE, Role.SETTING, Role.USAGE, Role.COREF, Role.LOCATED_AT,
     Role.MEASURE, Role.MODIFIER, Role.PART_OF}
)


class GraphError(ValueError):
    """Raised when a graph or document violates a structural invariant."""


class MentionKind(str, Enum):
    OPERATION = "operation"
    ARGUMENT = "argument"


@dataclass(frozen=True)
class Mention:
    """A text span backing a graph node.

    ``hint`` carries an imported type suggestion (e.g. from WLP labels) and
    is not part of the graph semantics.
    """

    id: str
    start: int
    end: int
    surface: str
    kind: MentionKind
    hint: Optional[str] = None

    def __post_init__(self):
        if self.start >= self.end:
            raise GraphError(f"mention {self.id}: empty or negative span")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    sentences: tuple[tuple[int, int], ...]
    mentions: tuple[Mention, ...]

    def __post_init__(self):
        prev_end = 0
        for start, end in self.sentences:
            if start < prev_end or end > len(self.text) or start >= end:
                raise GraphError(
                    f"document {self.id}: sentence span ({start}, {end}) "
                    "overlaps a previous sentence or leaves the text"
                )
            prev_end = end
        seen = set()
        for m in self.mentions:
            if m.id in seen:
                raise GraphError(f"document {self.id}: duplicate mention id {m.id}")
            seen.add(m.id)
            if self.text[m.start:m.end] != m.surface:
                raise GraphError(
                    f"mention {m.id}: surface {m.surface!r} does not match "
                    f"text slice {self.text[m.start:m.end]!r}"
                )
            if self.sentence_of(m) is None:
                raise GraphError(f"mention {m.id}: span lies outside all sentences")

    def mention(self, mention_id: str) -> Mention:
        for m in self.mentions:
            if m.id == mention_id:
                return m
        raise GraphError(f"document {self.id}: no mention {mention_id}")

    def sentence_of(self, mention: Mention) -> Optional[int]:
        """Index of the sentence containing the mention, or None."""
        for i, (start, end) in enumerate(self.sentences):
            if start <= mention.start and mention.end <= end:
                return i
        return None


Grounding = Union[OperationType, ArgumentType]


@dataclass(frozen=True)
class Node:
    id: str
    mention: str
    grounding: Grounding

    @property
    def is_operation(self) -> bool:
        return isinstance(self.grounding, OperationType)


@dataclass(frozen=True)
class Edge:
    """Directed labeled edge, head-first: (head, role, dependent)."""

    source: str
    role: Role
    target: str


@dataclass(frozen=True)
class PegGraph:
    document: Document
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def node(self, node_id: str) -> Node:
        return self._by_id[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._by_id

    @property
    def operations(self) -> list[Node]:
        return [n for n in self.nodes if n.is_operation]

    @property
    def arguments(self) -> list[Node]:
        return [n for n in self.nodes if not n.is_operation]

    def mention_of(self, node_id: str) -> Mention:
        return self.document.mention(self.node(node_id).mention)


def succ_topological_order(nodes: Iterable[str], succ_edges: Iterable[Edge]) -> list[str]:
    """Topological order of the succ subgraph; raises on a cycle, naming it.

    Kahn's algorithm with deterministic (insertion-order) tie breaking.
    """
    nodes = list(nodes)
    out: dict[str, list[str]] = {n: [] for n in nodes}
    indeg = {n: 0 for n in nodes}
    for e in succ_edges:
        out[e.source].append(e.target)
        indeg[e.target] += 1
    ready = [n for n in nodes if indeg[n] == 0]
    order = []
    while ready:
        n = ready.pop(0)
        order.append(n)
        for m in out[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    if len(order) != len(nodes):
        cycle = sorted(n for n in nodes if indeg[n] > 0)
        raise GraphError(f"succ cycle among nodes: {', '.join(cycle)}")
    return order


def build_graph(document: Document, nodes: Iterable[Node], edges: Iterable[Edge]) -> PegGraph:
    """Construct a PegGraph, enforcing structural invariants.

    Checks: mention/endpoint resolution, one node per mention, kind/grounding
    agreement, no duplicate (source, role, target) triples, succ-acyclicity.
    Ontology legality is the validator's job, not enforced here.
    """
    nodes = tuple(nodes)
    edges = tuple(edges)
    by_id: dict[str, Node] = {}
    used_mentions: set[str] = set()
    for n in nodes:
        if n.id in by_id:
            raise GraphError(f"duplicate node id {n.id}")
        mention = document.mention(n.mention)  # raises on dangling reference
        if n.mention in used_mentions:
            raise GraphError(f"mention {n.mention} backs more than one node")
        used_mentions.add(n.mention)
        is_op_mention = mention.kind is MentionKind.OPERATION
        if is_op_mention != n.is_operation:
            raise GraphError(
                f"node {n.id}: grounding {n.grounding.value} does not match "
                f"{mention.kind.value} mention {mention.id}"
            )
        by_id[n.id] = n
    seen_triples = set()
    for e in edges:
        if e.source not in by_id or e.target not in by_id:
            raise GraphError(f"edge ({e.source}, {e.role.value}, {e.target}): dangling endpoint")
        triple = (e.source, e.role, e.target)
        if triple in seen_triples:
            raise GraphError(f"duplicate triple ({e.source}, {e.role.value}, {e.target})")
        seen_triples.add(triple)
    succ_topological_order(by_id, [e for e in edges if e.role is Role.SUCC])
    return PegGraph(document, nodes, edges, by_id)


def reentrant_nodes(g: PegGraph) -> set[str]:
    """Argument nodes filling two or more core/site slots."""
    indeg: dict[str, int] = {}
    for e in g.edges:
        if e.role in REENTRANT_ROLES:
            indeg[e.target] = indeg.get(e.target, 0) + 1
    return {n for n, d in indeg.items() if d >= 2 and not g.node(n).is_operation}


def edge_locality(g: PegGraph, e: Edge) -> str:
    """'intra' if both endpoint mentions share a sentence, else 'inter'."""
    s1 = g.document.sentence_of(g.mention_of(e.source))
    s2 = g.document.sentence_of(g.mention_of(e.target))
    return "intra" if s1 == s2 else "inter"


def coref_closure(g: PegGraph) -> list[set[str]]:
    """Partition of argument nodes under the transitive closure of co-ref."""
    parent = {n.id: n.id for n in g.arguments}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        if e.role is Role.COREF and e.source in parent and e.target in parent:
            parent[find(e.source)] = find(e.target)
    classes: dict[str, set[str]] = {}
    for n in parent:
        classes.setdefault(find(n), set()).add(n)
    return sorted(classes.values(), key=lambda c: sorted(c)[0])


def node_sentence_sets(g: PegGraph) -> dict[str, set]:
    """Sentence indexes per node, merged across co-ref classes; an edge is
    intra-sentence when the sets of its endpoints intersect."""
    sentences = {n.id: {g.document.sentence_of(g.mention_of(n.id))} for n in g.nodes}
    for cls in coref_closure(g):
        merged: set = set()
        for n in cls:
            merged |= sentences[n]
        for n in cls:
            sentences[n] = merged
    return sentences
