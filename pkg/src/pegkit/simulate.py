"""Interactive annotation engine: line commands against a tracked lab state.

Command grammar (one per line, ``#`` starts a comment):

    ground <mention-id> <type>
    link <head-id> <role> <dep-id>
    exec <op-id>
    coref <arg-id> <arg-id>
    undo
    lint
    show

Commands name mentions; node ids are derived as ``n.<mention-id>`` and are
accepted interchangeably. Accepted state-changing commands are appended to
the session log; replaying the log reproduces the session exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .model import (CORE_ROLES, Document, Edge, GraphError, MentionKind, Node,
                    PegGraph, Role, build_graph)
from .ontology import (ArgumentType, OBJECT_TYPES, OperationType, edge_legal,
                       required_roles)
from .validation import Diagnostic, LintReport, lint as lint_graph, validate

COMMANDS = ("ground", "link", "exec", "coref", "undo", "lint", "show")

_CORE_LABELS = {r.value for r in CORE_ROLES}


@dataclass
class EntityState:
    exists: bool = True
    destroyed: bool = False
    sealed: bool = False
    location: Optional[str] = None
    contents: set = field(default_factory=set)

    def view(self) -> dict:
        return {
            "exists": self.exists,
            "destroyed": self.destroyed,
            "sealed": self.sealed,
            "location": self.location,
            "contents": sorted(self.contents),
        }


class LabState:
    """World state: entity flags, containment, mixture classes, lineage."""

    def __init__(self):
        self.entities: dict[str, EntityState] = {}
        self.mixture_parent: dict[str, str] = {}
        self.lineage: list[tuple[str, str]] = []

    def add_entity(self, node_id: str):
        self.entities[node_id] = EntityState()
        self.mixture_parent[node_id] = node_id

    def _find(self, x: str) -> str:
        while self.mixture_parent[x] != x:
            self.mixture_parent[x] = self.mixture_parent[self.mixture_parent[x]]
            x = self.mixture_parent[x]
        return x

    def merge_mixture(self, a: str, b: str):
        self.mixture_parent[self._find(a)] = self._find(b)

    def mixture_class(self, node_id: str) -> set:
        root = self._find(node_id)
        return {n for n in self.mixture_parent if self._find(n) == root}

    def transitive_location(self, node_id: str) -> Optional[str]:
        seen = set()
        current = node_id
        while True:
            loc = self.entities[current].location
            if loc is None or loc in seen:
                return current if current != node_id else None
            seen.add(loc)
            current = loc

    def detach(self, node_id: str):
        ent = self.entities[node_id]
        if ent.location is not None and ent.location in self.entities:
            self.entities[ent.location].contents.discard(node_id)
        ent.location = None

    def view(self) -> dict:
        return {
            node_id: dict(ent.view(), resting_place=self.transitive_location(node_id))
            for node_id, ent in sorted(self.entities.items())
        }


class Issued(NamedTuple):
    accepted: bool
    diagnostics: list
    output: str  # human-readable payload of show/lint, else ""


class ReplayError(ValueError):
    def __init__(self, index: int, line: str, diagnostics):
        self.index = index
        self.diagnostics = diagnostics
        super().__init__(
            f"replay aborted at line {index}: {line!r}: "
            + "; ".join(d.message for d in diagnostics))


class FinalizeError(ValueError):
    def __init__(self, message: str, diagnostics=()):
        self.diagnostics = list(diagnostics)
        super().__init__(message)


class Finalized(NamedTuple):
    graph: PegGraph
    warnings: list
    lint: LintReport


def _err(code: str, locus: str, message: str) -> Diagnostic:
    return Diagnostic("error", code, locus, message)


def _warn(code: str, locus: str, message: str) -> Diagnostic:
    return Diagnostic("warning", code, locus, message)


class Session:
    def __init__(self, document: Document):
        self.document = document
        self.command_log: list[str] = []
        self.nodes: dict[str, Node] = {}
        self.node_of_mention: dict[str, str] = {}
        self.edges: list[Edge] = []
        self.exec_order: list[str] = []
        self.state = LabState()

    # -- resolution helpers

    def _resolve(self, token: str) -> Optional[str]:
        """Node id for a mention id or node id token, if grounded."""
        if token in self.nodes:
            return token
        return self.node_of_mention.get(token)

    def _doc_order(self, node_id: str) -> int:
        return self.document.mention(self.nodes[node_id].mention).start

    def _deps(self, op_id: str) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for e in self.edges:
            if e.source == op_id:
                out.setdefault(e.role.value, []).append(e.target)
        return out

    def _missing_roles(self, op_id: str) -> list[str]:
        have = set(self._deps(op_id)) & (_CORE_LABELS | {"site"})
        return sorted(required_roles(self.nodes[op_id].grounding) - have)

    # -- command dispatch

    def issue(self, line: str) -> Issued:
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            return Issued(True, [], "")
        parts = stripped.split()
        verb, args = parts[0], parts[1:]
        handler = getattr(self, f"_cmd_{verb}", None)
        if handler is None:
            return Issued(False, [_err("unknown-command", verb,
                                       f"unknown command {verb!r}")], "")
        return handler(stripped, args)

    def _cmd_ground(self, line, args) -> Issued:
        if len(args) != 2:
            return Issued(False, [_err("syntax", line, "usage: ground <mention-id> <type>")], "")
        mention_id, type_name = args
        try:
            mention = self.document.mention(mention_id)
        except GraphError as exc:
            return Issued(False, [_err("unknown-mention", mention_id, str(exc))], "")
        if mention_id in self.node_of_mention:
            return Issued(False, [_err("already-grounded", mention_id,
                                       f"mention {mention_id} is already grounded")], "")
        if mention.kind is MentionKind.OPERATION:
            try:
                grounding = OperationType(type_name)
            except ValueError:
                return Issued(False, [_err("bad-type", mention_id,
                                           f"{type_name!r} is not an operation type")], "")
        else:
            try:
                grounding = ArgumentType(type_name)
            except ValueError:
                return Issued(False, [_err("bad-type", mention_id,
                                           f"{type_name!r} is not an argument type")], "")
        node = Node(f"n.{mention_id}", mention_id, grounding)
        self.nodes[node.id] = node
        self.node_of_mention[mention_id] = node.id
        if not node.is_operation:
            self.state.add_entity(node.id)
        self.command_log.append(line)
        return Issued(True, [], "")

    def _check_link(self, head_id: str, role: Role, dep_id: str):
        """Diagnostics for a candidate (head, role, dep) edge; None = legal."""
        head, dep = self.nodes[head_id], self.nodes[dep_id]
        if role is Role.SUCC:
            return [_err("managed-role", head_id,
                         "succ edges are produced by exec, not link")]
        legal, why = edge_legal(dep.grounding, role, head.grounding)
        if not legal:
            return [_err("illegal-edge", f"{head_id} -{role.value}-> {dep_id}", why)]
        if not dep.is_operation and self.state.entities[dep.id].destroyed:
            return [_err("destroyed", dep_id,
                         f"{dep_id} refers to a destroyed entity")]
        if any(e.source == head_id and e.role is role and e.target == dep_id
               for e in self.edges):
            return [_err("duplicate-edge", f"{head_id} -{role.value}-> {dep_id}",
                         "edge already present")]
        return None

    def _cmd_link(self, line, args) -> Issued:
        if len(args) != 3:
            return Issued(False, [_err("syntax", line, "usage: link <head> <role> <dep>")], "")
        head_id = self._resolve(args[0])
        dep_id = self._resolve(args[2])
        if head_id is None or dep_id is None:
            missing = args[0] if head_id is None else args[2]
            return Issued(False, [_err("ungrounded", missing,
                                       f"{missing} is not a grounded node")], "")
        try:
            role = Role(args[1])
        except ValueError:
            return Issued(False, [_err("bad-role", args[1],
                                       f"{args[1]!r} is not a role")], "")
        problems = self._check_link(head_id, role, dep_id)
        if problems:
            return Issued(False, problems, "")
        warnings = []
        _, why = edge_legal(self.nodes[dep_id].grounding, role,
                            self.nodes[head_id].grounding)
        if why == "relaxed-target":
            warnings.append(_warn("relaxed-target",
                                  f"{head_id} -{role.value}-> {dep_id}",
                                  f"{role.value} edge targets an operation"))
        self.edges.append(Edge(head_id, role, dep_id))
        self.command_log.append(line)
        return Issued(True, warnings, "")

    def _cmd_coref(self, line, args) -> Issued:
        if len(args) != 2:
            return Issued(False, [_err("syntax", line, "usage: coref <arg> <arg>")], "")
        a = self._resolve(args[0])
        b = self._resolve(args[1])
        if a is None or b is None:
            missing = args[0] if a is None else args[1]
            return Issued(False, [_err("ungrounded", missing,
                                       f"{missing} is not a grounded node")], "")
        problems = self._check_link(b, Role.COREF, a)
        if problems:
            return Issued(False, problems, "")
        self.edges.append(Edge(a, Role.COREF, b))
        self.state.merge_mixture(a, b)
        self.command_log.append(line)
        return Issued(True, [], "")

    def _cmd_exec(self, line, args) -> Issued:
        if len(args) != 1:
            return Issued(False, [_err("syntax", line, "usage: exec <op>")], "")
        op_id = self._resolve(args[0])
        if op_id is None or not self.nodes[op_id].is_operation:
            return Issued(False, [_err("ungrounded", args[0],
                                       f"{args[0]} is not a grounded operation")], "")
        if op_id in self.exec_order:
            return Issued(False, [_err("already-executed", op_id,
                                       f"{op_id} was already executed")], "")
        missing = self._missing_roles(op_id)
        if missing:
            return Issued(False, [_warn("missing-argument", op_id,
                                        "missing argument: " + ", ".join(missing))], "")
        deps = self._deps(op_id)
        destroyed = [d for role in (_CORE_LABELS | {"site"})
                     for d in deps.get(role, [])
                     if self.state.entities.get(d) and self.state.entities[d].destroyed]
        if destroyed:
            return Issued(False, [_err("destroyed", destroyed[0],
                                       f"{destroyed[0]} refers to a destroyed entity")], "")
        warnings = self._apply_effects(op_id, deps)
        if self.exec_order:
            self.edges.append(Edge(self.exec_order[-1], Role.SUCC, op_id))
        self.exec_order.append(op_id)
        self.command_log.append(line)
        return Issued(True, warnings, "")

    def _cmd_undo(self, line, args) -> Issued:
        if not self.command_log:
            return Issued(False, [_warn("nothing-to-undo", "undo", "empty session")], "")
        log = self.command_log[:-1]
        fresh = Session(self.document)
        for entry in log:
            fresh.issue(entry)
        self.__dict__.update(fresh.__dict__)
        return Issued(True, [], "")

    def _cmd_lint(self, line, args) -> Issued:
        report = lint_graph(self.draft())
        text = (f"components: {report.component_count}  "
                f"unused mentions: {list(report.isolated_mentions)}  "
                f"score: {report.score}")
        return Issued(True, [], text)

    def _cmd_show(self, line, args) -> Issued:
        lines = []
        for node_id, view in self.state.view().items():
            flags = "".join(
                tag for tag, on in (("destroyed ", view["destroyed"]),
                                    ("sealed ", view["sealed"])) if on)
            lines.append(f"{node_id}: {flags}at={view['location']} "
                         f"contents={view['contents']}")
        lines.append("executed: " + " ".join(self.exec_order))
        return Issued(True, [], "\n".join(lines))

    # -- state effects

    def _apply_effects(self, op_id: str, deps: dict) -> list:
        warnings = []
        op_type = self.nodes[op_id].grounding
        core = [d for role in ("ARG0", "ARG1", "ARG2") for d in deps.get(role, [])]
        state = self.state
        if op_type is OperationType.TRANSFER:
            sites = deps.get("site", [])
            site = sites[0]
            if state.entities.get(site) and state.entities[site].sealed:
                warnings.append(_warn("sealed-destination", site,
                                      f"transfer into sealed container {site}"))
            for mover in core:
                if mover == site:
                    continue
                state.detach(mover)
                state.entities[mover].location = site
                if site in state.entities:
                    state.entities[site].contents.add(mover)
        elif op_type is OperationType.DESTROY:
            for target in core:
                ent = state.entities[target]
                ent.destroyed = True
                for inner in list(ent.contents):
                    state.entities[inner].location = None
                ent.contents.clear()
                state.detach(target)
        elif op_type is OperationType.CREATE:
            for target in core:
                state.entities[target].exists = True
        elif op_type is OperationType.SEAL:
            for target in deps.get("ARG0", []):
                state.entities[target].sealed = True
        elif op_type is OperationType.REMOVE:
            arg0 = deps.get("ARG0", [])
            arg1 = deps.get("ARG1", [])
            for removed in arg0:
                for source in arg1:
                    state.entities[source].contents.discard(removed)
                    if state.entities[removed].location == source:
                        state.entities[removed].location = None
            if any(self.nodes[a].grounding is ArgumentType.SEAL for a in arg1):
                for target in arg0:
                    state.entities[target].sealed = False
        elif op_type is OperationType.MIX:
            by_location: dict = {}
            for target in core:
                by_location.setdefault(state.entities[target].location, []).append(target)
            for location, group in by_location.items():
                for other in group[1:]:
                    state.merge_mixture(group[0], other)
                # mixing into a container merges the container's view too
                if location is not None and len(group) >= 1:
                    state.merge_mixture(group[0], location)
        elif op_type is OperationType.CONVERT:
            for source in deps.get("ARG0", []):
                for result in deps.get("ARG1", []):
                    state.lineage.append((source, result))
                    state.merge_mixture(source, result)
        # temperature-treatment, time, measure, wash, spin, general: no change
        return warnings

    # -- autocomplete

    def autocomplete(self, prefix: str) -> list[str]:
        """Legal completions for the token being typed at the end of prefix."""
        parts = prefix.split()
        at_boundary = prefix.endswith(" ") or prefix == ""
        if at_boundary:
            done, partial = parts, ""
        else:
            done, partial = parts[:-1], parts[-1]
        candidates = self._candidates(done)
        return [c for c in candidates if c.startswith(partial)]

    def _candidates(self, done: list[str]) -> list[str]:
        if not done:
            return list(COMMANDS)
        verb = done[0]
        by_order = lambda ids: sorted(ids, key=self._doc_order)
        if verb == "ground":
            if len(done) == 1:
                return [m.id for m in self.document.mentions
                        if m.id not in self.node_of_mention]
            if len(done) == 2:
                try:
                    mention = self.document.mention(done[1])
                except GraphError:
                    return []
                if mention.kind is MentionKind.OPERATION:
                    return [t.value for t in OperationType]
                return [t.value for t in ArgumentType]
        elif verb == "link":
            if len(done) == 1:
                return by_order(list(self.nodes))
            if len(done) == 2:
                return [r.value for r in Role if r is not Role.SUCC]
            if len(done) == 3:
                head_id = self._resolve(done[1])
                if head_id is None:
                    return []
                try:
                    role = Role(done[2])
                except ValueError:
                    return []
                return by_order([
                    dep for dep in self.nodes
                    if dep != head_id
                    and self._check_link(head_id, role, dep) is None
                ])
        elif verb == "exec":
            if len(done) == 1:
                return by_order([
                    op for op, node in self.nodes.items()
                    if node.is_operation and op not in self.exec_order
                    and not self._missing_roles(op)
                ])
        elif verb == "coref":
            if len(done) in (1, 2):
                first = self._resolve(done[1]) if len(done) == 2 else None
                return by_order([
                    n for n, node in self.nodes.items()
                    if not node.is_operation
                    and node.grounding in OBJECT_TYPES
                    and not self.state.entities[n].destroyed
                    and n != first
                ])
        return []

    # -- conversion

    def draft(self) -> PegGraph:
        nodes = sorted(self.nodes.values(),
                       key=lambda n: self.document.mention(n.mention).start)
        return build_graph(self.document, nodes, self.edges)

    def finalize(self) -> Finalized:
        pending = [op for op, node in self.nodes.items()
                   if node.is_operation and op not in self.exec_order]
        if pending:
            raise FinalizeError(
                "operations not executed: " + ", ".join(sorted(pending)))
        graph = self.draft()
        diagnostics = validate(graph)
        errors = [d for d in diagnostics if d.severity == "error"]
        if errors:
            raise FinalizeError("validation failed", errors)
        return Finalized(graph, [d for d in diagnostics if d.severity == "warning"],
                         lint_graph(graph))


def replay(document: Document, lines) -> Session:
    """Rebuild a session from a command log; aborts on the first rejected
    command, reporting its position."""
    session = Session(document)
    for index, line in enumerate(lines):
        result = session.issue(line)
        if not result.accepted:
            raise ReplayError(index, line, result.diagnostics)
    return session
