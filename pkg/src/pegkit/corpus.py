"""Serialization, WLP/BRAT ingestion, and corpus statistics.

PegFile is the on-disk JSON graph format (versioned, canonical on save).
BRAT import pre-populates documents with typed mentions and keeps the
original within-sentence relations; relations whose label has no role
mapping are preserved as legacy, never as graph edges.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .model import (CORE_ROLES, Document, Edge, GraphError, Mention,
                    MentionKind, Node, PegGraph, Role, build_graph,
                    node_sentence_sets, reentrant_nodes)
from .ontology import ArgumentType, OperationType

FORMAT_VERSION = 1


class CorpusError(ValueError):
    pass


# -- PegFile -----------------------------------------------------------------

def _grounding(value: str):
    try:
        return OperationType(value)
    except ValueError:
        pass
    try:
        return ArgumentType(value)
    except ValueError:
        raise CorpusError(f"unknown type {value!r}") from None


def document_to_dict(doc: Document) -> dict:
    mentions = []
    for m in sorted(doc.mentions, key=lambda m: (m.start, m.id)):
        entry = {"id": m.id, "start": m.start, "end": m.end,
                 "surface": m.surface, "kind": m.kind.value}
        if m.hint is not None:
            entry["hint"] = m.hint
        mentions.append(entry)
    return {"id": doc.id, "text": doc.text,
            "sentences": [list(s) for s in doc.sentences], "mentions": mentions}


def document_from_dict(data: dict) -> Document:
    try:
        mentions = tuple(
            Mention(m["id"], m["start"], m["end"], m["surface"],
                    MentionKind(m["kind"]), m.get("hint"))
            for m in data["mentions"])
        return Document(data["id"], data["text"],
                        tuple((s[0], s[1]) for s in data["sentences"]), mentions)
    except (KeyError, TypeError) as exc:
        raise CorpusError(f"malformed document object: {exc}") from exc


def save(g: PegGraph) -> bytes:
    """Canonical bytes: sorted keys, stable node/edge ordering."""
    payload = {
        "format_version": FORMAT_VERSION,
        "document": document_to_dict(g.document),
        "nodes": [
            {"id": n.id, "mention": n.mention, "type": n.grounding.value}
            for n in sorted(g.nodes, key=lambda n: n.id)
        ],
        "edges": [
            {"source": e.source, "role": e.role.value, "target": e.target}
            for e in sorted(g.edges, key=lambda e: (e.source, e.role.value, e.target))
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2).encode("utf-8") + b"\n"


def load(data: bytes | str) -> PegGraph:
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"not valid JSON: {exc}") from exc
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise CorpusError(f"unsupported format_version {version!r}")
    doc = document_from_dict(payload["document"])
    try:
        nodes = [Node(n["id"], n["mention"], _grounding(n["type"]))
                 for n in payload.get("nodes", [])]
        edges = []
        for e in payload.get("edges", []):
            try:
                role = Role(e["role"])
            except ValueError:
                raise CorpusError(f"unknown role {e['role']!r}") from None
            edges.append(Edge(e["source"], role, e["target"]))
    except (KeyError, TypeError) as exc:
        raise CorpusError(f"malformed graph object: {exc}") from exc
    return build_graph(doc, nodes, edges)


def load_path(path: str | Path) -> PegGraph:
    return load(Path(path).read_bytes())


def load_document(data: bytes | str) -> Document:
    """Accepts a PegFile or a bare document object."""
    payload = json.loads(data)
    if "document" in payload:
        payload = payload["document"]
    return document_from_dict(payload)


# -- BRAT import -------------------------------------------------------------

@dataclass(frozen=True)
class ImportedRelation:
    label: str  # original WLP label
    role: Optional[str]  # mapped role, None = legacy
    head: str  # mention id (relation head / event trigger)
    dep: str

    @property
    def legacy(self) -> bool:
        return self.role is None


@dataclass(frozen=True)
class ImportedDoc:
    document: Document
    relations: tuple[ImportedRelation, ...]

    @property
    def legacy_relations(self) -> tuple[ImportedRelation, ...]:
        return tuple(r for r in self.relations if r.legacy)


def _label_map() -> dict:
    text = resources.files("pegkit.data").joinpath("wlp_label_map.json").read_text()
    return json.loads(text)


_T_LINE = re.compile(r"^(T\d+)\t(\S+) (\d+(?: \d+)?(?:;\d+ \d+)*)\t(.*)$")


def _line_sentences(text: str) -> tuple[tuple[int, int], ...]:
    spans = []
    offset = 0
    for line in text.split("\n"):
        stripped_len = len(line.rstrip())
        if stripped_len:
            spans.append((offset, offset + stripped_len))
        offset += len(line) + 1
    return tuple(spans)


def import_brat_pair(txt_path: Path, ann_path: Path, label_map: dict) -> ImportedDoc:
    text = txt_path.read_text(encoding="utf-8")
    entity_labels = label_map["entity_labels"]
    relation_labels = label_map["relation_labels"]
    mentions: dict[str, Mention] = {}
    triggers: dict[str, str] = {}  # event id -> trigger mention id
    raw_events = []
    raw_relations = []
    for lineno, line in enumerate(ann_path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("T"):
            match = _T_LINE.match(line)
            if not match:
                raise CorpusError(f"{ann_path.name}:{lineno}: malformed T line")
            tid, label, span_text, surface = match.groups()
            fragments = [tuple(map(int, frag.split())) for frag in span_text.split(";")]
            start, end = fragments[0][0], fragments[-1][1]
            if end > len(text):
                raise CorpusError(
                    f"{ann_path.name}:{lineno}: span ({start}, {end}) leaves the text")
            if len(fragments) == 1 and text[start:end] != surface:
                raise CorpusError(
                    f"{ann_path.name}:{lineno}: {tid} surface {surface!r} does not "
                    f"match text slice {text[start:end]!r}")
            if label == "Action":
                kind, hint = MentionKind.OPERATION, "general"
            else:
                kind, hint = MentionKind.ARGUMENT, entity_labels.get(label)
            mentions[tid] = Mention(tid, start, end, text[start:end], kind, hint)
        elif line.startswith("E"):
            eid, body = line.split("\t", 1)
            items = body.split()
            _, trigger = items[0].split(":", 1)
            triggers[eid] = trigger
            raw_events.append((eid, trigger, [i.split(":", 1) for i in items[1:]]))
        elif line.startswith("R"):
            rid, body = line.split("\t", 1)
            items = body.split()
            label = items[0]
            args = dict(i.split(":", 1) for i in items[1:3])
            raw_relations.append((rid, label, args.get("Arg1"), args.get("Arg2")))
        # A (attributes), M, # (notes): not used

    def mention_ref(ref: str, where: str) -> str:
        target = triggers.get(ref, ref)
        target = triggers.get(target, target)
        if target not in mentions:
            raise CorpusError(f"{ann_path.name}: {where} references missing id {ref}")
        return target

    relations = []
    for eid, trigger, args in raw_events:
        head = mention_ref(trigger, eid)
        for label, ref in args:
            label = label.rstrip("0123456789")  # Acts-on2 etc.
            relations.append(ImportedRelation(
                label, relation_labels.get(label), head, mention_ref(ref, eid)))
    for rid, label, arg1, arg2 in raw_relations:
        if arg1 is None or arg2 is None:
            raise CorpusError(f"{ann_path.name}: {rid} is missing Arg1/Arg2")
        relations.append(ImportedRelation(
            label, relation_labels.get(label),
            mention_ref(arg1, rid), mention_ref(arg2, rid)))

    doc = Document(txt_path.stem, text, _line_sentences(text),
                   tuple(sorted(mentions.values(), key=lambda m: (m.start, m.id))))
    return ImportedDoc(doc, tuple(relations))


def import_brat(directory: str | Path) -> list[ImportedDoc]:
    directory = Path(directory)
    label_map = _label_map()
    docs = []
    for txt_path in sorted(directory.glob("*.txt")):
        ann_path = txt_path.with_suffix(".ann")
        if ann_path.exists():
            docs.append(import_brat_pair(txt_path, ann_path, label_map))
    return docs


# -- corpus statistics -------------------------------------------------------

ROLE_ORDER = ("ARG0", "ARG1", "ARG2", "site", "setting", "usage", "co-ref",
              "located-at", "measure", "modifier", "part-of")
_CORE = tuple(r.value for r in (Role.ARG0, Role.ARG1, Role.ARG2))


def corpus_stats(graphs: list[PegGraph]) -> dict:
    """Aggregate relation/type/document statistics over a corpus.

    Locality uses co-reference closure: an edge counts as intra-sentence if
    any co-referent trigger of one endpoint shares a sentence with the
    other. A core/site edge counts as a reentrancy if its dependent fills
    two or more core/site slots. Words are whitespace-separated tokens.
    """
    relations = {role: {"intra": 0, "inter": 0, "reentrancy": 0} for role in ROLE_ORDER}
    temporal = {"intra": 0, "inter": 0}
    op_counts: dict[str, int] = {}
    arg_counts: dict[str, int] = {}
    n_ops = n_ops_without_core = 0
    args_on_ops = 0
    n_sentences = n_words = 0
    per_doc_coverage = []

    for g in graphs:
        sentences = node_sentence_sets(g)
        reentrant = reentrant_nodes(g)
        ops_with_core: set[str] = set()
        op_ids = {n.id for n in g.operations}
        for e in g.edges:
            if e.role is Role.COREF:
                # closure would make every co-ref edge trivially intra;
                # score the mention pair itself
                s1 = g.document.sentence_of(g.mention_of(e.source))
                s2 = g.document.sentence_of(g.mention_of(e.target))
                where = "intra" if s1 == s2 else "inter"
            else:
                where = ("intra" if sentences[e.source] & sentences[e.target]
                         else "inter")
            if e.role is Role.SUCC:
                temporal[where] += 1
                continue
            row = relations[e.role.value]
            row[where] += 1
            if (e.role in CORE_ROLES or e.role is Role.SITE) and e.target in reentrant:
                row["reentrancy"] += 1
            if e.role in CORE_ROLES:
                ops_with_core.add(e.source)
            if e.source in op_ids:
                args_on_ops += 1
        ops = g.operations
        n_ops += len(ops)
        n_ops_without_core += sum(1 for op in ops if op.id not in ops_with_core)
        for op in ops:
            op_counts[op.grounding.value] = op_counts.get(op.grounding.value, 0) + 1
        for arg in g.arguments:
            arg_counts[arg.grounding.value] = arg_counts.get(arg.grounding.value, 0) + 1
        n_sentences += len(g.document.sentences)
        n_words += len(g.document.text.split())
        if ops:
            known = sum(1 for op in ops if op.grounding is not OperationType.GENERAL)
            per_doc_coverage.append(known / len(ops))

    def totals(roles):
        return {
            key: sum(relations[r][key] for r in roles)
            for key in ("intra", "inter", "reentrancy")
        }

    core_total = totals(_CORE)
    non_core_total = totals([r for r in ROLE_ORDER if r not in _CORE])
    grand = {
        "intra": core_total["intra"] + non_core_total["intra"] + temporal["intra"],
        "inter": core_total["inter"] + non_core_total["inter"] + temporal["inter"],
        "reentrancy": core_total["reentrancy"] + non_core_total["reentrancy"],
    }
    grand["total"] = grand["intra"] + grand["inter"]
    for row in list(relations.values()) + [core_total, non_core_total]:
        row["total"] = row["intra"] + row["inter"]

    return {
        "relations": {
            "by_role": relations,
            "core": core_total,
            "non_core": non_core_total,
            "temporal": dict(temporal, total=temporal["intra"] + temporal["inter"]),
            "grand": grand,
        },
        "operation_types": dict(sorted(op_counts.items())),
        "argument_types": dict(sorted(arg_counts.items())),
        "operations": {
            "count": n_ops,
            "without_core_args": n_ops_without_core,
            "avg_args_per_op": args_on_ops / n_ops if n_ops else 0.0,
        },
        "documents": {
            "count": len(graphs),
            "sentences": n_sentences,
            "words": n_words,
            "words_per_sentence": n_words / n_sentences if n_sentences else 0.0,
            "sentences_per_doc": n_sentences / len(graphs) if graphs else 0.0,
            "tokenization": "whitespace",
        },
        "ontology_coverage": {
            "per_document": per_doc_coverage,
            "median": sorted(per_doc_coverage)[len(per_doc_coverage) // 2]
            if per_doc_coverage else None,
        },
    }


def format_stats(stats: dict) -> str:
    lines = ["Relation            intra   inter   total  reentrancy"]

    def row(label, data):
        reentrancy = data.get("reentrancy", "")
        lines.append(f"{label:<18} {data['intra']:>7} {data['inter']:>7} "
                     f"{data['total']:>7}  {reentrancy}")

    rel = stats["relations"]
    for role in _CORE:
        row(f"  {role}", rel["by_role"][role])
    row("Total (core)", rel["core"])
    for role in ROLE_ORDER:
        if role not in _CORE:
            row(f"  {role}", rel["by_role"][role])
    row("Total (non-core)", rel["non_core"])
    row("Temporal", rel["temporal"])
    row("Grand Total", rel["grand"])
    ops = stats["operations"]
    lines.append("")
    lines.append(f"operations: {ops['count']}  without core args: "
                 f"{ops['without_core_args']}  avg args/op: {ops['avg_args_per_op']:.2f}")
    docs = stats["documents"]
    lines.append(f"docs: {docs['count']}  sentences: {docs['sentences']}  "
                 f"words: {docs['words']} ({docs['tokenization']} tokens)")
    return "\n".join(lines)
