import json
import random
from pathlib import Path

import pytest

from pegkit import corpus
from pegkit.model import (Document, Edge, Mention, MentionKind, Node, Role,
                          build_graph)
from pegkit.ontology import (ArgumentType, OBJECT_TYPES, OperationType,
                             edge_legal, required_roles)
from pegkit.simulate import Session

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "pegkit" / "fixtures"

_VOCAB = ("add", "mix", "tube", "cells", "buffer", "spin", "plate", "gently",
          "vial", "incubate")
_OBJECTS = sorted(OBJECT_TYPES, key=lambda t: t.value)


@pytest.fixture(scope="session")
def fig1():
    return corpus.load_path(FIXTURES / "fig1.peg.json")


@pytest.fixture(scope="session")
def fig3():
    return corpus.load_path(FIXTURES / "fig3.peg.json")


@pytest.fixture(scope="session")
def fig1_log():
    return _log_lines(FIXTURES / "fig1.log")


@pytest.fixture(scope="session")
def fig3_log():
    return _log_lines(FIXTURES / "fig3.log")


def _log_lines(path: Path) -> list:
    return path.read_text().splitlines()


@pytest.fixture(scope="session")
def fixture_stats():
    return json.loads((FIXTURES / "fixture_stats.json").read_text())


def make_document(rng: random.Random, doc_id: str, kinds: list) -> Document:
    """Document with one single-word mention per kind, random sentence breaks."""
    words = [rng.choice(_VOCAB) for _ in kinds]
    text = " ".join(words)
    mentions = []
    offset = 0
    spans = []
    for word in words:
        spans.append((offset, offset + len(word)))
        offset += len(word) + 1
    sentences = []
    start = 0
    for i in range(len(words)):
        if i == len(words) - 1 or rng.random() < 0.3:
            sentences.append((spans[start][0], spans[i][1]))
            start = i + 1
    for i, (kind, (s, e)) in enumerate(zip(kinds, spans)):
        mentions.append(Mention(f"M{i}", s, e, words[i], kind))
    return Document(doc_id, text, tuple(sentences), tuple(mentions))


def random_graph(rng: random.Random, doc_id: str = "rand", max_nodes: int = 8):
    """A random graph that passes `validate` with no errors."""
    n_total = rng.randint(3, max_nodes)
    n_ops = rng.randint(1, max(1, min(3, n_total - 1)))
    op_slots = set(rng.sample(range(n_total), n_ops))
    kinds = [MentionKind.OPERATION if i in op_slots else MentionKind.ARGUMENT
             for i in range(n_total)]
    doc = make_document(rng, doc_id, kinds)

    nodes = []
    ops, args, objects = [], [], []
    for i, kind in enumerate(kinds):
        node_id = f"N{i}"
        if kind is MentionKind.OPERATION:
            grounding = rng.choice(list(OperationType))
            ops.append(node_id)
        else:
            if not objects:
                grounding = rng.choice(_OBJECTS)
            else:
                grounding = rng.choice(list(ArgumentType))
            if grounding in OBJECT_TYPES:
                objects.append(node_id)
            args.append(node_id)
        nodes.append(Node(node_id, f"M{i}", grounding))
    by_id = {n.id: n for n in nodes}

    edges = []
    triples = set()

    def add(head, role, dep):
        if (head, role, dep) not in triples:
            triples.add((head, role, dep))
            edges.append(Edge(head, role, dep))

    for op in ops:
        grounding = by_id[op].grounding
        for label in sorted(required_roles(grounding)):
            role = Role(label)
            legal = [o for o in objects
                     if edge_legal(by_id[o].grounding, role, grounding)]
            add(op, role, rng.choice(legal))
    node_ids = [n.id for n in nodes]
    for _ in range(rng.randint(0, 4)):
        head, dep = rng.choice(node_ids), rng.choice(node_ids)
        role = rng.choice([r for r in Role if r is not Role.SUCC])
        if head != dep and edge_legal(by_id[dep].grounding, role,
                                      by_id[head].grounding):
            add(head, role, dep)
    order = ops[:]
    rng.shuffle(order)
    for prev, nxt in zip(order, order[1:]):
        add(prev, Role.SUCC, nxt)
    return build_graph(doc, nodes, edges)


def random_session(rng: random.Random, doc_id: str = "sess") -> Session:
    """Drive a session to a finalizable state using only accepted commands."""
    n_ops = rng.randint(1, 4)
    n_args = 3 * n_ops + 2
    kinds = [MentionKind.OPERATION] * n_ops + [MentionKind.ARGUMENT] * n_args
    rng.shuffle(kinds)
    doc = make_document(rng, doc_id, kinds)

    session = Session(doc)
    op_mentions, arg_mentions = [], []
    for m in doc.mentions:
        (op_mentions if m.kind is MentionKind.OPERATION else arg_mentions).append(m.id)
    forced_objects = 2 * n_ops + 2
    for i, mid in enumerate(arg_mentions):
        if i < forced_objects:
            type_name = rng.choice(_OBJECTS).value
        else:
            type_name = rng.choice(list(ArgumentType)).value
        assert session.issue(f"ground {mid} {type_name}").accepted
    for mid in op_mentions:
        assert session.issue(f"ground {mid} {rng.choice(list(OperationType)).value}").accepted

    schedule = op_mentions[:]
    rng.shuffle(schedule)
    non_core = ["setting", "usage", "modifier", "measure", "located-at"]
    for mid in schedule:
        op_type = session.nodes[f"n.{mid}"].grounding
        for label in sorted(required_roles(op_type)):
            candidates = session.autocomplete(f"link {mid} {label} ")
            assert candidates, f"no {label} candidate for {op_type.value}"
            assert session.issue(f"link {mid} {label} {rng.choice(candidates)}").accepted
        for _ in range(rng.randint(0, 2)):
            label = rng.choice(non_core)
            candidates = session.autocomplete(f"link {mid} {label} ")
            if candidates:
                assert session.issue(f"link {mid} {label} {rng.choice(candidates)}").accepted
        line = f"exec {mid}"
        assert session.issue(line).accepted
        if rng.random() < 0.2:
            assert session.issue("undo").accepted
            assert session.issue(line).accepted
    return session
