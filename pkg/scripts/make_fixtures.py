"""Regenerates the bundled fixtures (documents, gold graphs, session logs,
BRAT pair, golden lowered program). Run from the repo root:

    python scripts/make_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from pegkit import corpus, lower
from pegkit.model import (Document, Edge, Mention, MentionKind, Node, Role,
                          build_graph)
from pegkit.ontology import ArgumentType, OperationType

OUT = Path(__file__).resolve().parents[1] / "src" / "pegkit" / "fixtures"


def spans(text: str, surfaces: list[str]) -> list[tuple[int, int]]:
    """Left-to-right, non-overlapping occurrences of each surface."""
    result = []
    cursor = 0
    for surface in surfaces:
        start = text.index(surface, cursor)
        result.append((start, start + len(surface)))
        cursor = start + len(surface)
    return result


def sentence_spans(text: str, sentences: list[str]) -> list[tuple[int, int]]:
    return spans(text, sentences)


def make_doc(doc_id, sentences, mention_specs):
    text = " ".join(sentences)
    surfaces = [surface for _, surface, _ in mention_specs]
    mention_spans = spans(text, surfaces)
    mentions = tuple(
        Mention(mid, start, end, surface, kind)
        for (mid, surface, kind), (start, end) in zip(mention_specs, mention_spans))
    return Document(doc_id, text, tuple(sentence_spans(text, sentences)), mentions)


OP = MentionKind.OPERATION
ARG = MentionKind.ARGUMENT

fig1_doc = make_doc(
    "fig1",
    ["Add cells to the culture tubes.", "Swirl gently.", "Incubate for 30 minutes."],
    [
        ("T1", "Add", OP), ("T2", "cells", ARG), ("T3", "culture tubes", ARG),
        ("T4", "Swirl", OP), ("T5", "gently", ARG),
        ("T6", "Incubate", OP), ("T7", "30 minutes", ARG),
    ],
)

fig1_graph = build_graph(
    fig1_doc,
    [
        Node("op_add", "T1", OperationType.TRANSFER),
        Node("arg_cells", "T2", ArgumentType.REAGENT),
        Node("arg_tubes", "T3", ArgumentType.LOCATION),
        Node("op_swirl", "T4", OperationType.MIX),
        Node("arg_gently", "T5", ArgumentType.MODIFIER),
        Node("op_incubate", "T6", OperationType.TEMPERATURE_TREATMENT),
        Node("arg_30min", "T7", ArgumentType.SETTING),
    ],
    [
        Edge("op_add", Role.ARG0, "arg_cells"),
        Edge("op_add", Role.SITE, "arg_tubes"),
        Edge("op_swirl", Role.ARG0, "arg_tubes"),
        Edge("op_swirl", Role.MODIFIER, "arg_gently"),
        Edge("op_incubate", Role.ARG0, "arg_tubes"),
        Edge("op_incubate", Role.SETTING, "arg_30min"),
        Edge("op_add", Role.SUCC, "op_swirl"),
        Edge("op_swirl", Role.SUCC, "op_incubate"),
    ],
)

FIG1_LOG = """\
# three-step protocol: add, swirl, incubate
ground T1 transfer
ground T2 reagent
ground T3 location
ground T4 mix
ground T5 modifier
ground T6 temperature-treatment
ground T7 setting
link T1 ARG0 T2
link T1 site T3
exec T1
link T4 ARG0 T3
link T4 modifier T5
exec T4
link T6 ARG0 T3
link T6 setting T7
exec T6
"""

fig3_doc = make_doc(
    "protocol512",
    [
        "Add ligation buffer to the vial.",
        "Add T4 DNA ligase.",
        "Mix gently by pipetting.",
        "Incubate overnight.",
        "Chill on ice.",
        "Transform the ligation mixture into competent cells.",
    ],
    [
        ("T1", "Add", OP), ("T2", "ligation buffer", ARG), ("T3", "vial", ARG),
        ("T4", "Add", OP), ("T5", "T4 DNA ligase", ARG),
        ("T6", "Mix", OP), ("T7", "gently", ARG), ("T8", "pipetting", ARG),
        ("T9", "Incubate", OP), ("T10", "overnight", ARG),
        ("T11", "Chill", OP), ("T12", "ice", ARG),
        ("T13", "Transform", OP), ("T14", "ligation mixture", ARG),
        ("T15", "competent cells", ARG),
    ],
)

fig3_graph = build_graph(
    fig3_doc,
    [
        Node("op_add1", "T1", OperationType.TRANSFER),
        Node("arg_buffer", "T2", ArgumentType.REAGENT),
        Node("arg_vial", "T3", ArgumentType.LOCATION),
        Node("op_add2", "T4", OperationType.TRANSFER),
        Node("arg_ligase", "T5", ArgumentType.REAGENT),
        Node("op_mix", "T6", OperationType.MIX),
        Node("arg_gently", "T7", ArgumentType.MODIFIER),
        Node("arg_pipetting", "T8", ArgumentType.METHOD),
        Node("op_incubate", "T9", OperationType.TEMPERATURE_TREATMENT),
        Node("arg_overnight", "T10", ArgumentType.SETTING),
        Node("op_chill", "T11", OperationType.TEMPERATURE_TREATMENT),
        Node("arg_ice", "T12", ArgumentType.LOCATION),
        Node("op_transform", "T13", OperationType.TRANSFER),
        Node("arg_mixture", "T14", ArgumentType.REAGENT),
        Node("arg_cells", "T15", ArgumentType.LOCATION),
    ],
    [
        Edge("op_add1", Role.ARG0, "arg_buffer"),
        Edge("op_add1", Role.SITE, "arg_vial"),
        Edge("op_add2", Role.ARG0, "arg_ligase"),
        Edge("op_add2", Role.SITE, "arg_vial"),
        Edge("op_mix", Role.ARG0, "arg_vial"),
        Edge("op_mix", Role.MODIFIER, "arg_gently"),
        Edge("op_mix", Role.USAGE, "arg_pipetting"),
        Edge("op_incubate", Role.ARG0, "arg_vial"),
        Edge("op_incubate", Role.SETTING, "arg_overnight"),
        Edge("op_chill", Role.ARG0, "arg_vial"),
        Edge("op_chill", Role.SITE, "arg_ice"),
        Edge("op_transform", Role.ARG0, "arg_mixture"),
        Edge("op_transform", Role.SITE, "arg_cells"),
        Edge("arg_mixture", Role.COREF, "arg_vial"),
        Edge("op_add1", Role.SUCC, "op_add2"),
        Edge("op_add2", Role.SUCC, "op_mix"),
        Edge("op_mix", Role.SUCC, "op_incubate"),
        Edge("op_incubate", Role.SUCC, "op_chill"),
        Edge("op_chill", Role.SUCC, "op_transform"),
    ],
)

FIG3_LOG = """\
# protocol 512: ligation mix, incubation, transformation
ground T1 transfer
ground T2 reagent
ground T3 location
link T1 ARG0 T2
link T1 site T3
exec T1
ground T4 transfer
ground T5 reagent
link T4 ARG0 T5
link T4 site T3
exec T4
ground T6 mix
ground T7 modifier
ground T8 method
link T6 ARG0 T3
link T6 modifier T7
link T6 usage T8
exec T6
ground T9 temperature-treatment
ground T10 setting
link T9 ARG0 T3
link T9 setting T10
exec T9
ground T11 temperature-treatment
ground T12 location
link T11 ARG0 T3
link T11 site T12
exec T11
ground T13 transfer
ground T14 reagent
ground T15 location
coref T14 T3
link T13 ARG0 T14
link T13 site T15
exec T13
"""


def brat_pair():
    lines = [
        "Add cells to the culture tubes .",
        "Swirl gently .",
        "Incubate for 30 minutes .",
    ]
    text = "\n".join(lines) + "\n"
    entries = [
        ("T1", "Action", "Add"),
        ("T2", "Reagent", "cells"),
        ("T3", "Location", "culture tubes"),
        ("T4", "Action", "Swirl"),
        ("T5", "Modifier", "gently"),
        ("T6", "Action", "Incubate"),
        ("T7", "Time", "30 minutes"),
    ]
    mention_spans = spans(text, [surface for _, _, surface in entries])
    ann_lines = [
        f"{tid}\t{label} {start} {end}\t{surface}"
        for (tid, label, surface), (start, end) in zip(entries, mention_spans)
    ]
    ann_lines += [
        "E1\tAction:T1 Acts-on:T2 Site:T3",
        "E2\tAction:T4",
        "E3\tAction:T6",
        "R1\tMod-Link Arg1:T4 Arg2:T5",
        "R2\tSetting Arg1:T6 Arg2:T7",
        "R3\tMeasure-Type-Link Arg1:T7 Arg2:T2",
    ]
    return text, "\n".join(ann_lines) + "\n"


def doc_only_file(doc) -> bytes:
    import json
    payload = {"format_version": corpus.FORMAT_VERSION,
               "document": corpus.document_to_dict(doc),
               "nodes": [], "edges": []}
    return json.dumps(payload, sort_keys=True, indent=2).encode() + b"\n"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "brat").mkdir(exist_ok=True)
    (OUT / "fig1.peg.json").write_bytes(corpus.save(fig1_graph))
    (OUT / "fig3.peg.json").write_bytes(corpus.save(fig3_graph))
    (OUT / "fig1.doc.json").write_bytes(doc_only_file(fig1_doc))
    (OUT / "fig3.doc.json").write_bytes(doc_only_file(fig3_doc))
    (OUT / "fig1.log").write_text(FIG1_LOG)
    (OUT / "fig3.log").write_text(FIG3_LOG)
    text, ann = brat_pair()
    (OUT / "brat" / "fig1.txt").write_text(text)
    (OUT / "brat" / "fig1.ann").write_text(ann)
    (OUT / "fig1.program.json").write_bytes(lower.emit_json(lower.lower(fig1_graph)))
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
