"""Compile a validated graph into an ordered Autoprotocol-style program.

Under-specification never aborts the lowering: vague modifiers and missing
required settings become holes for a human to fill.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from .model import PegGraph, Role, succ_topological_order
from .ontology import OperationType, ap_instructions
from .validation import validate

_NUMBER_UNIT = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([^\s\d].*?)\s*$")

_UNIT_PARAMS = (
    ("duration", ("minute", "min", "hour", "hr", "h", "second", "sec", "s",
                  "overnight", "day")),
    ("temperature", ("c", "°c", "celsius", "k", "f", "degree", "ice",
                     "room temperature", "rt")),
    ("speed", ("rpm", "g", "x g", "rcf")),
    ("volume", ("ul", "µl", "ml", "l", "cc")),
)

#: parameters that must be specified for the instruction to be executable
_REQUIRED_PARAMS = {
    OperationType.TEMPERATURE_TREATMENT: ("temperature",),
    OperationType.MIX: ("speed",),
    OperationType.SPIN: ("speed",),
}

#: parameter a vague modifier usually stands in for, per operation family
_MODIFIER_PARAM = {
    OperationType.MIX: "speed",
    OperationType.SPIN: "speed",
}


def classify_value(text: str) -> tuple[str, Optional[dict]]:
    """Parameter name and best-effort (value, unit) parse for a setting or
    measurement string; unparsed values stay verbatim."""
    lowered = text.lower()
    match = _NUMBER_UNIT.match(lowered)
    unit_text = match.group(2) if match else lowered
    param = "setting"
    for name, units in _UNIT_PARAMS:
        if unit_text in units or any(unit_text.startswith(u) for u in units if len(u) > 2):
            param = name
            break
    else:
        if any(key in lowered for key in ("temperature", "ice")):
            param = "temperature"
    parsed = {"value": float(match.group(1)), "unit": match.group(2)} if match else None
    return param, parsed


@dataclass(frozen=True)
class Hole:
    parameter: str
    reason: str  # "vague-modifier" | "missing-setting"
    op_node: str
    source_node: Optional[str] = None  # the vague argument, if any

    def to_dict(self) -> dict:
        return {"parameter": self.parameter, "reason": self.reason,
                "op_node": self.op_node, "source_node": self.source_node}


@dataclass
class ApInstruction:
    name: str
    op_node: str
    op_type: str
    order_index: int
    alt: list = field(default_factory=list)
    operands: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name, "op_node": self.op_node, "op_type": self.op_type,
            "order_index": self.order_index, "alt": list(self.alt),
            "operands": self.operands, "parameters": self.parameters,
        }


@dataclass
class Program:
    instructions: list
    holes: list

    def to_dict(self) -> dict:
        return {
            "instructions": [i.to_dict() for i in self.instructions],
            "holes": [h.to_dict() for h in self.holes],
        }


class LoweringError(ValueError):
    pass


def _entity_ref(g: PegGraph, node_id: str) -> dict:
    return {"node": node_id, "surface": g.mention_of(node_id).surface,
            "type": g.node(node_id).grounding.value}


def lower(g: PegGraph) -> Program:
    """One instruction per operation node, in succ topological order."""
    errors = [d for d in validate(g) if d.severity == "error"]
    if errors:
        raise LoweringError(
            "graph has validation errors: " + "; ".join(d.message for d in errors))
    op_ids = [n.id for n in g.operations]
    order = succ_topological_order(
        op_ids, [e for e in g.edges if e.role is Role.SUCC])
    deps: dict[str, list] = {op: [] for op in op_ids}
    for e in g.edges:
        if e.source in deps and e.role is not Role.SUCC:
            deps[e.source].append(e)

    instructions = []
    holes = []
    for index, op_id in enumerate(order):
        op_type = g.node(op_id).grounding
        names = ap_instructions(op_type)
        instr = ApInstruction(
            name=names[0] if names else f"unmapped:{op_type.value}",
            op_node=op_id, op_type=op_type.value, order_index=index,
            alt=names[1:],
        )
        provided: set[str] = set()
        vague: set[str] = set()
        for e in deps[op_id]:
            role = e.role.value
            if e.role in (Role.ARG0, Role.ARG1, Role.ARG2):
                instr.operands.setdefault(role, []).append(_entity_ref(g, e.target))
            elif e.role is Role.SITE:
                instr.operands.setdefault("destination", []).append(_entity_ref(g, e.target))
            elif e.role in (Role.SETTING, Role.MEASURE):
                surface = g.mention_of(e.target).surface
                param, parsed = classify_value(surface)
                key = param
                n = 2
                while key in instr.parameters:
                    key = f"{param}_{n}"
                    n += 1
                value = {"text": surface, "source_node": e.target}
                if parsed is not None:
                    value["parsed"] = parsed
                instr.parameters[key] = value
                provided.add(param)
            elif e.role is Role.MODIFIER:
                param = _MODIFIER_PARAM.get(op_type, "mode")
                holes.append(Hole(param, "vague-modifier", op_id, e.target))
                vague.add(param)
            # usage / co-ref / located-at / part-of carry no instruction payload
        for param in _REQUIRED_PARAMS.get(op_type, ()):
            if param not in provided and param not in vague:
                holes.append(Hole(param, "missing-setting", op_id))
        instructions.append(instr)
    return Program(instructions, holes)


def emit_json(program: Program) -> bytes:
    """Canonical serialization: sorted keys, instructions by order_index;
    byte-identical across runs for the same program."""
    payload = program.to_dict()
    payload["instructions"].sort(key=lambda i: i["order_index"])
    return json.dumps(payload, sort_keys=True, indent=2).encode("utf-8") + b"\n"
