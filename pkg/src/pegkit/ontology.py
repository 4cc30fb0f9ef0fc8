"""The closed type system: operation/argument inventories, role legality,
required roles, and the Autoprotocol instruction mapping.

All tables are compiled in; `export_tables` dumps them for the UI.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple, Union


class OperationType(str, Enum):
    TRANSFER = "transfer"
    TEMPERATURE_TREATMENT = "temperature-treatment"
    GENERAL = "general"
    MIX = "mix"
    SPIN = "spin"
    CREATE = "create"
    DESTROY = "destroy"
    REMOVE = "remove"
    MEASURE = "measure"
    WASH = "wash"
    TIME = "time"
    SEAL = "seal"
    CONVERT = "convert"


class ArgumentType(str, Enum):
    REAGENT = "reagent"
    MEASUREMENT = "measurement"
    SETTING = "setting"
    LOCATION = "location"
    MODIFIER = "modifier"
    DEVICE = "device"
    METHOD = "method"
    SEAL = "seal"


#: argument types representing physical objects
OBJECT_TYPES = frozenset(
    {ArgumentType.REAGENT, ArgumentType.DEVICE, ArgumentType.SEAL, ArgumentType.LOCATION}
)

Grounding = Union[OperationType, ArgumentType]

#: per-operation core-role semantics, for display
ROLE_SEMANTICS = {
    OperationType.SPIN: "ARG0 centrifuged to produce solid phase ARG1 and/or liquid phase ARG2",
    OperationType.CONVERT: "ARG0 converted to ARG1",
    OperationType.SEAL: "ARG0 sealed with ARG1",
    OperationType.CREATE: "ARG* are created",
    OperationType.GENERAL: "-",
    OperationType.DESTROY: "ARG* discarded",
    OperationType.MEASURE: "ARG* to be measured",
    OperationType.MIX: "ARG* are mixed",
    OperationType.REMOVE: "ARG0 removed from ARG1",
    OperationType.TEMPERATURE_TREATMENT: "ARG* to be heated/cooled",
    OperationType.TIME: "Wait after operation on ARG0",
    OperationType.TRANSFER: "ARG* are sources, transferred to site",
    OperationType.WASH: "ARG0 washed with ARG1",
}

_EXTRA_REQUIRED = {
    OperationType.TRANSFER: frozenset({"site"}),
    OperationType.CONVERT: frozenset({"ARG1"}),
}

#: Autoprotocol instruction names per operation type; empty = no mapping
AP_MAPPING: dict[OperationType, tuple[str, ...]] = {
    OperationType.SPIN: ("Spin",),
    OperationType.CONVERT: (),
    OperationType.SEAL: ("Seal", "Cover"),
    OperationType.CREATE: ("Oligosynthesize", "Provision"),
    OperationType.GENERAL: (),
    OperationType.DESTROY: (),
    OperationType.MEASURE: (
        "Absorbance", "Fluorescence", "Luminescence", "IlluminaSeq", "SangerSeq",
        "MeasureConcentration", "MeasureMass", "MeasureVolume", "CountCells",
        "Spectrophotometry", "FlowCytometry", "FlowAnalyze", "ImagePlate",
    ),
    OperationType.MIX: ("Agitate",),
    OperationType.REMOVE: ("Unseal", "Uncover"),
    OperationType.TEMPERATURE_TREATMENT: ("Thermocycle", "Incubate", "FlashFreeze"),
    OperationType.TRANSFER: (
        "AcousticTransfer", "MagneticTransfer", "Dispense", "Provision",
        "LiquidHandle", "Autopick",
    ),
    OperationType.WASH: (),
    OperationType.TIME: (),
}

# Non-core role typing: allowed source argument types and allowed target
# categories, in the argument-first (s, r, t) orientation where s is the
# dependent. "object" / "operation" / "measurement" are target categories.
# setting, measure and usage additionally admit an operation target; that
# relaxation is flagged in the diagnostic as "relaxed-target".
_NON_CORE_RULES: dict[str, tuple[frozenset[ArgumentType], frozenset[str], frozenset[str]]] = {
    # role: (source types, strict targets, relaxed extra targets)
    "co-ref": (OBJECT_TYPES, frozenset({"object"}), frozenset()),
    "measure": (frozenset({ArgumentType.MEASUREMENT}), frozenset({"object"}), frozenset({"operation"})),
    "setting": (frozenset({ArgumentType.SETTING}), frozenset({"object"}), frozenset({"operation"})),
    "modifier": (frozenset({ArgumentType.MODIFIER}), frozenset({"object", "operation", "measurement"}), frozenset()),
    "usage": (frozenset({ArgumentType.METHOD}) | OBJECT_TYPES, frozenset({"operation"}), frozenset({"object"})),
    "located-at": (OBJECT_TYPES, frozenset({"object"}), frozenset()),
    "part-of": (OBJECT_TYPES, frozenset({"object"}), frozenset()),
}


def _category(g: Grounding) -> str:
    if isinstance(g, OperationType):
        return "operation"
    if g in OBJECT_TYPES:
        return "object"
    if g is ArgumentType.MEASUREMENT:
        return "measurement"
    return g.value  # setting / modifier / method


class Legality(NamedTuple):
    legal: bool
    diagnostic: str

    def __bool__(self) -> bool:
        return self.legal


def edge_legal(source_type: Grounding, role, target_type: Grounding) -> Legality:
    """Legality of a (source, role, target) triple in argument-first
    orientation: for core roles and site, the source is the argument and
    the target the operation.

    Always returns; legality is the first element, the diagnostic names the
    violated rule (or "ok" / "relaxed-target").
    """
    role_value = role.value if isinstance(role, Enum) else str(role)

    if role_value == "succ":
        if isinstance(source_type, OperationType) and isinstance(target_type, OperationType):
            return Legality(True, "ok")
        return Legality(False, "succ endpoints must both be operations")

    if role_value in ("ARG0", "ARG1", "ARG2"):
        if not isinstance(target_type, OperationType):
            return Legality(False, f"{role_value} target must be an operation")
        if target_type is OperationType.SEAL and role_value == "ARG1":
            if source_type is ArgumentType.SEAL:
                return Legality(True, "ok")
            return Legality(False, "ARG1 of seal must be a seal entity")
        if isinstance(source_type, ArgumentType) and source_type in OBJECT_TYPES:
            return Legality(True, "ok")
        return Legality(False, f"{role_value} source must be an object type "
                               "(reagent, device, seal, location)")

    if role_value == "site":
        if not isinstance(target_type, OperationType):
            return Legality(False, "site target must be an operation")
        if isinstance(source_type, ArgumentType) and source_type in OBJECT_TYPES:
            return Legality(True, "ok")
        return Legality(False, "site source must be an object type")

    rules = _NON_CORE_RULES.get(role_value)
    if rules is None:
        return Legality(False, f"unknown role {role_value!r}")
    sources, strict_targets, relaxed_targets = rules
    if not (isinstance(source_type, ArgumentType) and source_type in sources):
        return Legality(
            False,
            f"{role_value} source must be one of: "
            + ", ".join(sorted(s.value for s in sources)),
        )
    target_cat = _category(target_type)
    if target_cat in strict_targets:
        return Legality(True, "ok")
    if target_cat in relaxed_targets:
        return Legality(True, "relaxed-target")
    return Legality(
        False,
        f"{role_value} target must be one of: "
        + ", ".join(sorted(strict_targets | relaxed_targets)),
    )


def required_roles(op: OperationType) -> frozenset[str]:
    """Role labels that must be filled for the operation to be executable."""
    return frozenset({"ARG0"}) | _EXTRA_REQUIRED.get(op, frozenset())


def ap_instructions(op: OperationType) -> list[str]:
    """Autoprotocol instruction names for the operation; empty when unmapped."""
    return list(AP_MAPPING[op])


def coverage_fraction(ops: list[OperationType]) -> float:
    """Fraction of operations grounded to a known (non-general) type."""
    if not ops:
        raise ValueError("coverage_fraction: empty operation list")
    known = sum(1 for op in ops if op is not OperationType.GENERAL)
    return known / len(ops)


def export_tables() -> dict:
    """All ontology tables as plain JSON-ready data."""
    return {
        "operation_types": [op.value for op in OperationType],
        "argument_types": [a.value for a in ArgumentType],
        "object_types": sorted(t.value for t in OBJECT_TYPES),
        "roles": ["ARG0", "ARG1", "ARG2", "site", "setting", "usage", "co-ref",
                  "located-at", "measure", "modifier", "part-of", "succ"],
        "required_roles": {op.value: sorted(required_roles(op)) for op in OperationType},
        "role_semantics": {op.value: ROLE_SEMANTICS[op] for op in OperationType},
        "autoprotocol_mapping": {op.value: list(names) for op, names in AP_MAPPING.items()},
        "non_core_rules": {
            role: {
                "sources": sorted(s.value for s in sources),
                "targets": sorted(strict),
                "relaxed_targets": sorted(relaxed),
            }
            for role, (sources, strict, relaxed) in _NON_CORE_RULES.items()
        },
    }
