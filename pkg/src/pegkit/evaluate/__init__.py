from .kernel import BACKEND as KERNEL_BACKEND
from .relations import RelationReport, RoleScore, relation_prf
from .reports import format_decomposition, format_relations, format_smatch
from .smatch import (Alignment, PRF, ScoreReport, SmatchResult, TripleSet,
                     align, decompose, graph_triples, smatch)

__all__ = [
    "Alignment", "PRF", "RelationReport", "RoleScore", "ScoreReport",
    "SmatchResult", "TripleSet", "KERNEL_BACKEND", "align", "decompose",
    "format_decomposition", "format_relations", "format_smatch",
    "graph_triples", "relation_prf", "smatch",
]
