"""Ranking competitions by all-pairs maximum flow."""

from flowrank.kernels import BACKEND
from flowrank.maxflow import (
    Cut,
    Flow,
    FlowMatrix,
    check_gomory_hu,
    cut_capacity,
    flow_matrix,
    lambda_oracle,
    max_flow_value,
    max_flow_witness,
    min_cut,
)
from flowrank.methods import (
    MethodId,
    StrengthMatrix,
    borda_relation,
    compare_methods,
    dual_borda_relation,
    flow_relation,
    rule,
    schulze_relation,
    schulze_strength,
    solution,
)
from flowrank.network import (
    CompetitionTable,
    Network,
    TableRow,
    VertexSet,
    classify,
    from_table,
    margin,
    reverse,
)
from flowrank.relation import (
    LinearOrder,
    Relation,
    classify_relation,
    k_maximum_sets,
    linear_extensions,
    linear_refinements,
    maxima,
    minima,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CompetitionTable",
    "Cut",
    "Flow",
    "FlowMatrix",
    "LinearOrder",
    "MethodId",
    "Network",
    "Relation",
    "StrengthMatrix",
    "TableRow",
    "VertexSet",
    "borda_relation",
    "check_gomory_hu",
    "classify",
    "classify_relation",
    "compare_methods",
    "cut_capacity",
    "dual_borda_relation",
    "flow_matrix",
    "flow_relation",
    "from_table",
    "k_maximum_sets",
    "lambda_oracle",
    "linear_extensions",
    "linear_refinements",
    "margin",
    "max_flow_value",
    "max_flow_witness",
    "maxima",
    "min_cut",
    "minima",
    "reverse",
    "rule",
    "schulze_relation",
    "schulze_strength",
    "solution",
]
