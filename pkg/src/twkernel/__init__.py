"""Treewidth preprocessing: a vertex-cover kernel, exact oracles and a cross-composition generator."""

from .composer import (
    ComposedInstance,
    ElimCobipartiteInstance,
    canonical_order,
    check_cost_identity,
    compose,
    min_canonical_cost,
    random_instance,
    validate_instance,
    verify_or_property,
)
from .elim import CostReport, elimination_cost, min_cost_clique_last, pull_forward
from .errors import CapacityError, FormatError, ValidationError
from .exact import TreewidthResult, decide_treewidth, treewidth_bruteforce, treewidth_dp
from .graph import Graph
from .kernel import KernelResult, Outcome, kernelize
from .vc import VcInstance, approx_vertex_cover, is_vertex_cover, min_vertex_cover

__all__ = [
    "CapacityError",
    "ComposedInstance",
    "CostReport",
    "ElimCobipartiteInstance",
    "FormatError",
    "Graph",
    "KernelResult",
    "Outcome",
    "TreewidthResult",
    "ValidationError",
    "VcInstance",
    "approx_vertex_cover",
    "canonical_order",
    "check_cost_identity",
    "compose",
    "decide_treewidth",
    "elimination_cost",
    "is_vertex_cover",
    "kernelize",
    "min_canonical_cost",
    "min_cost_clique_last",
    "min_vertex_cover",
    "pull_forward",
    "random_instance",
    "treewidth_bruteforce",
    "treewidth_dp",
    "validate_instance",
    "verify_or_property",
]
