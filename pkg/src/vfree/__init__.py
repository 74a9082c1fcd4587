"""Virtually free groups from graphs of finite groups: geodesics, Dehn rules, word problem."""

from .dehn import DehnEngine, GeodesicStack, RewriteRule, build_engine, rewrite_to_geodesic, synthesize_rules
from .finite_groups import FiniteGroup, SubgroupEmbedding, check_embedding, coset_partition, load_group
from .graph import ConstructionPlan, GraphOfGroups, load_graph, plan, read_graph, star_size, validate
from .normal_forms import GroupElement, VirtuallyFreeGroup
from .oracle import Ball, ExclusionSet, GeodesicOracle, grow_ball
from .words import InvolutiveAlphabet, Word, formal_inverse, shortlex_compare, subwords

__all__ = [
    "Ball", "ConstructionPlan", "DehnEngine", "ExclusionSet", "FiniteGroup", "GeodesicOracle",
    "GeodesicStack", "GraphOfGroups", "GroupElement", "InvolutiveAlphabet", "RewriteRule",
    "SubgroupEmbedding", "VirtuallyFreeGroup", "Word", "build_engine", "check_embedding",
    "coset_partition", "formal_inverse", "grow_ball", "load_graph", "load_group", "plan",
    "read_graph", "rewrite_to_geodesic", "shortlex_compare", "star_size", "subwords",
    "synthesize_rules", "validate",
]
