"""Axiom schemas of the proof system and random instance generators."""

from .base_axiom import AxiomSchema
from .generators import (
    Signature, random_partition, random_group, random_prop, random_term, random_ineq,
    random_formula, random_static_formula, random_model,
)
from .propositional import TautologySchema
from .inequality import (
    ZeroTermSchema, PermutationSchema, AdditionSchema, ScalingSchema, TotalitySchema, MonotonicitySchema,
)
from .epistemic import (
    DistributionSchema, TruthSchema, PositiveIntrospectionSchema, NegativeIntrospectionSchema,
    CommonKnowledgeSchema,
)
from .resource import BudgetSignSchema, CostSignSchema, TautologyCostSchema, SimilarCostSchema, similar_variant
from .reduction import (
    AtomReductionSchema, InequalityReductionSchema, NegationReductionSchema, ConjunctionReductionSchema,
    OutsiderKnowledgeSchema, MemberKnowledgeSchema,
)
from .awareness import BudgetAwarenessSchema, CostAwarenessSchema


def all_schemas():
    """Every schema, in proof-system order, awareness schemas last."""
    return [
        TautologySchema(),
        ZeroTermSchema(), PermutationSchema(), AdditionSchema(), ScalingSchema(),
        TotalitySchema(), MonotonicitySchema(),
        DistributionSchema(), TruthSchema(), PositiveIntrospectionSchema(),
        NegativeIntrospectionSchema(), CommonKnowledgeSchema(),
        BudgetSignSchema(), CostSignSchema(), TautologyCostSchema(), SimilarCostSchema(),
        AtomReductionSchema(), InequalityReductionSchema(), NegationReductionSchema(),
        ConjunctionReductionSchema(), OutsiderKnowledgeSchema(), MemberKnowledgeSchema(),
        BudgetAwarenessSchema(), CostAwarenessSchema(),
    ]


__all__ = [
    'AxiomSchema', 'Signature', 'all_schemas',
    'random_partition', 'random_group', 'random_prop', 'random_term', 'random_ineq',
    'random_formula', 'random_static_formula', 'random_model',
    'TautologySchema',
    'ZeroTermSchema', 'PermutationSchema', 'AdditionSchema', 'ScalingSchema', 'TotalitySchema',
    'MonotonicitySchema',
    'DistributionSchema', 'TruthSchema', 'PositiveIntrospectionSchema', 'NegativeIntrospectionSchema',
    'CommonKnowledgeSchema',
    'BudgetSignSchema', 'CostSignSchema', 'TautologyCostSchema', 'SimilarCostSchema', 'similar_variant',
    'AtomReductionSchema', 'InequalityReductionSchema', 'NegationReductionSchema',
    'ConjunctionReductionSchema', 'OutsiderKnowledgeSchema', 'MemberKnowledgeSchema',
    'BudgetAwarenessSchema', 'CostAwarenessSchema'
]
