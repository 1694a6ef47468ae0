"""Reduction translator, soundness fuzzing, bounded satisfiability and query planning."""

from .reducer import Translator, translate, validity_check, find_common_under_query
from .soundness import Counterexample, SchemaResult, FuzzReport, fuzz_schema, fuzz_soundness
from .satisfiability import (
    SatStatus, SatResult, SatState, SatChecker, PreStructure,
    build_I, inequality_atoms, search_prestructure, realise, sat_static, sat_bounded,
)
from .planner import QueryAction, PlanStep, Plan, plan, replay

__all__ = [
    'Translator',
    'translate',
    'validity_check',
    'find_common_under_query',
    'Counterexample',
    'SchemaResult',
    'FuzzReport',
    'fuzz_schema',
    'fuzz_soundness',
    'SatStatus',
    'SatResult',
    'SatState',
    'SatChecker',
    'PreStructure',
    'build_I',
    'inequality_atoms',
    'search_prestructure',
    'realise',
    'sat_static',
    'sat_bounded',
    'QueryAction',
    'PlanStep',
    'Plan',
    'plan',
    'replay'
]
