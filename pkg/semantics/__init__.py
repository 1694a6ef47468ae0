"""Models, the reference evaluator, model documents and labelling."""

from .kripke import (
    Model, canonical_blocks, eval_prop, prop_extension, term_value, query_share, bcs_holds,
    update, components, reach_group,
)
from .evaluator import Evaluator, evaluate, extension, is_valid_on
from .model_io import (
    CostEntry, ModelDocument, load_model, load_model_file, dump_model, dump_document, dump_model_file,
)
from .labeling import QueryOccurrence, SubEntry, OrderedSubList, LabelStore, sub_list, global_check, label_store

__all__ = [
    'Model', 'canonical_blocks', 'eval_prop', 'prop_extension', 'term_value', 'query_share',
    'bcs_holds', 'update', 'components', 'reach_group',
    'Evaluator', 'evaluate', 'extension', 'is_valid_on',
    'CostEntry', 'ModelDocument', 'load_model', 'load_model_file', 'dump_model', 'dump_document',
    'dump_model_file',
    'QueryOccurrence', 'SubEntry', 'OrderedSubList', 'LabelStore', 'sub_list', 'global_check',
    'label_store'
]
