from .specs import (
    Classical,
    PowerAP,
    Polynomial,
    UnionAP,
    KPowerPlusSingleton,
    LambdaSpec,
    iter_parts,
    parts_up_to,
    format_spec,
)
from .registry import MODEL_REGISTRY
from .admissibility import AdmissibilityReport, check_admissible, require_admissible
from .roots import polynomial_roots
from .ldata import LData, l_data, l_eval, extra_pole_positions, counting_ratio, union_terms

__all__ = [
    'Classical',
    'PowerAP',
    'Polynomial',
    'UnionAP',
    'KPowerPlusSingleton',
    'LambdaSpec',
    'iter_parts',
    'parts_up_to',
    'format_spec',
    'MODEL_REGISTRY',
    'AdmissibilityReport',
    'check_admissible',
    'require_admissible',
    'polynomial_roots',
    'LData',
    'l_data',
    'l_eval',
    'extra_pole_positions',
    'counting_ratio',
    'union_terms',
]
