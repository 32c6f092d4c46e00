from .exact import (
    BigCountTable,
    exact_counts,
    pentagonal_counts,
    model_counts,
    f_weights,
    convolution_residual,
)

__all__ = [
    'BigCountTable',
    'exact_counts',
    'pentagonal_counts',
    'model_counts',
    'f_weights',
    'convolution_residual',
]
