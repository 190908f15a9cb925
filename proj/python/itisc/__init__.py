"""Python bindings for the ITISC clustering toolkit."""

from ._core import (
    ConfigError,
    NumericalError,
    __version__,
    builtin_spec_names,
    certainty_equivalence,
    fit,
    gaussian_kl,
    m_boundary_dist,
    predict,
    sample_builtin,
    within_cluster_dist,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "__version__",
    "builtin_spec_names",
    "certainty_equivalence",
    "fit",
    "gaussian_kl",
    "m_boundary_dist",
    "predict",
    "sample_builtin",
    "within_cluster_dist",
]
