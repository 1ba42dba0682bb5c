"""Numerical and exact heat-semigroup engines, compressions and kernel diagnostics."""

from .compress import CompressedOperator, compress
from .expm import expm_action, onenorm
from .gap import spectral_gap_probe
from .heat import (
    SCAN_TOL,
    THREADS_ENV,
    BoundUnavailable,
    HeatEntry,
    HeatReport,
    exact_partial_sum,
    exact_scan,
    heat_columns,
    heat_limit_scan,
    heat_moments,
    heat_trace_exact,
    heat_trace_numeric,
    remainder_bound,
    trace_from_columns,
)
from .kernel import (
    DecompositionCheck,
    KernelCheck,
    invert_generators,
    closed_form_laplacian,
    rewritten_laplacian,
    verify_decomposition,
    verify_kernel_structure,
)

__all__ = [
    "SCAN_TOL", "THREADS_ENV",
    "BoundUnavailable", "CompressedOperator", "DecompositionCheck", "HeatEntry", "HeatReport",
    "KernelCheck", "compress", "exact_partial_sum", "exact_scan", "expm_action",
    "heat_columns", "heat_limit_scan", "heat_moments", "heat_trace_exact", "heat_trace_numeric",
    "invert_generators", "closed_form_laplacian", "rewritten_laplacian", "onenorm", "remainder_bound",
    "spectral_gap_probe", "trace_from_columns", "verify_decomposition", "verify_kernel_structure",
]
