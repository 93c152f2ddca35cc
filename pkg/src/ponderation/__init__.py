"""Ponderation-function rings, their kernel series, symbols and integral operators."""

import os as _os

if "PONDERATION_THREADS" in _os.environ:  # must precede the numpy import
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["PONDERATION_THREADS"])

from . import index_sets, operators, quadrature, ring, scalars, series, special, verification  # noqa: E402
from .operators import OperatorDescriptor, TestFunction, apply_operator, compose, named_transform  # noqa: E402
from .quadrature import build_grid  # noqa: E402
from .series import KernelQuery, SymbolValue, closed_form, convolve, kernel_series, symbol  # noqa: E402
from .verification import run_suite  # noqa: E402

__all__ = [
    "index_sets", "operators", "quadrature", "ring", "scalars", "series", "special", "verification",
    "OperatorDescriptor", "TestFunction", "apply_operator", "compose", "named_transform", "build_grid",
    "KernelQuery", "SymbolValue", "closed_form", "convolve", "kernel_series", "symbol", "run_suite",
]
