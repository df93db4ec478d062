"""Constacyclic codes of length 3p^s over F_{p^m}[u, v]/(u^2, v^2, uv - vu).

Layers: ``gf`` (finite fields), ``ring_r`` (the base ring), ``poly`` and
``quotient`` (the ambient ring R[x]/(x^n - alpha)), ``codes`` (ideal
classification, counts, duals), ``oracle`` (brute-force F_p linear algebra)
and ``verify`` (check suites comparing the two).
"""

from .codes import CodeSpec, ZSeries, describe, dual_spec, generators, validate_spec
from .gf import field_new
from .quotient import make_context
from .ring_r import RElem

__all__ = ["CodeSpec", "ZSeries", "RElem", "describe", "dual_spec", "field_new", "generators",
           "make_context", "validate_spec"]
__version__ = "0.1.0"
