"""Select the compiled kernels when available, the pure-Python ones otherwise.

Set ``IETLANG_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("IETLANG_PURE_PYTHON"):
    from ._purepy import bwt_codes, clusters_codes, first_crossing, next_standard_witness, unit_cylinder

    BACKEND = "python"
else:
    try:
        from ._speedups import bwt_codes, clusters_codes, first_crossing, next_standard_witness, unit_cylinder

        BACKEND = "cython"
    except ImportError:
        from ._purepy import bwt_codes, clusters_codes, first_crossing, next_standard_witness, unit_cylinder

        BACKEND = "python"

__all__ = ["BACKEND", "bwt_codes", "clusters_codes", "first_crossing", "next_standard_witness", "unit_cylinder"]
