"""Select the finite-field kernels at import time.

The compiled extension is used when it imports and the prime is within its
range; ``KIMLOCI_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _fallback

try:
    if os.environ.get("KIMLOCI_BACKEND", "").lower() == "python":
        raise ImportError("compiled backend disabled by KIMLOCI_BACKEND")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _pick(p: int):
    if _compiled is not None and p < _compiled.MAX_PRIME:
        return _compiled
    return _fallback


def poly_row(coeffs, p: int):
    return _pick(p).poly_row(coeffs, p)


def poly_eval(coeffs, a: int, p: int) -> int:
    return _pick(p).poly_eval(coeffs, a, p)


def li_coeffs(n: int, p: int):
    return _pick(p).li_coeffs(n, p)
