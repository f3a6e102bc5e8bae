"""Kernel selection: compiled extension when built, NumPy fallback otherwise.

Set ``EGTA_PURE_KERNELS=1`` to force the fallback (used by the benchmark and
the equivalence tests).
"""

from __future__ import annotations

import os

from egta import _fallback

if os.environ.get("EGTA_PURE_KERNELS") == "1":
    _impl = _fallback
else:
    try:
        from egta import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

IMPLEMENTATION = _impl.IMPLEMENTATION

condition_stream = _impl.condition_stream
noise_sign_matrix = _impl.noise_sign_matrix
welford_merge = _impl.welford_merge
