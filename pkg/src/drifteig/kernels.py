"""Backend selection for the tridiagonal pencil kernels.

Prefers the compiled extension ``_tridiag``; falls back to the pure-Python
implementation when the extension is missing or when ``DRIFTEIG_PURE=1`` is
set in the environment.  ``BACKEND`` records which one is active.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("DRIFTEIG_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _tridiag as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build environment
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "pure"

pencil_inertia = _impl.pencil_inertia
smallest_pencil_eigenvalue = _impl.smallest_pencil_eigenvalue


def inertia_with_retry(ad, ae, bd, be, sigma, retries: int = 2) -> int:
    """Pivot-sign count of A - sigma*B, re-probing on factorization breakdown.

    A pivot hitting the underflow floor means sigma sits (numerically) on an
    eigenvalue of a leading minor; shifting the probe by an ulp-scale amount
    resolves it.  After ``retries`` shifts the floored count is accepted.
    """
    count, substituted = pencil_inertia(ad, ae, bd, be, sigma)
    shift = 4.0 * np.finfo(float).eps * max(1.0, abs(sigma))
    while substituted and retries > 0:
        sigma = sigma + shift
        shift *= 16.0
        count, substituted = pencil_inertia(ad, ae, bd, be, sigma)
        retries -= 1
    return count
