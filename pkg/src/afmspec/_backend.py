"""Backend switch between numba-compiled kernels and the pure-numpy path.

Set ``AFMSPEC_DISABLE_NUMBA=1`` in the environment before importing the
package to force the numpy implementations.
"""
import os

DISABLE_ENV = "AFMSPEC_DISABLE_NUMBA"

_disabled = os.environ.get(DISABLE_ENV, "").strip().lower() in ("1", "true", "yes", "on")

HAVE_NUMBA = False
if not _disabled:
    try:
        import numba

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False


def njit(fn):
    """``numba.njit(cache=True)`` when numba is active, identity otherwise."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend_name():
    return "numba" if HAVE_NUMBA else "numpy"
