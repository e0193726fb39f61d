"""Backend selection for the statistic kernels.

``MGFNORM_BACKEND`` chooses the implementation:

* ``auto`` (default): numba if importable, else numpy
* ``numba``: require the jit kernels (ImportError if numba is missing)
* ``numpy``: force the pure-numpy reference kernels

The choice is resolved once, at first use; set the variable before importing
the package (or call :func:`set_backend` explicitly, mainly for tests).
"""

import os

from . import _kernels_numpy

_active = None
_active_name = None


def _resolve(name):
    if name == "numpy":
        return _kernels_numpy, "numpy"
    if name == "numba":
        from . import _kernels_numba
        return _kernels_numba, "numba"
    if name == "auto":
        try:
            from . import _kernels_numba
            return _kernels_numba, "numba"
        except ImportError:
            return _kernels_numpy, "numpy"
    raise ValueError(
        "MGFNORM_BACKEND must be auto, numba or numpy, got %r" % (name,)
    )


def get_kernels():
    """Return the active kernel module (resolving the env flag on first call)."""
    global _active, _active_name
    if _active is None:
        name = os.environ.get("MGFNORM_BACKEND", "auto").strip().lower()
        _active, _active_name = _resolve(name)
    return _active


def backend_name():
    get_kernels()
    return _active_name


def set_backend(name):
    """Force a backend, bypassing the environment flag. Returns its name."""
    global _active, _active_name
    _active, _active_name = _resolve(name)
    return _active_name
