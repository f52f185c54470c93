"""Backend selection for the jet product kernel.

The compiled extension is used when it imports; setting the environment
variable ``HARMONIC_ANSATZ_PURE=1`` forces the numpy implementation.
"""

import os

from . import _jetcore_py

BACKEND = "numpy"
jet_mul = _jetcore_py.jet_mul

if os.environ.get("HARMONIC_ANSATZ_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._jetcore import jet_mul  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass


def backends():
    """Return ``{name: jet_mul}`` for every backend importable here."""
    found = {"numpy": _jetcore_py.jet_mul}
    try:
        from ._jetcore import jet_mul as compiled
        found["cython"] = compiled
    except ImportError:
        pass
    return found
