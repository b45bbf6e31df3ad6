"""Kernel backend selection.

The compiled extension is preferred; the numpy reference implementation is
the fallback. Set ``PONCELET_PURE_PY=1`` to force the fallback (used by the
benchmark and by the backend-agreement tests).
"""

import os

from . import _ref

if os.environ.get("PONCELET_PURE_PY"):
    impl = _ref
    HAVE_EXT = False
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]
        HAVE_EXT = True
    except ImportError:
        impl = _ref
        HAVE_EXT = False

poncelet_advance = impl.poncelet_advance
poncelet_orbit = impl.poncelet_orbit
arnold_advance = impl.arnold_advance
arnold_orbit = impl.arnold_orbit

BACKEND = "compiled" if HAVE_EXT else "python"
