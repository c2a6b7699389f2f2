"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
numpy fallback takes over transparently.  Set ``KRAUSSIM_PURE=1`` in the
environment to force the fallback (benchmarking, debugging).
"""

from __future__ import annotations

import os

if os.environ.get("KRAUSSIM_PURE") == "1":
    from . import _kernels_py as kernels

    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        COMPILED = False

BACKEND = "compiled" if COMPILED else "pure-python"

apply_channel_steps = kernels.apply_channel_steps
rk4_lindblad = kernels.rk4_lindblad
