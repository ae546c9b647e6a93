"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the
pure-NumPy fallback is always available. Set ``CAUSAL_BEAMS_PURE=1`` to
force the fallback (used by the benchmark and for debugging).
"""

import os

if os.environ.get("CAUSAL_BEAMS_PURE"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl

BACKEND = impl.BACKEND

j0 = impl.j0
j1 = impl.j1
pq_split = impl.pq_split
impulse_beam_abs = impl.impulse_beam_abs
