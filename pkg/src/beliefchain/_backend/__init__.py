"""Kernel backend selection.

The compiled extension is preferred when built; the pure-NumPy fallback
implements identical semantics (and, by construction, bit-identical
outputs).  Set BELIEFCHAIN_BACKEND=python|compiled|auto to override.
"""

import os

from . import _purepy

try:
    from . import _core
except ImportError:
    _core = None

_requested = os.environ.get("BELIEFCHAIN_BACKEND", "auto")
if _requested == "auto":
    _impl = _core if _core is not None else _purepy
elif _requested == "compiled":
    if _core is None:
        raise ImportError("BELIEFCHAIN_BACKEND=compiled, but the compiled "
                          "extension is not available")
    _impl = _core
elif _requested == "python":
    _impl = _purepy
else:
    raise ValueError(f"unrecognized BELIEFCHAIN_BACKEND: {_requested!r}")

BACKEND = "compiled" if _impl is not _purepy else "python"
HAVE_COMPILED = _core is not None
MAX_AGENTS = _purepy.MAX_AGENTS

threshold_tree = _impl.threshold_tree
sequence_pmf = _impl.sequence_pmf
simulate_counts = _impl.simulate_counts
counter_uniforms = _purepy.counter_uniforms


def get_backend(name: str):
    """Fetch a backend module by name ('python' or 'compiled'); used by the
    benchmark and the cross-backend tests."""
    if name == "python":
        return _purepy
    if name == "compiled":
        if _core is None:
            raise ValueError("compiled backend is not available")
        return _core
    raise ValueError(f"unknown backend {name!r}")
