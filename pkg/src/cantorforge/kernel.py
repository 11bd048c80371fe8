"""Selects the stage-evolution kernel at import time.

Prefers the compiled extension; falls back to the pure-Python twin.  Set
``CANTORFORGE_KERNEL=python`` (or ``compiled``) to force one side, e.g. for
benchmarking.
"""

import os

from . import _stagekernel_py

_forced = os.environ.get("CANTORFORGE_KERNEL")

if _forced == "python":
    _impl = _stagekernel_py
else:
    try:
        from . import _stagekernel as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _stagekernel_py

IMPLEMENTATION = _impl.IMPLEMENTATION

bump_stage = _impl.bump_stage
expand_stage = _impl.expand_stage
first_violation = _impl.first_violation
genus_total = _impl.genus_total


def implementations():
    """All importable kernel implementations, for tests and benchmarks."""
    impls = {"python": _stagekernel_py}
    try:
        from . import _stagekernel

        impls["compiled"] = _stagekernel
    except ImportError:
        pass
    return impls
