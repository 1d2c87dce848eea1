"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``TRSDP_PURE_PYTHON=1``
forces the fallback.
"""

import os

if os.environ.get("TRSDP_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND

substitute = _impl.substitute
match_into = _impl.match_into
replace_at = _impl.replace_at
find_redexes = _impl.find_redexes
has_redex = _impl.has_redex
successors = _impl.successors


def available_backends():
    """Modules implementing the kernel interface that can be imported here."""
    from . import _pykernels

    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
