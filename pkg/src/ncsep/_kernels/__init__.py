"""Hot kernels: compiled Cython build when available, pure Python otherwise.

Set ``NCSEP_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _py

python_backend = _py
compiled_backend = None

if not os.environ.get("NCSEP_PURE_PYTHON"):
    try:
        from . import _fast as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else _py
BACKEND = "cython" if compiled_backend is not None else "python"

harper_profile = _impl.harper_profile
refine_pass = _impl.refine_pass
