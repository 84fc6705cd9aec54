"""Select the compiled kernels when available, else the numpy fallback.

Set ``FRACPW_BACKEND=python`` to force the fallback.
"""
import os

from . import _core_py

if os.environ.get("FRACPW_BACKEND", "").lower() == "python":
    _impl = _core_py
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _core_py

BACKEND = _impl.BACKEND
corrected_exp = _impl.corrected_exp
exp_sum = _impl.exp_sum
sinc_sum = _impl.sinc_sum
