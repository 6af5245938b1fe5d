"""Select the compiled kernels when importable, else the pure-Python fallback.

Set ``CKFORGE_PURE=1`` to force the fallback (used by the benchmark and by
the test that checks both backends agree).
"""

from __future__ import annotations

import os

from . import _fallback

kernels = _fallback
NAME = "python"

if os.environ.get("CKFORGE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        NAME = "cython"
    except ImportError:
        pass

shuffle_words = kernels.shuffle_words
rank_mod_p = kernels.rank_mod_p

# the fallback handles moduli the compiled kernel rejects (even or >= 2**62)
kernels_fallback = _fallback
