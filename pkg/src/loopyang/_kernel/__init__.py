"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``LOOPYANG_PURE=1`` to force the pure-Python kernel.
"""

import os

if os.environ.get("LOOPYANG_PURE") == "1":
    from ._mulcore_py import IMPLEMENTATION, mul_terms, term_weight
else:
    try:
        from ._mulcore import IMPLEMENTATION, mul_terms, term_weight
    except ImportError:
        from ._mulcore_py import IMPLEMENTATION, mul_terms, term_weight

__all__ = ["IMPLEMENTATION", "mul_terms", "term_weight"]
