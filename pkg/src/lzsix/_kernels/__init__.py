"""Hot-kernel backend selection.

The compiled extension (Cython) implements the inner loops that dominate
runtime: Kasai LCP, BWT rank, the LZ parse driver, and the extraction
loop.  It is used when importable unless LZSIX_PURE is set; the pure
numpy/python implementations are always available and produce identical
results.
"""

import os

from . import pure

if os.environ.get("LZSIX_PURE"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

lcp_from_sa = _impl.lcp_from_sa
bwt_rank = _impl.bwt_rank
lz_parse = _impl.lz_parse
extract_loop = _impl.extract_loop


def backend():
    return BACKEND
