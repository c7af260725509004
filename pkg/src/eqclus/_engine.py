"""Select the exhaustive-search engine: compiled extension, else pure Python.

Set EQCLUS_PURE_PYTHON=1 to force the fallback (used by the benchmark and to
test both paths); otherwise the compiled module wins when it was built.
"""

import os

if os.environ.get("EQCLUS_PURE_PYTHON"):
    from ._bruteforce_py import best_equal_partition
    COMPILED = False
else:
    try:
        from ._bruteforce import best_equal_partition
        COMPILED = True
    except ImportError:  # extension not built on this interpreter
        from ._bruteforce_py import best_equal_partition
        COMPILED = False

__all__ = ["best_equal_partition", "COMPILED"]
