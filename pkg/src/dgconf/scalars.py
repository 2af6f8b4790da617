"""Exact rational scalars.

Everything in this package is computed over the rationals with no rounding,
ever.  Row reduction dominates the runtime and spends it in scalar
arithmetic, so the constructor ``Q`` is bound to gmpy2's C-implemented
``mpq`` when available and to the pure-Python ``fractions.Fraction``
otherwise.  Set ``DGCONF_RATIONAL=fraction`` (or ``gmpy2``) to force a
backend; ``benchmarks/bench_rref.py`` compares the two.

Both backends keep values reduced to lowest terms with positive
denominators and expose ``.numerator`` / ``.denominator``.
"""

import os

_requested = os.environ.get("DGCONF_RATIONAL", "auto")
if _requested not in ("auto", "gmpy2", "fraction"):
    raise ValueError(f"DGCONF_RATIONAL must be 'gmpy2' or 'fraction', got {_requested!r}")

if _requested in ("auto", "gmpy2"):
    try:
        from gmpy2 import mpq as Q
        BACKEND = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise
        from fractions import Fraction as Q
        BACKEND = "fraction"
else:
    from fractions import Fraction as Q
    BACKEND = "fraction"

ZERO = Q(0)
ONE = Q(1)


def rat(value):
    """Coerce an int, a 'p/q' string, or an existing scalar to the backend type."""
    if isinstance(value, Q):
        return value
    if isinstance(value, (int, str)):
        return Q(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Q(int(value.numerator)) / Q(int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational")
