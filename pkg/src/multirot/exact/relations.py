"""Float-based integer-relation detection (heuristic, advisory only).

This is the one deliberately non-exact operation in the package: a
PSLQ-style search for small integer relations among *undeclared* numeric
inputs.  Its output suggests candidate relations to declare and verify
exactly; it proves nothing.
"""

from __future__ import annotations

import mpmath


def integer_relation_heuristic(values, max_coeff: int = 10**6, dps: int = 15) -> list[int] | None:
    """Candidate integers c with sum c_i * values_i ~ 0, via PSLQ.

    Advisory only: a returned relation holds to the working precision
    (default: float accuracy), not exactly; None means nothing was found
    within the coefficient bound.  Declare and verify any hit exactly
    before relying on it.
    """
    if len(values) < 2:
        return None
    with mpmath.workdps(dps):
        xs = [mpmath.mpf(str(v)) for v in values]
        rel = mpmath.pslq(xs, maxcoeff=max_coeff)
    return list(rel) if rel is not None else None
