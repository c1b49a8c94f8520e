"""Step systems: a family alpha_1..alpha_ell with its integer expansion.

Given the steps as declared-basis reals, we choose a basis 1, beta_1..beta_r
of span_Q(1, alpha_1..alpha_ell) such that every alpha_i is an *integer*
combination of the betas plus a rational:

    alpha_i = sum_j p_ij beta_j + q_i,   p_ij in Z,  q_i in Q.

The irrational parts of the alphas generate a free abelian group of rank r
inside span_Q(beta-labels); a Hermite basis of that group (after clearing
denominators) provides the betas and makes the p_ij integers by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from ..errors import UsageError
from ..fixedpoint import fp_from_fraction
from ..exact.linalg import (
    clear_denominators,
    hermite_row_basis,
    integer_coordinates,
    rank_bareiss,
)
from ..exact.symbolic import BasisTable, SymbolicReal


@dataclass(frozen=True)
class StepSystem:
    """alpha_1..alpha_ell with expansion data over a chosen integer basis."""

    alphas: tuple[SymbolicReal, ...]
    betas: tuple[SymbolicReal, ...]     # the beta_j, as combinations of table entries
    p: tuple[tuple[int, ...], ...]      # ell x r integer matrix
    q: tuple[Fraction, ...]             # rational parts, one per step
    r: int                              # dim span_Q(1, alphas) - 1
    lam: int                            # dim span_Q(alphas) alone
    bits: int = 128
    _fp_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def ell(self) -> int:
        return len(self.alphas)

    @property
    def table(self) -> BasisTable:
        return self.alphas[0].table

    @property
    def m_coeff(self) -> int:
        """max_i sum_j |p_ij| (the pigeonhole constant m); 0 when r = 0."""
        if self.r == 0:
            return 0
        return max(sum(abs(x) for x in row) for row in self.p)

    def fixed_point_steps(self, bits: int | None = None) -> tuple[int, ...]:
        """Each alpha_i reduced mod 1 as a B-bit fixed-point fraction."""
        bits = self.bits if bits is None else bits
        if bits not in self._fp_cache:
            self._fp_cache[bits] = tuple(fp_from_fraction(a.value(), bits) for a in self.alphas)
        return self._fp_cache[bits]

    def beta_values(self) -> tuple[Fraction, ...]:
        return tuple(b.value() for b in self.betas)

    def q_denominator_lcm(self) -> int:
        return lcm(*(qi.denominator for qi in self.q)) if self.q else 1


def build_step_system(alphas: list[SymbolicReal], bits: int = 128) -> StepSystem:
    """Compute the integer expansion for a step family (ell >= 1)."""
    if not alphas:
        raise UsageError("need at least one step")
    table = alphas[0].table
    for a in alphas:
        if a.table is not table:
            raise UsageError("steps must share one BasisTable")
    labels = [l for l in table.labels() if any(l in a.coeffs for a in alphas)]
    for l in labels:
        if not table.is_irrational(l):
            raise UsageError(f"basis entry {l!r} used by a step is not declared irrational")

    coeff_rows = [a.coefficient_vector(labels) for a in alphas]
    denom = 1
    for row in coeff_rows:
        for c in row:
            denom = lcm(denom, c.denominator)
    int_rows = [[int(c * denom) for c in row] for row in coeff_rows]
    hermite = hermite_row_basis(int_rows)
    r = len(hermite)

    betas = tuple(
        SymbolicReal(table, 0, {labels[k]: Fraction(h[k], denom) for k in range(len(labels))})
        for h in hermite
    )
    p_rows = []
    for row in int_rows:
        coords = integer_coordinates(hermite, row)
        assert coords is not None, "expansion rows must lie in their own Hermite module"
        p_rows.append(tuple(coords))
    q = tuple(a.q0 for a in alphas)

    # exact reconstruction check: alpha_i == sum_j p_ij beta_j + q_i
    for a, prow, qi in zip(alphas, p_rows, q):
        acc = SymbolicReal(table, qi, {})
        for pij, beta in zip(prow, betas):
            acc = acc + beta * pij
        assert acc == a, "expansion failed to reproduce a step exactly"

    lam_rows = [[a.q0] + a.coefficient_vector(labels) for a in alphas]
    lam = rank_bareiss(clear_denominators(lam_rows))

    return StepSystem(tuple(alphas), betas, tuple(p_rows), q, r, lam, bits)


def steps_from_values(table: BasisTable, values, bits: int = 128) -> StepSystem:
    """Convenience builder: values may be rationals, labels, or SymbolicReals."""
    alphas = []
    for v in values:
        if isinstance(v, SymbolicReal):
            alphas.append(v)
        elif isinstance(v, str) and v in table:
            alphas.append(table.symbol(v))
        else:
            alphas.append(table.real(Fraction(v)))
    return build_step_system(alphas, bits)
