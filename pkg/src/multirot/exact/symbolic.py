"""Declared-basis exact reals.

A SymbolicReal is q0 + sum_j c_j * beta_j where q0 and the c_j are exact
rationals and the beta_j are entries of a shared BasisTable.  Entries
flagged `irrational` are *declared* to be, together with 1, linearly
independent over the rationals; every independence verdict downstream is
relative to that declaration.  Numerically, the decimal string stored in
the table is the ground truth for an entry's value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import UsageError

MIN_SIGNIFICANT_DIGITS = 50
VALUE_UPPER_BOUND = 10**6


def significant_digits(value: str) -> int:
    """Count significant decimal digits of a plain decimal string."""
    s = value.strip().lstrip("+-")
    if "e" in s or "E" in s:
        s = s.split("e")[0].split("E")[0]
    digits = s.replace(".", "").lstrip("0")
    return len(digits)


@dataclass(frozen=True)
class BasisEntry:
    label: str
    value: str  # decimal string, >= 50 significant digits
    irrational: bool = True


class BasisTable:
    """Ordered table of named basis reals with declared irrationality."""

    def __init__(self, entries: Iterable[BasisEntry]):
        entries = list(entries)
        labels = [e.label for e in entries]
        if len(set(labels)) != len(labels):
            raise UsageError("basis labels must be distinct")
        values = {}
        for e in entries:
            try:
                v = Fraction(e.value)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"basis value {e.label!r} does not parse: {e.value!r}") from exc
            if not (0 < v < VALUE_UPPER_BOUND):
                raise UsageError(f"basis value {e.label!r} must lie in (0, 10^6)")
            if significant_digits(e.value) < MIN_SIGNIFICANT_DIGITS:
                raise UsageError(
                    f"basis value {e.label!r} needs >= {MIN_SIGNIFICANT_DIGITS} significant digits"
                )
            values[e.label] = v
        self.entries = tuple(entries)
        self._values = values
        self._order = {e.label: i for i, e in enumerate(entries)}

    def __contains__(self, label: str) -> bool:
        return label in self._values

    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.entries)

    def value(self, label: str) -> Fraction:
        return self._values[label]

    def is_irrational(self, label: str) -> bool:
        return self.entries[self._order[label]].irrational

    def order(self, label: str) -> int:
        return self._order[label]

    def real(self, q0: Fraction | int | str = 0, coeffs: Mapping[str, Fraction | int | str] | None = None) -> "SymbolicReal":
        return SymbolicReal(self, q0, coeffs or {})

    def symbol(self, label: str, coeff: Fraction | int | str = 1) -> "SymbolicReal":
        return SymbolicReal(self, 0, {label: coeff})


class SymbolicReal:
    """Exact rational combination q0 + sum c_j * beta_j over a BasisTable.

    Canonical form drops zero coefficients; equality and hashing compare
    q0 and the coefficient map literally (same-table values only).
    """

    __slots__ = ("table", "q0", "coeffs")

    def __init__(self, table: BasisTable, q0, coeffs: Mapping[str, Fraction | int | str]):
        self.table = table
        self.q0 = Fraction(q0)
        clean = {}
        for label, c in coeffs.items():
            if label not in table:
                raise UsageError(f"unknown basis label {label!r}")
            c = Fraction(c)
            if c != 0:
                clean[label] = c
        self.coeffs = clean

    # -- arithmetic (rational-linear only) --------------------------------

    def _check_table(self, other: "SymbolicReal") -> None:
        if self.table is not other.table:
            raise UsageError("mixed BasisTables")

    def __add__(self, other):
        if isinstance(other, SymbolicReal):
            self._check_table(other)
            coeffs = dict(self.coeffs)
            for label, c in other.coeffs.items():
                coeffs[label] = coeffs.get(label, Fraction(0)) + c
            return SymbolicReal(self.table, self.q0 + other.q0, coeffs)
        return SymbolicReal(self.table, self.q0 + Fraction(other), self.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicReal(self.table, -self.q0, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SymbolicReal) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return SymbolicReal(self.table, self.q0 * s, {k: v * s for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymbolicReal):
            return NotImplemented
        return self.table is other.table and self.q0 == other.q0 and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.table), self.q0, frozenset(self.coeffs.items())))

    def __repr__(self):
        parts = [str(self.q0)] if self.q0 or not self.coeffs else []
        for label in sorted(self.coeffs, key=self.table.order):
            parts.append(f"{self.coeffs[label]}*{label}")
        return " + ".join(parts) or "0"

    # -- queries -----------------------------------------------------------

    def is_rational(self) -> bool:
        return not self.coeffs

    def is_integer(self) -> bool:
        return not self.coeffs and self.q0.denominator == 1

    def value(self) -> Fraction:
        """Exact value relative to the declared decimal ground truth."""
        v = self.q0
        for label, c in self.coeffs.items():
            v += c * self.table.value(label)
        return v

    def frac(self) -> Fraction:
        v = self.value()
        return v - (v.numerator // v.denominator)

    def fixed_point(self, bits: int) -> int:
        from ..fixedpoint import fp_from_fraction

        return fp_from_fraction(self.value(), bits)

    def coefficient_vector(self, labels: Iterable[str]) -> list[Fraction]:
        return [self.coeffs.get(label, Fraction(0)) for label in labels]


# -- built-in constants ------------------------------------------------------

# 60 significant digits each, truncated from standard references.
BUILTIN_VALUES = {
    "sqrt2": "1.41421356237309504880168872420969807856967187537694807317668",
    "sqrt3": "1.73205080756887729352744634150587236694280525381038062805581",
    "sqrt5": "2.23606797749978969640917366873127623544061835961152572427090",
    "sqrt7": "2.64575131106459059050161575363926042571025918308245018036833",
    "phi": "1.61803398874989484820458683436563811772030917980576286213545",
    "log2": "0.693147180559945309417232121458176568075500134360255254120680",
    "log3": "1.09861228866810969139524523692252570464749055782274945173469",
    "log5": "1.60943791243410037460075933322618763952560135426851772191265",
    "log7": "1.94591014905531330510535274344317972963708472958186118845939",
    "pi": "3.14159265358979323846264338327950288419716939937510582097494",
    "e": "2.71828182845904523536028747135266249775724709369995957496697",
}


def builtin_table(labels: Iterable[str] | None = None) -> BasisTable:
    """A BasisTable over well-known irrational constants."""
    use = tuple(labels) if labels is not None else tuple(BUILTIN_VALUES)
    missing = [l for l in use if l not in BUILTIN_VALUES]
    if missing:
        raise UsageError(f"unknown builtin constants: {missing}")
    return BasisTable(BasisEntry(l, BUILTIN_VALUES[l], True) for l in use)
