"""Symbol-selection strategies for orbit generation.

Word-valued strategies (explicit, periodic, seeded random) materialize the
whole symbol sequence up front; the greedy-avoid strategy is adaptive and
is consumed step by step by the generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import UsageError


class Strategy:
    adaptive = False

    def descriptor(self) -> str:
        raise NotImplementedError

    def materialize(self, n: int, ell: int, rng: np.random.Generator | None) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class ExplicitWord(Strategy):
    word: tuple[int, ...]  # symbols 1..ell

    def descriptor(self) -> str:
        shown = "".join(map(str, self.word[:32]))
        return f"word:{shown}{'...' if len(self.word) > 32 else ''}"

    def materialize(self, n, ell, rng=None):
        if len(self.word) < n:
            raise UsageError(f"explicit word of length {len(self.word)} shorter than n={n}")
        w = np.asarray(self.word[:n], dtype=np.uint8)
        if w.size and (w.min() < 1 or w.max() > ell):
            raise UsageError("word symbols must lie in 1..ell")
        return w


@dataclass(frozen=True)
class PeriodicWord(Strategy):
    word: tuple[int, ...]

    def descriptor(self) -> str:
        return f"periodic:{''.join(map(str, self.word))}"

    def materialize(self, n, ell, rng=None):
        if not self.word:
            raise UsageError("periodic word must be nonempty")
        base = np.asarray(self.word, dtype=np.uint8)
        if base.min() < 1 or base.max() > ell:
            raise UsageError("word symbols must lie in 1..ell")
        reps = -(-n // base.size)
        return np.tile(base, reps)[:n]


@dataclass(frozen=True)
class RandomSymbols(Strategy):
    def descriptor(self) -> str:
        return "random"

    def materialize(self, n, ell, rng):
        if rng is None:
            raise UsageError("random strategy requires a seed")
        return rng.integers(1, ell + 1, size=n, dtype=np.uint8)


@dataclass(frozen=True)
class GreedyAvoid(Strategy):
    """Avoid a forbidden interval; prefer already-occupied dyadic cells.

    At each step the symbol chosen minimizes, in order: membership of the
    candidate point in the forbidden interval, the number of newly occupied
    cells at resolution 2**-cell_bits (0 or 1), then the symbol index.
    """

    forbidden_lo: Fraction | None = None  # None means empty forbidden set
    forbidden_hi: Fraction | None = None
    cell_bits: int = 20

    adaptive = True

    def descriptor(self) -> str:
        if self.forbidden_lo is None:
            return "greedy-avoid:empty"
        return f"greedy-avoid:({self.forbidden_lo},{self.forbidden_hi})"


def parse_strategy(spec: dict) -> Strategy:
    """Strategy from its config-dict form (see the cli module schema)."""
    kind = spec.get("type")
    if kind == "word":
        return ExplicitWord(tuple(int(c) for c in str(spec["word"])))
    if kind == "periodic":
        return PeriodicWord(tuple(int(c) for c in str(spec["word"])))
    if kind == "random":
        return RandomSymbols()
    if kind == "greedy_avoid":
        lo, hi = spec.get("lo"), spec.get("hi")
        if lo is None and hi is None:
            return GreedyAvoid(None, None, int(spec.get("cell_bits", 20)))
        return GreedyAvoid(Fraction(str(lo)), Fraction(str(hi)), int(spec.get("cell_bits", 20)))
    raise UsageError(f"unknown strategy type {kind!r}")


def strategy_to_dict(s: Strategy) -> dict:
    if isinstance(s, ExplicitWord):
        return {"type": "word", "word": "".join(map(str, s.word))}
    if isinstance(s, PeriodicWord):
        return {"type": "periodic", "word": "".join(map(str, s.word))}
    if isinstance(s, RandomSymbols):
        return {"type": "random"}
    if isinstance(s, GreedyAvoid):
        out = {"type": "greedy_avoid", "cell_bits": s.cell_bits}
        if s.forbidden_lo is not None:
            out["lo"] = str(s.forbidden_lo)
            out["hi"] = str(s.forbidden_hi)
        return out
    raise UsageError(f"unknown strategy {s!r}")
