"""Dyadic covering counts, box-dimension estimates, and exact interval covers.

Point sets on the circle are held as 64-bit fixed-point values; dyadic
grid counts at scale 2**-k are then exact integer statistics.  Grid counts
are the primary estimator (they differ from minimal interval covers by at
most a factor of 2, which does not move dimension estimates); minimal
covers are computed exactly, by a greedy sweep tried from every candidate
anchor, only where the scaled-covering inequality demands them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import UsageError
from .fixedpoint import fp_from_fraction

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(f):
            return f

        return deco


BITS = 64
COVER_BITS = 60  # working precision of exact interval covers (int64-safe)
EXACT_DIFF_LIMIT = 4096  # beyond this the cell-level difference path is used


class CirclePoints:
    """A finite set on the circle as sorted, deduplicated 64-bit fractions."""

    __slots__ = ("values",)

    def __init__(self, values: np.ndarray):
        v = np.asarray(values, dtype=np.uint64)
        self.values = np.unique(v)
        if self.values.size == 0:
            raise UsageError("empty point set")

    def __len__(self) -> int:
        return int(self.values.size)

    @classmethod
    def from_fractions(cls, fracs: Iterable[Fraction]) -> "CirclePoints":
        vals = [fp_from_fraction(Fraction(f), BITS) for f in fracs]
        return cls(np.array(vals, dtype=np.uint64))

    @classmethod
    def from_floats(cls, xs: Iterable[float]) -> "CirclePoints":
        arr = np.mod(np.asarray(list(xs), dtype=np.float64), 1.0)
        return cls((arr * float(1 << 32)).astype(np.uint64) << np.uint64(32))

    @classmethod
    def from_orbit(cls, orbit) -> "CirclePoints":
        return cls(orbit.top64())

    @classmethod
    def from_unit_reals(cls, fracs: Iterable[Fraction], rescale: bool = False) -> "CirclePoints":
        """Exact rationals in [0,1] (mod 1); optionally affinely rescaled to [0,1).

        Rescaling by the hull is dimension-preserving and is the documented
        route for real-line data such as attractor samples.
        """
        xs = [Fraction(f) for f in fracs]
        if rescale:
            lo, hi = min(xs), max(xs)
            span = hi - lo
            if span > 0:
                xs = [(x - lo) / span * Fraction(2**BITS - 1, 2**BITS) for x in xs]
            else:
                xs = [Fraction(0)]
        return cls.from_fractions(xs)

    def cells(self, k: int) -> np.ndarray:
        """Sorted distinct dyadic cell indices floor(x * 2**k)."""
        if not (0 <= k <= BITS - 2):
            raise UsageError(f"scale exponent k={k} outside [0, {BITS - 2}]")
        return np.unique(self.values >> np.uint64(BITS - k)).astype(np.int64)


def covering_count(points: CirclePoints, k: int) -> int:
    """Number of occupied dyadic cells at scale 2**-k."""
    return int(points.cells(k).size)


# -- covering profiles --------------------------------------------------------

@dataclass(frozen=True)
class CoveringProfile:
    counts: dict[int, int]       # k -> N_{2^-k}
    k_min: int
    k_max: int
    n_points: int

    def __post_init__(self):
        for k in range(self.k_min, self.k_max + 1):
            n = self.counts[k]
            if not (1 <= n <= min(self.n_points, 2**k)):
                raise AssertionError(f"covering count out of range at k={k}")
            if k > self.k_min:
                prev = self.counts[k - 1]
                if n < prev or n > 2 * prev:
                    raise AssertionError(f"monotonicity/doubling violated at k={k}")

    def ks(self) -> list[int]:
        return list(range(self.k_min, self.k_max + 1))

    def log2_counts(self) -> np.ndarray:
        return np.log2([self.counts[k] for k in self.ks()])

    def slopes_local(self) -> list[float]:
        """log2 N_{k+1} - log2 N_k for adjacent scales; each lies in [0, 1]."""
        logs = self.log2_counts()
        return [float(b - a) for a, b in zip(logs, logs[1:])]

    def slope_global(self) -> float:
        ks = np.asarray(self.ks(), dtype=np.float64)
        return float(np.polyfit(ks, self.log2_counts(), 1)[0])


def covering_profile(points: CirclePoints, k_min: int, k_max: int) -> CoveringProfile:
    if k_min < 0 or k_max > BITS - 2 or k_min > k_max:
        raise UsageError("bad scale range")
    counts = {k: covering_count(points, k) for k in range(k_min, k_max + 1)}
    return CoveringProfile(counts, k_min, k_max, len(points))


@dataclass(frozen=True)
class BoxDimEstimate:
    lower_est: float            # min local slope (finite data cannot certify liminf)
    upper_est: float            # max local slope
    slope_global: float
    slopes_local: tuple[float, ...]
    resolution_limited: bool    # every point isolated already at the coarsest scale


def box_dim_estimate(profile: CoveringProfile) -> BoxDimEstimate:
    if profile.k_max - profile.k_min < 3:
        raise UsageError("box_dim_estimate needs at least 4 scales")
    local = profile.slopes_local()
    return BoxDimEstimate(
        lower_est=min(local),
        upper_est=max(local),
        slope_global=profile.slope_global(),
        slopes_local=tuple(local),
        resolution_limited=profile.counts[profile.k_min] == profile.n_points,
    )


# -- difference sets ----------------------------------------------------------

@dataclass(frozen=True)
class DifferenceSet:
    points: CirclePoints         # exact differences, or cell left-endpoints
    cell_level: bool
    k: int | None                # resolution of the cell-level path
    cell_count: int | None = None


def difference_set(
    points: CirclePoints, cell_k: int | None = None, exact_limit: int = EXACT_DIFF_LIMIT
) -> DifferenceSet:
    """X - X mod 1: exact pairwise for small sets, cell-level otherwise.

    The cell-level result is {(a - b) mod 2**k : a, b occupied cells}; each
    such cell is within one cell of a true difference, and the result is
    flagged so callers can state that slack.
    """
    n = len(points)
    if cell_k is None and n <= exact_limit:
        vals = points.values
        acc = np.array([0], dtype=np.uint64)
        block = max(1, (1 << 22) // max(n, 1))
        for start in range(0, n, block):
            chunk = vals[start:start + block]
            diffs = (vals[None, :] - chunk[:, None]).ravel()  # uint64 wrap = mod 1
            acc = np.unique(np.concatenate([acc, diffs]))
        return DifferenceSet(CirclePoints(acc), False, None)
    k = cell_k if cell_k is not None else 12
    cells = points.cells(k)
    mod = 1 << k
    diff_cells = np.unique((cells[None, :] - cells[:, None]) % mod)
    vals = diff_cells.astype(np.uint64) << np.uint64(BITS - k)
    return DifferenceSet(CirclePoints(vals), True, k, cell_count=int(diff_cells.size))


# -- exact minimal interval covers ---------------------------------------------

@njit(cache=True)
def _minimal_cover(vals, delta, mod):  # pragma: no cover - exercised via wrapper
    """Minimal number of closed length-delta intervals covering vals on Z/mod.

    vals: sorted distinct int64 in [0, mod).  An optimal cover exists with
    every interval anchored at a point, and the greedy sweep from the
    correct anchor is optimal, so we try all candidate anchors (only one is
    needed when some circular gap exceeds delta).
    """
    n = vals.shape[0]
    if n == 1:
        return 1
    max_gap = np.int64(-1)
    gap_idx = 0
    for i in range(n):
        nxt = vals[i + 1] if i + 1 < n else vals[0] + mod
        g = nxt - vals[i]
        if g > max_gap:
            max_gap = g
            gap_idx = i
    if max_gap > delta:
        start = (gap_idx + 1) % n
        count = 0
        pos = 0
        while pos < n:
            idx = start + pos
            anchor = vals[idx % n] + (mod if idx >= n else 0)
            count += 1
            while pos < n:
                idx = start + pos
                v = vals[idx % n] + (mod if idx >= n else 0)
                if v <= anchor + delta:
                    pos += 1
                else:
                    break
        return count
    best = n
    for s in range(n):
        count = 0
        pos = 0
        feasible = True
        while pos < n:
            idx = s + pos
            anchor = vals[idx % n] + (mod if idx >= n else 0)
            count += 1
            if count >= best:
                feasible = False
                break
            while pos < n:
                idx = s + pos
                v = vals[idx % n] + (mod if idx >= n else 0)
                if v <= anchor + delta:
                    pos += 1
                else:
                    break
        if feasible and count < best:
            best = count
    return best


def minimal_cover_count(vals: np.ndarray, delta: int, mod: int = 1 << COVER_BITS) -> int:
    """Exact minimal circular cover by closed intervals of length delta/mod."""
    v = np.unique(np.asarray(vals, dtype=np.int64))
    if v.size == 0:
        raise UsageError("empty point set")
    if not (0 < delta):
        raise UsageError("delta must be positive")
    return int(_minimal_cover(v, np.int64(delta), np.int64(mod)))


@dataclass(frozen=True)
class ScaledCoveringCheck:
    p: int
    k: int
    lhs: int      # minimal cover of pA mod 1 at scale p * 2**-k
    rhs: int      # minimal cover of A at scale 2**-k
    holds: bool


def scaled_covering_check(points: CirclePoints, p: int, k: int) -> ScaledCoveringCheck:
    """Exact check of N_{p delta}(pA mod 1) <= N_delta(A) for delta = 2**-k.

    Both sides are minimal interval covers computed exactly on the 60-bit
    grid the points are truncated to (all subsequent arithmetic is exact on
    that grid).
    """
    if p < 1:
        raise UsageError("p must be a positive integer")
    if p >= (1 << k):
        raise UsageError("need p * 2**-k < 1")
    a = np.unique(points.values >> np.uint64(BITS - COVER_BITS))
    mask = np.uint64((1 << COVER_BITS) - 1)
    pa = (a * np.uint64(p)) & mask
    delta = 1 << (COVER_BITS - k)
    rhs = minimal_cover_count(a.astype(np.int64), delta)
    lhs = minimal_cover_count(pa.astype(np.int64), p * delta)
    return ScaledCoveringCheck(p, k, lhs, rhs, lhs <= rhs)


# -- gaps and interval evidence -------------------------------------------------

@dataclass(frozen=True)
class GapProfile:
    max_gap: Fraction            # largest circular gap between consecutive points
    k: int
    cover_fraction: Fraction     # occupied dyadic cells / 2**k
    longest_run_cells: int       # longest circular run of consecutive occupied cells


def gap_profile(points: CirclePoints, k: int = 12) -> GapProfile:
    vals = points.values
    if vals.size == 1:
        max_gap = Fraction(1)
    else:
        gaps = np.diff(vals)
        wrap = (int(vals[0]) - int(vals[-1])) % (1 << BITS)
        max_gap = Fraction(max(int(gaps.max()), wrap), 1 << BITS)
    cells = points.cells(k)
    mod = 1 << k
    occupied = int(cells.size)
    if occupied == mod:
        longest = mod
    else:
        # split the circular cell sequence at its holes
        breaks = np.nonzero(np.diff(cells) != 1)[0]
        runs = np.diff(np.concatenate([[-1], breaks, [occupied - 1]]))
        longest = int(runs.max())
        if cells[0] == 0 and cells[-1] == mod - 1 and occupied < mod and runs.size >= 2:
            longest = max(longest, int(runs[0] + runs[-1]))
    return GapProfile(max_gap, k, Fraction(occupied, mod), longest)


# -- exports -------------------------------------------------------------------

def write_profile_csv(profile: CoveringProfile, path) -> None:
    """Columns: k, N, log2N, local_slope (slope from k to k+1; blank on the last row)."""
    ks = profile.ks()
    logs = profile.log2_counts()
    slopes = profile.slopes_local()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,N,log2N,local_slope\n")
        for i, k in enumerate(ks):
            slope = repr(slopes[i]) if i < len(slopes) else ""
            fh.write(f"{k},{profile.counts[k]},{repr(float(logs[i]))},{slope}\n")


def write_profile_svg(profile: CoveringProfile, path) -> None:
    from .svgplot import loglog_svg

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(loglog_svg(profile))
