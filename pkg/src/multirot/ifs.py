"""Self-similar iterated function systems in dimension 1 and 2.

Dimension 1 is fully exact over the rationals: tight attractor hulls,
strong-separation certificates, depth samples, and affine containment
checks all run in Fraction arithmetic.  Dimension 2 supports rotations
(rational or declared-irrational turns); their matrix entries are
evaluated once to 60 digits and treated as exact thereafter, with square
roots bracketed so separation certificates stay one-sided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, log

import mpmath

from .errors import DomainError, GuardError, UsageError

SQRT_PREC_BITS = 96


def sqrt_up(q: Fraction) -> Fraction:
    """Upper bound for sqrt(q), within 2**-40 or so."""
    if q < 0:
        raise DomainError("sqrt of a negative value")
    scaled = (q.numerator << (2 * SQRT_PREC_BITS)) // q.denominator
    s = isqrt(scaled)
    if s * s < scaled:
        s += 1
    return Fraction(s, 1 << SQRT_PREC_BITS)


def sqrt_down(q: Fraction) -> Fraction:
    if q < 0:
        raise DomainError("sqrt of a negative value")
    scaled = (q.numerator << (2 * SQRT_PREC_BITS)) // q.denominator
    return Fraction(isqrt(scaled), 1 << SQRT_PREC_BITS)


# -- orthogonal parts ---------------------------------------------------------

@dataclass(frozen=True)
class Turn:
    """Planar rotation angle as a fraction of a full turn.

    rational + sum(coeff * value(decimal)) turns; decimal components are
    declared irrational.  Exact addition keeps compositions honest.
    """

    rational: Fraction = Fraction(0)
    irrational: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, turn) -> "Turn":
        if isinstance(turn, Turn):
            return turn
        if isinstance(turn, str):
            return cls(Fraction(0), ((turn, 1),))
        return cls(Fraction(turn) % 1, ())

    def __add__(self, other: "Turn") -> "Turn":
        acc = dict(self.irrational)
        for label, c in other.irrational:
            acc[label] = acc.get(label, 0) + c
            if acc[label] == 0:
                del acc[label]
        return Turn((self.rational + other.rational) % 1, tuple(sorted(acc.items())))

    def times(self, k: int) -> "Turn":
        acc = {label: c * k for label, c in self.irrational if c * k != 0}
        return Turn((self.rational * k) % 1, tuple(sorted(acc.items())))

    @property
    def is_rational(self) -> bool:
        return not self.irrational

    def value(self) -> Fraction:
        v = self.rational
        for label, c in self.irrational:
            v += c * Fraction(label)
        return v % 1

    def cos_sin(self) -> tuple[Fraction, Fraction]:
        return _turn_cos_sin(self.value())


@lru_cache(maxsize=1024)
def _turn_cos_sin(turns: Fraction) -> tuple[Fraction, Fraction]:
    with mpmath.workdps(60):
        ang = 2 * mpmath.pi * mpmath.mpf(turns.numerator) / turns.denominator
        c, s = mpmath.cos(ang), mpmath.sin(ang)
        scale = 1 << 192
        return (
            Fraction(int(mpmath.floor(c * scale)), scale),
            Fraction(int(mpmath.floor(s * scale)), scale),
        )


# -- similitudes ---------------------------------------------------------------

@dataclass(frozen=True)
class Similitude:
    """x -> ratio * P x + shift with P a sign (d=1) or rotation (d=2)."""

    ratio: Fraction
    ortho: "int | Turn"
    shift: tuple[Fraction, ...]

    def __post_init__(self):
        if not (0 < self.ratio < 1):
            raise DomainError(f"contraction ratio {self.ratio} outside (0,1)")
        if self.dimension == 1 and self.ortho not in (1, -1):
            raise UsageError("1-d orthogonal part must be +1 or -1")
        if self.dimension == 2 and not isinstance(self.ortho, Turn):
            raise UsageError("2-d orthogonal part must be a Turn")

    @property
    def dimension(self) -> int:
        return len(self.shift)

    @classmethod
    def line(cls, ratio, shift, sign: int = 1) -> "Similitude":
        return cls(Fraction(ratio), sign, (Fraction(shift),))

    @classmethod
    def plane(cls, ratio, turn, shift) -> "Similitude":
        return cls(Fraction(ratio), Turn.of(turn), (Fraction(shift[0]), Fraction(shift[1])))

    def apply(self, x: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        if self.dimension == 1:
            return (self.ratio * self.ortho * x[0] + self.shift[0],)
        c, s = self.ortho.cos_sin()
        rx = self.ratio * (c * x[0] - s * x[1]) + self.shift[0]
        ry = self.ratio * (s * x[0] + c * x[1]) + self.shift[1]
        return (rx, ry)

    def compose(self, inner: "Similitude") -> "Similitude":
        """self after inner: (self . inner)(x) = self(inner(x))."""
        if self.dimension != inner.dimension:
            raise UsageError("dimension mismatch")
        ratio = self.ratio * inner.ratio
        if self.dimension == 1:
            ortho = self.ortho * inner.ortho
        else:
            ortho = self.ortho + inner.ortho
        return Similitude(ratio, ortho, self.apply(inner.shift))

    def power(self, k: int) -> "Similitude":
        if k < 1:
            raise UsageError("power expects k >= 1")
        out = self
        for _ in range(k - 1):
            out = out.compose(self)
        return out

    def fixed_point(self) -> tuple[Fraction, ...]:
        if self.dimension == 1:
            return (self.shift[0] / (1 - self.ratio * self.ortho),)
        c, s = self.ortho.cos_sin()
        a, b = 1 - self.ratio * c, self.ratio * s
        det = a * a + b * b
        bx, by = self.shift
        return ((a * bx - b * by) / det, (b * bx + a * by) / det)


def orthogonal_power_period(part) -> int:
    """Smallest k with the closure of {P**(k j)} connected (d <= 2).

    d=1: +1 -> 1, -1 -> 2.  d=2: a rational turn p/q in lowest terms has
    order q; powers of an irrational turn are already dense in the rotation
    circle, so k = 1.
    """
    if part == 1:
        return 1
    if part == -1:
        return 2
    if isinstance(part, Turn):
        if not part.is_rational:
            return 1
        t = part.rational % 1
        return t.denominator if t != 0 else 1
    raise UsageError("orthogonal parts are supported for d <= 2 only")


# -- balls and IFSs -------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    """Closed ball; in d=1 the interval [center - radius, center + radius]."""

    center: tuple[Fraction, ...]
    radius: Fraction

    @property
    def diameter(self) -> Fraction:
        return 2 * self.radius

    def interval(self) -> tuple[Fraction, Fraction]:
        (c,) = self.center
        return (c - self.radius, c + self.radius)


class SimilarIFS:
    """A finite family of contracting similitudes in dimension 1 or 2."""

    def __init__(self, maps: list[Similitude]):
        if not maps:
            raise UsageError("an IFS needs at least one map")
        d = maps[0].dimension
        if d not in (1, 2):
            raise UsageError("only dimensions 1 and 2 are supported")
        if any(m.dimension != d for m in maps):
            raise UsageError("all maps must share one dimension")
        self.maps = tuple(maps)
        self.dimension = d
        self.rho_star = max(m.ratio for m in maps)
        self._hull: Ball | None = None

    @classmethod
    def line_maps(cls, specs) -> "SimilarIFS":
        """specs: iterable of (ratio, shift) or (ratio, shift, sign)."""
        return cls([Similitude.line(*spec) for spec in specs])

    @property
    def ell(self) -> int:
        return len(self.maps)

    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(m.ratio for m in self.maps)

    def hull(self) -> Ball:
        if self._hull is None:
            self._hull = self._tight_interval() if self.dimension == 1 else self._invariant_ball()
        return self._hull

    def _tight_interval(self) -> Ball:
        """Exact attractor hull [min E, max E] by attainment-pattern search.

        The hull endpoints satisfy m = min_i phi_i(m or M), M = max_i ...,
        a piecewise-linear fixed point; each attainment pattern is a 2x2
        linear system, so all patterns are tried and verified.
        """
        maps = self.maps

        def lo_expr(mp):
            # returns (coef_m, coef_M, const) of the image minimum
            r = mp.ratio * mp.ortho
            return (r, Fraction(0), mp.shift[0]) if mp.ortho > 0 else (Fraction(0), r, mp.shift[0])

        def hi_expr(mp):
            r = mp.ratio * mp.ortho
            return (Fraction(0), r, mp.shift[0]) if mp.ortho > 0 else (r, Fraction(0), mp.shift[0])

        from .exact.linalg import solve_square

        for i in range(len(maps)):
            for j in range(len(maps)):
                am, aM, ac = lo_expr(maps[i])
                bm, bM, bc = hi_expr(maps[j])
                sol = solve_square(
                    [[1 - am, -aM], [-bm, 1 - bM]],
                    [ac, bc],
                )
                if sol is None:
                    continue
                m, M = sol
                if m > M:
                    continue
                los = []
                his = []
                ok = True
                for mp in maps:
                    cm, cM, cc = lo_expr(mp)
                    dm, dM, dc = hi_expr(mp)
                    lo = cm * m + cM * M + cc
                    hi = dm * m + dM * M + dc
                    if lo < m or hi > M:
                        ok = False
                        break
                    los.append(lo)
                    his.append(hi)
                if ok and min(los) == m and max(his) == M:
                    return Ball(((m + M) / 2,), (M - m) / 2)
        raise AssertionError("tight hull pattern search failed")

    def _invariant_ball(self) -> Ball:
        center = self.maps[0].fixed_point()
        radius = Fraction(0)
        for mp in self.maps:
            img = mp.apply(center)
            d2 = sum((a - b) ** 2 for a, b in zip(img, center))
            r = sqrt_up(d2) / (1 - mp.ratio)
            radius = max(radius, r)
        return Ball(center, radius)

    def cylinders(self, depth: int) -> list[tuple[tuple[int, ...], Similitude]]:
        """All (word, composed map) pairs at the given depth, words 1-based."""
        if self.ell**depth > 1 << 16:
            raise GuardError("cylinder enumeration guard exceeded")
        out: list[tuple[tuple[int, ...], Similitude]] = [((), None)]
        for _ in range(depth):
            nxt = []
            for word, comp in out:
                for i, mp in enumerate(self.maps):
                    nxt.append((word + (i + 1,), mp if comp is None else comp.compose(mp)))
            out = nxt
        return out

    def cylinder_balls(self, depth: int) -> list[tuple[int, Ball]]:
        """(first symbol, ball cover of the cylinder) at the given depth."""
        hull = self.hull()
        out = []
        for word, comp in self.cylinders(depth):
            out.append((word[0], Ball(comp.apply(hull.center), comp.ratio * hull.radius)))
        return out


# -- operations ------------------------------------------------------------------

def similarity_dimension(rhos) -> float:
    """The root s of sum rho_i**s = 1 (Moran equation), by bisection to 1e-14."""
    rhos = [Fraction(r) for r in rhos]
    if not rhos:
        raise UsageError("need at least one ratio")
    if any(not (0 < r < 1) for r in rhos):
        raise DomainError("ratios must lie in (0,1)")
    vals = [float(r) for r in rhos]
    lo = 0.0
    hi = max(1.0, log(len(vals)) / log(1.0 / max(vals)) + 1.0)

    def f(s):
        return sum(v**s for v in vals) - 1.0

    for _ in range(200):
        mid = (lo + hi) / 2
        if hi - lo < 1e-15:
            break
        if f(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class SSCResult:
    certified: bool
    delta: Fraction | None   # positive lower bound for the separation gap
    depth: int


def ssc_check(ifs: SimilarIFS, depth: int) -> SSCResult:
    """Certify strong separation from depth-refined cylinder covers.

    The reported delta lower-bounds min_{i != j} dist(phi_i(E), phi_j(E));
    it is nondecreasing in depth.  A non-positive gap at this depth is
    inconclusive, not a refutation.
    """
    if depth < 1:
        raise UsageError("depth must be >= 1")
    if ifs.ell == 1:
        return SSCResult(True, ifs.hull().diameter, depth)
    balls = ifs.cylinder_balls(depth)
    if ifs.dimension == 1:
        items = sorted(
            (b.center[0] - b.radius, b.center[0] + b.radius, g) for g, b in balls
        )
        best: Fraction | None = None
        last_hi: dict[int, Fraction] = {}
        for lo, hi, g in items:
            for other, ohi in last_hi.items():
                if other != g:
                    gap = lo - ohi
                    if best is None or gap < best:
                        best = gap
            last_hi[g] = max(last_hi.get(g, hi), hi)
        gap = best if best is not None else Fraction(0)
    else:
        gap = None
        for a in range(len(balls)):
            ga, ba = balls[a]
            for b in range(a + 1, len(balls)):
                gb, bb = balls[b]
                if ga == gb:
                    continue
                d2 = sum((x - y) ** 2 for x, y in zip(ba.center, bb.center))
                cand = sqrt_down(d2) - ba.radius - bb.radius
                if gap is None or cand < gap:
                    gap = cand
        gap = gap if gap is not None else Fraction(0)
    if gap > 0:
        return SSCResult(True, gap, depth)
    return SSCResult(False, None, depth)


def attractor_sample(ifs: SimilarIFS, depth: int, x0=None) -> list[tuple[Fraction, ...]]:
    """{phi_w(x0) : |w| = depth}; x0 defaults to the first map's fixed point.

    The default x0 lies in the attractor, so every sample is a genuine
    attractor point; coordinates are exact when inputs are rational.
    """
    if ifs.ell**depth > 1 << 24:
        raise GuardError("attractor sample guard exceeded (ell**depth > 2**24)")
    if x0 is None:
        pts = [ifs.maps[0].fixed_point()]
    else:
        pts = [tuple(Fraction(c) for c in x0)] if isinstance(x0, (tuple, list)) else [(Fraction(x0),)]
    for _ in range(depth):
        pts = [mp.apply(x) for mp in ifs.maps for x in pts]
    return pts


@dataclass(frozen=True)
class EmbeddingCheck:
    contained: bool
    witness: tuple[Fraction, ...] | None   # first sample point breaking the tolerance
    max_distance: Fraction                 # to the depth-refined cover of E
    tol: Fraction


def check_affine_embedding(m, b, f_ifs: SimilarIFS, e_ifs: SimilarIFS,
                           depth: int, tol: Fraction | None = None) -> EmbeddingCheck:
    """Does M x + b map F into E, as far as depth-refined covers can tell?

    Every depth-sample of F is mapped and measured against E's depth
    cylinder covers.  "Contained" is resolution-limited evidence; any
    sample at positive distance from the cover proves non-containment,
    because the cover contains E.  Default tolerance is one refinement
    cell of E.
    """
    d = e_ifs.dimension
    if f_ifs.dimension != d:
        raise UsageError("dimension mismatch between F and E")
    if d == 1:
        m_frac = Fraction(m)
        if m_frac == 0:
            raise DomainError("M must be invertible")
        b_vec = (Fraction(b),)
    else:
        ((m00, m01), (m10, m11)) = [[Fraction(x) for x in row] for row in m]
        if m00 * m11 - m01 * m10 == 0:
            raise DomainError("M must be invertible")
        b_vec = (Fraction(b[0]), Fraction(b[1]))

    if tol is None:
        tol = e_ifs.rho_star**depth * e_ifs.hull().diameter
    samples = attractor_sample(f_ifs, depth)
    covers = e_ifs.cylinder_balls(depth)

    if d == 1:
        intervals = sorted(b2.interval() for _, b2 in covers)
        los = [iv[0] for iv in intervals]
        import bisect

        def dist_to_cover(y: Fraction) -> Fraction:
            i = bisect.bisect_right(los, y)
            best = None
            for j in (i - 1, i):
                if 0 <= j < len(intervals):
                    lo, hi = intervals[j]
                    cand = max(Fraction(0), lo - y, y - hi)
                    best = cand if best is None or cand < best else best
            return best

        max_dist = Fraction(0)
        witness = None
        for x in samples:
            y = m_frac * x[0] + b_vec[0]
            dist = dist_to_cover(y)
            if dist > max_dist:
                max_dist = dist
                if dist > tol and witness is None:
                    witness = (y,)
        if max_dist > tol:
            # recompute the first offender in sample order for a stable witness
            for x in samples:
                y = m_frac * x[0] + b_vec[0]
                if dist_to_cover(y) > tol:
                    witness = (y,)
                    break
            return EmbeddingCheck(False, witness, max_dist, tol)
        return EmbeddingCheck(True, None, max_dist, tol)

    max_dist = Fraction(0)
    witness = None
    for x in samples:
        y = (m00 * x[0] + m01 * x[1] + b_vec[0], m10 * x[0] + m11 * x[1] + b_vec[1])
        best = None
        for _, ball in covers:
            d2 = sum((a - c) ** 2 for a, c in zip(y, ball.center))
            cand = max(Fraction(0), sqrt_up(d2) - ball.radius)
            if best is None or cand < best:
                best = cand
            if best == 0:
                break
        if best > max_dist:
            max_dist = best
            witness = y
    if max_dist > tol:
        return EmbeddingCheck(False, witness, max_dist, tol)
    return EmbeddingCheck(True, None, max_dist, tol)
