"""From an affine embedding of one self-similar set into another to a
multi-rotation orbit.

Given M(F) + b inside an SSC-certified E, the embedded fixed point of
F's first map is coded inside E's cylinder tree; s_n is the least power
of psi_1 whose image, mapped by (M, b), fits in the depth-n coded
cylinder.  The ratios gamma_1**s_n / rho_word then live in an explicit
two-sided interval, and normalizing log-contraction ratios by log gamma_1
turns the coding into a circle orbit whose steps are exactly analyzable
by the independence machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath

from .boxdim import CirclePoints, box_dim_estimate, covering_profile
from .errors import DomainError, NotInAttractorError, UsageError
from .exact.commensurability import log_vector
from .exact.linalg import (
    clear_denominators,
    hermite_row_basis,
    integer_coordinates,
    rank_bareiss,
)
from .exact.symbolic import BasisEntry, BasisTable, SymbolicReal
from .ifs import Ball, SimilarIFS, Similitude, orthogonal_power_period, sqrt_down, sqrt_up
from .orbit.generate import Orbit, generate_orbit
from .orbit.steps import StepSystem, build_step_system
from .orbit.strategies import ExplicitWord


def matrix_norms(m, dimension: int) -> tuple[Fraction, Fraction]:
    """(largest, smallest) singular value; exact in d=1, bracketed in d=2.

    The large norm is rounded up and the small norm down, so downstream
    two-sided ratio bounds only ever widen.
    """
    if dimension == 1:
        v = abs(Fraction(m))
        if v == 0:
            raise DomainError("M must be invertible")
        return v, v
    ((a, b), (c, d)) = [[Fraction(x) for x in row] for row in m]
    det = a * d - b * c
    if det == 0:
        raise DomainError("M must be invertible")
    trace_gram = a * a + b * b + c * c + d * d
    disc = trace_gram * trace_gram - 4 * det * det
    lam_max = (trace_gram + sqrt_up(disc)) / 2
    lam_min = (trace_gram - sqrt_up(disc)) / 2
    return sqrt_up(lam_max), sqrt_down(max(lam_min, Fraction(0)))


# -- point coding --------------------------------------------------------------

def coding_of_point(e_ifs: SimilarIFS, y, n: int) -> tuple[int, ...]:
    """The word i_1..i_n with y inside each successive cylinder hull.

    Membership is tested with one refinement cell of slack; under SSC the
    surviving child is unique beyond that slack (ties pick the closer
    child, then the smaller symbol).  Raises NotInAttractorError with the
    failing depth when y escapes every child.
    """
    if isinstance(y, (tuple, list)):
        point = tuple(Fraction(c) for c in y)
    else:
        point = (Fraction(y),)
    hull = e_ifs.hull()
    word: list[int] = []
    comp: Similitude | None = None
    for depth in range(1, n + 1):
        # one refinement cell: a child cell of the depth-level cylinder
        slack = e_ifs.rho_star ** (depth + 1) * hull.diameter
        best = None
        best_dist = None
        best_comp = None
        for i, mp in enumerate(e_ifs.maps):
            cand = mp if comp is None else comp.compose(mp)
            ball = Ball(cand.apply(hull.center), cand.ratio * hull.radius)
            dist = _dist_to_ball(point, ball, e_ifs.dimension)
            if dist <= slack and (best_dist is None or dist < best_dist):
                best, best_dist, best_comp = i + 1, dist, cand
        if best is None:
            raise NotInAttractorError(depth)
        word.append(best)
        comp = best_comp
    return tuple(word)


def _dist_to_ball(point, ball: Ball, dimension: int) -> Fraction:
    if dimension == 1:
        return max(Fraction(0), abs(point[0] - ball.center[0]) - ball.radius)
    d2 = sum((a - c) ** 2 for a, c in zip(point, ball.center))
    return max(Fraction(0), sqrt_up(d2) - ball.radius)


# -- the embedding instance ------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingInstance:
    e_ifs: SimilarIFS
    f_ifs: SimilarIFS
    m: object                     # Fraction (d=1) or 2x2 rational matrix (d=2)
    b: tuple[Fraction, ...]
    ell_power: int                # l with psi_1 replaced by psi_1**l
    psi1: Similitude              # already the l-th power
    gamma1: Fraction
    delta: Fraction               # certified separation gap of E
    norm_upper: Fraction          # ||M||
    norm_lower: Fraction          # [[M]]
    diam_e: Fraction
    diam_f: Fraction
    y: tuple[Fraction, ...]
    coding: tuple[int, ...]

    @property
    def rho_star(self) -> Fraction:
        return self.e_ifs.rho_star

    def ratio_lower_bound(self) -> Fraction:
        """gamma_1 delta / (rho* ||M|| diam F); valid whenever s_n >= 1."""
        return self.gamma1 * self.delta / (self.rho_star * self.norm_upper * self.diam_f)

    def ratio_upper_bound(self) -> Fraction:
        return self.diam_e / (self.norm_lower * self.diam_f)


def build_instance(
    e_ifs: SimilarIFS,
    f_ifs: SimilarIFS,
    m,
    b,
    coding_len: int = 64,
    ssc_depth: int = 6,
) -> EmbeddingInstance:
    """Assemble the trace data for M(F) + b inside E (E must certify SSC)."""
    from .ifs import ssc_check

    if e_ifs.dimension != f_ifs.dimension:
        raise UsageError("E and F must share a dimension")
    cert = ssc_check(e_ifs, ssc_depth)
    if not cert.certified:
        raise UsageError("E must be SSC-certified for unique codings")
    ell_power = orthogonal_power_period(f_ifs.maps[0].ortho)
    psi1 = f_ifs.maps[0].power(ell_power) if ell_power > 1 else f_ifs.maps[0]
    norm_upper, norm_lower = matrix_norms(m, e_ifs.dimension)
    b_vec = tuple(Fraction(c) for c in (b if isinstance(b, (tuple, list)) else (b,)))
    x = psi1.fixed_point()
    if e_ifs.dimension == 1:
        y = (Fraction(m) * x[0] + b_vec[0],)
    else:
        ((m00, m01), (m10, m11)) = [[Fraction(v) for v in row] for row in m]
        y = (m00 * x[0] + m01 * x[1] + b_vec[0], m10 * x[0] + m11 * x[1] + b_vec[1])
    coding = coding_of_point(e_ifs, y, coding_len)
    return EmbeddingInstance(
        e_ifs=e_ifs,
        f_ifs=f_ifs,
        m=m,
        b=b_vec,
        ell_power=ell_power,
        psi1=psi1,
        gamma1=psi1.ratio,
        delta=cert.delta,
        norm_upper=norm_upper,
        norm_lower=norm_lower,
        diam_e=e_ifs.hull().diameter,
        diam_f=f_ifs.hull().diameter,
        y=y,
        coding=coding,
    )


# -- the s_n trace ----------------------------------------------------------------

@dataclass(frozen=True)
class SnEntry:
    n: int
    i_n: int
    s_n: int
    ratio: Fraction               # gamma_1**s_n / rho_{i_1..i_n}
    lower_ok: bool                # vacuously true when s_n = 0
    upper_ok: bool
    slack_used: bool              # containment relied on the one-cell tolerance
    by_diameter: bool             # the sufficient diameter criterion decided it


@dataclass(frozen=True)
class SnTrace:
    entries: tuple[SnEntry, ...]
    lower_bound: Fraction
    upper_bound: Fraction

    def s_values(self) -> list[int]:
        return [e.s_n for e in self.entries]

    def all_within_bounds(self) -> bool:
        return all(e.lower_ok and e.upper_ok for e in self.entries)


def sn_sequence(inst: EmbeddingInstance, n_max: int, depth: int = 8) -> SnTrace:
    """s_1..s_{n_max} with exact ratio bound verdicts.

    For each n the search resumes at s_{n-1} (cylinders are nested, so s_n
    is nondecreasing); each candidate k first tries the sufficient
    diameter criterion diam(M psi_1^k(F)) < rho_{i_1..i_{n-1}} delta, then
    the sample containment check against depth-refined cylinder hulls with
    one cell of slack.
    """
    if inst.e_ifs.dimension != 1:
        raise UsageError("the s_n trace is implemented for d = 1 instances")
    if n_max > len(inst.coding):
        raise UsageError("coding shorter than requested trace length")
    from .ifs import check_affine_embedding

    m = Fraction(inst.m)
    lower = inst.ratio_lower_bound()
    upper = inst.ratio_upper_bound()
    entries = []
    s_prev = 0
    rho_word = Fraction(1)
    rho_prefix = Fraction(1)      # rho_{i_1..i_{n-1}}
    comp: Similitude | None = None
    for n in range(1, n_max + 1):
        symbol = inst.coding[n - 1]
        step_map = inst.e_ifs.maps[symbol - 1]
        comp = step_map if comp is None else comp.compose(step_map)
        rho_prefix = rho_word
        rho_word = rho_word * step_map.ratio

        k = s_prev
        while True:
            diam_image = inst.norm_upper * inst.gamma1**k * inst.diam_f
            if diam_image < rho_prefix * inst.delta:
                by_diameter = True
                slack_used = False
                break
            # pull M . psi_1^k into E-coordinates through the cylinder map
            psi_k = inst.psi1.power(k) if k >= 1 else None
            if psi_k is None:
                slope = m
                intercept = inst.b[0]
            else:
                slope = m * psi_k.ratio * psi_k.ortho
                intercept = m * psi_k.shift[0] + inst.b[0]
            c_w = comp.ratio * comp.ortho
            d_w = comp.shift[0]
            check = check_affine_embedding(
                (slope / c_w), (intercept - d_w) / c_w, inst.f_ifs, inst.e_ifs, depth
            )
            if check.contained:
                by_diameter = False
                slack_used = check.max_distance > 0
                break
            k += 1
        ratio = inst.gamma1**k / rho_word
        entries.append(
            SnEntry(
                n=n,
                i_n=symbol,
                s_n=k,
                ratio=ratio,
                lower_ok=(k == 0) or ratio >= lower,
                upper_ok=ratio <= upper,
                slack_used=slack_used,
                by_diameter=by_diameter,
            )
        )
        s_prev = k
    return SnTrace(tuple(entries), lower, upper)


def write_trace_csv(trace: SnTrace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,i_n,s_n,ratio,lower_bound_ok,upper_bound_ok\n")
        for e in trace.entries:
            fh.write(
                f"{e.n},{e.i_n},{e.s_n},{e.ratio.numerator}/{e.ratio.denominator},"
                f"{str(e.lower_ok).lower()},{str(e.upper_ok).lower()}\n"
            )


# -- induced orbit -----------------------------------------------------------------

def log_real_value(key: tuple, tables: dict) -> mpmath.mpf:
    if key == ("1",):
        return mpmath.mpf(1)
    if key[0] == "p":
        return mpmath.log(key[1])
    if key[0] == "b":
        table = tables[key[1]]
        v = table.value(key[1])
        return mpmath.mpf(v.numerator) / v.denominator
    raise AssertionError(f"unknown log coordinate {key}")


def induced_step_system(rhos, gamma1, bits: int = 128) -> StepSystem:
    """Steps alpha_i = log rho_i / log gamma_1 with exact expansion data.

    In log space every rational relation among 1, alpha_1..alpha_ell is a
    linear relation among the exponent vectors of gamma_1, rho_1..rho_ell,
    so the basis selection and all rank data are computed exactly; the
    beta values themselves are evaluated to 60 digits for the numeric
    lane.  (Division of two negative logarithms makes the alphas positive;
    gamma_1 = prod rho_i**t_i with t >= 0 nonzero is exactly the statement
    sum t_i alpha_i = 1.)
    """
    tables = {}
    for r in list(rhos) + [gamma1]:
        if isinstance(r, SymbolicReal):
            for label in r.coeffs:
                tables[label] = r.table
    v0 = log_vector(gamma1)
    vs = [log_vector(r) for r in rhos]
    keys = sorted({k for v in vs + [v0] for k in v})
    pivot = next(k for k in keys if v0.get(k, 0) != 0)

    qs = []
    ws = []
    for v in vs:
        q = v.get(pivot, Fraction(0)) / v0[pivot]
        w = {k: v.get(k, Fraction(0)) - q * v0.get(k, Fraction(0)) for k in keys}
        qs.append(q)
        ws.append([w[k] for k in keys])

    denom = 1
    for row in ws:
        for c in row:
            denom = lcm(denom, c.denominator)
    int_rows = [[int(c * denom) for c in row] for row in ws]
    hermite = hermite_row_basis(int_rows)

    with mpmath.workdps(70):
        key_reals = {k: log_real_value(k, tables) for k in keys}
        log_gamma = mpmath.fsum(
            (mpmath.mpf(v0[k].numerator) / v0[k].denominator) * key_reals[k]
            for k in keys
            if v0.get(k, 0) != 0
        )
        # orient each basis row so the associated beta is positive
        oriented = []
        beta_strs = []
        for row in hermite:
            val = mpmath.fsum(c * key_reals[k] for c, k in zip(row, keys) if c) / denom
            beta = val / log_gamma
            if beta < 0:
                row = [-x for x in row]
                beta = -beta
            oriented.append(row)
            beta_strs.append(mpmath.nstr(beta, 60, strip_zeros=False))
        hermite = oriented

    labels = [f"beta{j+1}" for j in range(len(hermite))]
    table = BasisTable(BasisEntry(l, s, True) for l, s in zip(labels, beta_strs))
    alphas = []
    for q, row in zip(qs, int_rows):
        coords = integer_coordinates(hermite, row)
        if coords is None:
            # orientation flipped some rows; coordinates flip sign with them
            raise AssertionError("induced expansion must be integral")
        alphas.append(SymbolicReal(table, q, dict(zip(labels, coords))))
    return build_step_system(alphas, bits)


def induced_rank(rhos) -> int:
    """dim span_Q(log rho_1..log rho_ell), exactly, from log vectors."""
    vs = [log_vector(r) for r in rhos]
    keys = sorted({k for v in vs for k in v})
    rows = [[v.get(k, Fraction(0)) for k in keys] for v in vs]
    return rank_bareiss(clear_denominators(rows))


def induced_orbit(inst: EmbeddingInstance, length: int | None = None,
                  bits: int = 128) -> tuple[StepSystem, Orbit]:
    """The step system of the instance plus the orbit along its coding."""
    if length is None:
        length = len(inst.coding)
    if length > len(inst.coding):
        raise UsageError("coding shorter than requested orbit length")
    steps = induced_step_system([mp.ratio for mp in inst.e_ifs.maps], inst.gamma1, bits)
    orbit = generate_orbit(steps, ExplicitWord(inst.coding[:length]), length, bits)
    return steps, orbit


# -- threshold and the dimension chain ----------------------------------------------

def threshold_c(ell: int, lam: int) -> Fraction:
    """The embedding-dimension threshold: 1/4, 1/4, or 1/(2 lambda + 2)."""
    if ell < 2 or lam < 1:
        raise UsageError("threshold needs ell >= 2 and lambda >= 1")
    if ell == 2 or lam == 1:
        return Fraction(1, 4)
    return Fraction(1, 2 * lam + 2)


@dataclass(frozen=True)
class ChainReport:
    dim_e_similarity: float
    half_upper_box_estimate: float
    inequality_satisfied: bool
    tolerance: float
    orbit_points: int
    caveat: str = (
        "similarity dimension equals Hausdorff dimension under OSC only; "
        "box estimates at finite n carry the stated tolerance"
    )


def dimension_chain_report(
    inst: EmbeddingInstance,
    orbit_length: int,
    k_min: int = 2,
    k_max: int = 12,
    tolerance: float = 0.1,
) -> ChainReport:
    """Compare dim E (similarity) against half the orbit's upper box estimate."""
    from .ifs import similarity_dimension

    dim_e = similarity_dimension(inst.e_ifs.ratios())
    _, orbit = induced_orbit(inst, orbit_length)
    pts = CirclePoints.from_orbit(orbit)
    est = box_dim_estimate(covering_profile(pts, k_min, k_max))
    half = est.upper_est / 2
    return ChainReport(
        dim_e_similarity=dim_e,
        half_upper_box_estimate=half,
        inequality_satisfied=dim_e >= half - tolerance,
        tolerance=tolerance,
        orbit_points=orbit.n,
    )
