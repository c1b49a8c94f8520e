"""Self-similar IFSs: dimensions, separation, samples, embeddings, periods."""

from __future__ import annotations

from fractions import Fraction
from math import log

import pytest

from multirot import boxdim as bx
from multirot.errors import DomainError, GuardError, UsageError
from multirot.ifs import (
    SimilarIFS,
    Similitude,
    Turn,
    attractor_sample,
    check_affine_embedding,
    orthogonal_power_period,
    similarity_dimension,
    ssc_check,
)

F = Fraction

MIDDLE_THIRD = SimilarIFS.line_maps([(F(1, 3), 0), (F(1, 3), F(2, 3))])
NINTH_PAIR = SimilarIFS.line_maps([(F(1, 9), 0), (F(1, 9), F(8, 9))])


def in_middle_third_cantor(x: F, digits: int = 64) -> bool:
    """Base-3 digit membership oracle for the classical Cantor set."""
    if not (0 <= x <= 1):
        return False
    for _ in range(digits):
        x *= 3
        d = x.numerator // x.denominator
        if d == 1 and x != 1:
            return False
        x -= d
        if x == 0:
            return True
    return True  # undecided at depth; treat as inside for dyadic-free tests


# -- similarity dimension -----------------------------------------------------


def test_similarity_dimension_cantor():
    assert abs(similarity_dimension([F(1, 3), F(1, 3)]) - log(2) / log(3)) < 1e-13


def test_similarity_dimension_full_interval():
    assert abs(similarity_dimension([F(1, 2), F(1, 2)]) - 1.0) < 1e-13


def test_similarity_dimension_golden_case():
    # (1/4, 1/2): 2**-s solves x**2 + x = 1, so s = log2((1+sqrt5)/2)
    want = 0.6942419136306173
    assert abs(similarity_dimension([F(1, 4), F(1, 2)]) - want) < 1e-12


def test_similarity_dimension_residual_and_homogeneous():
    import random

    rng = random.Random(14)
    for _ in range(100):
        ell = rng.randint(1, 5)
        rhos = [F(rng.randint(1, 8), rng.randint(9, 24)) for _ in range(ell)]
        s = similarity_dimension(rhos)
        assert abs(sum(float(r) ** s for r in rhos) - 1) <= 1e-12
    for _ in range(50):
        rho = F(rng.randint(1, 6), rng.randint(7, 20))
        ell = rng.randint(1, 6)
        s = similarity_dimension([rho] * ell)
        assert abs(s - log(ell) / log(1 / float(rho))) <= 1e-12


def test_similarity_dimension_guards():
    with pytest.raises(UsageError):
        similarity_dimension([])
    with pytest.raises(DomainError):
        similarity_dimension([F(3, 2)])


# -- hulls and separation ---------------------------------------------------------


def test_middle_third_hull_and_ssc():
    lo, hi = MIDDLE_THIRD.hull().interval()
    assert (lo, hi) == (F(0), F(1))
    cert = ssc_check(MIDDLE_THIRD, 1)
    assert cert.certified and cert.delta == F(1, 3)


def test_touching_images_not_certified():
    ifs = SimilarIFS.line_maps([(F(1, 2), 0), (F(1, 2), F(1, 2))])
    for depth in (1, 3, 6):
        assert not ssc_check(ifs, depth).certified


def test_quarter_system_hull_and_gap():
    ifs = SimilarIFS.line_maps([(F(1, 4), 0), (F(1, 4), F(1, 2))])
    lo, hi = ifs.hull().interval()
    assert (lo, hi) == (F(0), F(2, 3))
    cert = ssc_check(ifs, 6)
    assert cert.certified and cert.delta >= F(1, 4)
    assert cert.delta == F(1, 3)  # exact gap between [0,1/6] and [1/2,2/3]


def test_ssc_delta_monotone_in_depth():
    ifs = SimilarIFS.line_maps([(F(1, 3), 0), (F(1, 4), F(3, 4))])
    deltas = [ssc_check(ifs, d).delta for d in range(1, 7)]
    assert all(d is not None for d in deltas)
    assert all(b >= a for a, b in zip(deltas, deltas[1:]))


def test_reflected_map_hull():
    ifs = SimilarIFS.line_maps([(F(1, 3), F(1, 2), -1), (F(1, 3), F(2, 3))])
    lo, hi = ifs.hull().interval()
    img_lo = min(-F(1, 3) * hi + F(1, 2), F(1, 3) * lo + F(2, 3))
    assert img_lo >= lo and lo <= hi


# -- sampling ----------------------------------------------------------------------


def test_sample_middle_third_depths():
    assert [p[0] for p in attractor_sample(MIDDLE_THIRD, 1)] == [F(0), F(2, 3)]
    got = sorted(p[0] for p in attractor_sample(MIDDLE_THIRD, 2))
    assert got == [F(0), F(2, 9), F(2, 3), F(8, 9)]


def test_sample_counts_and_uniqueness_under_ssc():
    pts = attractor_sample(MIDDLE_THIRD, 10)
    assert len(pts) == 2**10
    assert len(set(pts)) == 2**10


def test_sample_guard():
    with pytest.raises(GuardError):
        attractor_sample(MIDDLE_THIRD, 25)


def test_sample_box_estimate_near_cantor_dimension():
    pts = [p[0] for p in attractor_sample(MIDDLE_THIRD, 12)]
    est = bx.box_dim_estimate(
        bx.covering_profile(bx.CirclePoints.from_unit_reals(pts), 4, 12)
    )
    assert abs(est.slope_global - log(2) / log(3)) < 0.05


# -- affine embedding checks --------------------------------------------------------


def test_embedding_ninth_pair_into_middle_third():
    """Digit oracle: the 1/9-pair writes base-3 digit pairs 00/22, inside E."""
    for p in attractor_sample(NINTH_PAIR, 6):
        assert in_middle_third_cantor(p[0])
    res = check_affine_embedding(1, 0, NINTH_PAIR, MIDDLE_THIRD, 8, tol=F(1, 3**8))
    assert res.contained and res.max_distance == 0


def test_embedding_shift_violates():
    res = check_affine_embedding(1, F(1, 2), MIDDLE_THIRD, MIDDLE_THIRD, 8)
    assert not res.contained
    assert res.witness is not None
    assert not in_middle_third_cantor(res.witness[0])


def test_embedding_identity_reflexive():
    for ifs in (MIDDLE_THIRD, NINTH_PAIR):
        res = check_affine_embedding(1, 0, ifs, ifs, 6)
        assert res.contained and res.max_distance == 0


def test_embedding_singular_matrix_rejected():
    with pytest.raises(DomainError):
        check_affine_embedding(0, 0, MIDDLE_THIRD, MIDDLE_THIRD, 4)


# -- orthogonal parts -----------------------------------------------------------------


def test_period_signs():
    assert orthogonal_power_period(1) == 1
    assert orthogonal_power_period(-1) == 2


def test_period_rational_turns():
    assert orthogonal_power_period(Turn.of(F(1, 4))) == 4
    assert orthogonal_power_period(Turn.of(F(3, 5))) == 5
    assert orthogonal_power_period(Turn.of(F(0))) == 1


def test_period_irrational_turn():
    irr = "0.12724225184316786509" + "4" * 40
    assert orthogonal_power_period(Turn.of(irr)) == 1


def test_planar_similitude_roundtrip():
    quarter = Similitude.plane(F(1, 2), F(1, 4), (F(1), F(0)))
    x = (F(1), F(1))
    y = quarter.apply(x)
    # quarter turn of (1,1) scaled by 1/2 then shifted: (1 - 1/2, 1/2)
    assert abs(y[0] - F(1, 2)) < F(1, 1 << 80)
    assert abs(y[1] - F(1, 2)) < F(1, 1 << 80)
    fourth = quarter.power(4)
    assert abs(fourth.ortho.value() - 0) < F(1, 1 << 80)
    fp = quarter.fixed_point()
    img = quarter.apply(fp)
    assert abs(img[0] - fp[0]) < F(1, 1 << 80)
    assert abs(img[1] - fp[1]) < F(1, 1 << 80)


def test_planar_ifs_ball_and_ssc():
    ifs = SimilarIFS(
        [
            Similitude.plane(F(1, 4), F(0), (F(0), F(0))),
            Similitude.plane(F(1, 4), F(1, 4), (F(3, 4), F(0))),
        ]
    )
    ball = ifs.hull()
    assert ball.radius > 0
    cert = ssc_check(ifs, 3)
    assert cert.certified and cert.delta > 0


def test_embedding_check_planar_reflexive_and_shifted():
    ifs = SimilarIFS(
        [
            Similitude.plane(F(1, 4), F(0), (F(0), F(0))),
            Similitude.plane(F(1, 4), F(0), (F(3, 4), F(0))),
        ]
    )
    ident = ((1, 0), (0, 1))
    res = check_affine_embedding(ident, (0, 0), ifs, ifs, 4)
    assert res.contained
    far = check_affine_embedding(ident, (50, 0), ifs, ifs, 4)
    assert not far.contained and far.witness is not None


def test_embedding_check_planar_singular():
    ifs = SimilarIFS([Similitude.plane(F(1, 4), F(0), (F(0), F(0)))])
    with pytest.raises(DomainError):
        check_affine_embedding(((1, 1), (2, 2)), (0, 0), ifs, ifs, 2)
