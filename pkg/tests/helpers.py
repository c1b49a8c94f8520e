"""Independent oracles shared by the test modules.

Everything here recomputes expected values by brute force or direct
definition, deliberately avoiding the library's own decision paths.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import ceil, log

import numpy as np

from multirot.exact.symbolic import BasisEntry, BasisTable, SymbolicReal

# -- random declared-irrational bases -----------------------------------------


def random_decimal(rng: random.Random, lo: float = 0.05, hi: float = 0.95) -> str:
    """A 55-digit decimal in (lo, hi); 'irrational for all practical purposes'."""
    first = rng.uniform(lo, hi)
    head = f"{first:.6f}"
    tail = "".join(rng.choice("0123456789") for _ in range(49))
    return head + tail


def random_basis(rng: random.Random, r: int, prefix: str = "b") -> BasisTable:
    return BasisTable(
        BasisEntry(f"{prefix}{j}", random_decimal(rng), True) for j in range(r)
    )


# -- brute-force mod-1 dependence search ---------------------------------------

def _fraction_grid(max_num: int, max_den: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for a in range(1, max_num + 1):
        for b in range(1, max_den + 1):
            vals.add(Fraction(a, b))
    return sorted(vals)


def brute_force_qplus_witness(
    alphas: list[SymbolicReal], max_num: int = 8, max_den: int = 8
) -> tuple[Fraction, ...] | None:
    """Search t in Q_+^ell (numerators, denominators <= bounds) with
    sum t_i alpha_i an exact integer; meet-in-the-middle on the raw
    coefficient vectors, independent of the expansion machinery."""
    table = alphas[0].table
    labels = sorted({l for a in alphas for l in a.coeffs}, key=table.order)
    vecs = [tuple(a.coeffs.get(l, Fraction(0)) for l in labels) for a in alphas]
    q0s = [a.q0 for a in alphas]
    ell = len(alphas)
    grid = _fraction_grid(max_num, max_den)
    half = ell // 2

    def accumulate(ts, idx0):
        vec = tuple(
            sum((t * vecs[idx0 + i][j] for i, t in enumerate(ts)), Fraction(0))
            for j in range(len(labels))
        )
        q = sum((t * q0s[idx0 + i] for i, t in enumerate(ts)), Fraction(0))
        return vec, q

    left_nonzero: dict = {}
    for ts in product(grid, repeat=half):
        if not any(ts):
            continue
        vec, q = accumulate(ts, 0)
        key = (vec, q % 1)
        left_nonzero.setdefault(key, ts)

    zero_vec = tuple(Fraction(0) for _ in labels)
    for ts in product(grid, repeat=ell - half):
        vec, q = accumulate(ts, half)
        if any(ts) and vec == zero_vec and q % 1 == 0:
            return tuple([Fraction(0)] * half) + ts
        need = (tuple(-v for v in vec), (-q) % 1)
        match = left_nonzero.get(need)
        if match is not None:
            return match + ts
    return None


def exact_integer_combination(alphas: list[SymbolicReal], t: tuple[Fraction, ...]) -> bool:
    """Is sum t_i alpha_i an exact integer (symbolically, no floats)?"""
    acc = alphas[0] * t[0]
    for ti, a in zip(t[1:], alphas[1:]):
        acc = acc + a * ti
    return acc.is_integer()


# -- brute-force commensurability ------------------------------------------------

def brute_force_commensurable(
    rho_vecs: list[dict], gamma_vec: dict, bound: int
) -> tuple[Fraction, ...] | None:
    """Witness t with common denominator <= bound, or None.

    Enumerates the common denominator D and the scaled integer exponents
    directly against the prime-exponent equation; ell <= 2 only.
    """
    keys = sorted({k for v in rho_vecs + [gamma_vec] for k in v})
    rows = [np.array([float(v.get(k, 0)) for k in keys]) for v in rho_vecs]
    g = np.array([float(gamma_vec.get(k, 0)) for k in keys])

    def cap(i):
        # t_i * (-log rho_i) <= -log gamma, in prime-log space
        num = -sum(float(gamma_vec.get(k, 0)) * log(k[1]) for k in keys if k[0] == "p")
        den = -sum(float(rho_vecs[i].get(k, 0)) * log(k[1]) for k in keys if k[0] == "p")
        return ceil(num / den) + 1

    exact_rows = [[v.get(k, Fraction(0)) for k in keys] for v in rho_vecs]
    exact_g = [gamma_vec.get(k, Fraction(0)) for k in keys]
    ell = len(rho_vecs)
    assert ell <= 2, "brute force supports ell <= 2"
    for d in range(1, bound + 1):
        cap0 = cap(0) * d
        for a0 in range(cap0 + 1):
            if ell == 1:
                if all(a0 * e == d * ge for e, ge in zip(exact_rows[0], exact_g)):
                    return (Fraction(a0, d),)
                continue
            pivot = next(j for j, e in enumerate(exact_rows[1]) if e != 0)
            num = d * exact_g[pivot] - a0 * exact_rows[0][pivot]
            a1 = num / exact_rows[1][pivot]
            if a1.denominator != 1 or a1 < 0:
                continue
            a1 = int(a1)
            if all(
                a0 * e0 + a1 * e1 == d * ge
                for e0, e1, ge in zip(exact_rows[0], exact_rows[1], exact_g)
            ):
                return (Fraction(a0, d), Fraction(a1, d))
    return None


# -- brute-force minimal circular cover --------------------------------------------

def brute_force_cover(vals: list[int], delta: int, mod: int) -> int:
    """Smallest anchored cover by closed intervals of length delta (exact)."""
    n = len(vals)
    for c in range(1, n + 1):
        for anchors in combinations(vals, c):
            if all(any((v - a) % mod <= delta for a in anchors) for v in vals):
                return c
    return n


# -- brute-force minimal pigeonhole k ------------------------------------------------

def brute_force_min_k(betas: list[Fraction], bound: Fraction, k_max: int) -> int:
    """Smallest k <= k_max with ||k beta_j|| <= bound for all j.

    Float screen (with generous slack) plus exact adjudication of the
    candidates, independent of the library's fixed-point path.  Callers
    verifying minimality of a candidate k pass k_max = k: the true
    minimum over [1, k] equals k exactly when k is minimal and valid.
    """
    fl = [float(b) for b in betas]
    slack = float(bound) + 1e-8
    block = 1 << 18
    for start in range(1, k_max + 1, block):
        stop = min(start + block, k_max + 1)
        ks = np.arange(start, stop, dtype=np.float64)
        v = ks * fl[0]
        cand = ks[np.abs(v - np.rint(v)) <= slack]  # ||x|| = |x - round(x)|
        for b in fl[1:]:
            if cand.size == 0:
                break
            v = cand * b
            cand = cand[np.abs(v - np.rint(v)) <= slack]
        for k in cand:
            k = int(k)
            if all(_norm_exact(k * b) <= bound for b in betas):
                return k
    raise AssertionError("no k within the pigeonhole range")


def _norm_exact(x: Fraction) -> Fraction:
    frac = x - (x.numerator // x.denominator)
    return min(frac, 1 - frac)
