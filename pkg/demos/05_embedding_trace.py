#!/usr/bin/env python3
"""The embedding-to-orbit bridge, end to end on the Cantor pair.

F (contractions 1/9 at 0 and 8/9) sits inside the middle-third set E via
the identity map.  The demo codes the embedded fixed point, traces the
minimal fitting powers s_n with their two-sided ratio bounds, builds the
induced circle orbit from the log-contraction ratios, and evaluates the
independence verdict plus the dimension threshold.
"""

from fractions import Fraction as F

from multirot.embedtrace import (
    build_instance,
    dimension_chain_report,
    induced_orbit,
    induced_step_system,
    sn_sequence,
    threshold_c,
)
from multirot.exact import qplus_independent_mod1
from multirot.ifs import SimilarIFS, similarity_dimension

e_ifs = SimilarIFS.line_maps([(F(1, 3), 0), (F(1, 3), F(2, 3))])
f_ifs = SimilarIFS.line_maps([(F(1, 9), 0), (F(1, 9), F(8, 9))])

inst = build_instance(e_ifs, f_ifs, F(1), F(0), coding_len=24)
print(f"gamma_1 = {inst.gamma1} (orthogonal power l = {inst.ell_power}), "
      f"delta = {inst.delta}, ||M|| = {inst.norm_upper}")
print(f"embedded fixed point y = {inst.y[0]}, coding = {''.join(map(str, inst.coding[:16]))}...")

trace = sn_sequence(inst, 24, depth=6)
print()
print("n : s_n : ratio gamma^s_n / rho_word   (bounds "
      f"[{inst.ratio_lower_bound()}, {inst.ratio_upper_bound()}])")
for e in trace.entries[:10]:
    print(f"{e.n:2d} : {e.s_n:3d} : {str(e.ratio):8s} in bounds: {e.lower_ok and e.upper_ok}")
print(f"... all {len(trace.entries)} ratios within bounds: {trace.all_within_bounds()}")

print()
steps, orbit = induced_orbit(inst, 24)
values = sorted({orbit.point_fraction(k) for k in range(orbit.n + 1)})
print(f"induced steps alpha = {[str(a.value()) for a in steps.alphas]} "
      f"(r={steps.r}, lambda={steps.lam})")
print(f"orbit along the coding takes {len(values)} values: {values}")
verdict = qplus_independent_mod1(steps)
witness = "" if verdict.independent else \
    " (witness t = " + ", ".join(str(t) for t in verdict.witness) + ")"
print(f"Q+ independent mod 1: {verdict.independent}{witness}")

c = threshold_c(e_ifs.ell, max(steps.lam, 1))
print(f"dimension threshold c = {c}; dim E = {similarity_dimension(e_ifs.ratios()):.4f} "
      f"{'<' if similarity_dimension(e_ifs.ratios()) < c else '>='} c")

report = dimension_chain_report(inst, 24, k_min=4, k_max=10)
print(f"dimension chain: dim E = {report.dim_e_similarity:.4f} >= "
      f"half upper-box estimate {report.half_upper_box_estimate:.4f} "
      f"-> satisfied: {report.inequality_satisfied}")

print()
print("== an incommensurable ratio pair, for contrast ==")
steps2 = induced_step_system([F(1, 2), F(1, 2)], F(1, 3))
print(f"alpha = log2/log3 twice; Q+ independent: "
      f"{qplus_independent_mod1(steps2).independent} "
      "(no rational power relation between 1/2 and 1/3)")
