"""Empirical 1- and 2-level zero densities against the five symmetry types.

Runs the explicit-formula estimator over a family, then compares the
averaged statistic with the closed-form predictions for SO(even), O,
SO(odd), Sp and U, printing the residual table a classifier would use.
"""

from lowlying.density import d1_empirical, d2_empirical
from lowlying.family import get_family
from lowlying.predict import GROUPS
from lowlying.testfn import make_fejer

g = make_fejer(0.30)

for label in ("F1", "washington"):
    f = get_family(label)
    rep = d1_empirical(f, 4000, g)
    print(f"== 1-level, {label}, Fejer(0.30), N=4000 "
          f"({rep.n_curves} curves) ==")
    print(f"  D1 = {rep.D1_emp:.4f}   (S1 avg {rep.S1_avg:+.4f}, "
          f"S2 avg {rep.S2_avg:+.4f})")
    for grp in GROUPS:
        print(f"  {grp:7s} predicts {rep.predictions[grp]:.4f}  "
              f"residual {rep.residuals[grp]:.4f}")
    best = min(rep.residuals, key=rep.residuals.get)
    print(f"  closest: {best}\n")

# 2-level: the statistic that separates SO(even) from SO(odd) even when
# every test function has support inside (-1, 1).
g2 = make_fejer(0.15)
f1 = get_family("F1")
rep2 = d2_empirical(f1, 4000, g2, g2)
print("== 2-level, F1, Fejer(0.15)^2, N=4000 ==")
print(f"  D2 = {rep2.D2_emp:.4f}   (n_minus used: {rep2.n_minus_used})")
for grp in GROUPS:
    print(f"  {grp:7s} predicts {rep2.predictions[grp]:.4f}  "
          f"residual {rep2.residuals[grp]:.4f}")
