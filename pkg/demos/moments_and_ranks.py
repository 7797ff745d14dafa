"""Exact moment sums and Nagao-style rank estimates for the preset families.

Walks through the arithmetic side of the library: per-prime first and second
moments of the trace of Frobenius across a one-parameter family, their exact
closed forms, and the rank statistic built from the first moments.
"""

import math

from lowlying.family import PRESETS, get_family
from lowlying.modarith import (MomentTable, closed_form_moments,
                               nagao_estimate, primes_upto)

# First moments detect rank: A1(p) = -r p + O(1) for a family of rank r.
print("== moment tables, p <= 60 ==")
for label in ("F1", "F2plus", "washington", "rank1"):
    tab = MomentTable.build(get_family(label), 60)
    print(f"\n{label}:")
    for p, (a1, a2) in sorted(tab.entries.items()):
        c1, c2 = closed_form_moments(label, p)
        tag = "ok" if a1 == c1 and (c2 is None or a2 == c2) else "MISMATCH"
        print(f"  p={p:3d}  A1={a1:6d}  A2={a2:8d}  closed=({c1}, {c2})  {tag}")

# The rank-6 family: -A1(p)/p hovers around 6.
tab6 = MomentTable.build(get_family("rank6"), 400, second=False)
vals = [-a1 / p for p, (a1, _) in tab6.entries.items() if p > 100]
print(f"\nrank6: mean -A1(p)/p over 100 < p <= 400: {sum(vals)/len(vals):.3f}")

# Nagao's estimator: -(1/X) sum_p (A1(p)/p) log p -> r * theta(X)/X.
X = 4000
theta = sum(math.log(p) for p in primes_upto(X))
print(f"\n== Nagao estimates at X={X} (theta(X)/X = {theta/X:.4f}) ==")
for label in PRESETS:
    if label == "rank6":
        continue  # heavier coefficients; see the moment table above instead
    f = get_family(label)
    est = nagao_estimate(f, X)
    print(f"  {label:10s} rank {f.rank}: estimate {est:+.4f}")
