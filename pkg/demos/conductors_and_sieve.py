"""Fiber conductors via Tate's algorithm and the square-free sieve.

Shows the local-data machinery on individual fibers, the conductor
polynomial matching for the F1 family, and the density of square-free
discriminant values predicted by the Euler product.
"""

from lowlying.family import get_family
from lowlying.polyint import poly
from lowlying.sqsieve import cardinality_constant, enumerate_good, nu
from lowlying.tate import conductor, tate_local

f1 = get_family("F1")

print("== local data for the F1 fiber at t=1 ==")
ai = f1.specialize(1)
for p in (2, 3, 5):
    ld = tate_local(ai, p)
    print(f"  p={p}: kodaira={ld.kodaira:5s} f_p={ld.f_p} "
          f"reduction={ld.reduction_type}")
C, complete = conductor(f1, 1)
print(f"  conductor C(1) = {C} (complete={complete}), "
      f"expected 27*(9*1+1)^2 = {f1.expected_conductor.eval(1)}")

print("\n== conductor polynomial matching, first 15 good t >= 100 ==")
good = [int(t) for t in enumerate_good(f1, 100, exact=True).good_t[:15]]
for t in good:
    C, _ = conductor(f1, t)
    want = f1.expected_conductor.eval(t)
    print(f"  t={t:4d}  C={C:12d}  match={C == want}")

# The sieve: nu(d) counts roots of D(t) mod d^2; the good-t density is
# the Euler product prod_p (1 - nu(p)/p^2).
D = poly(1, 9)  # D(t) = 9t + 1
print("\n== square-free sieve for D(t) = 9t+1 ==")
for d in (2, 3, 5, 7, 11, 13):
    print(f"  nu({d}) = {nu(D, d)}")
N = 10 ** 4
rep = enumerate_good(f1, N)
dens = rep.good_t.size / N
c = cardinality_constant(f1, 1000)
print(f"  density of good t in [{N}, {2*N}]: {dens:.4f}")
print(f"  truncated Euler product:           {c:.4f}")
