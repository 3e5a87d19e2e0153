# Quadratic symmetry algebra of the quartic-gauge model, computed from scratch.
#
# Operators live in the Weyl algebra of z, zb with Laurent coefficients in
# s (s^2 = b1) and a3.  Everything below is exact.

from weylcheck import anticommutator, build_model, commutator
from weylcheck.scalar import A3

e8 = build_model("E8")
H, L1, L2 = e8["H"], e8["L1"], e8["L2"]
print("H  =", H)
print("L1 =", L1)
print("L2 =", L2)

# %% Both integrals commute with H
print("[H, L1] =", commutator(H, L1))
print("[H, L2] =", commutator(H, L2))

# %% R is the bracket of the integrals; the algebra closes quadratically
R = commutator(L1, L2)
print("R =", R)
print("[L1, R] - 8 L1^2 =", commutator(L1, R) - 8 * L1 * L1)

# %% The second bracket: the commonly quoted signs leave a residual
printed = -8 * anticommutator(L1, L2) - 16 * L1 + 2 * A3 * H
print("residual with quoted signs:", commutator(L2, R) - printed)
fixed = -8 * anticommutator(L1, L2) + 16 * L1 - 2 * A3 * H
print("residual with flipped signs:", commutator(L2, R) - fixed)

# %% The same checks, driven by the bundled suite file
from weylcheck import load_suite, run_suite
from weylcheck.opdsl import bundled_suite_path

report = run_suite(load_suite(bundled_suite_path("E8")))
print(report.summary)
