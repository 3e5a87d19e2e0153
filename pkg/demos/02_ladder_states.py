# Zero mode, ladder states and the generalized eigenstates psibar_n.
#
# States are P(z, zb) * exp(E); operators act on P through exp(-E) O exp(E).

from weylcheck import apply, build_model, make_phi, psi, psibar, zero_mode
from weylcheck.scalar import S
from weylcheck.verifier import find_minimal_annihilator

e8 = build_model("E8")
z0 = zero_mode(e8)
print("zero mode:", z0, " gauge exponent:", e8.zero_mode_exponent)
print("A- psi0 =", apply(e8["A-"], z0))
print("B- psi0 =", apply(e8["B-"], z0))
print("H psi0 == 2 s psi0:", apply(e8["H"], z0) == z0 * (2 * S))

# %% psi_n are eigenstates, psibar_n are not
for n in range(4):
    st = psi(e8, n)
    print(f"H psi{n} == {2 * (n + 1)} s psi{n}:", apply(e8["H"], st) == st * (2 * (n + 1) * S))
print("psibar_2 =", psibar(e8, 2))

# %% Smallest p with (R + s a3)^p psibar_n = 0, against the quoted table
for n in range(1, 11):
    f = find_minimal_annihilator(e8, "R", n)
    print(f"n={n:2}  minimal p={f.minimal:2}  stated p={f.predicted:2}")

# %% H annihilators: roots found at s=2, a3=3, then confirmed symbolically
for n in (2, 3):
    f = find_minimal_annihilator(e8, "H", n)
    print(f"n={n}: prod (H - c s) over c in {[str(c) for c in f.factors]}, confirmed={f.confirmed}")

# %% The cubic-gauge model has closed actions on phi(m, n)
e10 = build_model("E10")
print("phi(1,1) =", make_phi(e10, 1, 1))
