# Matrices of the E10 integrals on the finite phi(m, n) spaces, m + 2n <= D,
# and the Jordan structure they carry at s = 2, a3 = 3.

from weylcheck import build_model
from weylcheck import matrixrep as MR

e10 = build_model("E10")

for d in range(0, 9, 2):
    h, l1 = MR.build_matrix(e10, "H", d), MR.build_matrix(e10, "L1", d)
    hb = MR.jordan_blocks(h)
    lb = MR.jordan_blocks(l1)
    print(f"D={d} dim={h.size}")
    print("  H  largest block:", max(max(sizes) for _, sizes in hb), "eigenvalues:", [str(lam) for lam, _ in hb])
    print("  L1 blocks:", {str(lam): sizes for lam, sizes in lb})

# %% The two construction routes agree: closed-form actions vs explicit states
d = 5
same = all(MR.build_matrix(e10, n, d) == MR.build_matrix(e10, n, d, route="states") for n in ("H", "L1", "R"))
print("closed form == explicit states at D=5:", same)

# %% The raising operators leave the space
try:
    MR.build_matrix(e10, "A+", 3)
except MR.NotFiltrationInvariant as exc:
    print("A+:", exc)
