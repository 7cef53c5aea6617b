"""
Hermitian phase operator
========================

The phase operator is the integral of phi |phi><phi| over [-pi, pi). Its Fock
matrix elements have a closed form; here it is compared with a direct
Gauss-Legendre evaluation of the integral, and its commutator with the number
operator is inspected.
"""
import numpy as np

import polphase as pp

basis = pp.EnergyBasis(cutoff=40)
Phi = pp.build_phase_operator(basis)
ref = pp.phase_operator_quadrature(basis)
print("closed form vs quadrature:", np.max(np.abs(Phi.entries - ref)))
print("<0|Phi|1> =", Phi.at(0, 1))

eig = np.linalg.eigvalsh(Phi.entries)
print(f"spectrum within [{eig.min():.4f}, {eig.max():.4f}]")

###############################################################################
# [Phi, n] = -i holds on smooth states that vanish near phi = +-pi; the
# finite matrix carries a boundary term i(-1)^(m-n) off the diagonal.

n = pp.build_number_operator(basis)
c = pp.commutator(Phi, n).entries
print("\n[Phi, n] corner:\n", np.round(c[:3, :3], 3))

width = 0.5
u = width / np.sqrt(2 * np.pi) * np.exp(-(width * basis.labels) ** 2 / 2)
r = (c + 1j * np.eye(basis.dimension)) @ u
print("||([Phi, n] + i) u|| / ||u|| =", np.linalg.norm(r) / np.linalg.norm(u))
