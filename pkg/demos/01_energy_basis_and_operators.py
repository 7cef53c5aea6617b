"""
Energy labels and the shift operator
====================================

Two circular polarizations of one mode are merged into a single ladder of
integer energy labels. On that ladder the exponential phase operator is a
plain shift, and it is unitary apart from the two truncation edges.
"""
import numpy as np

import polphase as pp

basis = pp.EnergyBasis(cutoff=3)
print("labels:", basis.labels)
for k in basis.labels:
    n, sigma = basis.fock_label(k)
    print(f"  k={k:+d}  <->  n={n}, {sigma.name}")

###############################################################################
# The shift operator and its truncation defects

V = pp.build_exp_phase_operator(basis)
left, right = pp.unitarity_defect(V)
print("\nV^dag V - 1 is nonzero only at label", basis.labels[np.abs(left).sum(1) > 0])
print("V V^dag - 1 is nonzero only at label", basis.labels[np.abs(right).sum(1) > 0])
print("block assembly defect:", pp.block_decomposition_check(basis))

###############################################################################
# The single-mode one-sided shift is not unitary even before truncation

sg = pp.sg_exponential_operator(basis)
c = pp.commutator(sg, sg.dagger()).entries
print("\n[V+, V+^dag] diagonal:", np.diag(c).real)

###############################################################################
# Compound annihilation operator: sqrt(-1) = i on the negative labels

a = pp.build_annihilation_operator(basis)
print("\nannihilation block-form defect:", pp.annihilation_block_check(basis))
print("a |k=-1> =", np.round(a.apply(np.eye(basis.dimension)[basis.offset(-1)]), 3))
