"""Numerical tolerances and defaults used throughout the package."""

#: Algebraic identities (Hermiticity, exact shift algebra, route agreement).
TOL_ALG = 1e-12
#: Norms and traces of states.
TOL_NORM = 1e-10
#: Smallest admissible density-matrix eigenvalue is ``-TOL_PSD``.
TOL_PSD = 1e-10
#: Normalisation of sampled phase densities.
TOL_QUAD = 1e-10

#: A state is interior-valid if its weight on the K_EDGE outermost labels
#: at either end of the truncated range stays below EDGE_TAIL_MAX.
K_EDGE = 3
EDGE_TAIL_MAX = 1e-12

DEFAULT_CUTOFF = 40
DEFAULT_GRID_POINTS = 2048
#: Node count of the Gauss-Legendre reference construction of the phase operator.
PHASE_ORACLE_NODES = 4096
