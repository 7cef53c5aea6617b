"""
Polarization-resolved phase distributions
=========================================

Phase densities of a coherent state (alpha = 1) and of Fock states for
several polarizations, along with the interference term that separates
horizontal from vertical light.
"""
import numpy as np
import matplotlib.pyplot as plt

import polphase as pp

grid = pp.PhaseGrid(512)
coh = pp.coherent_state(1.0, 40)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for name in ("circular", "anticircular", "horizontal", "vertical"):
    d = pp.distribution_decomposed(coh, pp.polarization_state(name), grid)
    ax1.plot(grid.nodes, d.density, label=name)
ax1.plot(grid.nodes, pp.interference_term(coh, pp.polarization_state("horizontal"), grid),
         "k:", label="interference")
ax1.set_title("coherent state, alpha = 1")
ax1.set_xlabel(r"$\phi$")
ax1.legend()

for label, f, pol in (("circular Fock", pp.fock_state(3, 40), "circular"),
                      ("horizontal vacuum", pp.fock_state(0, 40), "horizontal"),
                      ("horizontal single photon", pp.fock_state(1, 40), "horizontal")):
    d = pp.distribution_direct(pp.tensor_embed(f, pp.polarization_state(pol)), grid)
    ax2.plot(grid.nodes, d.density, label=label)
ax2.set_title("Fock states")
ax2.set_xlabel(r"$\phi$")
ax2.legend()
fig.tight_layout()
plt.show()

###############################################################################
# Tracing out polarization gives the unpolarized distribution

state = pp.tensor_embed(coh, pp.polarization_state("horizontal"))
traced = pp.distribution_traced(state, grid)
unpol = pp.distribution_direct(pp.tensor_embed(coh, pp.polarization_state("unpolarized")), grid)
print("traced vs unpolarized:", np.max(np.abs(traced.density - unpol.density)))
