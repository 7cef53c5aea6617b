"""
Energy and time spreads
=======================

With T = Phi / omega the time spread follows from the phase variance on the
window [-pi, pi). Energy eigenstates have zero energy spread but a finite
time spread, so their product sits below hbar/2.
"""
import polphase as pp

omega = 1.0
cases = {
    "Fock n=5, circular": (pp.fock_state(5, 40), "circular"),
    "coherent 1, circular": (pp.coherent_state(1.0, 40), "circular"),
    "coherent 2, circular": (pp.coherent_state(2.0, 40), "circular"),
    "coherent 1, horizontal": (pp.coherent_state(1.0, 40), "horizontal"),
    "thermal 1, unpolarized": (pp.thermal_state(1.0, 40), "unpolarized"),
}
print(f"{'state':26s} {'dE':>8s} {'dT':>8s} {'dE dT':>8s}  below hbar/2")
for label, (f, pol) in cases.items():
    r = pp.uncertainty_report(pp.tensor_embed(f, pp.polarization_state(pol)), omega)
    print(f"{label:26s} {r.delta_e:8.4f} {r.delta_t:8.4f} {r.delta_e_delta_t:8.4f}  {r.below_bound}")
