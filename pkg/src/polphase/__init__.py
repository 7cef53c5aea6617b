"""Hermitian phase operator on the two-polarization Fock space.

The two circular polarizations of a monochromatic mode are merged into one
integer-labelled energy basis, on which the exponential phase operator is a
true shift and the phase operator is Hermitian. The package builds these
operators on truncated spaces, checks their identities, and computes
polarization-resolved phase distributions and energy/time spreads.
"""
from .errors import (DimensionError, DomainError, IndexRangeError, PolphaseError,
                     SpecParseError, UnderResolutionError, UnsupportedInputError,
                     ValidationError)
from .hilbert import (CompositeState, EnergyBasis, OperatorMatrix, Polarization, StateVector,
                      embed_product, partial_trace_polarization, tensor_embed)
from .operators import (OperatorSet, annihilation_block_check, block_decomposition_check,
                        build_annihilation_operator, build_exp_phase_operator,
                        build_hamiltonian, build_number_operator, build_phase_operator,
                        build_time_operator, commutator, phase_operator_quadrature,
                        sg_exponential_operator, sqrt_number_operator, unitarity_defect)
from .phase import (PhaseDistribution, PhaseGrid, UncertaintyReport, distribution_decomposed,
                    distribution_direct, distribution_traced, interference_term, london_state,
                    phase_moments, phase_state, resolution_of_identity_check,
                    uncertainty_report)
from .states import (FieldState, PolarizationState, coherent_state, fock_state,
                     parse_state_spec, polarization_state, thermal_state)

__version__ = "0.1.0"
