"""Detectable lower bounds on quantum channel capacities from entangled-basis measurements."""

__version__ = "0.1.0"

from .channels import (Channel, ChannelError, apply, choi_output, identity, load_channel,
                       make_amplitude_damping, make_dephasing, make_depolarizing, make_erasure,
                       make_generalized_pauli, make_pauli, make_two_kraus, random_channel, weyl)
from .detection import (BELL, BasisSpec, BoundReport, Family, bell_states, build_basis,
                        optimize_qdet, pauli_projector_decomposition, probability_vector,
                        probability_vector_from_kraus, q_det)
from .entropy import (binary_entropy, capacity_amplitude_damping, capacity_dephasing,
                      capacity_erasure, capacity_two_kraus, coherent_information,
                      dephasing_bound, depolarizing_upper, entropy_exchange, hashing_bound,
                      shannon, von_neumann)
from .sweep import sweep
