"""Entropic uncertainty relations with quantum and temporal memory.

Sequential projective measurement statistics, entropy functionals and the
bounds built from them, down to the spin-s rotor witness scanned by the CLI.
"""

from ._backend import BACKEND
from .bounds import (
    BoundReport,
    berta_check,
    conditioned_bound,
    m_witness,
    max_overlap_c,
    mu_check,
    robertson_check,
    spin_overlap_c,
    steering_witness,
)
from .errors import ContractViolation, UnsupportedInput
from .infotheory import (
    binary_entropy,
    conditional_entropy,
    conditional_vn,
    mutual_information,
    relative_entropy,
    shannon,
    von_neumann_entropy,
)
from .quantum import (
    BipartiteState,
    DensityMatrix,
    JointDistribution,
    Observable,
    bell_state,
    measure_distribution,
    post_measurement_bipartite,
    sequential_joint,
    sequential_joint_spin,
)
from .spin import SpinLabel, evolved_sz, spin_operators, wigner_small_d

__version__ = "0.1.0"
