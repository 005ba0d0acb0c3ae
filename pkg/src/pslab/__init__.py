"""Partial-swap channel on density matrices, eigenvalue majorization and
entropy power inequality checks, quantum and classical."""
from pslab._kernels import BACKEND
from pslab.channel import (
    contraction_star,
    convolve_explicit,
    convolve_via_trace,
    lemma1_decompose,
    lemma1_equality_witness,
    lemma1_identity_check,
    partial_swap_unitary,
    swap_operator,
)
from pslab.hermitian import (
    commutator,
    eigen_descending,
    partial_trace_second,
    random_density,
    tensor_product,
)
from pslab.majorization import (
    check_epi,
    check_theorem1,
    entropy_majorization_check,
    h_entropy_atom,
    hlp_witness,
    majorizes,
    theorem1_equality_detect,
    von_neumann_entropy,
)

__version__ = "0.1.0"
