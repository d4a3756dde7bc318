"""
Hyperbolic-type metrics on noncommutative polyballs, computed on truncated
Fock spaces.

Points are :class:`OperatorTuple` objects; kernels are built on a
:class:`FockModel`; distances come back as :class:`DistanceReport`.
"""

from ._version import __version__
from .automorphisms import (PolyballAutomorphism, apply, mobius_polydisk, permute,
                            unitary_twist)
from .domain import (MembershipVerdict, OperatorTuple, apply_phi, check_cross_commuting,
                     defect, joint_spectral_radius, membership, minkowski_gauge)
from .errors import (CapacityError, DomainError, InvalidInputError, PolyballError,
                     SingularMatrixError, UnsupportedShapeError)
from .fock import FockModel, PolyballShape, Word, build_fock_model, reverse_word, word_operator
from .kernels import (KernelBundle, PluriharmonicPoly, PositivePluriharmonicModel,
                      berezin_kernel, berezin_transform, cauchy_kernel, inverse_cauchy_kernel,
                      kernel_bundle, pluriharmonic_eval, poisson_kernel, poisson_series,
                      positive_model_eval)
from .linalg_core import Tolerances, inverse, is_psd, kron, operator_norm, psd_sqrt, spectral_radius
from .metrics import (DistanceReport, chain_length, chain_upper_bounds_delta, d_p,
                      delta_h_polydisk, delta_h_scalar, delta_p, harnack_bound_check,
                      kobayashi_polydisk, minimal_domination_constant, omega_p,
                      poincare_bergman_ball, poisson_dominates, rayleigh_delta_p)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
