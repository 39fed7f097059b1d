"""Exact group cohomology of SL(2, Z) and the theta group with symmetric-power coefficients."""

from .classes import (class_degree, cusp_form_dim, detection_report, e2k, evaluate_on_MP,
                      evaluate_on_MP10, evaluate_on_MQ11, evaluate_on_theta_gamma, h1_dim_oracle,
                      poincare_coefficients, series_discrepancy)
from .cohomology import (CocycleClass, CohomologySpace, DecomposableClass, derivation_value,
                         fox_derivative, h0, h1, pair_decomposable, parabolic_analysis,
                         restrict_to_cyclic, shapiro_h1, spanning_rank)
from .linalg import QMatrix, kernel_basis, rref, solve
from .modular import (SL2Z, THETA, GroupPresentation, GroupWord, IntMatrix2, classify, cusp_orbits,
                      evaluate_word, gamma_d_member, sl2z_word, theta_member, theta_word)
from .representations import (DUAL, STANDARD, HomogeneousPoly, act, coinduce, delta_star, pairing,
                              pr_x, s_gamma)

__version__ = "0.1.0"
