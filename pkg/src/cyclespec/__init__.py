"""High-precision eigensystems of weighted-cycle Laplacians.

The Laplacian of an n-cycle whose single edge between vertices 1 and n has
weight alpha (0 < Re(alpha) < 1) has [n/2] closed-form eigenvalues
g((j-1)pi/n) at odd index and, at each even index, one eigenvalue g(theta)
whose angle solves x = (j-1)pi/n + eta(x)/n inside ((j-1)pi/n, j*pi/n).
This package evaluates those closed forms, solves the transformed equation
by bisection / fixed-point / Newton iterations with certified error bounds,
provides asymptotic expansions, eigenvectors with exact norms, and an
independent dense/charpoly oracle for validation, all under an explicit
arbitrary-precision context.
"""

from .asymptotics import (
    AsymptoticEstimate,
    lambda_second_order,
    lambda_second_order_alt,
    lambda_small_j,
    theta_first_order,
)
from .charpoly import (
    CornerPerturbation,
    DegenerateCase,
    EigenvalueAtBoundary,
    MatrixDense,
    ProblemInstance,
    build_A,
    build_L,
    charpoly_A,
    charpoly_L,
    eigvec_A,
    factor_p,
    factor_q,
)
from .numerics import DOUBLE, PrecisionContext, chebyshev_T, chebyshev_U, g, g_prime, g_second
from .oracle import (
    NoConvergence,
    NotSymmetric,
    OracleSpectrum,
    charpoly_root_isolate,
    dense_det,
    dense_sym_eig,
)
from .solvers import (
    BracketInterval,
    ContractionNotGuaranteed,
    NoProgress,
    PreconditionViolated,
    SolveReport,
    newton_convex,
    solve_theta_bisection,
    solve_theta_fixed_point,
    solve_theta_newton,
)
from .spectrum import (
    Eigenvector,
    SpectrumResult,
    alpha_sweep,
    eigenvector,
    eigvec_norm_asympt,
    eigvec_norm_exact,
    full_spectrum,
    residual,
)
from .symbolfns import (
    AlphaParam,
    SolverConstants,
    eta,
    eta_prime,
    eta_second,
    eta_tilde,
    eta_tilde_prime,
    f_main,
    h_main,
    h_main_prime,
    nu,
    solver_constants,
    xi,
)

__version__ = "0.1.0"
