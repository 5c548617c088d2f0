"""Spectral toolkit for cohomological equations over torus rotations and flows.

Core objects: finitely supported Fourier series on T^d, Diophantine
certificates for frequency vectors, coefficientwise solvers for the
cohomological equations u(x+a) - u(x) = xi(x) - c and L_X u = xi - c,
invariant distributions of parabolic affine maps of T^2, SL(2,R)
cocycles over circle rotations, and skew-product linearization.
"""

from .fourier import FourierSeries, GridFunction, analyze, synthesize, decay_profile
from .diophantine import (
    FrequencyVector,
    DiophantineCertificate,
    ContinuedFraction,
    ResonanceError,
    check_diophantine,
    continued_fraction,
    ratio_condition,
    estimate_exponent,
    tail_margin,
)
from .cohomology import (
    CohomologySolution,
    ObstructionError,
    solve_map,
    solve_flow,
    verify_solution,
    birkhoff_sum,
    birkhoff_sup_norms,
    periodic_obstruction,
    invariant_measure_average,
    invariant_density,
)
from .cocycle import (
    ActionSpec,
    GeneratedCocycle,
    cocycle_value_Z,
    cocycle_value_R,
    verify_cocycle_identity,
    coboundary_from,
    are_cohomologous,
)
from .parabolic import (
    ParabolicAffineMap,
    InvariantDistributionIndex,
    SuspensionSpec,
    pullback_fourier,
    distribution_pair,
    verify_invariance,
    independence_matrix,
    suspension_pair,
    transport_slices,
    separation_profile,
)
from .lincocycle import (
    LinearCocycle,
    TriangularCocycle,
    iterate,
    lyapunov_exponent,
    quasi_anosov_probe,
    reduce_to_normal_form,
    parabolic_growth,
)
from .skewproduct import (
    SkewProductMap,
    CircleMap,
    rotation_number,
    linearize,
    verify_constant_conjugacy,
)

__version__ = "0.1.0"
