"""Numerical toolkit for the mixed Dirichlet-Neumann (Zaremba) problem on Lipschitz graph domains.

Power-weighted boundary measures, Rellich vector fields, closed-form harmonic
test functions, the quadrant mixed Green's function, a Nystroem single-layer
solver, weighted Hardy-space atoms and the exponent windows that tie them
together.
"""

from .atoms import (AtomSpec, H11Primitive, MomentPartition, greens_trace_partition, h11_primitive,
                    h11_seminorm_pair_check, make_atom, moment_partition)
from .errors import InconclusiveError, SingularPointError, SolverError, WindowError, ZarembaError
from .exponents import (ExponentReport, atomic_interp_window, atomic_window, exponent_report, mixed_L2_window,
                        neumann_reg_window, p1_threshold, p2_threshold, window_check)
from .fields import (CertifiedField, HolomorphicField, SectorMap, build_field_mixed, build_field_signdefinite,
                     check_sign_bounds, field_dot_normal, field_eval, measure_transfer_check, sector_map,
                     sector_map_cderiv, sector_map_inverse)
from .geometry import (BallFamily, BoundaryMesh, ConeParams, GradingSpec, GraphDomain, Sector, WeightedMeasure,
                       ap_constant_estimate, boundary_mesh, carleson_ratio, measure_lemma_constants,
                       measure_lemma_ratio, weighted_ball_measure)
from .greens import (atom_neumann_trace, atom_solution, decay_scan, greens_eval, greens_grad_w, greens_grad_z,
                     greens_holder_probe, holder_fit)
from .harmonic import (HarmonicFunction, NontangentialGrid, catalog, counterexample, counterexample_dichotomy,
                       counterexample_scan, growth_exponent, ntmax_grad, rellich_residual, rellich_twosided_check,
                       weighted_lp_boundary_norm)
from .solver import (BoundaryDensity, MixedData, SolverGrading, assemble_mixed_system, cauchy_transfer_check,
                     conformal_transfer_solve, contour_mesh, data_norm_identity, eval_solution, solve_mixed)

__version__ = "0.1.0"
