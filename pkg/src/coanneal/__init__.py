"""Simulated annealing for convex optimization over membership oracles.

Hit-and-run sampling of Boltzmann densities, two annealers (a faithful one
with per-phase covariance estimation and an accelerated heuristic), a
central-cut ellipsoid baseline, and experiment suites on doubly-nonnegative
and copositive test problems.
"""

from .annealing import (AH_TYPE, COMBINED_MIN, KALAI_VEMPALA, AnnealerConfig,
                        PhaseRecord, RunReport, TemperatureSchedule,
                        TheoreticalParams, anneal_heuristic, anneal_kv,
                        heuristic_params, heuristic_phase_count,
                        next_temperature, theoretical_params,
                        theoretical_walk_length)
from .ellipsoid import (EllipsoidOutcome, SeparationResult, ellipsoid_minimize,
                        ellipsoid_update, make_copositive_cap_separator,
                        make_dnn_separator, separate_copositive_cap)
from .entropic import ThetaProfile, ball_moment, theta_profile, \
    theta_quadratic_form
from .experiments import (ExperimentTable, RandomObjective,
                          covariance_experiment, gap_experiment,
                          gen_objective, mean_experiment,
                          separation_experiment, spectral_relative_error)
from .fixtures import (FixtureError, GeneratedInstance, gen_extremal_dnn,
                       load_fixtures, validate_extremal_dnn)
from .linalg import SQRT2, DimensionError, is_psd, matrix_order, smat, \
    spectral_summary, svec
from .oracles import (CopositivityCertificate, MembershipOracle, ball_oracle,
                      big_m_constant, copositive_cap_oracle, cube_oracle,
                      dnn_interior_point, dnn_oracle, is_copositive)
from .walk import (BoltzmannParam, EmpiricalDirections, FactoredDirections,
                   IsotropicDirections, LineSegment, RngStream, WalkConfig,
                   chord, draw_direction, hit_and_run_walk, sample_on_chord,
                   stream_seeds, walk_batch)

__version__ = "0.1.0"
