"""Rank-based and classical internal-consistency reliability for survey data.

The central quantity is the Monotone Delta: build a tournament whose edge
``W[j, k]`` counts the items on which respondent j strictly outscores
respondent k, find an ordering of respondents with few contradictions (an
earlier respondent beating a later one on an item) and report
``1 - C* / C_max``. Cronbach's alpha, McDonald's omega, split-half and the
greatest lower bound are provided for comparison, together with a synthetic
scenario lab and a command line front end.
"""

__version__ = "0.1.0"

from .classical import (
    GLBResult,
    OneFactorFit,
    alpha_from_covariance,
    cronbach_alpha,
    fit_one_factor,
    glb,
    glb_details,
    glb_from_covariance,
    mcdonald_omega,
    omega_from_covariance,
    omega_from_fit,
    split_half,
    split_halves,
)
from .data import ResponseMatrix, SummaryStats, covariance, load_csv, read_csv, summarize, to_csv
from .errors import NonConvergenceWarning, ReliabilityError
from .measures import MEASURES, MeasureParams, MeasureValue, compute_measure, parse_measures, time_measures
from .scenarios import (
    SCENARIOS,
    ReportRow,
    ScenarioConfig,
    ScenarioReport,
    SyntheticSpec,
    apply_nonnormal_correlated,
    generate_multidimensional,
    generate_unidimensional,
    inject_redundancy,
    parse_config,
    run_scenario_suite,
)
from .search import (
    ExactResult,
    SearchParams,
    exact_min_contradictions,
    initial_ordering,
    local_search,
    monotone_delta,
    swap_cost_delta,
)
from .tournament import (
    DeltaResult,
    DominanceMatrix,
    Ordering,
    build_tournament,
    contradiction_count,
    delta_from_counts,
    max_contradictions,
    tie_counts,
)
from .report import emit_report
