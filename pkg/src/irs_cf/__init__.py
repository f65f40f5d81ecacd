"""IRS-assisted compute-and-forward: rates, phase optimization and Monte-Carlo sweeps."""

__version__ = "0.1.0"

from .baselines import (
    ALL_METHODS,
    MethodId,
    ao_over_inits,
    no_irs_rate,
    random_phase_rates,
)
from .channel import (
    ChannelRealization,
    CoefficientVector,
    SystemParams,
    db_to_linear,
    random_phases,
    sample_channel,
    substream,
)
from .montecarlo import (
    EvalConfig,
    MethodStats,
    SweepSpec,
    SweepTable,
    SweepVariable,
    evaluate_point,
    paper_scale_configs,
    run_sweep,
)
from .optimizer import (
    AOConfig,
    AOResult,
    GDConfig,
    ao_optimize,
    coordinate_phase_optimum,
    gd_minimize,
    grid_search_phases,
    phase_gradient,
    phase_objective,
)
from .rate import (
    computation_rate_beta,
    computation_rate_direct,
    computation_rate_solve,
    effective_channel,
    log_plus,
    optimal_beta,
    rate_at_optimal_beta,
    wrap_phases,
)
