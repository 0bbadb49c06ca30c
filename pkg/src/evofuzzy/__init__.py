"""Online neuro-fuzzy forecasting with winner-take-all center learning."""
from .centers import CenterConfig, CenterLearnerState, find_winners, init_centers, update_centers
from .data import (
    MackeyGlassParams,
    NormalizationMap,
    TimeSeriesFrame,
    embed,
    generate_mackey_glass,
    normalize,
    read_csv,
    write_csv,
)
from .harness import (
    ExperimentConfig,
    ForecastReport,
    NeuroFuzzyModel,
    evaluate,
    forecast_recursive,
    run_experiment,
    train_online,
)
from .inference import FiringStrengths, MembershipGrid, ModelConfig, aggregate, forward, fuzzify
from .weights import LearnerConfig, WeightLearnerState, adaptive_update, kaczmarz_update, rls_update

__version__ = "0.1.0"
