"""affectsim: temperament-driven emotion dynamics for simulated robot teams.

The package layers a slow physiological temperament (Pavlov types mapped
to fuzzy actuation variables) under a fast PAD emotional state driven by
rule-based appraisal of sensor events, and measures how the mixture
shapes multi-robot navigation performance.
"""

from .pad import (
    BigFive,
    CycleOrderError,
    EmotionLabel,
    EmotionalState,
    PadVector,
    big_five,
    clamp_component,
    integrate_appraisals,
    new_state,
    octant_label,
    scale_for_report,
    trajectory,
)
from .temperament import (
    ActuationLimits,
    Balance,
    FuzzyVariable,
    Mobility,
    PavlovTraits,
    SocialGroup,
    Strength,
    TemperamentConfig,
    TemperamentKind,
    TemperamentProfile,
    actuation_limits,
    sample_profile,
    stress_update,
)
from .appraisal import (
    AppraisalEvent,
    AppraisalResult,
    BankId,
    EmotionTracker,
    EventKind,
    GainConfig,
    ThresholdConfig,
    appraise_goal,
    appraise_survival,
    encode_events,
    step_emotion,
)
from .world import (
    AgentBody,
    Arena,
    MotorCommand,
    PhysicsConfig,
    Rect,
    SensorReadings,
    VisionContact,
    World,
    sense,
    step_world,
)
from .mind import AgentController, Behavior, BehaviorVerdict, ControlState, decide
from .config import (
    BUILTIN_SCENARIOS,
    ScenarioError,
    ScenarioSpec,
    builtin_scenario,
    load_scenario,
    make_world,
    parse_scenario,
    resolve_scenario,
)
from .harness import (
    T_MAX,
    TEAM_SIZE,
    AgentRow,
    CellSummary,
    ExperimentReport,
    TeamSpec,
    TrialMetrics,
    TrialRecorder,
    builtin_teams,
    homogeneous_team,
    mixed_team,
    read_metrics_csv,
    run_matrix,
    run_trial,
    score_team,
    summarize,
    write_metrics_csv,
    write_summary_csv,
)
from .wire import WireError, WireMessage, decode, encode
from .net import AgentClient, SimulationServer, ViewerClient, run_networked_trial

__version__ = "0.1.0"

__all__ = [
    "ActuationLimits",
    "AgentBody",
    "AgentClient",
    "AgentController",
    "AgentRow",
    "AppraisalEvent",
    "AppraisalResult",
    "Arena",
    "Balance",
    "BankId",
    "Behavior",
    "BehaviorVerdict",
    "BigFive",
    "BUILTIN_SCENARIOS",
    "CellSummary",
    "ControlState",
    "CycleOrderError",
    "EmotionLabel",
    "EmotionTracker",
    "EmotionalState",
    "EventKind",
    "ExperimentReport",
    "FuzzyVariable",
    "GainConfig",
    "Mobility",
    "MotorCommand",
    "PadVector",
    "PavlovTraits",
    "PhysicsConfig",
    "Rect",
    "ScenarioError",
    "ScenarioSpec",
    "SensorReadings",
    "SimulationServer",
    "SocialGroup",
    "Strength",
    "T_MAX",
    "TEAM_SIZE",
    "TeamSpec",
    "TemperamentConfig",
    "TemperamentKind",
    "TemperamentProfile",
    "ThresholdConfig",
    "TrialMetrics",
    "TrialRecorder",
    "ViewerClient",
    "VisionContact",
    "WireError",
    "WireMessage",
    "World",
    "actuation_limits",
    "appraise_goal",
    "appraise_survival",
    "big_five",
    "builtin_scenario",
    "builtin_teams",
    "clamp_component",
    "decide",
    "decode",
    "encode",
    "encode_events",
    "homogeneous_team",
    "integrate_appraisals",
    "load_scenario",
    "make_world",
    "mixed_team",
    "new_state",
    "octant_label",
    "parse_scenario",
    "read_metrics_csv",
    "resolve_scenario",
    "run_matrix",
    "run_networked_trial",
    "run_trial",
    "sample_profile",
    "scale_for_report",
    "score_team",
    "sense",
    "step_emotion",
    "step_world",
    "stress_update",
    "summarize",
    "trajectory",
    "write_metrics_csv",
    "write_summary_csv",
]
