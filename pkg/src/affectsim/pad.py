"""Pleasure-arousal-dominance emotion space.

The psychical layer of every agent lives in the unit PAD cube: pleasure is
how conducive the world currently looks to the agent's goals, arousal is how
much attention events are demanding, and dominance is how free the agent
feels to act. Emotions are points in [-1, 1]^3; moods are the octant the
point sits in; personality projections come out of fixed linear regressions
onto the Big Five factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Tuple


class CycleOrderError(ValueError):
    """Raised when appraisal integration runs backwards in time."""


class EmotionLabel(Enum):
    """Mood octants of the PAD cube, one per sign pattern (+P+A+D first)."""

    EXUBERANT = "exuberant"
    DEPENDENT = "dependent"
    RELAXED = "relaxed"
    DOCILE = "docile"
    HOSTILE = "hostile"
    ANXIOUS = "anxious"
    DISDAINFUL = "disdainful"
    BORED = "bored"


# Sign pattern (pleasure >= 0, arousal >= 0, dominance >= 0) -> octant.
# Zero counts as positive so the map is total; opposite corners carry
# opposite moods (exuberant/bored, dependent/disdainful, relaxed/anxious,
# docile/hostile).
_OCTANTS = {
    (True, True, True): EmotionLabel.EXUBERANT,
    (True, True, False): EmotionLabel.DEPENDENT,
    (True, False, True): EmotionLabel.RELAXED,
    (True, False, False): EmotionLabel.DOCILE,
    (False, True, True): EmotionLabel.HOSTILE,
    (False, True, False): EmotionLabel.ANXIOUS,
    (False, False, True): EmotionLabel.DISDAINFUL,
    (False, False, False): EmotionLabel.BORED,
}


def _checked(name: str, value: float) -> float:
    value = float(value)
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [-1, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class PadVector:
    """A point in the PAD cube. Components are validated, not clamped."""

    pleasure: float = 0.0
    arousal: float = 0.0
    dominance: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "pleasure", _checked("pleasure", self.pleasure))
        object.__setattr__(self, "arousal", _checked("arousal", self.arousal))
        object.__setattr__(self, "dominance", _checked("dominance", self.dominance))

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.pleasure, self.arousal, self.dominance)


@dataclass(frozen=True)
class BigFive:
    """Big Five factor scores regressed from a PAD point."""

    extraversion: float
    agreeableness: float
    conscientiousness: float
    emotional_stability: float
    sophistication: float


@dataclass(frozen=True)
class EmotionalState:
    """Current PAD point plus the appraisal history that produced it.

    History entries are (cycle, value) pairs with strictly increasing
    cycles; the state object is immutable and integration returns a new
    state, so a recorded trajectory can never be edited in place.
    """

    current: PadVector
    history: Tuple[Tuple[int, PadVector], ...] = ()

    @property
    def last_cycle(self) -> int:
        return self.history[-1][0] if self.history else -1


def new_state(start: PadVector = PadVector()) -> EmotionalState:
    """Fresh emotional state with an empty history."""
    return EmotionalState(current=start)


def clamp_component(x: float) -> float:
    """Pin a raw component back into [-1, 1]."""
    return -1.0 if x < -1.0 else (1.0 if x > 1.0 else x)


def integrate_appraisals(
    state: EmotionalState, deltas: Iterable[PadVector], cycle: int
) -> EmotionalState:
    """Fold a cycle's appraisal deltas into the state.

    The new point is the componentwise sum of the old point and every
    delta, clamped back into the cube. An entry is appended to history
    even when there are no deltas, so trajectories stay dense in time.
    Raises CycleOrderError if `cycle` does not advance past the last
    recorded cycle.
    """
    if cycle <= state.last_cycle:
        raise CycleOrderError(
            f"cycle {cycle} does not advance past recorded cycle {state.last_cycle}"
        )
    p, a, d = state.current.as_tuple()
    for delta in deltas:
        p += delta.pleasure
        a += delta.arousal
        d += delta.dominance
    point = PadVector(clamp_component(p), clamp_component(a), clamp_component(d))
    return EmotionalState(current=point, history=state.history + ((cycle, point),))


def octant_label(v: PadVector) -> EmotionLabel:
    """Mood label for the octant containing `v` (zeros count as positive)."""
    return _OCTANTS[(v.pleasure >= 0.0, v.arousal >= 0.0, v.dominance >= 0.0)]


def big_five(v: PadVector) -> BigFive:
    """Project a PAD point onto the Big Five via the fixed regressions."""
    p, a, d = v.as_tuple()
    return BigFive(
        extraversion=0.24 * p + 0.72 * d,
        agreeableness=0.76 * p + 0.17 * a - 0.19 * d,
        conscientiousness=0.29 * p + 0.28 * d,
        emotional_stability=0.50 * p - 0.55 * a,
        sophistication=0.28 * a + 0.60 * d,
    )


def scale_for_report(v: PadVector, factor: float = 10.0) -> Tuple[float, float, float]:
    """Rescale a PAD point for display (the traditional [-10, 10] axes)."""
    return (factor * v.pleasure, factor * v.arousal, factor * v.dominance)


def trajectory(state: EmotionalState) -> Sequence[Tuple[int, PadVector]]:
    """The recorded (cycle, value) pairs, oldest first."""
    return state.history
