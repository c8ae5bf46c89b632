"""Decision layer: fixed-priority behavior arbitration.

Every cycle one behavior wins: collision recovery beats threat avoidance
beats wall avoidance beats social steering beats beacon seeking beats
wandering (or idling, for comfortable low-mobility agents). The emotional
state only enters through the idle gate and the broadcast mood label;
motor magnitudes come from the physiological layer's power ceiling, so
how far an agent gets is a matter of temperament, not appraisal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .appraisal import (
    ANGRY_LABEL,
    HAPPY_LABELS,
    EmotionTracker,
    GainConfig,
    ThresholdConfig,
)
from .pad import EmotionalState
from .temperament import SocialGroup, TemperamentProfile, actuation_limits
from .world import MotorCommand, PhysicsConfig, SensorReadings, wrap_angle


class Behavior(Enum):
    RECOVER = "Recover"
    AVOID_THREAT = "AvoidThreat"
    AVOID_WALL = "AvoidWall"
    SOCIAL = "Social"
    SEEK_BEACON = "SeekBeacon"
    WANDER = "Wander"
    IDLE = "Idle"


@dataclass(frozen=True)
class BehaviorVerdict:
    behavior: Behavior
    command: MotorCommand


@dataclass
class ControlState:
    """Cross-cycle bookkeeping decide() reads but never writes."""

    recover_left: int = 0
    wander_phase: float = 0.0
    wander_step: float = 0.1


def steer_toward(bearing: float, ceiling: float, gain: float = 1.2) -> MotorCommand:
    """Arc toward a bearing at a given power ceiling.

    The outer wheel runs at the ceiling; the inner wheel scales down with
    the bearing error and goes negative past roughly 90 degrees, so large
    errors become pivots. Output powers never exceed the ceiling.
    """
    inner = ceiling * (1.0 - min(2.0, gain * abs(bearing)))
    if bearing > 0.0:
        return MotorCommand(inner, ceiling)
    if bearing < 0.0:
        return MotorCommand(ceiling, inner)
    return MotorCommand(ceiling, ceiling)


def social_steer(
    readings: SensorReadings,
    group: SocialGroup,
    ceiling: float,
    gain: float = 1.2,
) -> Optional[MotorCommand]:
    """Direction of the social drive, ignoring whether it is active.

    Extraverts head for the nearest happy robot (any robot failing that);
    introverts head away from the resultant bearing of the visible crowd.
    Returns None when nothing is visible. Flipping the group on the same
    readings flips the sign of the steering torque.
    """
    contacts = readings.vision
    if not contacts:
        return None
    if group is SocialGroup.EXTRAVERT:
        friends = [c for c in contacts if c.label in HAPPY_LABELS]
        pool = friends if friends else list(contacts)
        target = min(pool, key=lambda c: c.distance)
        return steer_toward(target.bearing, ceiling, gain)
    sx = sum(math.cos(c.bearing) for c in contacts)
    sy = sum(math.sin(c.bearing) for c in contacts)
    if math.hypot(sx, sy) < 1e-9:
        nearest = min(contacts, key=lambda c: c.distance)
        away = wrap_angle(nearest.bearing + math.pi)
    else:
        away = math.atan2(-sy, -sx)
    return steer_toward(away, ceiling, gain)


def idle_gate(
    e: EmotionalState,
    profile: TemperamentProfile,
    comfort: float = 0.5,
    mobility_threshold: float = 0.5,
) -> bool:
    """True when a comfortable, becalmed, low-mobility agent may stop."""
    return (
        e.current.pleasure > comfort
        and profile.mobility.value < mobility_threshold
        and e.current.arousal < 0.0
    )


def decide(
    readings: SensorReadings,
    e: EmotionalState,
    profile: TemperamentProfile,
    ctrl: ControlState = ControlState(),
    thresholds: ThresholdConfig = ThresholdConfig(),
    physics: PhysicsConfig = PhysicsConfig(),
) -> BehaviorVerdict:
    """Pick this cycle's behavior and motor command.

    Pure in all arguments: the recover countdown and wander phase live in
    `ctrl` and are advanced by the caller, not here.
    """
    ceiling = actuation_limits(profile, motor_floor=physics.motor_floor).motor_ceiling
    gain = thresholds.steer_gain
    front, left, right = readings.proximity

    if readings.collision or ctrl.recover_left > 0:
        # Reverse at half power, nose swinging toward the freer side.
        if left >= right:
            cmd = MotorCommand(-0.5 * ceiling, -0.25 * ceiling)
        else:
            cmd = MotorCommand(-0.25 * ceiling, -0.5 * ceiling)
        return BehaviorVerdict(Behavior.RECOVER, cmd)

    threats = [
        c
        for c in readings.vision
        if c.label is ANGRY_LABEL and c.distance <= thresholds.danger_radius
    ]
    if threats:
        nearest = min(threats, key=lambda c: c.distance)
        away = wrap_angle(nearest.bearing + math.pi)
        return BehaviorVerdict(
            Behavior.AVOID_THREAT, steer_toward(away, ceiling, gain)
        )

    if min(front, left, right) < thresholds.wall_ahead_prox:
        if front <= left and front <= right:
            if left >= right:
                cmd = MotorCommand(-0.5 * ceiling, 0.5 * ceiling)
            else:
                cmd = MotorCommand(0.5 * ceiling, -0.5 * ceiling)
        elif left < right:
            cmd = MotorCommand(ceiling, 0.3 * ceiling)
        else:
            cmd = MotorCommand(0.3 * ceiling, ceiling)
        return BehaviorVerdict(Behavior.AVOID_WALL, cmd)

    company = any(c.distance <= thresholds.social_radius for c in readings.vision)
    if profile.group is SocialGroup.EXTRAVERT:
        need_social = not company and bool(readings.vision)
    else:
        need_social = company
    if need_social:
        cmd = social_steer(readings, profile.group, ceiling, gain)
        if cmd is not None:
            return BehaviorVerdict(Behavior.SOCIAL, cmd)

    if readings.beacon_bearing is not None:
        return BehaviorVerdict(
            Behavior.SEEK_BEACON, steer_toward(readings.beacon_bearing, ceiling, gain)
        )

    if idle_gate(e, profile, thresholds.comfort_pleasure, thresholds.idle_mobility):
        return BehaviorVerdict(Behavior.IDLE, MotorCommand(0.0, 0.0))

    speed = (
        thresholds.wander_base + thresholds.wander_span * profile.mobility.value
    ) * ceiling
    meander = 0.5 * math.sin(ctrl.wander_phase)
    return BehaviorVerdict(Behavior.WANDER, steer_toward(meander, speed, gain))


class AgentController:
    """One agent's mind: emotion tracking plus behavior arbitration.

    `act` arbitrates only (the trial engine drives the tracker itself);
    `step` observes then acts, which is what a remote client does with
    each Sensors message. Both paths produce identical command sequences
    for identical readings.
    """

    def __init__(
        self,
        agent_id: int,
        profile: TemperamentProfile,
        gains: GainConfig = GainConfig(),
        thresholds: ThresholdConfig = ThresholdConfig(),
        physics: PhysicsConfig = PhysicsConfig(),
        drift_rate: float = 0.01,
        rng: Optional[np.random.Generator] = None,
    ) -> None:
        self.agent_id = agent_id
        self.profile = profile
        self.thresholds = thresholds
        self.physics = physics
        self.tracker = EmotionTracker(profile, gains, thresholds, drift_rate)
        if rng is not None:
            phase = float(rng.uniform(0.0, 2.0 * math.pi))
            step = float(rng.uniform(0.05, 0.2))
        else:
            phase, step = 0.0, 0.1
        self.ctrl = ControlState(0, phase, step)

    def act(self, readings: SensorReadings) -> BehaviorVerdict:
        if readings.collision:
            self.ctrl.recover_left = self.thresholds.recover_cycles
        verdict = decide(
            readings,
            self.tracker.state,
            self.profile,
            self.ctrl,
            self.thresholds,
            self.physics,
        )
        if verdict.behavior is Behavior.RECOVER and self.ctrl.recover_left > 0:
            self.ctrl.recover_left -= 1
        self.ctrl.wander_phase = wrap_angle(self.ctrl.wander_phase + self.ctrl.wander_step)
        return verdict

    def step(self, readings: SensorReadings, cycle: int) -> BehaviorVerdict:
        self.tracker.observe(readings, cycle)
        return self.act(readings)
