"""Scenario configuration files.

A scenario is an INI-style text file with sections [arena], [walls],
[beacon], [spawns], [temperament], [appraisal_gains] and [thresholds].
Geometry is in meters, headings in degrees. Every tuning constant of the
temperament, appraisal and behavior layers can be overridden per
scenario; omitted keys keep library defaults. Loading validates the
whole arrangement (beacon clear of walls, spawns inside bounds and
mutually disjoint) and reports problems as ScenarioError.
"""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass
from importlib import resources
from typing import List, Mapping, Optional, Tuple

from .appraisal import GainConfig, ThresholdConfig
from .temperament import TemperamentConfig, TemperamentKind, TemperamentProfile
from .world import AgentBody, Arena, PhysicsConfig, Rect, World


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


@dataclass(frozen=True)
class ScenarioSpec:
    """Parsed, validated scenario: geometry plus layer configuration."""

    name: str
    arena: Arena
    spawns: Tuple[Tuple[float, float, float], ...]  # x, y, heading (radians)
    physics: PhysicsConfig
    temperament: TemperamentConfig
    gains: GainConfig
    thresholds: ThresholdConfig


BUILTIN_SCENARIOS = ("scenario1", "scenario2", "scenario3", "social")

_ARENA_KEYS = {
    "name",
    "width",
    "height",
    "cycle_period",
    "v_max",
    "body_radius",
    "base_reach",
    "sigma_prox",
    "sigma_angle",
    "motor_floor",
    "reach_floor",
    "vision_half_angle_deg",
}
_BEACON_KEYS = {"x", "y", "radius"}
_TEMPERAMENT_KEYS = {
    "upper_band",
    "lower_band",
    "drift_rate",
    "anxiety_choleric",
    "anxiety_sanguine",
    "anxiety_phlegmatic",
    "anxiety_melancholic",
}
_GAIN_KEYS = {"max_step", "event_gain", "excitation_threat_boost"}
_THRESHOLD_KEYS = {
    "wall_ahead_prox",
    "occlusion_prox",
    "clear_path_angle_deg",
    "comfort_pleasure",
    "idle_mobility",
    "danger_radius",
    "social_radius",
    "recover_cycles",
    "steer_gain",
    "wander_base",
    "wander_span",
}
_SECTIONS = {
    "arena",
    "walls",
    "beacon",
    "spawns",
    "temperament",
    "appraisal_gains",
    "thresholds",
}


def _fail(where: str, problem: str) -> ScenarioError:
    return ScenarioError(f"{where}: {problem}")


def _floats(where: str, raw: str, count: int) -> List[float]:
    parts = raw.split()
    if len(parts) != count:
        raise _fail(where, f"expected {count} numbers, got {raw!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise _fail(where, f"non-numeric value in {raw!r}") from None


def _get_float(section: Mapping[str, str], key: str, default: float, where: str) -> float:
    if key not in section:
        return default
    try:
        return float(section[key])
    except ValueError:
        raise _fail(where, f"{key} must be a number, got {section[key]!r}") from None


def _check_keys(name: str, section: Mapping[str, str], allowed: set) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise _fail(f"[{name}]", f"unknown keys {sorted(unknown)}")


def parse_scenario(source, name: Optional[str] = None) -> ScenarioSpec:
    """Parse a scenario from a path or from inline text (contains newlines)."""
    parser = configparser.ConfigParser(interpolation=None)
    if isinstance(source, str) and "\n" in source:
        parser.read_string(source)
        default_name = "inline"
    else:
        path = os.fspath(source)
        if not os.path.exists(path):
            raise _fail(path, "no such scenario file")
        read = parser.read(path)
        if not read:
            raise _fail(path, "unreadable scenario file")
        default_name = os.path.splitext(os.path.basename(path))[0]

    unknown = set(parser.sections()) - _SECTIONS
    if unknown:
        raise _fail("scenario", f"unknown sections {sorted(unknown)}")
    if "arena" not in parser or "spawns" not in parser:
        raise _fail("scenario", "sections [arena] and [spawns] are required")

    arena_sec = parser["arena"]
    _check_keys("arena", arena_sec, _ARENA_KEYS)
    for key in ("width", "height"):
        if key not in arena_sec:
            raise _fail("[arena]", f"missing {key}")
    width = _get_float(arena_sec, "width", 0.0, "[arena]")
    height = _get_float(arena_sec, "height", 0.0, "[arena]")

    base = PhysicsConfig()
    physics = PhysicsConfig(
        cycle_period=_get_float(arena_sec, "cycle_period", base.cycle_period, "[arena]"),
        v_max=_get_float(arena_sec, "v_max", base.v_max, "[arena]"),
        body_radius=_get_float(arena_sec, "body_radius", base.body_radius, "[arena]"),
        base_reach=_get_float(arena_sec, "base_reach", base.base_reach, "[arena]"),
        sigma_prox=_get_float(arena_sec, "sigma_prox", base.sigma_prox, "[arena]"),
        sigma_angle=_get_float(arena_sec, "sigma_angle", base.sigma_angle, "[arena]"),
        motor_floor=_get_float(arena_sec, "motor_floor", base.motor_floor, "[arena]"),
        reach_floor=_get_float(arena_sec, "reach_floor", base.reach_floor, "[arena]"),
        vision_half_angle=math.radians(
            _get_float(
                arena_sec,
                "vision_half_angle_deg",
                math.degrees(base.vision_half_angle),
                "[arena]",
            )
        ),
    )

    walls: List[Rect] = []
    if "walls" in parser:
        for key, raw in parser["walls"].items():
            xmin, ymin, xmax, ymax = _floats(f"[walls] {key}", raw, 4)
            try:
                walls.append(Rect(xmin, ymin, xmax, ymax))
            except ValueError as exc:
                raise _fail(f"[walls] {key}", str(exc)) from None

    beacon = None
    arrival_radius = 0.5
    if "beacon" in parser:
        beacon_sec = parser["beacon"]
        _check_keys("beacon", beacon_sec, _BEACON_KEYS)
        for key in ("x", "y"):
            if key not in beacon_sec:
                raise _fail("[beacon]", f"missing {key}")
        beacon = (
            _get_float(beacon_sec, "x", 0.0, "[beacon]"),
            _get_float(beacon_sec, "y", 0.0, "[beacon]"),
        )
        arrival_radius = _get_float(beacon_sec, "radius", 0.5, "[beacon]")

    try:
        arena = Arena(width, height, tuple(walls), beacon, arrival_radius)
    except ValueError as exc:
        raise _fail("[arena]", str(exc)) from None

    spawns: List[Tuple[float, float, float]] = []
    for key, raw in parser["spawns"].items():
        x, y, heading_deg = _floats(f"[spawns] {key}", raw, 3)
        spawns.append((x, y, math.radians(heading_deg)))
    if not spawns:
        raise _fail("[spawns]", "at least one spawn point is required")

    temperament = TemperamentConfig()
    if "temperament" in parser:
        sec = parser["temperament"]
        _check_keys("temperament", sec, _TEMPERAMENT_KEYS)
        upper = temperament.upper_band
        lower = temperament.lower_band
        if "upper_band" in sec:
            lo, hi = _floats("[temperament] upper_band", sec["upper_band"], 2)
            upper = (lo, hi)
        if "lower_band" in sec:
            lo, hi = _floats("[temperament] lower_band", sec["lower_band"], 2)
            lower = (lo, hi)
        anxiety = dict(temperament.anxiety)
        for kind in TemperamentKind:
            key = f"anxiety_{kind.value}"
            if key in sec:
                anxiety[kind] = _get_float(sec, key, 0.0, "[temperament]")
        temperament = TemperamentConfig(
            upper_band=upper,
            lower_band=lower,
            anxiety=anxiety,
            drift_rate=_get_float(
                sec, "drift_rate", temperament.drift_rate, "[temperament]"
            ),
        )

    gains = GainConfig()
    if "appraisal_gains" in parser:
        sec = parser["appraisal_gains"]
        _check_keys("appraisal_gains", sec, _GAIN_KEYS)
        gains = GainConfig(
            max_step=_get_float(sec, "max_step", gains.max_step, "[appraisal_gains]"),
            event_gain=_get_float(
                sec, "event_gain", gains.event_gain, "[appraisal_gains]"
            ),
            excitation_threat_boost=_get_float(
                sec,
                "excitation_threat_boost",
                gains.excitation_threat_boost,
                "[appraisal_gains]",
            ),
        )

    thresholds = ThresholdConfig()
    if "thresholds" in parser:
        sec = parser["thresholds"]
        _check_keys("thresholds", sec, _THRESHOLD_KEYS)
        thresholds = ThresholdConfig(
            wall_ahead_prox=_get_float(
                sec, "wall_ahead_prox", thresholds.wall_ahead_prox, "[thresholds]"
            ),
            occlusion_prox=_get_float(
                sec, "occlusion_prox", thresholds.occlusion_prox, "[thresholds]"
            ),
            clear_path_angle=math.radians(
                _get_float(
                    sec,
                    "clear_path_angle_deg",
                    math.degrees(thresholds.clear_path_angle),
                    "[thresholds]",
                )
            ),
            comfort_pleasure=_get_float(
                sec, "comfort_pleasure", thresholds.comfort_pleasure, "[thresholds]"
            ),
            idle_mobility=_get_float(
                sec, "idle_mobility", thresholds.idle_mobility, "[thresholds]"
            ),
            danger_radius=_get_float(
                sec, "danger_radius", thresholds.danger_radius, "[thresholds]"
            ),
            social_radius=_get_float(
                sec, "social_radius", thresholds.social_radius, "[thresholds]"
            ),
            recover_cycles=int(
                _get_float(
                    sec, "recover_cycles", thresholds.recover_cycles, "[thresholds]"
                )
            ),
            steer_gain=_get_float(
                sec, "steer_gain", thresholds.steer_gain, "[thresholds]"
            ),
            wander_base=_get_float(
                sec, "wander_base", thresholds.wander_base, "[thresholds]"
            ),
            wander_span=_get_float(
                sec, "wander_span", thresholds.wander_span, "[thresholds]"
            ),
        )

    spec = ScenarioSpec(
        name=name or arena_sec.get("name", default_name),
        arena=arena,
        spawns=tuple(spawns),
        physics=physics,
        temperament=temperament,
        gains=gains,
        thresholds=thresholds,
    )
    _validate_spawns(spec)
    return spec


def _validate_spawns(spec: ScenarioSpec) -> None:
    r = spec.physics.body_radius
    arena = spec.arena
    for i, (x, y, _) in enumerate(spec.spawns):
        if not (r <= x <= arena.width - r and r <= y <= arena.height - r):
            raise _fail("[spawns]", f"spawn {i} outside arena bounds")
        for wall in arena.walls:
            if wall.distance_to(x, y) < r:
                raise _fail("[spawns]", f"spawn {i} overlaps a wall")
        for j in range(i):
            ox, oy, _ = spec.spawns[j]
            if math.hypot(x - ox, y - oy) < 2.0 * r:
                raise _fail("[spawns]", f"spawns {j} and {i} overlap")


def builtin_scenario(name: str) -> ScenarioSpec:
    """Load one of the bundled scenario fixtures by short name."""
    if name not in BUILTIN_SCENARIOS:
        raise _fail(name, f"unknown builtin scenario (have {BUILTIN_SCENARIOS})")
    text = (
        resources.files("affectsim")
        .joinpath(f"scenarios/{name}.ini")
        .read_text(encoding="utf-8")
    )
    return parse_scenario(text, name=name)


def resolve_scenario(source) -> ScenarioSpec:
    """Accept a ScenarioSpec, a builtin name, a path, or inline text."""
    if isinstance(source, ScenarioSpec):
        return source
    if isinstance(source, str) and source in BUILTIN_SCENARIOS:
        return builtin_scenario(source)
    return parse_scenario(source)


def make_world(
    spec: ScenarioSpec,
    profiles: Optional[Mapping[int, TemperamentProfile]] = None,
    seed: int = 0,
) -> World:
    """Instantiate the world for a scenario.

    With profiles, slot i occupies spawn i (there must be enough spawns);
    without, every spawn gets a bare body, useful for physics tests.
    """
    if profiles is not None:
        if len(profiles) > len(spec.spawns):
            raise _fail(
                spec.name,
                f"team of {len(profiles)} needs {len(profiles)} spawns, "
                f"scenario has {len(spec.spawns)}",
            )
        slots = sorted(profiles)
    else:
        slots = list(range(len(spec.spawns)))
    bodies = []
    for slot in slots:
        x, y, heading = spec.spawns[slot]
        bodies.append(
            AgentBody(slot, x, y, heading, radius=spec.physics.body_radius)
        )
    try:
        return World(spec.arena, bodies, profiles, spec.physics, seed)
    except ValueError as exc:
        raise _fail(spec.name, str(exc)) from None


def load_scenario(source, profiles=None, seed: int = 0) -> World:
    """Parse, validate, and instantiate in one call."""
    return make_world(resolve_scenario(source), profiles, seed)
