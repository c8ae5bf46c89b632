"""Temperaments as bodies.

Each temperament pins categorical nervous-system traits, which in turn
pin the sampling bands for three fuzzy variables. The fuzzy values set
what the body can do: motor ceiling and sensor reach follow force, the
emotional rate follows anxiety. Stress drives the variables up; calm
cycles relax them back toward their baselines.
"""

import numpy as np

from affectsim import (
    TemperamentKind,
    actuation_limits,
    sample_profile,
    stress_update,
)


def main() -> None:
    rng = np.random.default_rng(7)
    print(f"{'kind':<12} {'group':<10} {'force':>6} {'mobil':>6} {'stead':>6} "
          f"{'motor':>6} {'reach':>6} {'rate':>5}")
    profiles = {}
    for kind in TemperamentKind:
        p = sample_profile(kind, rng)
        profiles[kind] = p
        limits = actuation_limits(p)
        print(
            f"{kind.value:<12} {p.group.value:<10} "
            f"{p.force.value:6.2f} {p.mobility.value:6.2f} {p.steadiness.value:6.2f} "
            f"{limits.motor_ceiling:6.2f} {limits.sensor_reach * 4.0:5.1f}m "
            f"{limits.emotional_rate:5.2f}"
        )

    print()
    print("triangular memberships of one drawn value:")
    p = profiles[TemperamentKind.CHOLERIC]
    low, medium, high = p.mobility.memberships()
    print(
        f"  choleric mobility {p.mobility.value:.2f}: "
        f"low {low:.2f}, medium {medium:.2f}, high {high:.2f} "
        f"-> dominant {p.mobility.dominant()!r}"
    )

    print()
    print("a melancholic under fire, then recovering:")
    p = profiles[TemperamentKind.MELANCHOLIC]
    print(f"  start: force {p.force.value:.3f} (baseline {p.force.baseline:.3f})")
    for _ in range(40):
        stress_update(p, stress_events=1, arousal=0.8)
    print(f"  after 40 stressed cycles: force {p.force.value:.3f}")
    for _ in range(400):
        stress_update(p, stress_events=0, arousal=0.0)
    print(f"  after 400 calm cycles:    force {p.force.value:.3f} (back near baseline)")


if __name__ == "__main__":
    main()
