"""One seeded trial, inspected closely.

Nine robots spawn in a walled arena and look for the beacon. The run is
fully deterministic in (scenario, team, seed). Afterwards we print who
finished when, where each robot's mood ended up, and the team score.
"""

import argparse

from affectsim import (
    EmotionLabel,
    PadVector,
    builtin_teams,
    octant_label,
    run_trial,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", default="scenario1")
    parser.add_argument("--team", default="mixed", choices=sorted(builtin_teams()))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-cycles", type=int, default=1800)
    args = parser.parse_args()

    team = builtin_teams()[args.team]
    metrics = run_trial(args.scenario, team, args.seed, t_max=args.max_cycles)

    print(f"team {team.name!r} on {metrics.scenario!r}, seed {metrics.seed}")
    for agent in metrics.agents:
        last = agent.trajectory[-1]
        mood = octant_label(PadVector(last[0] / 10.0, last[1] / 10.0, last[2] / 10.0))
        outcome = (
            f"finished at cycle {agent.time_cycles:>4}"
            if agent.finished
            else "did not finish     "
        )
        print(
            f"  slot {agent.slot} {agent.kind:<12} {outcome}  "
            f"final P/A/D {last[0]:+5.1f} {last[1]:+5.1f} {last[2]:+5.1f}  "
            f"({mood.value})"
        )
    print(f"score: mean {metrics.mean_time:.1f} cycles, best {metrics.best_time:.0f}")


if __name__ == "__main__":
    main()
