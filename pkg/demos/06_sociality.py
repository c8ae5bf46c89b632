"""Extraverts huddle, introverts scatter.

In a beacon-free arena the only drives left are social steering and
wandering. Sanguine robots (extraverts) seek visible company; the
melancholic team (introverts) keeps its distance. Mean pairwise
distance over the trial separates the two teams cleanly.
"""

import itertools

import numpy as np

from affectsim import TrialRecorder, builtin_teams, run_trial

teams = builtin_teams()


def mean_pairwise(team, seed):
    recorder = TrialRecorder(record_positions=True)
    run_trial("social", team, seed, t_max=1200, recorder=recorder)
    tracks = np.array([recorder.positions[i] for i in sorted(recorder.positions)])
    pairs = [
        float(np.hypot(*(tracks[a] - tracks[b]).T).mean())
        for a, b in itertools.combinations(range(len(tracks)), 2)
    ]
    return float(np.mean(pairs))


print(f"{'seed':>4} {'sanguine':>9} {'melancholic':>12}")
for seed in range(3):
    sang = mean_pairwise(teams["sanguine"], seed)
    mela = mean_pairwise(teams["melancholic"], seed)
    print(f"{seed:>4} {sang:8.2f}m {mela:11.2f}m")
print("\nsmaller numbers mean a tighter pack.")
