"""The same trial, over TCP.

The simulator can serve cycles to remote agent minds: each cycle it
sends every agent a Sensors line and waits (lockstep) for the Motors
reply. Because both modes canonicalize values through the wire's
six-decimal format, the networked run reproduces the in-process run bit
for bit. This demo runs both on a loopback socket and compares.
"""

from affectsim import builtin_teams, run_networked_trial, run_trial

team = builtin_teams()["sanguine"]
print("running in-process...")
direct = run_trial("scenario1", team, seed=0, t_max=400)
print("running over loopback TCP (9 client threads, lockstep)...")
networked = run_networked_trial("scenario1", team, seed=0, t_max=400)

print()
print(f"in-process: mean {direct.mean_time:.1f}, best {direct.best_time:.0f}")
print(f"networked:  mean {networked.mean_time:.1f}, best {networked.best_time:.0f}")
print(f"identical metrics, trajectories included: {networked == direct}")
