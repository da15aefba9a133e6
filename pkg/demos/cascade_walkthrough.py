"""Step-by-step cascade on a small cycle, two competing players.

Shows the core mechanics: overlapping seed resolution by product score,
per-step activation probabilities, permanent ownership, and termination
once every node is influenced.
"""

from cascadia import (
    CascadeState,
    Player,
    cascade_step,
    derive_rng,
    generate_ngon,
    node_activation_distribution,
    resolve_seed_overlaps,
)

g = generate_ngon(12)
players = (
    Player(id=1, budget=2, product_score=1.0),   # premium product, tiny budget
    Player(id=2, budget=4, product_score=0.25),  # big budget, weak product
)
rng = derive_rng(7)

# Both players want node 0; the overlap is resolved once, in favor of
# player 1 with probability 1.0 / (1.0 + 0.25) = 0.8.
seeds = [{0, 6}, {0, 3, 9, 11}]
assignment = resolve_seed_overlaps(seeds, players, rng)
print("chosen seeds:   ", [sorted(s) for s in seeds])
print("resolved owners:", [sorted(s) for s in assignment.initial_sets])

state = CascadeState.from_assignment(g, assignment, players)
print("\ntimestep 0 owner map:", state.owner.tolist())

# Peek at one frontier node's outcome distribution before sampling it.
v = int(state.frontier()[0])
dist = node_activation_distribution(g, state, v, players)
print(f"\nnode {v}: P(stay)={dist.stay:.3f}", end=" ")
for j, p in enumerate(players, start=1):
    print(f"P(join {j})={dist.probabilities[j]:.3f}", end=" ")
print()

while (state.owner == 0).any():
    state = cascade_step(g, state, players, rng=rng)
    counts = state.influenced_counts()
    print(
        f"after step {state.timestep}: owners={state.owner.tolist()} "
        f"counts={counts.tolist()}"
    )
    if state.timestep > 100:
        break

final = state.influenced_counts()
print(f"\nfinal: player 1 holds {final[0]} nodes, player 2 holds {final[1]} nodes")
print("ownership never changed once set; uninfluenced nodes re-sampled each step.")
