"""Size-independent bounds on first-step influence in a complete graph.

With budgets tied to graph size (b1 = c*n, b2 = m*c*n), the probability
that a node joins a given player on the first step stays inside a fixed
interval no matter how large the graph grows — the reason influenced
counts scale linearly with size.
"""

from cascadia import DenseNetworkConfig, dense_first_step_probability, dense_probability_bounds

cfg = DenseNetworkConfig(n=1000, c=0.02, m=5.0, p1=1.0, p2=0.2)

for player in (1, 2):
    bounds = dense_probability_bounds(cfg, player)
    print(f"\nplayer {player}: interval [{bounds.lower:.6f}, {bounds.upper:.6f}]")
    print(f"{'n':>9} {'closed form':>12} {'inside':>7}")
    for n in (1000, 5000, 20_000, 100_000, 1_000_000):
        value = bounds.closed_form(n)
        inside = bounds.lower <= value <= bounds.upper
        print(f"{n:>9} {value:>12.8f} {str(inside):>7}")

# The simulation's standard setup satisfies b1/(b1+b2) = p2/(p1+p2), which
# makes the two players' first-step probabilities exactly equal.
v1 = dense_first_step_probability(cfg, 1)
v2 = dense_first_step_probability(cfg, 2)
print(f"\nratio condition: P(join 1) = {v1:.10f}, P(join 2) = {v2:.10f}")
print("equal first step — the advantage only emerges from step 2 onward,")
print("where the smaller-budget, higher-score player's share keeps growing.")
