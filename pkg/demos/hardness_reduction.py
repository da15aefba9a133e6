"""Why the generalized seed-selection problem is hard.

Swap the default cascade rule for a deterministic one — a node activates
iff it neighbors the *initial* seed set — and "influence everything with k
seeds" becomes exactly "find a dominating set of size k", a classic
NP-hard problem.  At toy scale we can brute-force both sides and watch
them agree.
"""

from itertools import combinations

from cascadia import (
    build_reduction_instance,
    exhaustive_reduction_oracle,
    generate_ngon,
    load_edge_list,
    verify_reduction,
)

path5 = load_edge_list("0 1\n1 2\n2 3\n3 4")

print("path of 5 nodes, budget 1: which single seeds influence everything?")
inst = build_reduction_instance(path5, 1)
for v in range(5):
    influenced, witness = verify_reduction(inst, {v})
    print(f"  seed {{{v}}}: influenced {influenced}/5  witness={witness}")

print("\nhexagon: smallest dominating set has size 2")
hexagon = generate_ngon(6)
for k in (1, 2):
    print(f"  budget {k}: solvable = {exhaustive_reduction_oracle(hexagon, k)}")

inst = build_reduction_instance(hexagon, 2)
winners = [
    combo
    for combo in combinations(range(6), 2)
    if verify_reduction(inst, combo)[1]
]
print(f"  witnesses with budget 2: {winners}")
print("\neach witness is exactly a dominating set: every node is in the seed")
print("set or adjacent to it, so the whole graph activates in one step.")
