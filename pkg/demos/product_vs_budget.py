"""Product player vs budget player across topologies, at desk scale.

The product player has budget n/50 and score 1.0; the budget player has
budget n/10 and score 0.2.  On high-diameter graphs (cycle) the budget
player's extra seeds win; on the complete graph the product player's score
advantage compounds step over step and dominates.  Both series grow
linearly with graph size.
"""

from cascadia import ExperimentConfig, fit_linear, run_product_vs_budget

SIZES = tuple(range(500, 3001, 500))

for topology in ("ngon", "tree", "dense"):
    cfg = ExperimentConfig(
        master_seed=42, trials_per_point=5, sizes=SIZES, topology=topology
    )
    result = run_product_vs_budget(cfg, threads=4)
    print(f"\n=== {topology} ===")
    print(f"{'size':>6} {'product':>10} {'budget':>10} {'winner':>8}")
    means = {(s, l): m for s, l, m in result.means()}
    for size in SIZES:
        p, b = means[(size, "product")], means[(size, "budget")]
        print(f"{size:>6} {p:>10.1f} {b:>10.1f} {'product' if p > b else 'budget':>8}")
    for label in ("product", "budget"):
        fit = fit_linear(result.series(label))
        print(
            f"{label}: influenced ≈ {fit.slope:.3f}·n {fit.intercept:+.1f}   "
            f"(R² = {fit.r_squared:.4f})"
        )
