"""Weak convergence of measures, measured three ways.

Normalized combs on finer and finer lattices flatten toward the uniform
measure.  The library quantifies that with three deviation metrics: a
pairing test against a probe dictionary, the sup of the windowed transform
of the difference, and the largest canonical Gabor coefficient of the
difference.  They shrink together, which is the point: on a fixed group the
three notions of closeness are interchangeable.
"""

from mildspec import (
    GaborSystem,
    GroupSpec,
    TFLattice,
    convergence_report,
    finite_gaussian,
    refining_comb_sequence,
)

G = GroupSpec((128,))
seq = refining_comb_sequence(G)
print(f"{G}: refining comb chain with {len(seq)} stages, "
      f"uniform dual-norm bound {seq.uniform_bound:.4f}")
print()

system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
report = convergence_report(seq, system)

print(f"{'stage':>5} {'pairing':>12} {'windowed sup':>13} {'coefficient':>12}")
for n, (dp, ds, dc) in enumerate(zip(report.d_pair, report.d_stft, report.d_coeff)):
    print(f"{n:5d} {dp:12.3e} {ds:13.3e} {dc:12.3e}")
print()

for metric in ("pair", "stft", "coeff"):
    print(f"metric {metric:5s} non-increasing: {report.is_monotone(metric)}")
print()

print("equivalence ratios across the run:")
for key, value in sorted(report.equivalence_ratios.items()):
    print(f"  {key}: {value:.4f}")
