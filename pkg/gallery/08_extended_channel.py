"""Noise evens out over many channel uses.

Each input of the n-fold extension has its own noise level H(Y|x)/n.
The spread shrinks like 1/sqrt(n) while the average stays at H(Y|X).
"""
from itlab import catalog
from itlab.channel import conditional_entropy, conditional_entropy_spectrum, joint_distribution
from itlab.distributions import Distribution

ch = catalog.heterogeneous_channel()
px = Distribution.uniform(list(ch.inputs))
print(f"H(Y|X) = {conditional_entropy(joint_distribution(ch, px), 'y|x'):.5f}")
for n in (1, 2, 4, 8, 16):
    s = conditional_entropy_spectrum(ch, n)
    print(f"n={n:>2}: mean {s.weighted_mean():.5f}  std {s.std():.5f}  "
          f"range [{s.values.min():.3f}, {s.values.max():.3f}]")
