"""Most long sequences are atypical; almost all probability is typical.

Counts come from composition classes, so n = 64 over four symbols
(4^64 sequences) is exact.
"""
from itlab import catalog
from itlab.process import information_histogram, typical_set

d = catalog.skewed_colors()
print(f"{'n':>3} {'typical sequences':>22} {'fraction of all':>16} {'mass':>8}")
for n in (4, 8, 16, 32, 64):
    r = typical_set(d, n, 0.2)
    print(f"{n:>3} {r.typical_sequence_count:>22} {r.typical_sequence_count / 4**n:>16.3e} "
          f"{r.typical_probability_mass:>8.4f}")

print("\nper-symbol information narrows around H = 1.75:")
for n in (2, 8, 32):
    h = information_histogram(d, n)
    print(f"  n={n:>2}: mean {h.mean:.4f}, std {h.std:.4f}")
