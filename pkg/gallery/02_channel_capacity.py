"""Climbing to capacity.

Projected gradient ascent on the input distribution.  For a binary
symmetric channel the answer is 1 - H(f).  For the straddle channel
the optimum is checked by its divergence certificate instead.
"""
import numpy as np

from itlab import catalog
from itlab.capacity import AscentConfig, channel_capacity, input_divergences
from itlab.channel_coding import bsc, bsc_capacity

for f in (0.05, 0.1, 0.2, 0.4):
    res = channel_capacity(bsc(f))
    print(f"BSC f={f}: C = {res.capacity:.6f} (closed form {bsc_capacity(f):.6f}), {res.iterations} steps")

ch = catalog.straddle_channel()
trace = []
res = channel_capacity(ch, AscentConfig(tolerance=1e-13), trace)
print(f"\nstraddle channel: C = {res.capacity:.5f} bits")
print("optimal input:", {k: round(float(v), 4) for k, v in zip(res.optimal_input.labels, res.optimal_input.probs)})

# at the optimum every used input sees the same divergence, equal to C
d = input_divergences(ch, res.optimal_input)
print("D(p(y|x) || p(y)) per input:", np.round(d, 5))

print("\nfirst few steps of the ascent:")
for it, mi, g in trace[:6]:
    print(f"  {it:3d}  I = {mi:.6f}  |grad| = {g:.3e}")
