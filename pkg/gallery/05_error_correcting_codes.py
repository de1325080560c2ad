"""Repetition versus Hamming over a noisy binary channel.

Exact error rates at f = 0.2, one Monte-Carlo check, and the cliff:
what happens when the real noise is not the noise the code was picked for.
"""
import numpy as np

from itlab.channel_coding import cliff_sweep, hamming74, rate_error_curve, repetition_code, simulate_transmission

f = 0.2
curve = rate_error_curve("repetition", f)
print(f"capacity at f={f}: {curve.capacity:.4f}")
for p in curve.points + rate_error_curve([hamming74()], f).points:
    print(f"  {p.code:>10}  rate {float(p.rate):.3f}  bit error {p.bit_error:.5f}  block error {p.block_error:.5f}")

rep = simulate_transmission(repetition_code(3), f, 200_000, seed=7)
print(f"\nsimulated rep3: bit error {rep.bit_error_rate:.5f} +- {rep.confidence_halfwidth_95:.5f}")

print("\nHamming(7,4) block error as the flip rate drifts:")
for pt in cliff_sweep(hamming74(), f, np.linspace(0.0, 0.4, 9)):
    print(f"  f={pt.f_actual:.2f}  {pt.block_error:.4f}")
