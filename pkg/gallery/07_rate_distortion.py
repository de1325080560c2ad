"""Trading bits for errors.

Blahut-Arimoto traces R(D) for a fair bit under Hamming distortion;
the closed form is 1 - H(D).
"""
from itlab.channel_coding import binary_entropy
from itlab.distributions import Distribution
from itlab.rate_distortion import hamming_distortion, rd_curve

src = Distribution.uniform(["0", "1"])
for pt in rd_curve(src, hamming_distortion(src.labels), 12):
    exact = 1 - binary_entropy(pt.distortion) if pt.distortion < 0.5 else 0.0
    print(f"D = {pt.distortion:.4f}   R = {pt.rate:.5f}   1-H(D) = {exact:.5f}")
