"""Memory lowers the entropy rate.

A four-state chain that repeats its last color with probability 5/8.
The block entropy per symbol creeps down towards the conditional rate.
"""
from itlab.process import conditional_entropy_rate, joint_entropy_rate, sample_sequence, stay_chain

chain = stay_chain()
for n in (1, 2, 4, 8, 16, 32, 64):
    print(f"n={n:>2}: H(X1..Xn)/n = {joint_entropy_rate(chain, n):.5f}   "
          f"H(Xn|X1..Xn-1) = {conditional_entropy_rate(chain, n):.5f}")

sample = sample_sequence(chain, 24, seed=3)
print("\nsample:", " ".join(s for s in sample.labels(chain.labels)))
