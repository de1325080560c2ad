"""How many bits does a color cost?

A uniform four-color source needs 2 bits per draw.  Skew it to
(1/2, 1/4, 1/8, 1/8) and a Huffman code gets the average down to 1.75,
exactly the entropy, because every probability is a power of two.
"""
from itlab import catalog
from itlab.distributions import Distribution, entropy, redundancy
from itlab.source_coding import block_code, code_diagnostics, encode, huffman_code, product_distribution

for name, d in (("uniform", catalog.uniform_colors()), ("skewed", catalog.skewed_colors())):
    cb = huffman_code(d)
    diag = code_diagnostics(cb, d)
    print(f"{name}: H = {entropy(d):.3f} bits, redundancy {redundancy(d):.3f}")
    for label, word in zip(cb.labels, cb.codewords):
        print(f"  {label:>6} -> {word}")
    print(f"  expected length {diag.expected_length:.3f}, Kraft sum {diag.kraft_sum:.3f}")

seq = catalog.typical_skewed_sequence()
bits = encode(huffman_code(catalog.skewed_colors()), seq)
print(f"\n16 typical skewed draws encode to {len(bits)} bits: {bits}")

# a source that is not dyadic gains from coding blocks
d = Distribution.from_probs([0.7, 0.2, 0.1])
print(f"\nH(0.7, 0.2, 0.1) = {entropy(d):.4f} bits")
for n in (1, 2, 3, 4):
    cb = block_code(d, n)
    per_symbol = code_diagnostics(cb, product_distribution(d, n)).expected_length / n
    print(f"  blocks of {n}: {per_symbol:.4f} bits per symbol")
