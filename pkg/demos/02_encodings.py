"""
From quaternion genes to real coordinates
=========================================

Each coordinate of a quaternion bat is a whole quaternion. The objective
needs a real number, so the gene is collapsed through its norm. Two
variants exist: the plain norm, which can only produce nonnegative values,
and a shifted norm that adds the lower bound first so the whole box is
reachable.
"""

import numpy as np

from qbat.encoding import BoundsBox, EncodingMode, decode, encode, init_genotype

box = BoundsBox.uniform(-5.0, 5.0, 1)
gene = np.array([[3.0, 4.0, 0.0, 0.0]])

print("gene (3, 4, 0, 0) under quat-norm        ->", decode(gene, box, "quat-norm"))
print("gene (2, 0, 0, 0) under quat-shifted-norm ->", decode([[2.0, 0, 0, 0]], box, "quat-shifted-norm"))

# The plain norm loses the sign: -2 comes back as 2.
print("encode/decode -2 with quat-norm:", decode(encode([-2.0], box, "quat-norm"), box, "quat-norm"))

# Huge genes are clamped to the box rather than escaping it.
print("a 1e200 gene decodes to", decode(np.full((1, 4), 1e200), box, "quat-norm"))

# Where do random initial genes land? The plain norm piles up on the positive
# half; the shifted norm spreads over the whole interval.
rng = np.random.default_rng(1)
for mode in ["quat-norm", "quat-shifted-norm"]:
    xs = np.array([decode(init_genotype(rng, box, mode), box, mode)[0] for _ in range(10_000)])
    hist, _ = np.histogram(xs, bins=5, range=(-5, 5))
    print(f"{mode:<18} counts over [-5, 5] in 5 bins: {hist}")
