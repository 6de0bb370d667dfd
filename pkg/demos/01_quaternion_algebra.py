"""
Quaternion algebra
==================

A quaternion is four reals ``(w, x, y, z)`` read as ``w + x i + y j + z k``.
Products follow ``i^2 = j^2 = k^2 = ijk = -1``, which makes multiplication
associative but not commutative.
"""

import numpy as np

from qbat.quaternion import Quaternion, qconj, qmul, qnorm, qrand

i = Quaternion(0, 1, 0, 0)
j = Quaternion(0, 0, 1, 0)
k = Quaternion(0, 0, 0, 1)

print("i*j =", qmul(i, j))
print("j*i =", qmul(j, i))
print("i*j*k =", qmul(qmul(i, j), k))

# The norm is plain Euclidean length and it is multiplicative.
p = Quaternion(1, 2, 3, 4)
q = Quaternion(-2, 0.5, 1, 3)
print("|p| |q| =", qnorm(p) * qnorm(q), "  |pq| =", qnorm(qmul(p, q)))

# q times its conjugate lands on the real axis at |q|^2.
print("q * conj(q) =", qmul(q, qconj(q)), "  |q|^2 =", qnorm(q) ** 2)

# Every operation also works on stacks whose last axis has length 4.
rng = np.random.default_rng(0)
A = qrand(rng, 1.0, size=5)
B = qrand(rng, 1.0, size=5)
print("batched |AB| - |A||B|:", np.abs(qnorm(qmul(A, B)) - qnorm(A) * qnorm(B)).max())
