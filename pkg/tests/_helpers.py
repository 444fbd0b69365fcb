"""Shared constructions for the test suite."""

import random
from fractions import Fraction


def unimodular_matrix(rng: random.Random, dim: int, steps: int = 8) -> list:
    """Integer matrix with determinant +1 or -1 built from row operations."""
    mat = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        f = rng.randint(-2, 2)
        mat[i] = [a + f * b for a, b in zip(mat[i], mat[j])]
    if rng.random() < 0.5:
        i = rng.randrange(dim)
        mat[i] = [-a for a in mat[i]]
    return mat


def random_spd(rng: random.Random, dim: int) -> list:
    """Rational symmetric positive definite matrix of the form A^T A + I."""
    a = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            s = sum(a[k][i] * a[k][j] for k in range(dim))
            if i == j:
                s += 1
            row.append(s)
        out.append(row)
    return out
