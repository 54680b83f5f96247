"""Closed-form counts: maximal flags per label and sphere counts per skeleton."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .matrix import Permutation


@dataclass(frozen=True)
class LabelStats:
    label: Permutation
    inv: int
    p: int
    j: int | None


@dataclass(frozen=True)
class SphereCount:
    wedge_dim: int
    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("sphere count cannot be negative")


def permutations(n: int) -> Iterator[Permutation]:
    """Sigma_n in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


def is_maximal_label(i: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(i, i[1:]))


def is_minimal_label(i: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(i, i[1:]))


def m_values(i: Sequence[int]) -> list[int]:
    """Free entries contributed by each column of a pivot-normalized
    matrix with pivot rows ``i``: rows above the pivot that are not
    pivot rows of earlier columns."""
    return [v - 1 - sum(1 for u in i[:j] if u < v) for j, v in enumerate(i)]


def inversions(i: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(i, 2) if a > b)


def stats(i: Sequence[int]) -> LabelStats:
    i = tuple(i)
    inv = inversions(i)
    assert sum(m_values(i)) == inv
    ascents = [t for t in range(len(i) - 1) if i[t] < i[t + 1]]
    return LabelStats(i, inv, len(ascents), ascents[0] + 1 if ascents else None)


def f_label(i: Sequence[int], q: int) -> int:
    """Number of maximal flags of GF(q)^n carrying label ``i``."""
    return q ** sum(m_values(i))


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def gaussian_binomial(n: int, d: int, q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = den = 1
    for t in range(d):
        num *= q ** (n - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def q_factorial(n: int, q: int) -> int:
    out = 1
    for t in range(1, n + 1):
        out *= (q**t - 1) // (q - 1)
    return out


def flag_type_count(n: int, dims: Sequence[int], q: int) -> int:
    """Number of flags with the given strictly increasing dimensions."""
    out = 1
    top = n
    for d in reversed(dims):
        out *= gaussian_binomial(top, d, q)
        top = d
    return out


def f_vector_formula(n: int, q: int) -> list[int]:
    return [
        sum(flag_type_count(n, dims, q) for dims in itertools.combinations(range(1, n), k))
        for k in range(1, n)
    ]


def sphere_count_full(n: int, q: int) -> SphereCount:
    if n < 2:
        raise ValueError("n must be at least 2")
    return SphereCount(n - 2, q ** comb(n, 2))


def sphere_count_skeleton(n: int, q: int, k: int) -> SphereCount:
    """Spheres in the wedge equivalent to the k-skeleton.

    The maximal label is left out of the sum: its class holds only top
    dimensional simplices, so it contributes nothing below the top.
    """
    if k < 0:
        raise ValueError("skeleton level must be nonnegative")
    if k >= n - 2:
        return sphere_count_full(n, q)
    total = 0
    for i in permutations(n):
        if is_maximal_label(i):
            continue
        total += binom(stats(i).p - 1, n - k - 3) * f_label(i, q)
    return SphereCount(k, total)


def total_flag_identity(n: int, q: int) -> tuple[int, int]:
    """(sum of f_label over Sigma_n, enumerated number of maximal flags)."""
    from .complex import build_complex

    by_formula = sum(f_label(i, q) for i in permutations(n))
    return by_formula, len(build_complex(n, q).maximal_flags())


def eulerian_triangle(n: int) -> list[int]:
    """A(n, p) for p = 0..n-1 by the usual recurrence."""
    row = [1]
    for m in range(2, n + 1):
        row = [
            (p + 1) * (row[p] if p < len(row) else 0) + (m - p) * (row[p - 1] if p >= 1 else 0)
            for p in range(m)
        ]
    return row
