"""Simplicial Betti numbers over prime fields, as an independent oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .complex import ComplexStore, Flag
from .field import FieldSpec

DEFAULT_PRIMES = (2, 3, 1000003)

SparseColumn = dict[int, int]


@dataclass
class ChainData:
    """Ordered simplices per dimension and sparse boundary columns."""

    p: int
    simplices: list[list[Flag]]
    boundaries: list[list[SparseColumn]]  # boundaries[d] is the map C_d -> C_{d-1}; [0] unused


def boundary_columns(store: ComplexStore, d: int, coeff_p: int) -> list[SparseColumn]:
    """Columns of the d-th boundary map; signs alternate along the chain."""
    FieldSpec(coeff_p)
    if not 1 <= d <= store.top_dim:
        raise ValueError(f"boundary degree must lie in [1, {store.top_dim}], got {d}")
    index = {s: r for r, s in enumerate(store.simplices[d - 1])}
    cols = []
    for s in store.simplices[d]:
        col: SparseColumn = {}
        for k in range(len(s)):
            col[index[s[:k] + s[k + 1:]]] = (-1) ** k % coeff_p
        cols.append(col)
    return cols


def boundary_matrix(store: ComplexStore, d: int, coeff_p: int) -> np.ndarray:
    cols = boundary_columns(store, d, coeff_p)
    mat = np.zeros((len(store.simplices[d - 1]), len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        for r, v in col.items():
            mat[r, j] = v
    return mat


def chain_data(store: ComplexStore, coeff_p: int) -> ChainData:
    bds = [[]] + [boundary_columns(store, d, coeff_p) for d in range(1, store.top_dim + 1)]
    return ChainData(coeff_p, store.simplices, bds)


def rank_mod_p(columns: Sequence[SparseColumn], p: int) -> int:
    """Rank by sparse column reduction on the lowest nonzero row."""
    pivots: dict[int, SparseColumn] = {}
    for col in columns:
        col = {r: v % p for r, v in col.items() if v % p}
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                inv = pow(col[low], p - 2, p)
                pivots[low] = {r: v * inv % p for r, v in col.items()}
                break
            c = col[low]
            for r, v in piv.items():
                x = (col.get(r, 0) - c * v) % p
                if x:
                    col[r] = x
                else:
                    col.pop(r, None)
    return len(pivots)


def boundary_squares_to_zero(store: ComplexStore, coeff_p: int) -> bool:
    """Compose consecutive boundary maps column by column."""
    for d in range(2, store.top_dim + 1):
        lower = boundary_columns(store, d - 1, coeff_p)
        for col in boundary_columns(store, d, coeff_p):
            acc: dict[int, int] = {}
            for j, c in col.items():
                for r, v in lower[j].items():
                    acc[r] = (acc.get(r, 0) + c * v) % coeff_p
            if any(acc.values()):
                return False
    return True


def betti(store: ComplexStore, coeff_p: int) -> list[int]:
    top = store.top_dim
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        ranks[d] = rank_mod_p(boundary_columns(store, d, coeff_p), coeff_p)
    sizes = store.f_vector()
    return [sizes[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)]


def betti_all(store: ComplexStore, primes: Sequence[int] = DEFAULT_PRIMES) -> dict[int, list[int]]:
    return {p: betti(store, p) for p in primes}


def euler(store: ComplexStore) -> int:
    return sum((-1) ** d * c for d, c in enumerate(store.f_vector()))
