"""Column-operation linear algebra over GF(q).

Matrices are tuples of columns; each column is a tuple of residues of
length ``n``. Row indices are 0-based internally, while pivot rows and
labels are reported 1-based, as permutations of ``1..n``.

A column's *pivot* is its bottom-most nonzero entry. A matrix is
*pivot-normalized* when every pivot equals 1 and every entry to the
right of a pivot, in the pivot's row, is zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .field import FieldSpec

Column = tuple[int, ...]
Mat = tuple[Column, ...]
Permutation = tuple[int, ...]


class RankError(ValueError):
    """Columns that should be independent are not."""


class SpanMismatchError(ValueError):
    """A basis does not realise the flag it is supposed to realise."""


@dataclass(frozen=True)
class MinimalMatrix:
    mat: Mat
    pivot_rows: tuple[int, ...]
    q: int

    @property
    def label(self) -> Permutation:
        return self.pivot_rows

    @property
    def n(self) -> int:
        return len(self.mat)

    def rows(self) -> list[list[int]]:
        n = self.n
        return [[self.mat[j][i] for j in range(n)] for i in range(n)]


def word(perm: Sequence[int]) -> str:
    """``(3, 1, 2) -> "312"``; entries above 9 are comma separated."""
    if all(v < 10 for v in perm):
        return "".join(str(v) for v in perm)
    return ",".join(str(v) for v in perm)


def parse_word(text: str) -> Permutation:
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    perm = tuple(int(p) for p in parts)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"{text!r} is not a permutation of 1..{len(perm)}")
    return perm


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for i in range(n)) for j in range(n))


def unit(n: int, i: int) -> Column:
    """Standard basis vector e_i (1-based)."""
    return tuple(int(r == i - 1) for r in range(n))


def bottom(col: Sequence[int]) -> int:
    """Row of the bottom-most nonzero entry, or -1 for the zero column."""
    for r in range(len(col) - 1, -1, -1):
        if col[r]:
            return r
    return -1


def _axpy(cols: list[list[int]], src: int, dst: int, c: int, q: int) -> None:
    """cols[dst] += c * cols[src]."""
    if c % q == 0:
        return
    s, d = cols[src], cols[dst]
    for r in range(len(d)):
        if s[r]:
            d[r] = (d[r] + c * s[r]) % q


def _scale(cols: list[list[int]], j: int, c: int, q: int) -> None:
    if c % q == 0:
        raise ValueError("column scaling factor must be nonzero")
    cols[j] = [v * c % q for v in cols[j]]


class _Echelon:
    """Incremental pivot-normalized basis, for rank and membership tests."""

    def __init__(self, q: int) -> None:
        self.q = q
        self.by_row: dict[int, list[int]] = {}

    def reduce(self, v: Sequence[int]) -> tuple[list[int], int]:
        q = self.q
        v = [x % q for x in v]
        for r in range(len(v) - 1, -1, -1):
            if not v[r]:
                continue
            w = self.by_row.get(r)
            if w is None:
                return v, r
            c = v[r]
            v = [(a - c * b) % q for a, b in zip(v, w)]
        return v, -1

    def add(self, v: Sequence[int]) -> bool:
        v, r = self.reduce(v)
        if r < 0:
            return False
        inv = pow(v[r], self.q - 2, self.q)
        self.by_row[r] = [x * inv % self.q for x in v]
        return True

    def __len__(self) -> int:
        return len(self.by_row)


def rank(cols: Sequence[Sequence[int]], q: int) -> int:
    ech = _Echelon(q)
    for v in cols:
        ech.add(v)
    return len(ech)


def in_span(v: Sequence[int], cols: Sequence[Sequence[int]], q: int) -> bool:
    ech = _Echelon(q)
    for w in cols:
        ech.add(w)
    return ech.reduce(v)[1] < 0


def _as_q(spec: FieldSpec | int) -> int:
    return spec.q if isinstance(spec, FieldSpec) else FieldSpec(spec).q


def _echelon_columns(basis: Sequence[Sequence[int]], q: int) -> list[list[int]]:
    """Bring columns into pivot-normalized form, keeping every prefix span.

    Only two kinds of operation are used: scaling a column by a nonzero
    factor and adding a multiple of column i to column j with i < j.
    """
    cols = [[x % q for x in col] for col in basis]
    owner: dict[int, int] = {}  # pivot row -> column index
    for j in range(len(cols)):
        pivot = -1
        for r in range(len(cols[j]) - 1, -1, -1):
            c = cols[j][r]
            if not c:
                continue
            i = owner.get(r)
            if i is not None:
                assert i < j
                _axpy(cols, i, j, -c, q)
            elif pivot < 0:
                pivot = r
        if pivot < 0:
            raise RankError(f"column {j + 1} lies in the span of the columns before it")
        _scale(cols, j, pow(cols[j][pivot], q - 2, q), q)
        owner[pivot] = j
    return cols


def _clear_block(cols: list[list[int]], block: Sequence[int], q: int) -> None:
    """Zero every block pivot row in the other columns of the block, then
    sort the block's columns by increasing pivot row."""
    members = set(block)
    owner = {bottom(cols[j]): j for j in block}
    for j in block:
        p = bottom(cols[j])
        for r in range(p - 1, -1, -1):
            i = owner.get(r)
            if i is None or not cols[j][r]:
                continue
            assert i in members and i != j
            _axpy(cols, i, j, -cols[j][r], q)
    ordered = sorted(block, key=lambda j: bottom(cols[j]))
    reordered = [cols[j] for j in ordered]
    for j, col in zip(sorted(block), reordered):
        cols[j] = col


def _freeze(cols: Sequence[Sequence[int]]) -> Mat:
    return tuple(tuple(col) for col in cols)


def _minimal(cols: list[list[int]], q: int) -> MinimalMatrix:
    pivots = tuple(bottom(col) + 1 for col in cols)
    return MinimalMatrix(_freeze(cols), pivots, q)


def echelon_maximal(basis: Sequence[Sequence[int]], spec: FieldSpec | int) -> MinimalMatrix:
    """Minimal matrix of the maximal flag whose j-th space is spanned by
    the first j columns of ``basis``."""
    q = _as_q(spec)
    n = len(basis)
    if any(len(col) != n for col in basis):
        raise ValueError("basis must be square")
    return _minimal(_echelon_columns(basis, q), q)


def canonical_subspace(span: Sequence[Sequence[int]], spec: FieldSpec | int) -> Mat:
    """Unique basis of the span of ``span``: pivots are 1, each pivot row
    is zero in every other column, columns sorted by pivot row."""
    q = _as_q(spec)
    if not span:
        raise RankError("empty spanning set")
    cols = _echelon_columns(span, q)
    _clear_block(cols, range(len(cols)), q)
    return _freeze(cols)


def is_pivot_normalized(mat: Sequence[Sequence[int]]) -> bool:
    pivots = [bottom(col) for col in mat]
    if any(p < 0 for p in pivots) or len(set(pivots)) != len(pivots):
        return False
    for j, (col, p) in enumerate(zip(mat, pivots)):
        if col[p] != 1:
            return False
        if any(mat[k][p] for k in range(j + 1, len(mat))):
            return False
    return True


def _check_chain(chain: Sequence[Mat], n: int) -> list[int]:
    dims = [len(sp) for sp in chain]
    if any(not 0 < d < n for d in dims):
        raise ValueError("flag members must be proper nonzero subspaces")
    if any(a >= b for a, b in zip(dims, dims[1:])):
        raise ValueError("flag dimensions must strictly increase")
    return dims


def minimal_matrix_of_flag(
    chain: Sequence[Mat], chosen: Sequence[Sequence[int]], spec: FieldSpec | int
) -> MinimalMatrix:
    """Minimal matrix of a (possibly partial) flag.

    ``chain`` lists bases of the flag's subspaces by increasing dimension;
    the first ``d_j`` columns of ``chosen`` must span the j-th of them.
    The echelon form of ``chosen`` is cut into blocks at the flag
    dimensions, and each block is then cleared and sorted by pivot row.
    """
    q = _as_q(spec)
    n = len(chosen)
    if any(len(col) != n for col in chosen):
        raise ValueError("chosen basis must be square")
    dims = _check_chain(chain, n)
    for sp, d in zip(chain, dims):
        if canonical_subspace(chosen[:d], q) != canonical_subspace(sp, q):
            raise SpanMismatchError(f"first {d} chosen columns do not span the {d}-dimensional flag member")
    cols = _echelon_columns(chosen, q)
    cuts = [0, *dims, n]
    for lo, hi in zip(cuts, cuts[1:]):
        _clear_block(cols, range(lo, hi), q)
    return _minimal(cols, q)


def step_a_basis(chain: Sequence[Mat], n: int, spec: FieldSpec | int) -> Mat:
    """Deterministic basis adapted to ``chain``: extend greedily through
    each member's basis, then the standard basis."""
    q = _as_q(spec)
    ech = _Echelon(q)
    cols: list[Column] = []
    for sp in [*chain, identity(n)]:
        for v in sp:
            if ech.add(v):
                cols.append(tuple(x % q for x in v))
    return tuple(cols)


def random_step_a_basis(
    chain: Sequence[Mat], n: int, spec: FieldSpec | int, rng_seed: int
) -> Mat:
    """Random basis adapted to ``chain``; each new column is a uniform
    vector of the next flag member, resampled until it is independent."""
    q = _as_q(spec)
    _check_chain(chain, n)
    rng = random.Random(rng_seed)
    ech = _Echelon(q)
    cols: list[Column] = []
    for sp in [*chain, identity(n)]:
        while len(cols) < len(sp):
            coeffs = [rng.randrange(q) for _ in sp]
            v = tuple(sum(c * w[r] for c, w in zip(coeffs, sp)) % q for r in range(n))
            if ech.add(v):
                cols.append(v)
    return tuple(cols)


def prefix_spans(mat: Sequence[Sequence[int]], spec: FieldSpec | int) -> list[Mat]:
    """Canonical bases of the spans of the first 1..n-1 columns."""
    q = _as_q(spec)
    return [canonical_subspace(mat[:j], q) for j in range(1, len(mat))]
