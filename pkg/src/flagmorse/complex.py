"""The flag complex of GF(q)^n and its skeleta.

Vertices are the proper nonzero subspaces, keyed by their canonical
basis. Simplices are chains of subspaces, stored as tuples of vertex
ids ordered by dimension. Vertex ids follow a dimension-major sort of
the canonical bases, so ids increase along every chain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .field import FieldSpec
from .matrix import Mat, bottom, canonical_subspace

Flag = tuple[int, ...]

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class Subspace:
    id: int
    dim: int
    basis: Mat

    @property
    def ambient_n(self) -> int:
        return len(self.basis[0])

    def pretty(self) -> str:
        """Generator notation, e.g. ``⟨e₁+e₃, e₂⟩``."""
        gens = []
        for col in self.basis:
            terms = []
            for r, c in enumerate(col):
                if c:
                    coef = "" if c == 1 else str(c)
                    terms.append(f"{coef}e{str(r + 1).translate(_SUB)}")
            gens.append("+".join(terms))
        return "⟨" + ", ".join(gens) + "⟩"


def _canonical_forms(n: int, q: int, d: int) -> Iterator[Mat]:
    for pivots in itertools.combinations(range(n), d):
        pivot_set = set(pivots)
        # free slots: rows above a column's pivot that are not pivot rows
        slots = [(j, r) for j, p in enumerate(pivots) for r in range(p) if r not in pivot_set]
        for values in itertools.product(range(q), repeat=len(slots)):
            cols = [[0] * n for _ in pivots]
            for j, p in enumerate(pivots):
                cols[j][p] = 1
            for (j, r), v in zip(slots, values):
                cols[j][r] = v
            yield tuple(tuple(c) for c in cols)


def enumerate_subspaces(n: int, q: int, d: int, start: int = 0) -> list[Subspace]:
    """All ``d``-dimensional subspaces of GF(q)^n in canonical order, with
    ids counted from ``start``."""
    FieldSpec(q)
    if not 1 <= d <= n - 1:
        raise ValueError(f"subspace dimension must lie in [1, {n - 1}], got {d}")
    bases = sorted(_canonical_forms(n, q, d))
    return [Subspace(start + k, d, b) for k, b in enumerate(bases)]


def _contains(big: Mat, small: Mat, q: int) -> bool:
    # big is canonical: each pivot row is nonzero in exactly one column
    pivots = [bottom(w) for w in big]
    for v in small:
        residue = list(v)
        for w, p in zip(big, pivots):
            c = v[p]
            if c:
                for r in range(len(residue)):
                    residue[r] = (residue[r] - c * w[r]) % q
        if any(residue):
            return False
    return True


@dataclass
class ComplexStore:
    """A built flag complex, possibly truncated to its ``skeleton``-skeleton.

    ``simplices[d]`` lists the d-simplices (flags with d+1 members) in
    sorted order. ``up[v]`` lists the vertices strictly containing ``v``.
    """

    n: int
    q: int
    skeleton: int | None
    vertices: list[Subspace]
    simplices: list[list[Flag]]
    up: dict[int, tuple[int, ...]] = field(repr=False)

    @property
    def top_dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def is_full(self) -> bool:
        return self.top_dim == self.n - 2

    @cached_property
    def _members(self) -> frozenset[Flag]:
        return frozenset(s for layer in self.simplices for s in layer)

    @cached_property
    def vertex_by_basis(self) -> dict[Mat, int]:
        return {v.basis: v.id for v in self.vertices}

    def __contains__(self, simplex: object) -> bool:
        return simplex in self._members

    def all_simplices(self) -> Iterator[Flag]:
        for layer in self.simplices:
            yield from layer

    def dims(self, simplex: Flag) -> tuple[int, ...]:
        return tuple(self.vertices[v].dim for v in simplex)

    def chain(self, simplex: Flag) -> list[Mat]:
        return [self.vertices[v].basis for v in simplex]

    def vertex_id(self, span: Sequence[Sequence[int]]) -> int:
        return self.vertex_by_basis[canonical_subspace(span, self.q)]

    def is_flag(self, simplex: Sequence[int]) -> bool:
        if not simplex:
            return False
        return all(b in self.up[a] for a, b in zip(simplex, simplex[1:]))

    def facets(self, simplex: Flag) -> list[Flag]:
        if len(simplex) == 1:
            return []
        return [simplex[:k] + simplex[k + 1:] for k in range(len(simplex))]

    def cofacets(self, simplex: Flag) -> list[Flag]:
        """Flags one longer than ``simplex`` that contain it and are stored."""
        if len(simplex) > self.top_dim:
            return []
        out = []
        for k in range(len(simplex) + 1):
            lo = simplex[k - 1] if k > 0 else None
            hi = simplex[k] if k < len(simplex) else None
            pool = self.up[lo] if lo is not None else range(len(self.vertices))
            for w in pool:
                if hi is None or hi in self.up[w]:
                    out.append(simplex[:k] + (w,) + simplex[k:])
        return sorted(out)

    def f_vector(self) -> list[int]:
        return [len(layer) for layer in self.simplices]

    def maximal_flags(self) -> list[Flag]:
        """All maximal flags of the full complex, stored or not."""
        if self.is_full:
            return self.simplices[-1]
        return sorted(_chains(self.up, self.vertices, self.n - 1, exact=True))


def faces_of(simplex: Sequence[int]) -> list[Flag]:
    """All nonempty proper subchains."""
    s = tuple(simplex)
    return [
        sub
        for r in range(1, len(s))
        for sub in itertools.combinations(s, r)
    ]


def _chains(
    up: dict[int, tuple[int, ...]], vertices: list[Subspace], max_len: int, exact: bool = False
) -> Iterator[Flag]:
    stack: list[Flag] = [(v.id,) for v in reversed(vertices)]
    while stack:
        s = stack.pop()
        if not exact or len(s) == max_len:
            yield s
        if len(s) < max_len:
            stack.extend(s + (w,) for w in reversed(up[s[-1]]))


def containment(vertices: Sequence[Subspace], n: int, q: int) -> dict[int, tuple[int, ...]]:
    """Map each vertex id to the ids of the subspaces strictly containing it."""
    by_dim: dict[int, list[Subspace]] = {}
    for v in vertices:
        by_dim.setdefault(v.dim, []).append(v)
    return {
        v.id: tuple(
            w.id
            for d in range(v.dim + 1, n)
            for w in by_dim.get(d, ())
            if _contains(w.basis, v.basis, q)
        )
        for v in vertices
    }


def build_complex(n: int, q: int, skeleton_k: int | None = None) -> ComplexStore:
    """Flag complex of GF(q)^n, truncated to dimension ``skeleton_k`` if given."""
    FieldSpec(q)
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    if skeleton_k is not None and skeleton_k < 0:
        raise ValueError("skeleton level must be nonnegative")
    vertices: list[Subspace] = []
    for d in range(1, n):
        vertices.extend(enumerate_subspaces(n, q, d, start=len(vertices)))
    up = containment(vertices, n, q)
    top = n - 2 if skeleton_k is None else min(skeleton_k, n - 2)
    layers: list[list[Flag]] = [[] for _ in range(top + 1)]
    for s in _chains(up, vertices, top + 1):
        layers[len(s) - 1].append(s)
    for layer in layers:
        layer.sort()
    return ComplexStore(n, q, skeleton_k, vertices, layers, up)


def f_vector(store: ComplexStore) -> list[int]:
    return store.f_vector()
