"""Labels, the label partition of the flag complex, and its acyclic matching.

Every simplex gets the label of its minimal matrix; the spans of that
matrix's column prefixes form its *home* maximal flag, the unique
lexicographically first maximal flag containing it. A simplex whose home
has a non-maximal label is matched by deleting or inserting the home's
pivot vertex: the member sitting at the position of the label's first
ascent.
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .complex import ComplexStore, Flag, Subspace, faces_of
from .counting import is_maximal_label, is_minimal_label, stats
from .matrix import (
    MinimalMatrix,
    Permutation,
    echelon_maximal,
    minimal_matrix_of_flag,
    prefix_spans,
    step_a_basis,
    word,
)


class UndefinedVertexError(ValueError):
    """The maximal label has no ascent, so no pivot vertex."""


class FailureClass(enum.IntEnum):
    """Verification failure classes; the values double as CLI exit codes."""

    LEGALITY = 10
    ACYCLICITY = 11
    PARTITION = 12
    CENSUS = 13
    HOMOLOGY = 14


def label_of_flag(store: ComplexStore, flag: Flag) -> tuple[Permutation, MinimalMatrix]:
    chain = store.chain(flag)
    m = minimal_matrix_of_flag(chain, step_a_basis(chain, store.n, store.q), store.q)
    return m.label, m


def home_flag(store: ComplexStore, m: MinimalMatrix) -> Flag:
    """Maximal flag spanned by the column prefixes of a minimal matrix."""
    return tuple(store.vertex_by_basis[b] for b in prefix_spans(m.mat, store.q))


def maximal_label(store: ComplexStore, flag: Flag) -> Permutation:
    """Label of a maximal flag via the plain echelon form, without the
    block procedure."""
    chain = store.chain(flag)
    return echelon_maximal(step_a_basis(chain, store.n, store.q), store.q).label


@dataclass
class Partition:
    label_of: dict[Flag, Permutation]
    home: dict[Flag, Flag]

    @property
    def by_label(self) -> dict[Permutation, list[Flag]]:
        out: dict[Permutation, list[Flag]] = defaultdict(list)
        for s, i in self.label_of.items():
            out[i].append(s)
        return {i: sorted(out[i]) for i in sorted(out)}


def partition(store: ComplexStore) -> Partition:
    label_of: dict[Flag, Permutation] = {}
    home: dict[Flag, Flag] = {}
    for s in store.all_simplices():
        i, m = label_of_flag(store, s)
        label_of[s] = i
        home[s] = home_flag(store, m)
    return Partition(label_of, home)


def pivot_position(label: Permutation) -> int:
    """First ascent of the label (1-based)."""
    j = stats(label).j
    if j is None:
        raise UndefinedVertexError(f"label {word(label)} has no ascending pair")
    return j


def v_f(store: ComplexStore, maximal_flag: Flag, label: Permutation | None = None) -> Subspace:
    if label is None:
        label = maximal_label(store, maximal_flag)
    return store.vertices[maximal_flag[pivot_position(label) - 1]]


@dataclass
class Matching:
    pairs: list[tuple[Flag, Flag]]
    critical: set[Flag]
    by_label: dict[Permutation, list[Flag]] = field(default_factory=dict)

    def critical_by_dim(self, top_dim: int) -> list[int]:
        counts = Counter(len(s) - 1 for s in self.critical)
        return [counts.get(d, 0) for d in range(top_dim + 1)]

    def partner(self) -> dict[Flag, Flag]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out


def _remove(s: Flag, v: int) -> Flag:
    return tuple(x for x in s if x != v)


def build_matching(store: ComplexStore, part: Partition | None = None) -> Matching:
    """Match every simplex containing its home's pivot vertex with the face
    that drops it.

    On a truncated store only pairs whose coface is stored survive, which
    is the full matching with every pair above the skeleton deleted.
    """
    if part is None:
        part = partition(store)
    pairs: list[tuple[Flag, Flag]] = []
    for s in store.all_simplices():
        i = part.label_of[s]
        if is_maximal_label(i):
            continue
        v = part.home[s][pivot_position(i) - 1]
        if v in s and len(s) > 1:
            pairs.append((_remove(s, v), s))
    pairs.sort(key=lambda p: (len(p[1]), p[1]))
    paired = {x for p in pairs for x in p}
    critical = {s for s in store.all_simplices() if s not in paired}
    return Matching(pairs, critical, part.by_label)


def truncate_matching(m: Matching, k: int) -> Matching:
    """Drop every pair touching a simplex of dimension above ``k``."""
    pairs = [(a, b) for a, b in m.pairs if len(b) - 1 <= k]
    paired = {x for p in pairs for x in p}
    everything = {x for p in m.pairs for x in p} | m.critical
    critical = {s for s in everything if len(s) - 1 <= k and s not in paired}
    by_label = {
        i: [s for s in ss if len(s) - 1 <= k] for i, ss in m.by_label.items()
    }
    return Matching(pairs, critical, {i: ss for i, ss in by_label.items() if ss})


def maximal_coface_labels(store: ComplexStore) -> dict[Flag, list[tuple[Permutation, Flag]]]:
    """Brute force: every stored simplex mapped to the sorted labels of all
    maximal flags containing it."""
    out: dict[Flag, list[tuple[Permutation, Flag]]] = defaultdict(list)
    for mf in store.maximal_flags():
        i = maximal_label(store, mf)
        for s in [*faces_of(mf), mf]:
            if len(s) - 1 <= store.top_dim:
                out[s].append((i, mf))
    for v in out.values():
        v.sort()
    return out


def find_cycle(succ: dict[Flag, list[Flag]]) -> list[Flag] | None:
    """A directed cycle of the graph, or None. Iterative DFS."""
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[Flag, int] = dict.fromkeys(succ, WHITE)
    for root in succ:
        if color[root] != WHITE:
            continue
        color[root] = GREY
        path = [root]
        stack: list[Iterator[Flag]] = [iter(succ[root])]
        while stack:
            for nxt in stack[-1]:
                c = color.get(nxt, WHITE)
                if c == GREY:
                    return path[path.index(nxt):] + [nxt]
                if c == WHITE:
                    color[nxt] = GREY
                    path.append(nxt)
                    stack.append(iter(succ.get(nxt, ())))
                    break
            else:
                color[path.pop()] = BLACK
                stack.pop()
    return None


def modified_hasse(
    store: ComplexStore, pairs: Iterable[tuple[Flag, Flag]], dims: tuple[int, int] | None = None
) -> dict[Flag, list[Flag]]:
    """Facet digraph pointing from coface to face, with matched pairs reversed.

    ``dims`` restricts to the layer between two consecutive dimensions.
    """
    matched = set(pairs)
    succ: dict[Flag, list[Flag]] = defaultdict(list)
    for s in store.all_simplices():
        d = len(s) - 1
        if d == 0:
            continue
        if dims is not None and dims != (d - 1, d):
            continue
        for t in store.facets(s):
            if (t, s) in matched:
                succ[t].append(s)
            else:
                succ[s].append(t)
            succ.setdefault(t, [])
    return dict(succ)


@dataclass
class VerifyReport:
    violations: dict[FailureClass, list[str]] = field(default_factory=lambda: defaultdict(list))
    critical_by_dim: list[int] = field(default_factory=list)

    def add(self, cls: FailureClass, msg: str) -> None:
        self.violations[cls].append(msg)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    @property
    def failures(self) -> list[FailureClass]:
        return sorted(c for c, v in self.violations.items() if v)

    def passed(self, cls: FailureClass) -> bool:
        return not self.violations.get(cls)


def verify_matching(
    m: Matching,
    store: ComplexStore,
    part: Partition | None = None,
    check_partition: bool = True,
) -> VerifyReport:
    """Check legality, acyclicity and the partition hypotheses.

    Legality: pairs are facet/coface pairs of stored simplices and every
    simplex is in one pair or critical, never both or twice. Acyclicity:
    the modified Hasse digraph has no directed cycle, per layer and as a
    whole. Partition: classes below any label form a subcomplex, each
    class splits over its maximal flags without shared faces, and every
    pair stays inside one piece.
    """
    report = VerifyReport()
    report.critical_by_dim = m.critical_by_dim(store.top_dim)
    _check_legality(m, store, report)
    if report.passed(FailureClass.LEGALITY):
        _check_acyclic(m, store, report)
    if check_partition:
        if part is None:
            part = partition(store)
        _check_partition(m, store, part, report)
    return report


def _check_legality(m: Matching, store: ComplexStore, report: VerifyReport) -> None:
    seen: Counter[Flag] = Counter()
    for a, b in m.pairs:
        for x in (a, b):
            if x not in store:
                report.add(FailureClass.LEGALITY, f"pair member {x} is not a stored simplex")
        if len(b) != len(a) + 1 or a not in store.facets(b):
            report.add(FailureClass.LEGALITY, f"{a} is not a facet of {b}")
        seen[a] += 1
        seen[b] += 1
    for x, c in seen.items():
        if c > 1:
            report.add(FailureClass.LEGALITY, f"{x} appears in {c} pairs")
    for x in m.critical & set(seen):
        report.add(FailureClass.LEGALITY, f"{x} is both critical and paired")
    covered = m.critical | set(seen)
    for x in store.all_simplices():
        if x not in covered:
            report.add(FailureClass.LEGALITY, f"{x} is neither paired nor critical")
    for x in m.critical - set(store.all_simplices()):
        report.add(FailureClass.LEGALITY, f"critical cell {x} is not a stored simplex")
    if m.by_label:
        counts = Counter(s for ss in m.by_label.values() for s in ss)
        for x in store.all_simplices():
            if counts.get(x, 0) != 1:
                report.add(FailureClass.LEGALITY, f"{x} lies in {counts.get(x, 0)} label classes")


def _check_acyclic(m: Matching, store: ComplexStore, report: VerifyReport) -> None:
    for d in range(1, store.top_dim + 1):
        cycle = find_cycle(modified_hasse(store, m.pairs, (d - 1, d)))
        if cycle:
            report.add(FailureClass.ACYCLICITY, f"cycle between dims {d - 1},{d}: {cycle}")
    cycle = find_cycle(modified_hasse(store, m.pairs))
    if cycle:
        report.add(FailureClass.ACYCLICITY, f"cycle: {cycle}")


def _check_partition(m: Matching, store: ComplexStore, part: Partition, report: VerifyReport) -> None:
    label_of = part.label_of
    for s in store.all_simplices():
        for t in store.facets(s):
            if label_of[t] > label_of[s]:
                report.add(
                    FailureClass.PARTITION,
                    f"face {t} (label {word(label_of[t])}) comes after {s} (label {word(label_of[s])})",
                )
    claims: Counter[Flag] = Counter()
    for mf in store.maximal_flags():
        i = maximal_label(store, mf)
        for s in [*faces_of(mf), mf]:
            if s in store and label_of[s] == i:
                claims[s] += 1
                if part.home[s] != mf:
                    report.add(FailureClass.PARTITION, f"{s} is claimed by {mf} but its home is {part.home[s]}")
    for s in store.all_simplices():
        if claims[s] != 1:
            report.add(FailureClass.PARTITION, f"{s} is a class face of {claims[s]} maximal flags of its label")
    for a, b in m.pairs:
        if a in label_of and b in label_of and (part.home[a], label_of[a]) != (part.home[b], label_of[b]):
            report.add(FailureClass.PARTITION, f"pair {a} -> {b} crosses label pieces")
    # a lone pivot vertex may stay critical only in the minimal class
    for s in m.critical:
        if len(s) != 1 or s not in label_of:
            continue
        i = label_of[s]
        if is_maximal_label(i) or is_minimal_label(i):
            continue
        if part.home[s][pivot_position(i) - 1] == s[0]:
            report.add(FailureClass.PARTITION, f"pivot vertex {s} is critical under label {word(i)}")
