import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from flagmorse.complex import build_complex, faces_of
from flagmorse.counting import is_maximal_label, stats
from flagmorse.matrix import unit
from flagmorse.morse import (
    FailureClass,
    Matching,
    UndefinedVertexError,
    build_matching,
    find_cycle,
    label_of_flag,
    maximal_label,
    modified_hasse,
    partition,
    truncate_matching,
    v_f,
    verify_matching,
)

GRID = [(2, 2), (2, 5), (3, 2), (3, 3), (4, 2)]


def vid(store, *gens):
    n = store.n
    vec = lambda g: tuple(sum(unit(n, i)[r] for i in g) % store.q for r in range(n))  # noqa: E731
    return store.vertex_id([vec(g) for g in gens])


# corner number -> generators (as index sets) in the paper's Heawood figure
CORNERS = {
    1: [(1,), (2,)], 2: [(1,)], 3: [(1,), (2, 3)], 4: [(2, 3)], 5: [(2,), (3,)],
    6: [(3,)], 7: [(1,), (3,)], 8: [(1, 3)], 9: [(1, 2), (1, 3)], 10: [(1, 2)],
    11: [(3,), (1, 2)], 12: [(1, 2, 3)], 13: [(2,), (1, 3)], 14: [(2,)],
}
CORNER_LABEL = {
    1: "123", 2: "123", 3: "132", 7: "132", 10: "213", 14: "213",
    5: "231", 9: "231", 11: "231", 13: "231", 4: "312", 6: "312", 8: "312", 12: "312",
}
ARROWS = [(12, 3), (4, 3), (6, 7), (8, 7), (5, 14), (13, 14), (9, 10), (11, 10),
          (10, 1), (14, 1), (7, 2), (3, 2), (1, 2)]
CRITICAL_EDGES = [(13, 8), (4, 9), (6, 11), (12, 13), (11, 12), (4, 5), (5, 6), (8, 9)]


def test_heawood_figure(complexes):
    store, part, matching = complexes(3, 2)
    c = {k: vid(store, *g) for k, g in CORNERS.items()}
    assert len(set(c.values())) == 14
    for k, lab in CORNER_LABEL.items():
        assert "".join(map(str, part.label_of[(c[k],)])) == lab
    edge = lambda a, b: tuple(sorted((c[a], c[b])))  # noqa: E731
    assert {(a, b) for a, b in matching.pairs} == {((c[a],), edge(a, b)) for a, b in ARROWS}
    assert matching.critical == {(c[2],)} | {edge(a, b) for a, b in CRITICAL_EDGES}
    for a, b in CRITICAL_EDGES:
        assert part.label_of[edge(a, b)] == (3, 2, 1)


def test_label_examples(complexes):
    store, _, _ = complexes(3, 2)
    flag = (vid(store, (1, 3)), vid(store, (1,), (3,)))
    assert label_of_flag(store, flag)[0] == (3, 1, 2)
    label, m = label_of_flag(store, (vid(store, (1,)),))
    assert label == (1, 2, 3) and m.mat == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_face_labels_bounded_by_maximal(complexes, n, q):
    store, part, _ = complexes(n, q)
    for mf in store.maximal_flags():
        top = part.label_of[mf]
        assert top == maximal_label(store, mf)
        for f in faces_of(mf):
            assert part.label_of[f] <= top


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_label_is_first_coface_label(complexes, n, q):
    store, part, _ = complexes(n, q)
    ref = oracles.coface_labels(n, q)
    for s in store.all_simplices():
        labels = ref[oracles.as_sets(store, s)]
        assert part.label_of[s] == labels[0]
        assert labels.count(labels[0]) == 1
        assert oracles.as_sets(store, part.home[s]) in {
            mf for mf, (_, lab) in oracles.minimal_matrices(n, q).items() if lab == labels[0]
        }


def test_maximal_class(complexes):
    store, part, _ = complexes(3, 2)
    by_label = part.by_label
    assert len(by_label[(3, 2, 1)]) == 8
    for n, q in [(3, 2), (3, 3), (4, 2)]:
        store, part, _ = complexes(n, q)
        top = tuple(range(n, 0, -1))
        expected = [mf for mf in store.maximal_flags() if maximal_label(store, mf) == top]
        assert part.by_label[top] == sorted(expected)


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_removal_criterion(complexes, n, q):
    store, part, _ = complexes(n, q)
    for mf in store.maximal_flags():
        i = part.label_of[mf]
        for r in range(1, n - 1):
            for drop in itertools.combinations(range(n - 1), r):
                face = tuple(v for k, v in enumerate(mf) if k not in drop)
                in_class = part.label_of[face] == i and part.home[face] == mf
                assert in_class == all(i[t] < i[t + 1] for t in drop)


def test_v_f_examples(complexes):
    store, part, _ = complexes(3, 2)
    for mf in store.maximal_flags():
        i = part.label_of[mf]
        if i == (3, 1, 2):
            assert v_f(store, mf).id == mf[1]
        if i == (1, 2, 3):
            assert v_f(store, mf).id == mf[0]
        if is_maximal_label(i):
            with pytest.raises(UndefinedVertexError):
                v_f(store, mf)


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_pivot_vertex_lies_in_earlier_class(complexes, n, q):
    store, part, _ = complexes(n, q)
    for mf in store.maximal_flags():
        i = part.label_of[mf]
        if stats(i).p in (0, n - 1):
            continue
        assert part.label_of[(v_f(store, mf, i).id,)] < i


@pytest.mark.parametrize("n,q", GRID + [(4, 3)])
def test_full_census(complexes, n, q):
    store, part, m = complexes(n, q)
    crit = m.critical_by_dim(store.top_dim)
    top = q ** (n * (n - 1) // 2)
    if n == 2:
        assert crit == [top + 1]
    else:
        assert crit == [1] + [0] * (n - 3) + [top]


def test_zero_skeleton_all_critical(complexes):
    store, part, m = complexes(3, 2, 0)
    assert m.pairs == [] and len(m.critical) == 14


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (4, 3)])
def test_truncation_equals_filtering(complexes, n, q):
    full_store, _, full = complexes(n, q)
    for k in range(n - 2):
        store, part, m = complexes(n, q, k)
        t = truncate_matching(full, k)
        assert sorted(t.pairs) == sorted(m.pairs)
        assert t.critical == m.critical
        assert verify_matching(m, store, part).ok


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_pairs_stay_in_one_piece(complexes, n, q):
    store, part, m = complexes(n, q)
    for a, b in m.pairs:
        home = part.home[b]
        v = v_f(store, home, part.label_of[b]).id
        assert v in b and a == tuple(x for x in b if x != v)
        assert part.home[a] == home and part.label_of[a] == part.label_of[b]


@pytest.mark.parametrize("n,q", GRID)
def test_verify_passes(complexes, n, q):
    store, part, m = complexes(n, q)
    report = verify_matching(m, store, part)
    assert report.ok, report.violations


# -- mutations ---------------------------------------------------------------


def _copy(m):
    return Matching(list(m.pairs), set(m.critical), dict(m.by_label))


def test_mutation_non_facet_partner(complexes):
    store, part, m = complexes(3, 2)
    bad = _copy(m)
    a, b = bad.pairs[0]
    wrong = next(e for e in store.simplices[1] if a[0] not in e and e in m.critical)
    bad.pairs[0] = (a, wrong)
    bad.critical = bad.critical - {wrong} | {b}
    report = verify_matching(bad, store, part)
    assert FailureClass.LEGALITY in report.failures


def test_mutation_duplicate_pair(complexes):
    store, part, m = complexes(3, 2)
    bad = _copy(m)
    a, b = bad.pairs[0]
    other = next(e for e in store.cofacets(a) if e != b)
    bad.pairs.append((a, other))
    bad.critical.discard(other)
    report = verify_matching(bad, store, part)
    assert FailureClass.LEGALITY in report.failures


def _rematched(store, m):
    """Legal variants: move one pair onto a critical coface of its face."""
    for idx, (a, b) in enumerate(m.pairs):
        for e in store.cofacets(a):
            if e in m.critical:
                bad = Matching(list(m.pairs), set(m.critical), {})
                bad.pairs[idx] = (a, e)
                bad.critical = bad.critical - {e} | {b}
                yield bad


def _networkx_acyclic(store, pairs):
    g = nx.DiGraph()
    for u, vs in modified_hasse(store, pairs).items():
        g.add_edges_from((u, v) for v in vs)
    return nx.is_directed_acyclic_graph(g)


@pytest.mark.parametrize("n,q,k", [(3, 2, None), (4, 2, 1), (4, 2, None)])
def test_rematched_variants_agree_with_networkx(complexes, n, q, k):
    store, part, m = complexes(n, q, k)
    for bad in _rematched(store, m):
        report = verify_matching(bad, store, part, check_partition=False)
        assert report.passed(FailureClass.LEGALITY)
        assert report.passed(FailureClass.ACYCLICITY) == _networkx_acyclic(store, bad.pairs)


def test_mutation_cycle_is_reported(complexes):
    store, part, m = complexes(3, 2)
    g = nx.Graph(store.simplices[1])
    ring = [u for u, _ in nx.find_cycle(g)]
    on_ring = {(x,) for x in ring}
    ring_edges = {tuple(sorted((x, y))) for x, y in zip(ring, ring[1:] + ring[:1])}
    pairs = [(a, b) for a, b in m.pairs if a not in on_ring and b not in ring_edges]
    pairs += [((x,), tuple(sorted((x, y)))) for x, y in zip(ring, ring[1:] + ring[:1])]
    paired = {x for p in pairs for x in p}
    bad = Matching(pairs, {s for s in store.all_simplices() if s not in paired}, {})
    assert not _networkx_acyclic(store, bad.pairs)
    report = verify_matching(bad, store, part, check_partition=False)
    assert report.failures == [FailureClass.ACYCLICITY]


def test_mutation_label_tampering(complexes):
    store, part, m = complexes(3, 2)
    label_of = dict(part.label_of)
    s = next(s for s in store.simplices[0] if label_of[s] == (1, 2, 3))
    label_of[s] = (3, 2, 1)
    report = verify_matching(m, store, type(part)(label_of, part.home))
    assert FailureClass.PARTITION in report.failures


def test_mutation_uncovered_simplex(complexes):
    store, part, m = complexes(3, 2)
    bad = _copy(m)
    bad.critical.pop()
    assert FailureClass.LEGALITY in verify_matching(bad, store, part).failures


@settings(max_examples=150)
@given(st.integers(1, 12), st.floats(0, 0.5), st.integers(0, 10**6))
def test_find_cycle_agrees_with_networkx(nodes, density, seed):
    rng = random.Random(seed)
    succ = {(u,): [(v,) for v in range(nodes) if rng.random() < density] for u in range(nodes)}
    g = nx.DiGraph()
    g.add_nodes_from(succ)
    g.add_edges_from((u, v) for u, vs in succ.items() for v in vs)
    cycle = find_cycle(succ)
    assert (cycle is None) == nx.is_directed_acyclic_graph(g)
    if cycle:
        assert cycle[0] == cycle[-1]
        assert all(b in succ[a] for a, b in zip(cycle, cycle[1:]))


def test_five_dimensional_skeleta(complexes):
    from flagmorse.counting import sphere_count_skeleton
    from flagmorse.homology import betti

    store, part, full = complexes(5, 2)
    assert verify_matching(full, store, part, check_partition=False).ok
    assert full.critical_by_dim(3) == [1, 0, 0, 1024]
    for k, spheres in [(0, 371), (1, 4279), (2, 8741)]:
        m = truncate_matching(full, k)
        crit = m.critical_by_dim(k)
        census = crit[0] - 1 if k == 0 else crit[k]
        assert census == spheres == sphere_count_skeleton(5, 2, k).count
        b = betti(build_complex(5, 2, k), 3)
        assert b == ([spheres + 1] if k == 0 else [1] + [0] * (k - 1) + [spheres])
