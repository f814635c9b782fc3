"""Numbered acceptance criteria; the session summary prints one PASS/FAIL line each."""

import time

import networkx as nx
import pytest

from posetcm import (
    GF2,
    QQ,
    SimplicialComplex,
    cm_failure,
    edgewise_cm_connectivity,
    generate,
    instances,
    is_cm,
    is_edgewise_k_cm,
    is_edgewise_strongly_shellable,
    is_k_cm,
    is_lattice,
    is_shellable,
    check_shelling_order,
    lattice_classes,
    order_complex,
    proper_part,
    reduced_betti,
    remove_interval_edges,
    replay_certificate,
    search_counterexamples,
)
from posetcm.catalog import FIG2_APEX, boolean, chain, cube, octahedron, partition, polygon, stacked_antichains, tetrahedron
from posetcm.exceptions import NotPure
from posetcm.sampling import has_three_element_interval, random_graded_poset, random_poset, rng_for

from conftest import BETTI_LOG

# pinned budgets
STRONG_ECM_RUNTIME_S = 300
SEARCH_RUNTIME_S = 600
N_RANDOM = 200
N_ROUTE = 500


def _minus(P, a, b):
    return remove_interval_edges(P, P.index(a), P.index(b))


def _contrastar_meet(P, cx, a, b):
    """Intersection of the contrastars of all 2-chains x < y inside [a, b]."""
    out = cx
    for x, y in P.comparable_pairs():
        if P.leq(a, x) and P.leq(y, b):
            out = out.contrastar((1 << x) | (1 << y))
    return out


# -- 1 ---------------------------------------------------------------------------

STRONG_ECM_LATTICES = [
    ("B_3", lambda: boolean(3)),
    ("B_4", lambda: boolean(4)),
    ("square", lambda: polygon(4)),
    ("tetrahedron", tetrahedron),
    ("octahedron", octahedron),
    ("cube", cube),
]


@pytest.mark.acceptance(1, "edgewise strong CM for B_3, B_4, square, tetrahedron, octahedron, cube over Q and GF(2)")
def test_criterion_01_strong_ecm_desk_scale():
    start = time.perf_counter()
    failures = []
    for name, make in STRONG_ECM_LATTICES:
        P = proper_part(make())
        for field in (QQ, GF2):
            verdict = is_edgewise_k_cm(P, "strong", field)
            if not verdict.holds:
                failures.append((name, str(field), verdict.witness))
    elapsed = time.perf_counter() - start
    assert failures == []
    assert elapsed < STRONG_ECM_RUNTIME_S


# -- 2 ---------------------------------------------------------------------------


@pytest.mark.acceptance(2, "connectivity table: chain -> 1, fig1 -> 2, proper B_3 -> 2, proper B_4 -> 3")
def test_criterion_02_connectivity_table():
    for n in range(1, 7):
        assert edgewise_cm_connectivity(chain(n)) == 1, n
    assert edgewise_cm_connectivity(generate("fig1")) == 2
    assert edgewise_cm_connectivity(proper_part(boolean(3))) == 2
    assert edgewise_cm_connectivity(proper_part(boolean(4))) == 3


# -- 3 ---------------------------------------------------------------------------


@pytest.mark.acceptance(3, "glued-tetrahedra lattice: 2-CM proper part, disconnected rank-1 upper part, exact witness")
def test_criterion_03_glued_tetrahedra():
    L = generate("sec5_lattice")
    assert is_lattice(L)
    P = proper_part(L)
    assert is_k_cm(P, 2).holds
    Q = _minus(P, "{b}", "{b,c,d}")
    b = Q.index("{b}")
    above = order_complex(Q, Q.strict_up(b))
    assert above.dim == 1
    assert reduced_betti(above)[0] >= 1  # disconnected
    verdict = is_edgewise_k_cm(P, "strong")
    assert not verdict.holds
    assert verdict.witness["interval"] == ["{b}", "{b,c,d}"]


# -- 4 ---------------------------------------------------------------------------


@pytest.mark.acceptance(4, "stacked_antichains(2,3): 3-CM, not edgewise 3-CM, rank-2 witness touching an extremal element")
def test_criterion_04_stacked_antichains():
    P = stacked_antichains(2, 3)
    assert is_k_cm(P, 3).holds
    verdict = is_edgewise_k_cm(P, 3)
    assert not verdict.holds
    w = verdict.witness
    # P has rank 1, so no rank-2 interval exists; see the ledger
    assert w["kind"] == "interval", w
    lo, hi = (P.index(x) for x in w["interval"])
    assert P.interval_rank(lo, hi) == 2
    extremal = P.mask_of(P.minimal()) | P.mask_of(P.maximal())
    assert (P.up[lo] & P.down[hi]) & extremal


# -- 5 ---------------------------------------------------------------------------


@pytest.mark.acceptance(5, "remark36_Q: edgewise 2-CM, every Q minus an edge shellable of rank 2, not 2-CM at the apex")
def test_criterion_05_remark36():
    Q = generate("remark36_Q")
    assert is_edgewise_k_cm(Q, 2).holds
    for a, b in Q.covers:
        R = remove_interval_edges(Q, a, b)
        assert R.grading() == (True, 2)
        ok, order = is_shellable(order_complex(R))
        assert ok and check_shelling_order(order)
    verdict = is_k_cm(Q, 2)
    assert not verdict.holds
    assert verdict.witness["A"] == [FIG2_APEX]


# -- 6 ---------------------------------------------------------------------------


def _posets_without_three_element_intervals(count, seed):
    out, stream = [], 0
    while len(out) < count:
        P = random_poset(rng_for(seed, stream), 9)
        stream += 1
        if not has_three_element_interval(P):
            out.append(P)
    return out


@pytest.mark.acceptance(6, "order complex of P minus an edge equals the contrastar of that edge (200 random posets)")
def test_criterion_06_edge_contrastar():
    failures = 0
    for P in _posets_without_three_element_intervals(N_RANDOM, seed=6):
        cx = order_complex(P)
        for a, b in P.covers:
            lhs = order_complex(remove_interval_edges(P, a, b))
            if lhs != cx.contrastar((1 << a) | (1 << b)):
                failures += 1
    assert failures == 0


# -- 7 ---------------------------------------------------------------------------


@pytest.mark.acceptance(7, "order complex of P minus [a,b] lies in the meet of contrastars (200 random posets)")
def test_criterion_07_inclusion():
    failures = 0
    for stream in range(N_RANDOM):
        P = random_poset(rng_for(7, stream), 9)
        cx = order_complex(P)
        for a, b in P.comparable_pairs(strict=False):
            lhs = order_complex(remove_interval_edges(P, a, b))
            rhs = _contrastar_meet(P, cx, a, b)
            if not all(rhs.contains(f) for f in lhs.facets):
                failures += 1
    assert failures == 0


# -- 8 ---------------------------------------------------------------------------


@pytest.mark.acceptance(8, "relatively atomic lattices B_4, cube, partition(4): meet-of-contrastars equality and rank kept")
def test_criterion_08_relatively_atomic_equality():
    for L in (boolean(4), cube(), partition(4)):
        flags = lattice_classes(L)
        assert flags["relatively_atomic"]
        P = proper_part(L)
        graded, rank = P.grading()
        assert graded
        cx = order_complex(P)
        for a, b in P.comparable_pairs(strict=False):
            Q = remove_interval_edges(P, a, b)
            assert order_complex(Q) == _contrastar_meet(P, cx, a, b), (P.labels[a], P.labels[b])
            assert Q.grading() == (True, rank)


# -- 9 ---------------------------------------------------------------------------


@pytest.mark.acceptance(9, "Gorenstein* lattices B_4 and octahedron: acyclic interval removals and deletions")
def test_criterion_09_acyclicity():
    for L in (boolean(4), octahedron()):
        P = proper_part(L)
        for a, b in P.comparable_pairs():
            cx = order_complex(remove_interval_edges(P, a, b))
            assert reduced_betti(cx).is_zero(), (P.labels[a], P.labels[b])
        for a in range(len(P)):
            assert reduced_betti(order_complex(P, P.full & ~P.up[a])).is_zero()
            assert reduced_betti(order_complex(P, P.full & ~P.down[a])).is_zero()


# -- 10 --------------------------------------------------------------------------


@pytest.mark.acceptance(10, "link and open-interval CM routes agree on the catalog and 500 random graded posets")
def test_criterion_10_route_equivalence():
    posets = [P for _, P in instances()]
    for stream in range(N_ROUTE):
        P, _ = random_graded_poset(rng_for(10, stream), 8)
        posets.append(P)
    disagreements = 0
    for P in posets:
        for field in (QQ, GF2):
            link = is_cm(P, field, "link").holds
            interval = is_cm(P, field, "interval").holds
            disagreements += link != interval
            cm_failure(P, field, "both")  # raises on mismatch
    assert disagreements == 0


# -- 11 --------------------------------------------------------------------------


def test_criterion_11a_known_spheres():
    s0 = SimplicialComplex.from_faces([["a"], ["b"]])
    assert reduced_betti(s0).as_dict() == {-1: 0, 0: 1}
    hexagon = SimplicialComplex.from_faces([[str(i), str((i + 1) % 6)] for i in range(6)])
    assert reduced_betti(hexagon).as_dict() == {-1: 0, 0: 0, 1: 1}
    boundary = SimplicialComplex.from_faces([f for f in ("123", "124", "134", "234")])
    assert reduced_betti(boundary).as_dict() == {-1: 0, 0: 0, 1: 0, 2: 1}
    cone = SimplicialComplex.from_faces([["x", str(i), str((i + 1) % 6)] for i in range(6)])
    assert reduced_betti(cone).is_zero()


def _reduced_euler_from_faces(facets):
    cx = SimplicialComplex([str(i) for i in range(64)], facets)
    return sum((-1) ** (d - 1) * f for d, f in enumerate(cx.f_vector()))


@pytest.mark.run_last
@pytest.mark.acceptance(11, "Betti oracles on S^0, hexagon, tetrahedron boundary, cone; Euler-Poincare on every complex seen")
def test_criterion_11_homology_oracle():
    test_criterion_11a_known_spheres()
    assert len(BETTI_LOG) > 1000
    bad = []
    for (facets, p), values in BETTI_LOG.items():
        betti_chi = sum((-1) ** (d - 1) * b for d, b in enumerate(values))
        if betti_chi != _reduced_euler_from_faces(facets):
            bad.append((sorted(facets), p))
    assert bad == []


# -- 12 --------------------------------------------------------------------------


@pytest.mark.acceptance(12, "shelling certificates re-validate, shellable implies CM, B_3 and B_4 edgewise strongly shellable")
def test_criterion_12_shelling():
    checked = 0
    for name, P in instances():
        cx = order_complex(P)
        try:
            ok, order = is_shellable(cx)
        except NotPure:
            continue
        if ok:
            assert check_shelling_order(order), name
            assert {frozenset(f) for f in order} == cx.facet_sets(), name
            assert is_cm(P).holds, name
            checked += 1
    assert checked >= 20
    for n in (3, 4):
        assert is_edgewise_strongly_shellable(proper_part(boolean(n))).holds


# -- 13 --------------------------------------------------------------------------


@pytest.mark.acceptance(13, "rank-1 posets: CM, 2-CM, edgewise 2-CM match connected, 2-vertex-, 2-edge-connected")
def test_criterion_13_rank_one_graphs():
    mismatches = 0
    for stream in range(N_RANDOM):
        P, _ = random_graded_poset(rng_for(13, stream), 8, rank=1, connected=False)
        G = nx.Graph()
        G.add_nodes_from(range(len(P)))
        G.add_edges_from(P.covers)
        connected = nx.is_connected(G)
        expected = (
            connected,
            connected and nx.node_connectivity(G) >= 2,
            connected and nx.is_k_edge_connected(G, 2),
        )
        got = (is_cm(P).holds, is_k_cm(P, 2).holds, is_edgewise_k_cm(P, 2).holds)
        mismatches += expected != got
    assert mismatches == 0


# -- 14 --------------------------------------------------------------------------


@pytest.mark.acceptance(14, "nowhere-zero Mobius search, seed 42, 100 trials, at most 8 elements: replayable manifest")
def test_criterion_14_search_harness(tmp_path):
    start = time.perf_counter()
    outcome = search_counterexamples("mobius_nowhere_zero", trials=100, max_elements=8, seed=42, out_dir=tmp_path)
    assert time.perf_counter() - start < SEARCH_RUNTIME_S
    manifest = (tmp_path / "manifest.json").read_text()
    assert len(outcome.manifest["draws"]) == 100
    # a second run reproduces the manifest byte for byte
    again = tmp_path / "again"
    search_counterexamples("mobius_nowhere_zero", trials=100, max_elements=8, seed=42, out_dir=again)
    assert (again / "manifest.json").read_text() == manifest
    for name in outcome.manifest["certificates"]:
        assert replay_certificate(tmp_path / name)
