import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from damage_lab.graphs import (FamilySpec, Graph, build_from_edge_list,
                               canonical_form, canonical_graph, components,
                               cut_vertex_profile, disjoint_union,
                               enumerate_nonisomorphic, family,
                               format_edge_list_text, is_threshold, max_degree,
                               parse_edge_list_text, parse_family,
                               parse_graph6, write_graph6)

from .strategies import graphs, graphs_with_permutation


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_build_single_edge():
    g = build_from_edge_list(2, [(0, 1)])
    assert g.edges() == [(0, 1)]


def test_build_path4():
    g = build_from_edge_list(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]


def test_build_edgeless():
    g = build_from_edge_list(3, [])
    assert g.n == 3 and g.edge_count() == 0


def test_build_deduplicates():
    g = build_from_edge_list(2, [(0, 1), (1, 0), (0, 1)])
    assert g.edge_count() == 1


def test_build_rejects_out_of_range():
    with pytest.raises(ValueError, match=r"\(0, 5\)"):
        build_from_edge_list(3, [(0, 5)])


def test_build_rejects_self_loop():
    with pytest.raises(ValueError, match=r"\(1, 1\)"):
        build_from_edge_list(3, [(1, 1)])


def test_graph_needs_a_vertex():
    with pytest.raises(ValueError):
        Graph(0, ())


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def test_graph6_k2():
    assert parse_graph6("A_") == family(FamilySpec.complete(2))
    assert write_graph6(family(FamilySpec.complete(2))) == "A_"


def test_graph6_empty5():
    # decode and re-encode round-trip pins the empty 5-vertex encoding
    g = parse_graph6("D??")
    assert g.n == 5 and g.edge_count() == 0
    assert write_graph6(g) == "D??"
    assert write_graph6(family(FamilySpec.empty(5))) == "D??"


def test_graph6_header_is_stripped():
    assert parse_graph6(">>graph6<<A_") == family(FamilySpec.complete(2))


def test_graph6_rejects_truncation():
    with pytest.raises(ValueError, match="truncated"):
        parse_graph6("D?")


def test_graph6_rejects_bad_byte():
    with pytest.raises(ValueError, match="invalid"):
        parse_graph6("A!")


def test_graph6_rejects_nonzero_padding():
    # K2 payload with a stray low bit set
    with pytest.raises(ValueError, match="padding"):
        parse_graph6("A" + chr(63 + 0b100001))


def test_graph6_long_form_size():
    g = family(FamilySpec.empty(63))
    text = write_graph6(g)
    assert text.startswith(chr(126))
    assert parse_graph6(text).n == 63


@settings(max_examples=150)
@given(graphs(max_vertices=8))
def test_graph6_round_trip(g):
    assert parse_graph6(write_graph6(g)) == g


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------

def test_edge_list_round_trip():
    g = family(FamilySpec.spider(2, 1, 1))
    assert parse_edge_list_text(format_edge_list_text(g)) == g


def test_edge_list_parse():
    assert parse_edge_list_text("3 2\n0 1\n1 2\n") == family(FamilySpec.path(3))


def test_edge_list_rejects_bad_count():
    with pytest.raises(ValueError, match="promises"):
        parse_edge_list_text("3 2\n0 1\n")


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def test_path5():
    g = family(FamilySpec.path(5))
    assert g.edges() == [(0, 1), (1, 2), (2, 3), (3, 4)]


def test_spider_center_degree():
    g = family(FamilySpec.spider(2, 2, 2))
    assert g.n == 7
    assert g.degree(0) == 3


def test_spider_legs_consecutive():
    g = family(FamilySpec.spider(2, 1, 1))
    assert g.edges() == [(0, 1), (0, 3), (0, 4), (1, 2)]


def test_wheel_four_spokes():
    g = family(FamilySpec.wheel(4))
    assert g.n == 5
    assert g.degree(0) == 4
    assert all(g.degree(v) == 3 for v in range(1, 5))


def test_threshold_sequence():
    g = family(FamilySpec.threshold("vdi"))
    assert g.n == 3
    assert g.edges() == [(0, 1)]
    assert is_threshold(g)


def test_star():
    g = family(FamilySpec.star(4))
    assert g.n == 5 and g.degree(0) == 4 and g.edge_count() == 4


@pytest.mark.parametrize("spec", [
    FamilySpec.cycle(2),
    FamilySpec.spider(2, 2),
    FamilySpec.spider(2, 0, 1),
    FamilySpec.threshold("dv"),
    FamilySpec.threshold(""),
    FamilySpec.wheel(2),
    FamilySpec.empty(0),
])
def test_family_rejects_bad_params(spec):
    with pytest.raises(ValueError):
        family(spec)


@pytest.mark.parametrize("n", range(1, 8))
def test_family_edge_counts(n):
    assert family(FamilySpec.path(n)).edge_count() == n - 1
    assert family(FamilySpec.complete(n)).edge_count() == n * (n - 1) // 2
    if n >= 3:
        assert family(FamilySpec.cycle(n)).edge_count() == n


def test_parse_family_strings():
    assert family(parse_family("path:5")) == family(FamilySpec.path(5))
    assert parse_family("spider:1,2,2") == FamilySpec.spider(2, 2, 1)
    u = parse_family("union:path:3+cycle:4")
    assert family(u).n == 7
    with pytest.raises(ValueError):
        parse_family("blob:4")
    with pytest.raises(ValueError):
        parse_family("path")


# ---------------------------------------------------------------------------
# unions, degrees, components, cut vertices
# ---------------------------------------------------------------------------

def test_union_k2_k1():
    g = disjoint_union(family(FamilySpec.complete(2)), family(FamilySpec.empty(1)))
    assert g.n == 3 and g.edge_count() == 1


def test_union_k2_k2():
    g = disjoint_union(family(FamilySpec.complete(2)), family(FamilySpec.complete(2)))
    assert g.n == 4 and g.edge_count() == 2
    assert g.edges() == [(0, 1), (2, 3)]


def test_union_adds_component():
    g = family(FamilySpec.cycle(4))
    u = disjoint_union(g, family(FamilySpec.empty(1)))
    assert len(components(u)) == len(components(g)) + 1


def test_max_degree_examples():
    assert max_degree(family(FamilySpec.path(5))) == 2
    assert max_degree(family(FamilySpec.spider(2, 2, 2))) == 3
    assert max_degree(family(FamilySpec.complete(6))) == 5


def test_components_sizes():
    g = disjoint_union(disjoint_union(family(FamilySpec.complete(2)),
                                      family(FamilySpec.complete(2))),
                       family(FamilySpec.empty(1)))
    assert sorted(len(c) for c in components(g)) == [1, 2, 2]
    assert len(components(family(FamilySpec.cycle(5)))) == 1
    assert len(components(family(FamilySpec.empty(4)))) == 4


def test_cut_profile_star():
    profile = dict((v, (k, nt)) for v, k, nt in
                   cut_vertex_profile(family(FamilySpec.spider(1, 1, 1))))
    assert profile[0] == (3, 0)


def test_cut_profile_spider222():
    profile = dict((v, (k, nt)) for v, k, nt in
                   cut_vertex_profile(family(FamilySpec.spider(2, 2, 2))))
    assert profile[0] == (3, 3)


def test_cut_profile_path5_middle():
    profile = dict((v, (k, nt)) for v, k, nt in
                   cut_vertex_profile(family(FamilySpec.path(5))))
    assert profile[2] == (2, 2)


# ---------------------------------------------------------------------------
# threshold recognition
# ---------------------------------------------------------------------------

def test_threshold_star_true():
    assert is_threshold(family(FamilySpec.star(4)))


def test_threshold_p4_false():
    assert not is_threshold(family(FamilySpec.path(4)))


def test_threshold_c4_false():
    assert not is_threshold(family(FamilySpec.cycle(4)))


def test_threshold_2k2_false():
    g = disjoint_union(family(FamilySpec.complete(2)), family(FamilySpec.complete(2)))
    assert not is_threshold(g)


def test_threshold_census_small():
    # is_threshold asserts internally that both recognizers agree
    count = {}
    for n in range(1, 7):
        count[n] = sum(1 for g in enumerate_nonisomorphic(n) if is_threshold(g))
    # unlabeled threshold graphs on n vertices: 2^(n-1)
    assert count == {1: 1, 2: 2, 3: 4, 4: 8, 5: 16, 6: 32}


def test_threshold_census_n7():
    assert sum(1 for g in enumerate_nonisomorphic(7) if is_threshold(g)) == 64


# ---------------------------------------------------------------------------
# canonical forms and enumeration
# ---------------------------------------------------------------------------

def _brute_force_class_count(n: int) -> int:
    """Independent count of isomorphism classes: pairwise permutation tests."""
    pairs = list(itertools.combinations(range(n), 2))
    seen: list[Graph] = []
    for bits in range(1 << len(pairs)):
        g = build_from_edge_list(
            n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])
        if not any(_isomorphic_by_permutation(g, h) for h in seen):
            seen.append(g)
    return len(seen)


def _isomorphic_by_permutation(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return any(g.relabel(list(p)).adj == h.adj
               for p in itertools.permutations(range(g.n)))


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 4), (4, 11)])
def test_enumeration_counts_vs_brute_force(n, expected):
    assert _brute_force_class_count(n) == expected
    assert sum(1 for _ in enumerate_nonisomorphic(n)) == expected


def test_enumeration_counts_larger():
    assert sum(1 for _ in enumerate_nonisomorphic(5)) == 34
    assert sum(1 for _ in enumerate_nonisomorphic(6)) == 156


def test_enumeration_rejects_large_n():
    with pytest.raises(ValueError):
        list(enumerate_nonisomorphic(8))


def test_enumeration_pairwise_distinct():
    for n in range(2, 6):
        reps = list(enumerate_nonisomorphic(n))
        for g, h in itertools.combinations(reps, 2):
            assert not _isomorphic_by_permutation(g, h)


@settings(max_examples=100)
@given(graphs_with_permutation(max_vertices=6))
def test_canonical_form_is_relabeling_invariant(case):
    g, perm = case
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=60)
@given(graphs_with_permutation(max_vertices=5))
def test_canonical_graph_is_isomorphic_to_input(case):
    g, _ = case
    assert _isomorphic_by_permutation(canonical_graph(g), g)


@settings(max_examples=100)
@given(graphs(max_vertices=7))
def test_relabel_identity(g):
    assert g.relabel(list(range(g.n))) == g
