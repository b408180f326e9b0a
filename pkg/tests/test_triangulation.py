from itertools import permutations

import pytest

from conftest import cover_of
from tbcomplexity.errors import CocycleError, StructuralError
from tbcomplexity.triangulation import (
    IdealTriangulation,
    TransferCocycle,
    build_figure_eight,
    cyclic_cover,
    edge_classes,
    edge_partition_union_find,
    find_isomorphism,
    is_isomorphic,
    parse_gluing_pattern,
    spine_stats,
    transfer_cocycle,
)
from tbcomplexity.triangulation.cocycle import constraint_matrix
from tbcomplexity.triangulation.core import perm_inverse, perm_sign


def test_figure_eight_transcription(figure_eight):
    # ABC<->EHF: face opposite D to face opposite G via A->E, B->H, C->F, D->G
    assert figure_eight.gluings[0][3] == (1, 2, (0, 3, 1, 2))
    assert figure_eight.tet_count == 2


def test_figure_eight_edges_and_spine(figure_eight):
    classes = edge_classes(figure_eight)
    assert [e.valence for e in classes] == [6, 6]
    stats = spine_stats(figure_eight)
    assert (stats.vertices, stats.edges, stats.cells) == (2, 4, 2)
    assert stats.cell_boundary_lengths == (6, 6)
    assert stats.euler == 0


def test_sibling_edges_and_spine(sibling):
    assert sorted(e.valence for e in edge_classes(sibling)) == [6, 6]
    stats = spine_stats(sibling)
    assert (stats.vertices, stats.edges, stats.cells, stats.euler) == (2, 4, 2, 0)


def test_both_orientable(figure_eight, sibling):
    assert figure_eight.is_orientable and sibling.is_orientable


def test_sibling_not_isomorphic_to_figure_eight(figure_eight, sibling):
    assert not is_isomorphic(figure_eight, sibling)
    assert not is_isomorphic(sibling, figure_eight)


def test_isomorphism_finds_relabelings(figure_eight):
    assert is_isomorphic(figure_eight, figure_eight)
    # swap tetrahedra and relabel vertices by an odd permutation
    sigma = {0: 1, 1: 0}
    pi = {0: (1, 0, 2, 3), 1: (3, 2, 0, 1)}
    pairs = []
    for (t, f), (t2, f2), p in figure_eight.face_pairs():
        new_p = tuple(pi[t2][p[perm_inverse(pi[t])[i]]] for i in range(4))
        pairs.append((sigma[t], pi[t][f], sigma[t2], pi[t2][f2], new_p))
    relabeled = IdealTriangulation.from_face_pairs(2, pairs)
    assert relabeled != figure_eight
    iso = find_isomorphism(figure_eight, relabeled)
    assert iso is not None
    for t in range(2):
        for f in range(4):
            t2, f2, p = figure_eight.gluings[t][f]
            (u, pu), (u2, pu2) = iso[t], iso[t2]
            want = tuple(pu2[p[perm_inverse(pu)[i]]] for i in range(4))
            assert relabeled.gluings[u][pu[f]] == (u2, pu2[f2], want)


def boundary_orientation_consistent(f, f2, perm):
    """Oracle: does the gluing reverse the induced boundary orientations
    of two positively oriented tetrahedra?"""
    face = [v for v in range(4) if v != f]
    face2 = [v for v in range(4) if v != f2]
    image = [perm[v] for v in face]
    order = [face2.index(v) for v in image]
    sign_src = (-1) ** f
    sign_dst = (-1) ** f2 * perm_sign(order)
    return sign_src * sign_dst == -1


def test_orientation_parity_rule_matches_boundary_oracle():
    for f in range(4):
        for perm in permutations(range(4)):
            f2 = perm[f]
            assert boundary_orientation_consistent(f, f2, perm) == (perm_sign(perm) == -1)


def test_involution_and_totality_on_covers(base):
    for n in (1, 2, 3, 7, 12):
        tri = cover_of(base, n)
        for t in range(tri.tet_count):
            for f in range(4):
                t2, f2, p = tri.gluings[t][f]
                assert tri.gluings[t2][f2] == (t, f, perm_inverse(p))
        assert len(tri.face_pairs()) == 2 * tri.tet_count
        assert sum(e.valence for e in tri.edge_classes) == 6 * tri.tet_count


def test_walk_and_union_find_agree(base):
    for n in range(1, 9):
        tri = cover_of(base, n)
        walked = sorted((frozenset(e.representatives) for e in tri.edge_classes), key=min)
        assert walked == edge_partition_union_find(tri)


def test_walk_is_cyclic_rotation(figure_eight):
    for edge in figure_eight.edge_classes:
        reps = edge.representatives
        for i, (t, f) in enumerate(edge.crossings):
            t2, _, p = figure_eight.gluings[t][f]
            nxt_t, nxt_edge = reps[(i + 1) % len(reps)]
            a, b = reps[i][1]
            assert nxt_t == t2 and nxt_edge == tuple(sorted((p[a], p[b])))


def test_transfer_cocycle(base):
    w = transfer_cocycle(base)
    assert w.is_cocycle(base)
    assert w.edge_sums(base) == [0, 0]
    assert w.period_gcd(base) == 1


def test_transfer_cocycle_is_deterministic(figure_eight):
    assert transfer_cocycle(figure_eight) == transfer_cocycle(build_figure_eight())


def test_constraint_matrix_corank_is_first_betti(base):
    # H^1 has rank 1 for both manifolds: corank of constraints minus coboundaries
    from tbcomplexity.exactnum import smith_normal_form
    m, cols = constraint_matrix(base)
    assert len(cols) == 4
    assert len(cols) - smith_normal_form(m).rank - (base.tet_count - 1) == 1


def test_coboundary_is_trivial(figure_eight):
    # potential 1 on tetrahedron 1: crossing into tet 1 adds +1, out of it -1
    weights = {}
    for (t, f), (t2, f2), _ in figure_eight.face_pairs():
        weights[(t, f)] = (t2 == 1) - (t == 1)
    w = TransferCocycle.from_mapping(weights)
    assert w.is_cocycle(figure_eight)
    assert all(p == 0 for p in w.periods(figure_eight))
    with pytest.raises(CocycleError):
        cyclic_cover(figure_eight, w, 3)


def test_cover_rejects_non_cocycle(figure_eight):
    w = TransferCocycle.from_mapping({(0, 0): 1})
    assert not w.is_cocycle(figure_eight)
    with pytest.raises(CocycleError):
        cyclic_cover(figure_eight, w, 2)


def test_trivial_cover_is_isomorphic(base):
    assert is_isomorphic(cover_of(base, 1), base)


def test_figure_eight_five_fold_cover(figure_eight):
    tri = cover_of(figure_eight, 5)
    assert tri.tet_count == 10
    assert [e.valence for e in tri.edge_classes] == [6] * 10
    stats = spine_stats(tri)
    assert (stats.vertices, stats.edges, stats.cells, stats.euler) == (10, 20, 10, 0)


def test_three_fold_cover_edges(figure_eight):
    tri = cover_of(figure_eight, 3)
    assert len(edge_partition_union_find(tri)) == 6


def test_cover_orientability_and_euler(base):
    for n in range(1, 51):
        tri = cover_of(base, n)
        assert tri.is_orientable
        assert tri.is_connected
        stats = spine_stats(tri)
        assert (stats.vertices, stats.edges, stats.cells, stats.euler) == (2 * n, 4 * n, 2 * n, 0)


@pytest.mark.parametrize("a, b", [(2, 2), (2, 3), (3, 2)])
def test_cover_tower(figure_eight, a, b):
    inner = cover_of(figure_eight, b)
    tower = cover_of(inner, a)
    direct = cover_of(figure_eight, a * b)
    assert is_isomorphic(tower, direct)


def test_covers_of_different_degree_not_isomorphic(figure_eight):
    assert not is_isomorphic(cover_of(figure_eight, 2), cover_of(figure_eight, 3))


def test_pattern_parser_errors():
    with pytest.raises(StructuralError):
        parse_gluing_pattern("ABC<->EHF")  # remaining faces unglued
    with pytest.raises(StructuralError):
        parse_gluing_pattern("ABE<->EHF, BAD<->GEF, CDA<->GFH, DCB<->EGH")
    with pytest.raises(StructuralError):
        parse_gluing_pattern("ABC<->EHF, ABC<->GEF, CDA<->GFH, DCB<->EGH")


def test_self_glued_face_rejected():
    with pytest.raises(StructuralError):
        IdealTriangulation.from_gluings([[(0, 0, (0, 2, 1, 3)), (0, 2, (0, 2, 1, 3)),
                                          (0, 1, (0, 2, 1, 3)), (0, 3, (1, 0, 2, 3))]])


def test_unglued_single_tetrahedron_rejected():
    with pytest.raises(StructuralError):
        IdealTriangulation.from_face_pairs(1, [])


def test_non_involutive_gluing_rejected():
    good = build_figure_eight().gluings
    bad = [list(faces) for faces in good]
    # the reverse of face (0, 3) should carry the inverse of (0, 3, 1, 2)
    bad[1][2] = (0, 3, (1, 0, 3, 2))
    with pytest.raises(StructuralError):
        IdealTriangulation.from_gluings(bad)
