"""Sphere construction: facet formula, polarizations, ideal route, specialization."""

import pytest

from murai.errors import NotProperError
from murai.multicomplex import CompositionVector, Multicomplex, enumerate_proper
from murai.simplicial import (SimplicialComplex, Vertex, boundary_simplex,
                              cone, cycle_complex, join, void_complex)
from murai.spheres import (classical_bier, complex_of_ideal, deleted_join_bier,
                           facet_set, polarize, polarize_star, sr_ideal,
                           vertex_universe)


def V(axis, level):
    return Vertex(axis, level)


class TestFacetFormula:
    def test_m1_join_of_two_spheres(self):
        # c=(3), M=<x>: boundary of {0,1} joined with boundary of {2,3}
        c = CompositionVector((3,))
        K = facet_set(Multicomplex.parse(c, "1"))
        expected = join(boundary_simplex((V(1, 0), V(1, 1))),
                        boundary_simplex((V(1, 2), V(1, 3))))
        assert set(K.facet_masks) == {K.vertex_mask(f) for f in expected.facets()}

    def test_m1_boundary_simplex_with_ghost(self):
        c = CompositionVector((3,))
        K = facet_set(Multicomplex.parse(c, "0"))
        expected = boundary_simplex((V(1, 1), V(1, 2), V(1, 3)))
        assert set(K.facet_masks) == {K.vertex_mask(f) for f in expected.facets()}
        assert K.ghost_vertices == (V(1, 0),)

    def test_two_sphere_with_seven_vertices(self):
        # c=(2,1,1), M=<x^2, y, z>: stacked 2-sphere on 7 real vertices
        c = CompositionVector((2, 1, 1))
        K = facet_set(Multicomplex.parse(c, "2 0 0; 0 1 0; 0 0 1"))
        assert K.dimension == 2
        assert len(K.real_vertices) == 7
        assert K.sphere_check() == (True, "complete")

    def test_full_multicomplex_rejected(self):
        with pytest.raises(NotProperError):
            facet_set(Multicomplex.full(CompositionVector((2, 1))))

    def test_purity_and_vertex_window(self):
        for entries in [(3,), (2, 1), (2, 2), (1, 1, 1), (2, 1, 1)]:
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                K = facet_set(M)
                sizes = {len(f) for f in K.facets()}
                assert sizes == {c.total - 1}
                assert c.total <= len(K.real_vertices) <= c.total + c.m

    def test_sphere_certificates_on_census(self):
        for entries in [(3,), (4,), (2, 1), (2, 2), (3, 1), (2, 1, 1)]:
            c = CompositionVector(entries)
            expected_chi = 1 + (-1) ** (c.total - 2)
            for M in enumerate_proper(c):
                K = facet_set(M)
                assert K.is_pseudomanifold()
                assert K.euler_characteristic() == expected_chi
                if K.dimension <= 2:
                    assert K.sphere_check() == (True, "complete")

    def test_self_duality(self):
        for entries in [(2, 1), (2, 2), (1, 1, 1)]:
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                K = facet_set(M)
                L = facet_set(M.alexander_dual())
                assert K.is_isomorphic(L) is not None


class TestPolarizations:
    def test_pol_of_square(self):
        c = CompositionVector((4, 1))
        assert polarize([(2, 0)], c) == (frozenset({V(1, 0), V(1, 1)}),)

    def test_pol_star_of_mixed(self):
        c = CompositionVector((2, 1))
        assert polarize_star([(1, 1)], c) == (frozenset({V(1, 2), V(2, 1)}),)

    def test_pol_of_full_power_is_whole_column(self):
        c = CompositionVector((3, 2))
        (col,) = polarize([(4, 0)], c)
        assert col == frozenset({V(1, 0), V(1, 1), V(1, 2), V(1, 3)})

    def test_rejects_exponent_beyond_bar(self):
        c = CompositionVector((2, 1))
        with pytest.raises(Exception):
            polarize([(4, 0)], c)


class TestSrIdeal:
    def test_stacked_family_presentation(self):
        # c=(3,1), M=<x1>: (x10 x11, x20, x12 x13 x21)
        c = CompositionVector((3, 1))
        gens = sr_ideal(Multicomplex.parse(c, "1 0"))
        assert set(map(frozenset, gens)) == {
            frozenset({V(1, 0), V(1, 1)}),
            frozenset({V(2, 0)}),
            frozenset({V(1, 2), V(1, 3), V(2, 1)}),
        }

    def test_square_times_simplex_presentation(self):
        # c=(2,2), M=<xy>: (x10 x11, x20 x21, x12 x22)
        c = CompositionVector((2, 2))
        gens = sr_ideal(Multicomplex.parse(c, "1 1"))
        assert set(map(frozenset, gens)) == {
            frozenset({V(1, 0), V(1, 1)}),
            frozenset({V(2, 0), V(2, 1)}),
            frozenset({V(1, 2), V(2, 2)}),
        }

    def test_unit_multicomplex_presentation(self):
        # derived: minimal non-faces of the facet route at c=(3), M=<1>
        c = CompositionVector((3,))
        M = Multicomplex.parse(c, "0")
        gens = set(map(frozenset, sr_ideal(M)))
        expected = set(map(frozenset, facet_set(M).minimal_non_faces()))
        assert gens == expected == {
            frozenset({V(1, 0)}),
            frozenset({V(1, 1), V(1, 2), V(1, 3)}),
        }

    def test_equals_minimal_non_faces_on_census(self):
        for entries in [(3,), (2, 1), (2, 2), (1, 1, 1), (3, 1)]:
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                got = set(map(frozenset, sr_ideal(M)))
                want = set(map(frozenset, facet_set(M).minimal_non_faces()))
                assert got == want

    def test_two_route_equivalence_on_census(self):
        # the ideal complex, built by brute force over all vertex subsets,
        # has exactly the facets of the facet formula
        for entries in [(3,), (2, 1), (2, 2), (1, 1, 1)]:
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                A = facet_set(M)
                B = complex_of_ideal(sr_ideal(M), c)
                assert set(A.facet_masks) == set(B.facet_masks)

    def test_octahedron_minimal_non_faces(self):
        # Bier_{(2,2)}(<xy>) is the octahedron: three disjoint diagonals
        c = CompositionVector((2, 2))
        K = facet_set(Multicomplex.parse(c, "1 1"))
        assert all(len(nf) == 2 for nf in K.minimal_non_faces())
        assert len(K.minimal_non_faces()) == 3


class TestClassicalBier:
    def test_void_complex_gives_triangle(self):
        K = classical_bier(void_complex((1, 2, 3)))
        assert K.is_isomorphic(cycle_complex(3)) is not None

    def test_three_points_give_hexagon(self):
        K3 = SimplicialComplex((1, 2, 3), [(1,), (2,), (3,)])
        assert classical_bier(K3).is_isomorphic(cycle_complex(6)) is not None

    def test_cone_over_triangle_gives_bipyramid(self):
        base = cone(cycle_complex(3, labels=(1, 2, 3)), apex=4)
        K = classical_bier(base)
        bipyr = join(boundary_simplex(("u0", "u1", "u2")),
                     boundary_simplex(("w0", "w1")))
        assert K.is_isomorphic(bipyr) is not None

    def test_single_edge_gives_cube_nerve(self):
        K4 = SimplicialComplex((1, 2, 3, 4), [(1, 2)])
        octa = join(join(boundary_simplex("ab"), boundary_simplex("cd")),
                    boundary_simplex("ef"))
        assert classical_bier(K4).is_isomorphic(octa) is not None

    def test_bier_of_cone_is_suspension(self):
        for base in (cycle_complex(3, labels=(1, 2, 3)),
                     cycle_complex(4, labels=(1, 2, 3, 4)),
                     SimplicialComplex((1, 2, 3), [(1, 2), (3,)])):
            B = classical_bier(base)
            susp = join(B.relabel({v: ("b", v) for v in B.universe}),
                        boundary_simplex(("N", "S")))
            BC = classical_bier(cone(base, apex=9))
            assert BC.is_isomorphic(susp) is not None

    def test_full_simplex_rejected(self):
        with pytest.raises(NotProperError):
            classical_bier(SimplicialComplex((1, 2), [(1, 2)]))

    def test_matches_deleted_join_on_all_complexes(self):
        # the all-ones specialization agrees with the textbook deleted join,
        # under the exact vertex correspondence (i, level) <-> (label, side)
        for entries in [(1, 1), (1, 1, 1)]:
            c = CompositionVector(entries)
            m = c.m
            for M in enumerate_proper(c):
                K = SimplicialComplex(
                    tuple(range(1, m + 1)),
                    [tuple(i + 1 for i in range(m) if a[i]) for a in M.members()])
                B = classical_bier(K)
                D = deleted_join_bier(K)
                expected = {frozenset((Vertex(lbl, side)) for lbl, side in D.mask_vertices(f))
                            for f in D.facet_masks}
                got = {frozenset(B.mask_vertices(f)) for f in B.facet_masks}
                assert got == expected

    def test_specialization_property(self):
        # facet_set over all-ones c agrees with classical_bier of K_M
        c = CompositionVector((1, 1, 1))
        for M in enumerate_proper(c):
            K_M = SimplicialComplex(
                (1, 2, 3), [tuple(i + 1 for i in range(3) if a[i]) for a in M.members()])
            assert facet_set(M).is_isomorphic(classical_bier(K_M)) is not None


def test_vertex_universe_size():
    c = CompositionVector((5, 3))
    assert len(vertex_universe(c)) == c.total + c.m
