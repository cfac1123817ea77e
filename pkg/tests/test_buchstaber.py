"""Characteristic maps: verification, canonical construction, searches, report."""

import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from murai.buchstaber import (CharMap, _rank_mod_p, _snf_unit_diagonal,
                              buchstaber_report, canonical_char_map,
                              search_char_map_mod_p, search_integer_char_map,
                              verify_char_map)
from murai.errors import MuraiError
from murai.multicomplex import CompositionVector, Multicomplex, enumerate_proper
from murai.simplicial import SimplicialComplex, Vertex, boundary_simplex, cycle_complex
from murai.spheres import facet_set


def exact_det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return int(det)


def minors_gcd(rows, d):
    """Oracle: gcd of all maximal minors of a k x d integer matrix."""
    from math import gcd
    k = len(rows)
    g = 0
    for cols in combinations(range(d), k):
        g = gcd(g, abs(exact_det([[r[c] for c in cols] for r in rows])))
    return g


class TestExactLinearAlgebra:
    def test_snf_against_minor_gcd_oracle(self):
        rng = random.Random(11)
        for _ in range(200):
            k = rng.randint(1, 4)
            d = rng.randint(k, 5)
            rows = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(k)]
            expected = minors_gcd(rows, d) == 1
            assert _snf_unit_diagonal(rows, d) == expected

    def test_rank_mod_p_against_subset_oracle(self):
        rng = random.Random(5)
        for p in (2, 3):
            for _ in range(100):
                k = rng.randint(1, 4)
                d = rng.randint(1, 4)
                rows = [tuple(rng.randint(0, p - 1) for _ in range(d)) for _ in range(k)]
                # oracle: largest independent subset via determinants mod p
                best = 0
                for r in range(1, min(k, d) + 1):
                    for rs in combinations(range(k), r):
                        for cs in combinations(range(d), r):
                            sub = [[rows[i][j] for j in cs] for i in rs]
                            if exact_det(sub) % p != 0:
                                best = max(best, r)
                assert _rank_mod_p(rows, p) == best


class TestVerify:
    def test_canonical_on_square(self):
        # Bier_(3)(<x>) is a 4-cycle; the four facet pairs are lattice bases
        c = CompositionVector((3,))
        K = facet_set(Multicomplex.parse(c, "1"))
        cm = canonical_char_map(c, K)
        assert verify_char_map(K, cm)
        # derived check: the four 2x3 facet matrices all have unit minor gcd
        vecs = cm.vectors()
        for facet in K.facets():
            assert minors_gcd([vecs[v] for v in facet], 3) == 1

    def test_all_equal_assignment_fails(self):
        K = cycle_complex(3)
        cm = CharMap.make("Z", 2, {v: (1, 0) for v in K.universe})
        assert not verify_char_map(K, cm)

    def test_identity_basis_on_boundary_simplex(self):
        n = 3
        K = boundary_simplex(range(n + 1))
        cm = CharMap.make("Z", n + 1,
                          {i: tuple(1 if t == i else 0 for t in range(n + 1))
                           for i in range(n + 1)})
        assert verify_char_map(K, cm)

    def test_missing_vertex_raises(self):
        K = cycle_complex(3)
        cm = CharMap.make("Z", 2, {0: (1, 0), 1: (0, 1)})
        with pytest.raises(MuraiError):
            verify_char_map(K, cm)


class TestCanonicalMap:
    def test_values_for_2_1(self):
        c = CompositionVector((2, 1))
        K = facet_set(Multicomplex.parse(c, "1 0; 0 1"))
        vecs = canonical_char_map(c, K).vectors()
        assert vecs[Vertex(1, 0)] == (1, 1, 0)
        assert vecs[Vertex(1, 1)] == (1, 0, 0)
        assert vecs[Vertex(1, 2)] == (0, 1, 0)
        assert vecs[Vertex(2, 0)] == (0, 0, 1)
        assert vecs[Vertex(2, 1)] == (0, 0, 1)

    def test_verifies_across_censuses(self):
        for entries in [(3,), (2, 1), (2, 2), (1, 1, 1), (2, 1, 1)]:
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                K = facet_set(M)
                assert verify_char_map(K, canonical_char_map(c, K))

    def test_mod_p_reduction_is_valid(self):
        c = CompositionVector((2, 2))
        for M in enumerate_proper(c):
            K = facet_set(M)
            cm = canonical_char_map(c, K)
            for p in (2, 3):
                assert verify_char_map(K, cm.reduce_mod(p))


class TestSearch:
    def test_pentagon_mod2_rank2(self):
        res = search_char_map_mod_p(cycle_complex(5), 2, 2)
        assert res.status == "found"
        assert verify_char_map(cycle_complex(5), res.char_map)

    def test_boundary_simplex_mod2(self):
        for n in (2, 3):
            K = boundary_simplex(range(n + 1))
            res = search_char_map_mod_p(K, 2, n)
            assert res.status == "found"

    def test_complete_graph_needs_more_colors(self):
        # four pairwise adjacent vertices cannot map into the 3 nonzero
        # vectors of F_2^2 injectively
        K4 = SimplicialComplex(range(4), list(combinations(range(4), 2)))
        res = search_char_map_mod_p(K4, 2, 2)
        assert res.status == "none"

    def test_none_matches_unpinned_enumeration_on_tiny_instances(self):
        # soundness of first-facet pinning, cross-checked by full enumeration
        instances = [
            (SimplicialComplex(range(4), list(combinations(range(4), 2))), 2, 2),
            (cycle_complex(5), 2, 2),
            (cycle_complex(4), 2, 2),
            (boundary_simplex(range(4)), 2, 3),
        ]
        for K, p, d in instances:
            pinned = search_char_map_mod_p(K, p, d)
            nonzero = [v for v in product(range(p), repeat=d) if any(v)]
            verts = K.real_vertices
            exists = False
            for choice in product(nonzero, repeat=len(verts)):
                cm = CharMap.make("Fp", d, dict(zip(verts, choice)), p=p)
                if verify_char_map(K, cm):
                    exists = True
                    break
            assert (pinned.status == "found") == exists

    def test_budget_gate_returns_inconclusive(self):
        res = search_char_map_mod_p(cycle_complex(8), 2, 2, budget=10)
        assert res.status == "inconclusive"

    def test_integer_search_finds_pentagon_map(self):
        res = search_integer_char_map(cycle_complex(5), 2)
        assert res.status == "found"
        assert verify_char_map(cycle_complex(5), res.char_map)
        for p in (2, 3):
            assert verify_char_map(cycle_complex(5), res.char_map.reduce_mod(p))

    def test_integer_search_never_says_none(self):
        K4 = SimplicialComplex(range(4), list(combinations(range(4), 2)))
        res = search_integer_char_map(K4, 2)
        assert res.status == "inconclusive"


class TestReport:
    def test_pentagon_attains_upper_bound(self):
        c = CompositionVector((2, 1))
        K = facet_set(Multicomplex.parse(c, "1 0; 0 1"))
        rep = buchstaber_report(K, c)
        assert (rep.f0, rep.n) == (5, 2)
        assert rep.s_upper == 3 and rep.canonical_lower_bound == 2
        assert rep.s2_exact == 3 and rep.s_exact == 3
        assert rep.r2 == 2 and rep.r == 2

    def test_sandwich_width_is_one(self):
        for entries in [(2, 1), (2, 2), (2, 1, 1)]:
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                K = facet_set(M)
                rep = buchstaber_report(K, c)
                assert rep.s_upper - rep.canonical_lower_bound == 1
                if rep.s2_exact is not None:
                    assert rep.canonical_lower_bound <= rep.s2_exact <= rep.s_upper
                    assert rep.chromatic_lower_bound <= rep.s2_exact

    def test_json_round_trip(self):
        c = CompositionVector((2, 1))
        K = facet_set(Multicomplex.parse(c, "1 0"))
        rep = buchstaber_report(K, c)
        doc = rep.to_json_dict()
        assert doc["f0"] == 4 and doc["s_upper"] == 2
