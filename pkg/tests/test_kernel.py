"""Cross-validation of the census kernel against the object layer.

The kernel's structural shortcuts (pair-form transversals, row polynomials,
ridge candidate tables, per-shape canonical checks) are exercised here against
the slower but independent library computations on complete small censuses.
"""

import numpy as np
import pytest

from murai.buchstaber import canonical_char_map, verify_char_map
from murai.errors import CensusTooLargeError
from murai.kernel import acceptance_compositions, build_tables, check_composition
from murai.multicomplex import CompositionVector, Multicomplex, count_proper, enumerate_proper
from murai.simplicial import Vertex
from murai.spheres import facet_set, sr_ideal, vertex_universe

SMALL = [(1,), (3,), (2, 1), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1)]


def kernel_mask(tables, M):
    """Translate a library multicomplex to the kernel's cell-bit mask."""
    mask = 0
    exps = tables.exps
    for i in range(tables.n_cells):
        if M.contains(tuple(int(x) for x in exps[i])):
            mask |= 1 << i
    return mask


def pair_facet_vertices(tables, kid):
    """Vertex set of the k1 pair row, in library Vertex labels."""
    c = tables.c
    lo = tuple(int(x) for x in tables.exps[tables.k1lo[kid]])
    hi = tuple(int(x) for x in tables.exps[tables.k1hi[kid]])
    missing = {(ax + 1, lo[ax]) for ax in range(len(c))}
    for ax in range(len(c)):
        if hi[ax] != lo[ax]:
            missing.add((ax + 1, hi[ax]))
    return frozenset(Vertex(a, l) for a, l in
                     {(i + 1, j) for i in range(len(c)) for j in range(c[i] + 1)}
                     - missing)


class TestKernelAgainstLibrary:
    def test_census_counts(self):
        for entries in SMALL:
            rep = check_composition(entries)
            assert rep.n_proper == count_proper(CompositionVector(entries))

    def test_all_checks_pass_on_small(self):
        for entries in SMALL:
            rep = check_composition(entries)
            assert rep.ok, (entries, rep.failures, rep.canonical_failures)
            assert rep.canonical_failures == 0
            assert rep.first_bad_index == -1

    def test_k1_rows_match_library_facets(self):
        # the valid one-strict-axis pairs are exactly the library facet sets
        for entries in [(2, 1), (2, 2), (2, 1, 1)]:
            tables = build_tables(entries)
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                mask = kernel_mask(tables, M)
                valid = set()
                for kid in range(int(tables.n_k1)):
                    lo, hi = int(tables.k1lo[kid]), int(tables.k1hi[kid])
                    if mask >> lo & 1 and not mask >> hi & 1:
                        valid.add(pair_facet_vertices(tables, kid))
                K = facet_set(M)
                lib = {frozenset(f) for f in K.facets()}
                assert valid == lib

    def test_pair_form_lemma_against_brute_force(self):
        # maximal generator-avoiding vertex sets, enumerated over all subsets,
        # are exactly the valid one-strict-axis pairs
        for entries in [(2, 2), (3, 1)]:
            tables = build_tables(entries)
            c = CompositionVector(entries)
            universe = vertex_universe(c)
            pos = {v: i for i, v in enumerate(universe)}
            for M in enumerate_proper(c):
                gens = [sum(1 << pos[v] for v in g) for g in sr_ideal(M)]
                n = len(universe)
                faces = [s for s in range(1 << n)
                         if not any(g & s == g for g in gens)]
                face_set = set(faces)
                maximal = {
                    s for s in faces
                    if not any(not s >> i & 1 and (s | 1 << i) in face_set
                               for i in range(n))}
                brute = {frozenset(universe[i] for i in range(n) if s >> i & 1)
                         for s in maximal}
                mask = kernel_mask(tables, M)
                valid = set()
                for kid in range(int(tables.n_k1)):
                    lo, hi = int(tables.k1lo[kid]), int(tables.k1hi[kid])
                    if mask >> lo & 1 and not mask >> hi & 1:
                        valid.add(pair_facet_vertices(tables, kid))
                assert brute == valid

    def test_row_polynomials_give_library_f0_and_euler(self):
        for entries in [(2, 1), (2, 2), (3, 1), (2, 1, 1)]:
            tables = build_tables(entries)
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                mask = kernel_mask(tables, M)
                f0 = chi_acc = 0
                for row in range(len(tables.plo)):
                    lo, hi = int(tables.plo[row]), int(tables.phi[row])
                    if mask >> lo & 1 and not mask >> hi & 1:
                        f0 += int(tables.prow_f0[row])
                        chi_acc += int(tables.prow_m1[row])
                K = facet_set(M)
                assert f0 == len(K.real_vertices)
                assert 1 - chi_acc == K.euler_characteristic()

    def test_canonical_rows_match_library_verifier(self):
        # per-shape canonical results agree with verifying the map on a sphere
        # realizing that facet
        for entries in [(2, 1), (2, 2)]:
            tables = build_tables(entries)
            assert all(int(x) == 1 for x in tables.k1canon)
            c = CompositionVector(entries)
            for M in enumerate_proper(c):
                K = facet_set(M)
                assert verify_char_map(K, canonical_char_map(c, K))

    def test_grid_cap(self):
        with pytest.raises(CensusTooLargeError):
            build_tables((7, 8))


class TestAcceptanceRange:
    def test_composition_list(self):
        comps = acceptance_compositions()
        assert (1, 1, 1, 1, 1, 1) in comps
        assert (3, 1, 1, 1, 1) in comps
        assert (4, 3) in comps
        assert all(sum(c) <= 7 for c in comps)
        assert all(np.prod([x + 1 for x in c]) <= 64 for c in comps)
        # sorted-descending representatives only
        assert all(tuple(sorted(c, reverse=True)) == c for c in comps)
        assert len(comps) == 41

    def test_axis_permutation_equivariance(self):
        # permuted compositions give identical kernel statistics
        for a, b in [((2, 1), (1, 2)), ((3, 2), (2, 3)), ((2, 1, 1), (1, 2, 1))]:
            ra, rb = check_composition(a), check_composition(b)
            assert ra.n_proper == rb.n_proper
            assert ra.ok and rb.ok
            assert ra.canonical_facets == rb.canonical_facets
