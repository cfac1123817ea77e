"""Generalized Bier spheres from multicomplexes, by two independent routes.

Route one is the facet formula: for every member ``a`` and every pure power
``x_i^j`` with ``a_i < j <= c_i`` whose substitution leaves the multicomplex,
the vertex set obtained from the full universe by dropping one level per axis
plus the extra level ``(i, j)`` is a facet.

Route two is the Stanley-Reisner presentation: the minimal non-faces are the
two polarizations of the non-membership ideals of ``M`` and its Alexander
dual, together with the full polarized columns.  The two routes agreeing
facet-for-facet on whole censuses is one of the package's acceptance gates.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidMonomialError, NotProperError
from .multicomplex import CompositionVector, Multicomplex, diamond
from .simplicial import SimplicialComplex, Vertex


def vertex_universe(c: CompositionVector) -> tuple[Vertex, ...]:
    """All |c| + m vertices (axis, level), axis 1-based, ordered by axis then level."""
    return tuple(Vertex(i + 1, j)
                 for i in range(c.m) for j in range(c.entries[i] + 1))


def facet_set(M: Multicomplex) -> SimplicialComplex:
    """The generalized Bier sphere of a proper multicomplex, by the facet formula."""
    if not M.is_proper:
        raise NotProperError("Bier spheres need a proper multicomplex")
    c = M.c
    universe = vertex_universe(c)
    facets = set()
    for a in M.members():
        for i, ci in enumerate(c.entries):
            for j in range(a[i] + 1, ci + 1):
                if M.contains(diamond(a, i, j)):
                    continue
                missing = {Vertex(t + 1, a[t]) for t in range(c.m)}
                missing.add(Vertex(i + 1, j))
                facets.add(frozenset(v for v in universe if v not in missing))
    return SimplicialComplex(universe, facets)


#: Alias matching the usual notation Bier_c(M).
bier_sphere = facet_set


def polarize(gens: Iterable[tuple[int, ...]], c: CompositionVector) -> tuple[frozenset, ...]:
    """Lowest-index squarefree expansion: x^a -> prod_i x_{i,0}..x_{i,a_i-1}.

    Accepts c-bar monomials (exponents up to c_i + 1).
    """
    out = []
    for a in gens:
        _validate_bar(a, c)
        out.append(frozenset(Vertex(i + 1, t) for i, ai in enumerate(a) for t in range(ai)))
    return tuple(out)


def polarize_star(gens: Iterable[tuple[int, ...]], c: CompositionVector) -> tuple[frozenset, ...]:
    """Highest-index squarefree expansion: x^a -> prod_i x_{i,c_i}..x_{i,c_i-a_i+1}."""
    out = []
    for a in gens:
        _validate_bar(a, c)
        out.append(frozenset(Vertex(i + 1, t) for i, ai in enumerate(a)
                             for t in range(c.entries[i] - ai + 1, c.entries[i] + 1)))
    return tuple(out)


def _validate_bar(a: tuple[int, ...], c: CompositionVector):
    if len(a) != c.m or any(ai < 0 or ai > ci + 1 for ai, ci in zip(a, c.entries)):
        raise InvalidMonomialError(f"{a} is not a c-bar monomial for c={c.entries}")


def sr_ideal(M: Multicomplex) -> tuple[tuple[Vertex, ...], ...]:
    """Minimal non-faces of the sphere, presented by the three polarized families.

    The union of pol of the non-membership ideal of M, pol* of the
    non-membership ideal of the dual, and the full columns is reduced to an
    antichain; the result equals minimalNonFaces(facet_set(M)) exactly.
    """
    if not M.is_proper:
        raise NotProperError("the full multicomplex has no Stanley-Reisner data")
    c = M.c
    dual = M.alexander_dual()
    fams = list(polarize(M.ideal_generators(), c))
    fams += list(polarize_star(dual.ideal_generators(), c))
    fams += list(polarize([tuple(ci + 1 if t == i else 0 for t in range(c.m))
                           for i, ci in enumerate(c.entries)], c))
    antichain = [g for g in set(fams)
                 if not any(h != g and h < g for h in fams)]
    return tuple(sorted(tuple(sorted(g)) for g in antichain))


def complex_of_ideal(gens: Iterable[Iterable[Vertex]], c: CompositionVector) -> SimplicialComplex:
    """The complex whose faces are exactly the vertex sets containing no generator.

    Brute force over all subsets of the universe; this is the independent slow
    route used to cross-check the facet formula on small instances.
    """
    universe = vertex_universe(c)
    pos = {v: i for i, v in enumerate(universe)}
    gen_masks = [sum(1 << pos[v] for v in g) for g in gens]
    n = len(universe)
    faces = [s for s in range(1 << n) if not any(g and s & g == g for g in gen_masks)]
    face_set = set(faces)
    maximal = []
    for s in faces:
        bigger = False
        for i in range(n):
            if not s >> i & 1 and (s | 1 << i) in face_set:
                bigger = True
                break
        if not bigger:
            maximal.append(s)
    return SimplicialComplex(universe,
                             [[universe[i] for i in range(n) if s >> i & 1] for s in maximal])


def classical_bier(K: SimplicialComplex) -> SimplicialComplex:
    """The Bier sphere of a simplicial complex, as the all-ones specialization.

    The complex's universe (ghosts included) is the ground set; vertex number
    ``i`` corresponds to axis ``i`` with the level-0 copy on the complex side.
    """
    m = len(K.universe)
    c = CompositionVector((1,) * m)
    members = []
    for face in K.faces:
        a = [0] * m
        for i in range(m):
            if face >> i & 1:
                a[i] = 1
        members.append(tuple(a))
    M = Multicomplex.from_members(c, members)
    if not M.is_proper:
        raise NotProperError("Bier spheres need a proper complex (not the full simplex)")
    return facet_set(M)


def deleted_join_bier(K: SimplicialComplex) -> SimplicialComplex:
    """Textbook deleted-join construction, used only to validate classical_bier.

    Vertices are (label, 0) for the complex side and (label, 1) for the dual
    side, mirroring the level convention of the all-ones specialization.
    """
    m = len(K.universe)
    labels = K.universe
    faces_k = K.faces
    full = (1 << m) - 1
    if full in faces_k:
        raise NotProperError("deleted join needs a proper complex")
    dual_faces = {s for s in range(1 << m) if (full & ~s) not in faces_k}
    universe = [(v, 0) for v in labels] + [(v, 1) for v in labels]
    pairs = []
    for s in faces_k:
        for t in dual_faces:
            if s & t == 0:
                pairs.append((s, t))
    maximal = [(s, t) for (s, t) in pairs
               if not any((s, t) != (s2, t2) and s & s2 == s and t & t2 == t
                          for (s2, t2) in pairs)]
    facets = []
    for s, t in maximal:
        facet = [(labels[i], 0) for i in range(m) if s >> i & 1]
        facet += [(labels[i], 1) for i in range(m) if t >> i & 1]
        facets.append(facet)
    return SimplicialComplex(universe, facets)
