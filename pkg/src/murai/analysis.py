"""Invariant analyzers: chordality, stackedness, neighborliness, colorings,
cyclic polytopes via Gale evenness, and the low-dimensional classifiers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .errors import InvalidFacetError, InvariantViolation, TooLargeError
from .multicomplex import CompositionVector, Multicomplex, enumerate_proper
from .simplicial import (Graph, SimplicialComplex, Vertex, boundary_simplex,
                         cycle_complex, join)
from .spheres import facet_set

DEFAULT_CHROMATIC_CAP = 24
DEFAULT_SHELLING_FACET_CAP = 30


# ---------------------------------------------------------------------------
# chordality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChordalityReport:
    chordal: bool
    #: a shortest chordless cycle (length >= 4) when not chordal
    witness: Optional[tuple]


def mcs_order(graph: Graph) -> list:
    """Maximum-cardinality search ordering (last-to-first elimination)."""
    weight = {v: 0 for v in graph.vertices}
    unnumbered = set(graph.vertices)
    order = []
    while unnumbered:
        z = max(unnumbered, key=lambda v: (weight[v], _stable(v)))
        unnumbered.remove(z)
        order.append(z)
        for y in graph.neighbors(z):
            if y in unnumbered:
                weight[y] += 1
    order.reverse()
    return order


def _stable(v):
    return repr(v)


def is_chordal_graph(graph: Graph) -> bool:
    """Linear-time style test: MCS order is a perfect elimination order iff chordal."""
    order = mcs_order(graph)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in graph.neighbors(v) if pos[u] > pos[v]]
        if later:
            u0 = min(later, key=pos.__getitem__)
            for u in later:
                if u != u0 and not graph.has_edge(u0, u):
                    return False
    return True


def chordless_cycles(graph: Graph, min_len: int = 4):
    """Enumerate every chordless (induced) cycle of length >= min_len once.

    Paths grow from their minimal vertex; the second vertex is kept below the
    last to rule out traversing each cycle twice.
    """
    verts = sorted(graph.vertices, key=_stable)
    rank = {v: i for i, v in enumerate(verts)}

    def extend(path, blocked):
        s = path[0]
        last = path[-1]
        for w in sorted(graph.neighbors(last), key=_stable):
            if rank[w] <= rank[s] or w in blocked:
                continue
            closes = graph.has_edge(w, s)
            chord = any(graph.has_edge(w, u) for u in path[1:-1])
            if chord:
                continue
            if closes:
                if len(path) + 1 >= min_len and rank[path[1]] < rank[w]:
                    yield tuple(path) + (w,)
                continue  # any longer path through w would keep the chord w-s
            yield from extend(path + [w], blocked | {w})

    for s in verts:
        for v in sorted(graph.neighbors(s), key=_stable):
            if rank[v] > rank[s]:
                yield from extend([s, v], {s, v})


def chordality(K: SimplicialComplex) -> ChordalityReport:
    """Decide chordality of the 1-skeleton; witness with a shortest chordless cycle.

    The fast elimination-order test answers the census question; the bounded
    cycle enumeration runs only when a witness is owed.
    """
    g = K.one_skeleton()
    if is_chordal_graph(g):
        return ChordalityReport(True, None)
    best = None
    for cyc in chordless_cycles(g):
        if best is None or len(cyc) < len(best):
            best = cyc
            if len(best) == 4:
                break
    if best is None:
        raise InvariantViolation("elimination test and cycle search disagree")
    return ChordalityReport(False, best)


def chordless_cycle_bound(K: SimplicialComplex) -> int:
    """Maximum length over all chordless induced cycles; 0 when chordal."""
    g = K.one_skeleton()
    return max((len(c) for c in chordless_cycles(g)), default=0)


# ---------------------------------------------------------------------------
# stackedness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StackednessReport:
    stacked: bool
    #: vertex cuts k with the sphere the nerve boundary of a polytope in vc^k(Delta^n)
    truncation_cuts: Optional[int]
    base_dim: Optional[int]


def stackedness(K: SimplicialComplex, c: CompositionVector) -> StackednessReport:
    """Stackedness via chordality plus the degree pattern of minimal non-faces.

    Dimension-1 spheres are cycles and report stacked with k = f_0 - 3 (every
    polygon is a truncated triangle); that convention is recorded here rather
    than derived.  For dimension >= 2 the sphere is stacked iff it is chordal
    and every minimal non-face among real vertices has size 2 or size greater
    than |c| - 2.  Ghost singletons (size-1 generators) are ignored.  When
    stacked, k = f_0 - |c| and is cross-validated against the number of
    minimal non-faces of size |c| - 1.
    """
    dim = K.dimension
    if dim < 1:
        raise InvalidFacetError("stackedness needs a sphere of dimension >= 1")
    f0 = len(K.real_vertices)
    if dim == 1:
        return StackednessReport(True, f0 - 3, 2)
    total = c.total
    real = set(K.real_vertices)
    sizes = [len(nf) for nf in K.minimal_non_faces() if set(nf) <= real]
    ok = chordality(K).chordal and all(s == 2 or s > total - 2 for s in sizes)
    if not ok:
        return StackednessReport(False, None, None)
    k = f0 - total
    pyramids = sum(1 for s in sizes if s == total - 1)
    if k != pyramids:
        raise InvariantViolation(
            f"truncation count {k} != {pyramids} size-{total - 1} minimal non-faces")
    return StackednessReport(True, k, total - 1)


# ---------------------------------------------------------------------------
# neighborliness and coloring
# ---------------------------------------------------------------------------

def neighborliness(K: SimplicialComplex) -> bool:
    """True iff every ceil(dim/2)-subset of real vertices is a face."""
    d = K.dimension
    k = (d + 1) // 2 if d >= 0 else 0
    if k == 0:
        return True
    faces = K.faces
    return all(K.vertex_mask(S) in faces
               for S in combinations(K.real_vertices, k))


def chromatic_number(graph: Graph, cap: int = DEFAULT_CHROMATIC_CAP) -> int:
    """Exact chromatic number by branch and bound.

    A greedy clique gives the lower bound and seeds the search; vertices are
    colored in DSATUR-ish order with at most one fresh color per node.
    """
    n = len(graph.vertices)
    if n > cap:
        raise TooLargeError(f"chromatic number capped at {cap} vertices")
    if n == 0:
        return 0
    verts = sorted(graph.vertices, key=lambda v: -len(graph.neighbors(v)))
    # greedy clique through highest-degree vertices
    clique = []
    for v in verts:
        if all(graph.has_edge(v, u) for u in clique):
            clique.append(v)
    lower = max(1, len(clique))

    # greedy coloring for the upper bound
    greedy: dict = {}
    for v in verts:
        used = {greedy[u] for u in graph.neighbors(v) if u in greedy}
        col = 0
        while col in used:
            col += 1
        greedy[v] = col
    upper = max(greedy.values()) + 1

    def colorable(k: int) -> bool:
        coloring: dict = {}

        def rec(used_colors: int) -> bool:
            if len(coloring) == n:
                return True
            # most saturated first
            v = max((u for u in verts if u not in coloring),
                    key=lambda u: (len({coloring[w] for w in graph.neighbors(u)
                                        if w in coloring}), len(graph.neighbors(u))))
            banned = {coloring[w] for w in graph.neighbors(v) if w in coloring}
            for col in range(min(used_colors + 1, k)):
                if col in banned:
                    continue
                coloring[v] = col
                if rec(max(used_colors, col + 1)):
                    return True
                del coloring[v]
            return False

        return rec(0)

    k = lower
    while k < upper and not colorable(k):
        k += 1
    return k


# ---------------------------------------------------------------------------
# cyclic polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicSpec:
    """Boundary sphere of a cyclic polytope with p vertices in dimension q."""

    p: int
    q: int

    def __post_init__(self):
        if not 2 <= self.q < self.p:
            raise InvalidFacetError(f"cyclic spec needs 2 <= q < p, got {self}")


def gale_facets(spec: CyclicSpec) -> SimplicialComplex:
    """Facets of the cyclic polytope boundary by the Gale evenness condition.

    A q-subset qualifies iff any two of the remaining elements are separated
    by an even number of chosen elements.
    """
    p, q = spec.p, spec.q
    labels = tuple(range(1, p + 1))
    facets = []
    for S in combinations(labels, q):
        chosen = set(S)
        rest = [t for t in labels if t not in chosen]
        if all(sum(1 for s in S if a < s < b) % 2 == 0
               for a, b in combinations(rest, 2)):
            facets.append(S)
    return SimplicialComplex(labels, facets)


def cyclic_compare(K: SimplicialComplex, spec: CyclicSpec) -> Optional[dict]:
    """Isomorphism between K and the Gale-evenness sphere, if any."""
    return K.is_isomorphic(gale_facets(spec))


def murai_cyclic_instance(k: int) -> tuple[CompositionVector, Multicomplex]:
    """The (k+2, k) multicomplex generated by all monomials of total degree k."""
    if k < 3:
        raise InvalidFacetError("the cyclic family needs k >= 3")
    c = CompositionVector((k + 2, k))
    members = [a for a in c.iter_monomials() if sum(a) <= k]
    return c, Multicomplex.from_members(c, members)


def murai_cyclic_map(k: int) -> dict[Vertex, int]:
    """The explicit vertex bijection onto the cyclic sphere Delta(2k+4, 2k+1).

    Axis-1 level i goes to position 2i + 2 for i <= k + 1 and to position 1
    at the top level; axis-2 level i goes to position 2(k - i) + 3.
    """
    if k < 3:
        raise InvalidFacetError("the cyclic family needs k >= 3")
    f: dict[Vertex, int] = {}
    for i in range(k + 2):
        f[Vertex(1, i)] = 2 * i + 2
    f[Vertex(1, k + 2)] = 1
    for i in range(k + 1):
        f[Vertex(2, i)] = 2 * (k - i) + 3
    return f


# ---------------------------------------------------------------------------
# shellability
# ---------------------------------------------------------------------------

def shellability_witness(K: SimplicialComplex,
                         max_facets: int = DEFAULT_SHELLING_FACET_CAP,
                         budget: int = 200_000) -> Optional[tuple]:
    """A shelling order of the facets, by backtracking; None only on failure.

    Raises TooLargeError above the facet cap so callers can report 'unchecked'
    instead of an expensive definitive answer.
    """
    masks = list(K.facet_masks)
    t = len(masks)
    if t > max_facets:
        raise TooLargeError(f"shellability search capped at {max_facets} facets")
    if t <= 1:
        return tuple(range(t))
    size = bin(masks[0]).count("1")
    nodes = 0

    def attaches_ok(new: int, prefix: list[int]) -> bool:
        # every intersection with the prefix lies in a ridge-sized one
        inters = [new & masks[s] for s in prefix]
        ridges = [x for x in inters if bin(x).count("1") == size - 1]
        return all(any(x & r == x for r in ridges) for x in inters)

    order: list[int] = []
    remaining = set(range(t))

    def rec() -> bool:
        nonlocal nodes
        if not remaining:
            return True
        nodes += 1
        if nodes > budget:
            raise TooLargeError("shellability search budget exceeded")
        for i in sorted(remaining):
            if order and not attaches_ok(masks[i], order):
                continue
            order.append(i)
            remaining.remove(i)
            if rec():
                return True
            order.pop()
            remaining.add(i)
        return False

    return tuple(order) if rec() else None


# ---------------------------------------------------------------------------
# iso classification and the low-dimensional censuses
# ---------------------------------------------------------------------------

def iso_classes(complexes: Sequence[SimplicialComplex]) -> tuple[list[int], list[int]]:
    """Greedy classification: returns (class id per complex, representative indexes).

    Same id iff an isomorphism exists; cheap canonical keys bucket the
    candidates before the exact backtracking test.
    """
    reps: list[int] = []
    buckets: dict[tuple, list[int]] = {}
    ids: list[int] = []
    for i, K in enumerate(complexes):
        key = K.canonical_key()
        assigned = None
        for j in buckets.get(key, []):
            if complexes[reps[j]].is_isomorphic(K) is not None:
                assigned = j
                break
        if assigned is None:
            assigned = len(reps)
            reps.append(i)
            buckets.setdefault(key, []).append(assigned)
        ids.append(assigned)
    return ids, reps


@dataclass(frozen=True)
class CensusClassification:
    c: CompositionVector
    multicomplexes: tuple[Multicomplex, ...]
    spheres: tuple[SimplicialComplex, ...]
    class_ids: tuple[int, ...]
    class_reps: tuple[int, ...]
    class_names: tuple[str, ...]

    def name_of(self, i: int) -> str:
        return self.class_names[self.class_ids[i]]

    def class_sizes(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for cid in self.class_ids:
            name = self.class_names[cid]
            out[name] = out.get(name, 0) + 1
        return out


def classify_dim1(c: CompositionVector) -> CensusClassification:
    """Classify the census of 1-dimensional spheres (|c| = 3) into cycle types."""
    if c.total != 3:
        raise InvalidFacetError("dimension-1 classification needs |c| = 3")
    return _classify(c, _named_dim1())


def classify_dim2(c: CompositionVector) -> CensusClassification:
    """Classify the census of 2-dimensional spheres (|c| = 4).

    Classes are named against the Bier catalogue over ground set [4] plus the
    stacked 7-vertex types; spheres matching no catalogue entry keep a
    synthetic name.
    """
    if c.total != 4:
        raise InvalidFacetError("dimension-2 classification needs |c| = 4")
    return _classify(c, _named_dim2())


def _classify(c: CompositionVector, named: list[tuple[str, SimplicialComplex]]) -> CensusClassification:
    mcs = tuple(enumerate_proper(c))
    spheres = tuple(facet_set(M) for M in mcs)
    ids, reps = iso_classes(spheres)
    names = []
    for r, rep in enumerate(reps):
        label = None
        for name, ref in named:
            if spheres[rep].is_isomorphic(ref) is not None:
                label = name
                break
        if label is None:
            label = f"class#{r}(f={spheres[rep].f_vector})"
        names.append(label)
    return CensusClassification(c, mcs, spheres, tuple(ids), tuple(reps), tuple(names))


def _named_dim1() -> list[tuple[str, SimplicialComplex]]:
    return [(f"Z_{p}", cycle_complex(p)) for p in range(3, 13)]


def stacked_sphere(subdivision_bases: Sequence[tuple]) -> SimplicialComplex:
    """Stellar subdivisions of boundary-of-tetrahedron facets, apexes 4, 5, ...

    Each entry names the facet (of the current sphere) to subdivide.
    """
    K = boundary_simplex((0, 1, 2, 3))
    apex = 4
    for base in subdivision_bases:
        masks = set(K.facet_masks)
        bmask = K.vertex_mask(base)
        if bmask not in masks:
            raise InvalidFacetError(f"{base} is not a facet to subdivide")
        masks.remove(bmask)
        universe = K.universe + (apex,)
        facets = [K.mask_vertices(m) for m in masks]
        for v in base:
            facets.append(tuple(w for w in base if w != v) + (apex,))
        K = SimplicialComplex(universe, facets)
        apex += 1
    return K


@lru_cache(maxsize=None)
def _named_dim2() -> list[tuple[str, SimplicialComplex]]:
    octahedron = join(join(boundary_simplex(("a0", "a1")), boundary_simplex(("b0", "b1"))),
                      boundary_simplex(("c0", "c1")))
    named = [
        ("bd(Delta^3)", boundary_simplex((0, 1, 2, 3))),
        ("bd(Delta^2)*bd(Delta^1)", join(boundary_simplex(("u0", "u1", "u2")),
                                         boundary_simplex(("w0", "w1")))),
        ("octahedron", octahedron),
        ("vc^2(Delta^3)", stacked_sphere([(0, 1, 2), (0, 1, 3)])),
        ("vc^1(I^3)", _vc1_cube()),
        ("bipyramid over pentagon", join(cycle_complex(5), boundary_simplex(("n", "s")))),
        ("vc^3(Delta^3) star", stacked_sphere([(0, 1, 2), (0, 1, 3), (0, 2, 3)])),
        ("vc^3(Delta^3) chain", stacked_sphere([(0, 1, 2), (0, 1, 4), (0, 1, 5)])),
        ("vc^3(Delta^3) mixed", stacked_sphere([(0, 1, 2), (0, 2, 3), (1, 2, 4)])),
    ]
    return named


def _vc1_cube() -> SimplicialComplex:
    """Nerve of the cube with one vertex cut: stellar subdivision of an octahedron facet."""
    K = join(join(boundary_simplex((0, 1)), boundary_simplex((2, 3))),
             boundary_simplex((4, 5)))
    facet = K.facets()[0]
    masks = set(K.facet_masks)
    masks.remove(K.vertex_mask(facet))
    universe = K.universe + (6,)
    facets = [K.mask_vertices(m) for m in masks]
    for v in facet:
        facets.append(tuple(w for w in facet if w != v) + (6,))
    return SimplicialComplex(universe, facets)


@lru_cache(maxsize=None)
def bier_catalogue_dim2() -> CensusClassification:
    """All Bier spheres over ground set [4], classified once and cached."""
    return _classify(CompositionVector((1, 1, 1, 1)), _named_dim2())


def matches_some_bier_dim2(K: SimplicialComplex) -> bool:
    cat = bier_catalogue_dim2()
    return any(K.is_isomorphic(cat.spheres[rep]) is not None for rep in cat.class_reps)
