"""Finite simplicial complexes on labeled vertices.

Faces are stored as int bitmasks over the vertex universe; subset tests
dominate the workloads here (facet antichains, face lattices, isomorphism
backtracking) and bit operations keep them cheap.  Ghost vertices - universe
members that occur in no facet - are retained in the universe but excluded
from f_0, graphs and isomorphism, matching the counting conventions of the
constructions in :mod:`murai.spheres`.
"""

from __future__ import annotations

from functools import cached_property
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence

from .errors import InvalidFacetError, TooLargeError

#: Cap on real vertices for isomorphism search.
DEFAULT_ISO_CAP = 24


class Vertex(NamedTuple):
    """A polarized-variable vertex: axis i in [1..m], level j in [0..c_i]."""

    axis: int
    level: int

    def __str__(self) -> str:
        return f"{self.axis}:{self.level}"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        i, j = text.split(":")
        return cls(int(i), int(j))


class SimplicialComplex:
    """A complex given by its facet antichain over an ordered vertex universe."""

    __slots__ = ("universe", "_pos", "facet_masks", "__dict__")

    def __init__(self, universe: Sequence[Hashable], facets: Iterable[Iterable[Hashable]]):
        self.universe = tuple(universe)
        if len(set(self.universe)) != len(self.universe):
            raise InvalidFacetError("duplicate labels in vertex universe")
        self._pos = {v: i for i, v in enumerate(self.universe)}
        masks = set()
        for facet in facets:
            mask = 0
            for v in facet:
                if v not in self._pos:
                    raise InvalidFacetError(f"facet vertex {v!r} outside the universe")
                mask |= 1 << self._pos[v]
            masks.add(mask)
        if not masks:
            masks = {0}
        # keep only inclusion-maximal facets
        self.facet_masks = tuple(sorted(
            m for m in masks
            if not any(m != other and m & other == m for other in masks)))

    # -- basic views ---------------------------------------------------------

    def vertex_mask(self, vertices: Iterable[Hashable]) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << self._pos[v]
        return mask

    def mask_vertices(self, mask: int) -> tuple:
        return tuple(v for i, v in enumerate(self.universe) if mask >> i & 1)

    def facets(self) -> tuple[tuple, ...]:
        return tuple(self.mask_vertices(m) for m in self.facet_masks)

    @cached_property
    def real_mask(self) -> int:
        mask = 0
        for m in self.facet_masks:
            mask |= m
        return mask

    @property
    def real_vertices(self) -> tuple:
        return self.mask_vertices(self.real_mask)

    @property
    def ghost_vertices(self) -> tuple:
        return tuple(v for i, v in enumerate(self.universe)
                     if not self.real_mask >> i & 1)

    @property
    def dimension(self) -> int:
        return max(bin(m).count("1") for m in self.facet_masks) - 1

    def is_pure(self) -> bool:
        sizes = {bin(m).count("1") for m in self.facet_masks}
        return len(sizes) == 1

    @cached_property
    def faces(self) -> frozenset[int]:
        """All face masks, the empty face included."""
        out = set()
        for facet in self.facet_masks:
            stack = [facet]
            while stack:
                f = stack.pop()
                if f in out:
                    continue
                out.add(f)
                mm = f
                while mm:
                    low = mm & -mm
                    stack.append(f & ~low)
                    mm &= mm - 1
        out.add(0)
        return frozenset(out)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """(f_0, f_1, ..., f_dim); empty tuple for the (-1)-dimensional complex."""
        counts: dict[int, int] = {}
        for f in self.faces:
            k = bin(f).count("1")
            if k:
                counts[k] = counts.get(k, 0) + 1
        if not counts:
            return ()
        return tuple(counts.get(k, 0) for k in range(1, max(counts) + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector))

    # -- manifold-ish checks --------------------------------------------------

    def is_pseudomanifold(self) -> bool:
        """Pure, every ridge in exactly two facets, facet adjacency connected."""
        if not self.is_pure():
            return False
        ridge_facets: dict[int, list[int]] = {}
        for fi, facet in enumerate(self.facet_masks):
            mm = facet
            if facet == 0:
                ridge_facets.setdefault(-1, []).append(fi)  # no ridges in dim -1
                continue
            while mm:
                low = mm & -mm
                ridge_facets.setdefault(facet & ~low, []).append(fi)
                mm &= mm - 1
        parent = list(range(len(self.facet_masks)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ridge, fs in ridge_facets.items():
            if ridge == -1:
                continue
            if len(fs) != 2:
                return False
            ra, rb = find(fs[0]), find(fs[1])
            if ra != rb:
                parent[ra] = rb
        roots = {find(i) for i in range(len(self.facet_masks))}
        return len(roots) == 1

    def vertex_link(self, v: Hashable) -> "SimplicialComplex":
        bit = 1 << self._pos[v]
        facets = [m & ~bit for m in self.facet_masks if m & bit]
        return SimplicialComplex(self.universe, [self.mask_vertices(m) for m in facets])

    def is_cycle(self) -> bool:
        """Connected, 2-regular 1-dimensional complex: the complete dim-1 sphere test."""
        if self.dimension != 1:
            return False
        g = self.one_skeleton()
        return (all(len(g.neighbors(v)) == 2 for v in g.vertices)
                and g.is_connected() and len(g.edges) == len(g.vertices))

    def sphere_check(self) -> tuple[bool, str]:
        """(passed, kind): complete test for dim <= 2, partial certificate above.

        dim 1: connected 2-regular cycle.  dim 2: pseudomanifold, Euler
        characteristic 2 and every vertex link a cycle.  dim >= 3 (and the
        degenerate dims <= 0): pseudomanifold plus the right Euler
        characteristic, reported as a partial certificate.
        """
        d = self.dimension
        if d == 1:
            return self.is_cycle(), "complete"
        if d == 2:
            ok = (self.is_pseudomanifold() and self.euler_characteristic() == 2
                  and all(self.vertex_link(v).is_cycle() for v in self.real_vertices))
            return ok, "complete"
        expected = 1 + (-1) ** d if d >= 0 else 0
        ok = self.is_pseudomanifold() and self.euler_characteristic() == expected
        return ok, "partial"

    # -- skeleta and non-faces -------------------------------------------------

    def one_skeleton(self) -> "Graph":
        edges = {f for f in self.faces if bin(f).count("1") == 2}
        return Graph(self.real_vertices,
                     [frozenset(self.mask_vertices(e)) for e in edges])

    def minimal_non_faces(self) -> tuple[tuple, ...]:
        """Inclusion-minimal non-faces over the full universe.

        Ghost vertices show up as singletons; among real vertices the minimal
        non-faces have size >= 2.
        """
        faces = self.faces
        n = len(self.universe)
        out = set()
        for f in faces:
            for i in range(n):
                bit = 1 << i
                if f & bit:
                    continue
                s = f | bit
                if s in faces or s in out:
                    continue
                mm, minimal = s, True
                while mm:
                    low = mm & -mm
                    if s & ~low not in faces:
                        minimal = False
                        break
                    mm &= mm - 1
                if minimal:
                    out.add(s)
        return tuple(sorted(self.mask_vertices(s) for s in out))

    def is_flag(self) -> bool:
        real = self.real_mask
        return all(len(nf) == 2 for nf in self.minimal_non_faces()
                   if self.vertex_mask(nf) & real == self.vertex_mask(nf))

    def rebuilt_from_minimal_non_faces(self) -> "SimplicialComplex":
        """The complex of all subsets containing no minimal non-face."""
        non = [self.vertex_mask(nf) for nf in self.minimal_non_faces()]
        n = len(self.universe)
        facets = []
        for s in range(1 << n):
            if any(g & s == g for g in non):
                continue
            facets.append(s)
        maximal = [s for s in facets
                   if not any(s != t and s & t == s for t in facets)]
        return SimplicialComplex(self.universe, [self.mask_vertices(s) for s in maximal])

    # -- relabeling and isomorphism --------------------------------------------

    def relabel(self, mapping: dict) -> "SimplicialComplex":
        universe = tuple(mapping.get(v, v) for v in self.universe)
        return SimplicialComplex(
            universe, [tuple(mapping.get(v, v) for v in facet) for facet in self.facets()])

    @cached_property
    def _vertex_profiles(self) -> dict:
        """Per-real-vertex invariant: counts of faces by size containing it."""
        prof: dict[Hashable, list[int]] = {}
        d = self.dimension + 1
        for i, v in enumerate(self.universe):
            if self.real_mask >> i & 1:
                prof[v] = [0] * (d + 1)
        for f in self.faces:
            k = bin(f).count("1")
            mm = f
            while mm:
                low = mm & -mm
                prof[self.universe[low.bit_length() - 1]][k] += 1
                mm &= mm - 1
        return {v: tuple(p) for v, p in prof.items()}

    def canonical_key(self) -> tuple:
        """Cheap isomorphism-invariant key for bucketing before exact tests."""
        return (self.f_vector,
                tuple(sorted(bin(m).count("1") for m in self.facet_masks)),
                tuple(sorted(self._vertex_profiles.values())))

    def is_isomorphic(self, other: "SimplicialComplex",
                      cap: int = DEFAULT_ISO_CAP) -> Optional[dict]:
        """A facet-set-preserving bijection of real vertices, or None.

        Backtracking over vertex images ordered by refined per-vertex
        invariants; ghosts are ignored on both sides.
        """
        a, b = self, other
        ra = [v for v in a.universe if a.real_mask >> a._pos[v] & 1]
        rb = [v for v in b.universe if b.real_mask >> b._pos[v] & 1]
        if len(ra) > cap or len(rb) > cap:
            raise TooLargeError(f"isomorphism search capped at {cap} real vertices")
        if len(ra) != len(rb) or a.canonical_key() != b.canonical_key():
            return None
        pa, pb = a._vertex_profiles, b._vertex_profiles
        adj_a = _adjacency(a, ra)
        adj_b = _adjacency(b, rb)
        # rarest-profile-first ordering
        from collections import Counter
        counts = Counter(pa[v] for v in ra)
        order = sorted(ra, key=lambda v: (counts[pa[v]], pa[v]))
        b_by_profile: dict[tuple, list] = {}
        for v in rb:
            b_by_profile.setdefault(pb[v], []).append(v)

        facet_set_b = set(b.facet_masks)
        mapping: dict = {}
        used: set = set()

        def extend(k: int) -> bool:
            if k == len(order):
                for fm in a.facet_masks:
                    img = 0
                    for v in a.mask_vertices(fm):
                        img |= 1 << b._pos[mapping[v]]
                    if img not in facet_set_b:
                        return False
                return True
            v = order[k]
            for w in b_by_profile.get(pa[v], []):
                if w in used:
                    continue
                ok = True
                for u in mapping:
                    if (u in adj_a[v]) != (mapping[u] in adj_b[w]):
                        ok = False
                        break
                if not ok:
                    continue
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
            return False

        return dict(mapping) if extend(0) else None

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector}, facets={len(self.facet_masks)})"


def _adjacency(K: SimplicialComplex, real: list) -> dict:
    adj: dict = {v: set() for v in real}
    for e in K.faces:
        if bin(e).count("1") == 2:
            u, v = K.mask_vertices(e)
            adj[u].add(v)
            adj[v].add(u)
    return adj


def facets_text(K: SimplicialComplex) -> str:
    """Facet text format: vertices ``i:j`` comma-joined, facets '|'-joined."""
    parts = []
    for facet in K.facets():
        parts.append(",".join(str(v) for v in sorted(facet)))
    return "|".join(sorted(parts))


class Graph:
    """A simple graph on hashable vertices."""

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[frozenset]):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        es = set()
        for e in edges:
            e = frozenset(e)
            if len(e) != 2 or not e <= vset:
                raise InvalidFacetError(f"bad edge {set(e)!r}")
            es.add(e)
        self.edges = frozenset(es)
        self._adj: dict = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            self._adj[u].add(v)
            self._adj[v].add(u)

    def neighbors(self, v) -> set:
        return self._adj[v]

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# -- constructions -----------------------------------------------------------

def boundary_simplex(vertices: Sequence[Hashable]) -> SimplicialComplex:
    """Boundary of the simplex on the given vertices (at least 2)."""
    vs = tuple(vertices)
    if len(vs) < 2:
        raise InvalidFacetError("boundary of a simplex needs at least 2 vertices")
    return SimplicialComplex(vs, [tuple(w for w in vs if w != v) for v in vs])


def cycle_complex(p: int, labels: Optional[Sequence[Hashable]] = None) -> SimplicialComplex:
    """The p-cycle as a 1-dimensional complex, p >= 3."""
    if p < 3:
        raise InvalidFacetError("cycles need at least 3 vertices")
    vs = tuple(labels) if labels is not None else tuple(range(p))
    if len(vs) != p:
        raise InvalidFacetError("label count must equal p")
    return SimplicialComplex(vs, [(vs[i], vs[(i + 1) % p]) for i in range(p)])


def simplex_complex(vertices: Sequence[Hashable]) -> SimplicialComplex:
    """The full simplex (a single facet)."""
    vs = tuple(vertices)
    return SimplicialComplex(vs, [vs])


def void_complex(vertices: Sequence[Hashable]) -> SimplicialComplex:
    """Only the empty face; every listed vertex is a ghost."""
    return SimplicialComplex(tuple(vertices), [()])


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes on disjoint universes; facets are unions of facets."""
    if set(K.universe) & set(L.universe):
        raise InvalidFacetError("join requires disjoint vertex universes")
    universe = K.universe + L.universe
    facets = [fk + fl for fk in K.facets() for fl in L.facets()]
    return SimplicialComplex(universe, facets)


def cone(K: SimplicialComplex, apex: Hashable = "apex") -> SimplicialComplex:
    if apex in K.universe:
        raise InvalidFacetError("cone apex collides with an existing vertex")
    return join(K, simplex_complex((apex,)))
