"""Characteristic maps and Buchstaber number bounds.

A characteristic map assigns a vector to every real vertex so that each facet
goes to part of a lattice basis (integer ring) or to a linearly independent
set (prime field).  A verified map into rank d certifies a Buchstaber lower
bound of f_0 - d; the dimension gives the f_0 - n upper bound, and for these
spheres the two differ by exactly one, so a single exhaustive mod-p search at
rank n settles s_p.

All arithmetic is exact: Python integers over the integer ring, field
elimination mod p.  No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .errors import MuraiError
from .multicomplex import CompositionVector
from .simplicial import SimplicialComplex, Vertex

DEFAULT_SEARCH_BUDGET = 10_000_000


@dataclass(frozen=True)
class CharMap:
    """Vertex-to-vector assignment over the integers or a prime field."""

    ring: str                      # "Z" or "Fp"
    p: Optional[int]               # prime when ring == "Fp"
    rank: int
    assignment: tuple              # ((vertex, vector), ...) sorted by repr

    @classmethod
    def make(cls, ring: str, rank: int, assignment: dict, p: Optional[int] = None) -> "CharMap":
        items = tuple(sorted(((v, tuple(vec)) for v, vec in assignment.items()),
                             key=lambda kv: repr(kv[0])))
        return cls(ring, p, rank, items)

    def vectors(self) -> dict:
        return {v: vec for v, vec in self.assignment}

    def reduce_mod(self, p: int) -> "CharMap":
        return CharMap.make("Fp", self.rank,
                            {v: tuple(x % p for x in vec) for v, vec in self.assignment},
                            p=p)

    def to_json_dict(self) -> dict:
        return {
            "ring": self.ring if self.ring == "Z" else f"F{self.p}",
            "rank": self.rank,
            "assignment": {str(v): list(vec) for v, vec in self.assignment},
        }


# -- exact linear algebra -----------------------------------------------------

def _snf_unit_diagonal(rows: list[tuple[int, ...]], d: int) -> bool:
    """True iff the k x d integer matrix has Smith form [I_k | 0].

    Equivalent to the rows extending to a basis of Z^d (the gcd of all maximal
    minors is 1).  Exact integer elimination with Euclid steps.
    """
    a = [list(r) for r in rows]
    k = len(a)
    if k == 0:
        return True
    if k > d:
        return False
    r = 0
    rowi, coli = 0, 0
    m, n = k, d
    while rowi < m and coli < n:
        # find pivot of least absolute value in remaining block
        piv = None
        for i in range(rowi, m):
            for j in range(coli, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        a[rowi], a[pi] = a[pi], a[rowi]
        for i in range(m):
            a[i][coli], a[i][pj] = a[i][pj], a[i][coli]
        # euclid rows then columns until clean
        clean = False
        while not clean:
            clean = True
            for i in range(rowi + 1, m):
                if a[i][coli]:
                    q = a[i][coli] // a[rowi][coli]
                    for j in range(coli, n):
                        a[i][j] -= q * a[rowi][j]
                    if a[i][coli]:
                        a[rowi], a[i] = a[i], a[rowi]
                        clean = False
            for j in range(coli + 1, n):
                if a[rowi][j]:
                    q = a[rowi][j] // a[rowi][coli]
                    for i in range(rowi, m):
                        a[i][j] -= q * a[i][coli]
                    if a[rowi][j]:
                        for i in range(m):
                            a[i][coli], a[i][j] = a[i][j], a[i][coli]
                        clean = False
        if abs(a[rowi][coli]) != 1:
            return False
        r += 1
        rowi += 1
        coli += 1
    return r == k


def _rank_mod_p(rows: list[tuple[int, ...]], p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for i in range(m):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def verify_char_map(K: SimplicialComplex, cm: CharMap) -> bool:
    """Check the characteristic condition on every facet.

    Over the integers the facet vectors must extend to a lattice basis; over a
    prime field they must be linearly independent.  Every real vertex needs an
    assignment.
    """
    vecs = cm.vectors()
    for v in K.real_vertices:
        if v not in vecs:
            raise MuraiError(f"characteristic map misses vertex {v}")
        if len(vecs[v]) != cm.rank:
            raise MuraiError(f"vector for {v} has wrong rank")
    for facet in K.facets():
        rows = [vecs[v] for v in facet]
        if cm.ring == "Z":
            if not _snf_unit_diagonal(rows, cm.rank):
                return False
        else:
            if _rank_mod_p(rows, cm.p) != len(rows):
                return False
    return True


def canonical_char_map(c: CompositionVector, K: SimplicialComplex) -> CharMap:
    """The structural rank-|c| integer map certifying s >= f_0 - |c|.

    Coordinates are indexed by (axis, level >= 1); a level-j vertex with j >= 1
    goes to its unit vector and a level-0 vertex to the sum of its axis block.
    """
    d = c.total
    offs = []
    s = 0
    for ci in c.entries:
        offs.append(s)
        s += ci
    assignment = {}
    for v in K.real_vertices:
        vec = [0] * d
        axis, level = v.axis - 1, v.level
        if level >= 1:
            vec[offs[axis] + level - 1] = 1
        else:
            for t in range(c.entries[axis]):
                vec[offs[axis] + t] = 1
        assignment[v] = tuple(vec)
    return CharMap.make("Z", d, assignment)


# -- exhaustive searches ------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    status: str                    # "found" | "none" | "inconclusive"
    char_map: Optional[CharMap]
    nodes: int


def _facet_order(K: SimplicialComplex):
    """Pinned facet plus remaining vertices by decreasing facet membership."""
    counts = {v: 0 for v in K.real_vertices}
    for facet in K.facets():
        for v in facet:
            counts[v] += 1
    pinned = max(K.facets(), key=lambda f: sum(counts[v] for v in f))
    rest = sorted((v for v in K.real_vertices if v not in pinned),
                  key=lambda v: (-counts[v], repr(v)))
    return tuple(sorted(pinned, key=repr)), rest


def search_char_map_mod_p(K: SimplicialComplex, p: int, d: int,
                          budget: int = DEFAULT_SEARCH_BUDGET,
                          pin_first_facet: bool = True) -> SearchResult:
    """Exhaustive backtracking for a mod-p characteristic map into rank d.

    One facet is pinned to the standard basis: the invertible-matrix action on
    characteristic maps makes this lossless, so a completed search returning
    nothing is a definitive "none".  The worst-case assignment count
    (p^d - 1)^(f_0 - d_pinned) is gated against the budget up front; exceeding
    it yields "inconclusive", never "none".
    """
    real = K.real_vertices
    f0 = len(real)
    facets = [tuple(f) for f in K.facets()]
    if any(len(f) > d for f in facets):
        return SearchResult("none", None, 0)

    if pin_first_facet and facets and facets[0]:
        pinned, rest = _facet_order(K)
    else:
        pinned, rest = (), sorted(real, key=repr)
    worst = (p ** d - 1) ** max(0, f0 - len(pinned))
    if worst > budget:
        return SearchResult("inconclusive", None, 0)

    vectors: dict = {}
    for i, v in enumerate(pinned):
        vectors[v] = tuple(1 if t == i else 0 for t in range(d))
    candidates = [vec for vec in product(range(p), repeat=d) if any(vec)]

    facet_sets = [frozenset(f) for f in facets]
    nodes = 0

    def consistent(v) -> bool:
        assigned = set(vectors)
        for fs, facet in zip(facet_sets, facets):
            if v in fs and fs <= assigned:
                rows = [vectors[u] for u in facet]
                if _rank_mod_p(rows, p) != len(rows):
                    return False
        return True

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == len(rest):
            return True
        v = rest[k]
        for vec in candidates:
            nodes += 1
            vectors[v] = vec
            if consistent(v) and rec(k + 1):
                return True
            del vectors[v]
        return False

    if rec(0):
        cm = CharMap.make("Fp", d, dict(vectors), p=p)
        if not verify_char_map(K, cm):
            raise MuraiError("search produced an invalid map")
        return SearchResult("found", cm, nodes)
    return SearchResult("none", None, nodes)


def search_integer_char_map(K: SimplicialComplex, d: int,
                            budget: int = DEFAULT_SEARCH_BUDGET) -> SearchResult:
    """Bounded search for an integer characteristic map with entries in {-1,0,1}.

    Pinning one facet is sound for existence of SOME map but not within the
    restricted entry set, so a failed search reports "inconclusive", never
    "none"; a found map is a sound lower bound.
    """
    real = K.real_vertices
    facets = [tuple(f) for f in K.facets()]
    if any(len(f) > d for f in facets):
        return SearchResult("inconclusive", None, 0)
    pinned, rest = _facet_order(K)
    worst = (3 ** d) ** max(0, len(real) - len(pinned))
    if worst > budget:
        return SearchResult("inconclusive", None, 0)

    vectors: dict = {}
    for i, v in enumerate(pinned):
        vectors[v] = tuple(1 if t == i else 0 for t in range(d))
    candidates = [vec for vec in product((-1, 0, 1), repeat=d) if any(vec)]
    facet_sets = [frozenset(f) for f in facets]
    nodes = 0

    def consistent(v) -> bool:
        assigned = set(vectors)
        for fs, facet in zip(facet_sets, facets):
            if v in fs and fs <= assigned:
                rows = [vectors[u] for u in facet]
                if not _snf_unit_diagonal(rows, d):
                    return False
        return True

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == len(rest):
            return True
        v = rest[k]
        for vec in candidates:
            nodes += 1
            vectors[v] = vec
            if consistent(v) and rec(k + 1):
                return True
            del vectors[v]
        return False

    if rec(0):
        cm = CharMap.make("Z", d, dict(vectors))
        if not verify_char_map(K, cm):
            raise MuraiError("search produced an invalid map")
        return SearchResult("found", cm, nodes)
    return SearchResult("inconclusive", None, nodes)


# -- the assembled report -----------------------------------------------------

@dataclass(frozen=True)
class BuchstaberReport:
    f0: int
    n: int                                  # dim + 1
    chromatic_number: int
    chromatic_lower_bound: int              # f0 - chromatic number
    canonical_lower_bound: Optional[int]    # f0 - |c| when the canonical map verifies
    s_upper: int                            # f0 - n
    s2_exact: Optional[int]
    s2_status: str                          # "exact" | "inconclusive"
    s_exact: Optional[int]
    s_status: str                           # "exact" | "inconclusive"

    @property
    def r2(self) -> Optional[int]:
        return None if self.s2_exact is None else self.f0 - self.s2_exact

    @property
    def r(self) -> Optional[int]:
        return None if self.s_exact is None else self.f0 - self.s_exact

    def to_json_dict(self) -> dict:
        return {
            "f0": self.f0, "n": self.n,
            "chromatic": self.chromatic_number,
            "chromatic_lower": self.chromatic_lower_bound,
            "canonical_lower": self.canonical_lower_bound,
            "s_upper": self.s_upper,
            "s2": self.s2_exact, "s2_status": self.s2_status,
            "s": self.s_exact, "s_status": self.s_status,
        }


def buchstaber_report(K: SimplicialComplex, c: CompositionVector,
                      budget: int = DEFAULT_SEARCH_BUDGET) -> BuchstaberReport:
    """Bounds and exact values for the Buchstaber numbers of one sphere.

    The canonical map certifies s >= f_0 - |c|; the mod-2 search at rank n
    decides s_2 between the two admissible values.  When s_2 lands on the
    lower value the chain s <= s_2 pins s as well; otherwise a bounded
    integer-map search can still push s to the maximum.
    """
    from .analysis import chromatic_number  # local import to avoid a cycle

    f0 = len(K.real_vertices)
    n = K.dimension + 1
    chrom = chromatic_number(K.one_skeleton())
    canonical = canonical_char_map(c, K)
    canonical_ok = verify_char_map(K, canonical)
    canonical_lb = f0 - c.total if canonical_ok else None
    s_upper = f0 - n

    mod2 = search_char_map_mod_p(K, 2, n, budget=budget)
    if mod2.status == "found":
        s2, s2_status = s_upper, "exact"
    elif mod2.status == "none" and canonical_ok:
        # reduction of the canonical map certifies the lower value exactly
        if not verify_char_map(K, canonical.reduce_mod(2)):
            raise MuraiError("canonical map failed to reduce mod 2")
        s2, s2_status = f0 - c.total, "exact"
    else:
        s2, s2_status = None, "inconclusive"

    if s2 is not None and canonical_ok and s2 == f0 - c.total:
        # s <= s2 and the canonical certificate squeeze s exactly
        s, s_status = s2, "exact"
    else:
        integer = search_integer_char_map(K, n, budget=budget)
        if integer.status == "found":
            for p in (2, 3):
                if not verify_char_map(K, integer.char_map.reduce_mod(p)):
                    raise MuraiError("integer map failed to reduce mod %d" % p)
            s, s_status = s_upper, "exact"
        else:
            s, s_status = None, "inconclusive"

    return BuchstaberReport(f0, n, chrom, f0 - chrom, canonical_lb, s_upper,
                            s2, s2_status, s, s_status)
