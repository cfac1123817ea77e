"""Census orchestration: one full invariant record per proper multicomplex.

Records serialize as JSON Lines with a schema version field on every line;
the field order is fixed so a record round-trips byte-for-byte.  Iso classes
are assigned per run in census order and matched against a lazily built table
of named types (cycles, boundaries of simplices and their joins, truncation
types, cyclic polytope boundaries).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from . import analysis
from .buchstaber import DEFAULT_SEARCH_BUDGET, BuchstaberReport, buchstaber_report, canonical_char_map, verify_char_map
from .errors import TooLargeError
from .multicomplex import (DEFAULT_GRID_CAP, CompositionVector, Multicomplex,
                           enumerate_proper)
from .simplicial import DEFAULT_ISO_CAP, SimplicialComplex, boundary_simplex, join
from .spheres import facet_set

SCHEMA_VERSION = 1


@dataclass
class CensusRecord:
    c: tuple[int, ...]
    gens: str
    dual_gens: str
    f_vector: tuple[int, ...]
    euler: int
    pseudomanifold: bool
    sphere_check: str              # "complete" | "partial"
    sphere_ok: bool
    chordal: bool
    chordless_witness: Optional[tuple[str, ...]]
    stacked: bool
    truncation_cuts: Optional[int]
    base_dim: Optional[int]
    neighborly: bool
    flag: bool
    chromatic: Optional[int]
    buchstaber: Optional[dict]
    iso_class: Optional[int] = None

    def to_json(self) -> str:
        doc = {
            "v": SCHEMA_VERSION,
            "c": list(self.c),
            "gens": self.gens,
            "dual_gens": self.dual_gens,
            "f_vector": list(self.f_vector),
            "euler": self.euler,
            "pseudomanifold": self.pseudomanifold,
            "sphere_check": self.sphere_check,
            "sphere_ok": self.sphere_ok,
            "chordal": self.chordal,
            "chordless_witness": (list(self.chordless_witness)
                                  if self.chordless_witness is not None else None),
            "stacked": self.stacked,
            "truncation_cuts": self.truncation_cuts,
            "base_dim": self.base_dim,
            "neighborly": self.neighborly,
            "flag": self.flag,
            "chromatic": self.chromatic,
            "buchstaber": self.buchstaber,
            "iso_class": self.iso_class,
        }
        return json.dumps(doc, separators=(",", ":"), sort_keys=False)

    @classmethod
    def from_json(cls, line: str) -> "CensusRecord":
        doc = json.loads(line)
        if doc.get("v") != SCHEMA_VERSION:
            raise ValueError(f"unsupported census schema version {doc.get('v')!r}")
        return cls(
            c=tuple(doc["c"]), gens=doc["gens"], dual_gens=doc["dual_gens"],
            f_vector=tuple(doc["f_vector"]), euler=doc["euler"],
            pseudomanifold=doc["pseudomanifold"], sphere_check=doc["sphere_check"],
            sphere_ok=doc["sphere_ok"], chordal=doc["chordal"],
            chordless_witness=(tuple(doc["chordless_witness"])
                               if doc["chordless_witness"] is not None else None),
            stacked=doc["stacked"], truncation_cuts=doc["truncation_cuts"],
            base_dim=doc["base_dim"], neighborly=doc["neighborly"], flag=doc["flag"],
            chromatic=doc["chromatic"], buchstaber=doc["buchstaber"],
            iso_class=doc["iso_class"],
        )


def compute_record(M: Multicomplex, invariants: str = "full",
                   search_budget: int = DEFAULT_SEARCH_BUDGET) -> CensusRecord:
    """All analyzers on one multicomplex; expensive fields degrade to inconclusive."""
    c = M.c
    K = facet_set(M)
    dual = M.alexander_dual()
    chord = analysis.chordality(K)
    if K.dimension >= 1:
        stack = analysis.stackedness(K, c)
    else:
        stack = analysis.StackednessReport(False, None, None)
    ok, kind = K.sphere_check()

    chromatic: Optional[int] = None
    buch: Optional[dict] = None
    try:
        if invariants == "full":
            rep = buchstaber_report(K, c, budget=search_budget)
            chromatic = rep.chromatic_number
            buch = rep.to_json_dict()
        else:
            chromatic = analysis.chromatic_number(K.one_skeleton())
            f0 = len(K.real_vertices)
            n = K.dimension + 1
            canonical = canonical_char_map(c, K)
            lb = f0 - c.total if verify_char_map(K, canonical) else None
            buch = BuchstaberReport(f0, n, chromatic, f0 - chromatic, lb, f0 - n,
                                    None, "inconclusive", None,
                                    "inconclusive").to_json_dict()
    except TooLargeError:
        pass

    witness = None
    if chord.witness is not None:
        witness = tuple(str(v) for v in chord.witness)
    return CensusRecord(
        c=c.entries, gens=M.generators_text(), dual_gens=dual.generators_text(),
        f_vector=K.f_vector, euler=K.euler_characteristic(),
        pseudomanifold=K.is_pseudomanifold(), sphere_check=kind, sphere_ok=ok,
        chordal=chord.chordal, chordless_witness=witness,
        stacked=stack.stacked, truncation_cuts=stack.truncation_cuts,
        base_dim=stack.base_dim, neighborly=analysis.neighborliness(K),
        flag=K.is_flag(), chromatic=chromatic, buchstaber=buch,
    )


@dataclass
class CensusSummary:
    c: tuple[int, ...]
    records: list[CensusRecord]
    class_reps: list[int]
    class_names: list[str]
    class_counts: list[int]

    def lines(self) -> list[str]:
        out = [f"census c=({','.join(str(x) for x in self.c)}): "
               f"{len(self.records)} multicomplexes, {len(self.class_reps)} iso classes"]
        for cid, rep in enumerate(self.class_reps):
            out.append(f"  class {cid}: {self.class_names[cid]}  "
                       f"x{self.class_counts[cid]}  rep <{self.records[rep].gens}>")
        return out


_WORKER_STATE: dict = {}


def _pool_init(c_entries, invariants, budget):
    _WORKER_STATE["c"] = CompositionVector(c_entries)
    _WORKER_STATE["invariants"] = invariants
    _WORKER_STATE["budget"] = budget


def _pool_job(mask: int) -> CensusRecord:
    M = Multicomplex(_WORKER_STATE["c"], mask)
    return compute_record(M, _WORKER_STATE["invariants"], _WORKER_STATE["budget"])


def run_census(c: CompositionVector, *, invariants: str = "full",
               jobs: int = 1, max_grid: int = DEFAULT_GRID_CAP,
               search_budget: int = DEFAULT_SEARCH_BUDGET,
               iso_cap: int = DEFAULT_ISO_CAP) -> CensusSummary:
    """Enumerate the census in the fixed order and assemble records + classes."""
    mcs = list(enumerate_proper(c, max_cells=max_grid))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs, initializer=_pool_init,
                                 initargs=(c.entries, invariants, search_budget)) as pool:
            records = list(pool.map(_pool_job, [M.mask for M in mcs], chunksize=8))
    else:
        records = [compute_record(M, invariants, search_budget) for M in mcs]

    spheres = [facet_set(M) for M in mcs]
    ids, reps = analysis.iso_classes(spheres)
    names = [_named_type(spheres[rep], iso_cap) for rep in reps]
    counts = [0] * len(reps)
    for i, cid in enumerate(ids):
        records[i].iso_class = cid
        counts[cid] += 1
    return CensusSummary(c.entries, records, reps, names, counts)


def _named_type(K: SimplicialComplex, iso_cap: int = DEFAULT_ISO_CAP) -> str:
    """Best-effort name from the lazily built catalogue of known types."""
    d = K.dimension
    f0 = len(K.real_vertices)
    try:
        if d == 1:
            for name, ref in analysis._named_dim1():
                if K.is_isomorphic(ref, cap=iso_cap) is not None:
                    return name
        elif d == 2:
            for name, ref in analysis._named_dim2():
                if K.is_isomorphic(ref, cap=iso_cap) is not None:
                    return name
        elif d >= 3:
            for name, ref in _joins_catalogue(d):
                if K.is_isomorphic(ref, cap=iso_cap) is not None:
                    return name
            if f0 > d + 1:
                spec = analysis.CyclicSpec(f0, d + 1)
                if analysis.cyclic_compare(K, spec) is not None:
                    return f"Delta({f0},{d + 1})"
    except TooLargeError:
        pass
    return f"sphere(f={K.f_vector})"


def _joins_catalogue(d: int) -> list[tuple[str, SimplicialComplex]]:
    """Boundaries of simplices and joins of two of them in dimension d."""
    out = [(f"bd(Delta^{d + 1})", boundary_simplex(tuple(range(d + 2))))]
    for a in range(1, d):
        b = d - a
        left = boundary_simplex(tuple(f"u{i}" for i in range(a + 2)))
        right = boundary_simplex(tuple(f"w{i}" for i in range(b + 2)))
        out.append((f"bd(Delta^{a})*bd(Delta^{b})", join(left, right)))
    return out


def write_jsonl(records: Iterable[CensusRecord], path: str) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json())
            fh.write("\n")
            n += 1
    return n
