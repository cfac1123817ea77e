"""Bit-level census engine for whole-range verification.

This module re-derives, per composition, everything the object layer computes
per sphere, but over packed uint64 membership masks so that censuses with
millions of multicomplexes stay affordable.  It is used by the acceptance
suite for the exhaustive two-route, sphere-invariant and canonical-map checks;
the object layer stays the source of truth and the kernel is cross-validated
against it on small censuses (see tests/test_kernel.py).

Key reductions, each validated against brute force in the tests:

* Faces of the ideal-route complex are controlled per axis by the length of
  the initial run, the length of the final run, and fullness; generators are
  per-axis prefix intervals (pol), suffix intervals (pol*), or full columns,
  so a vertex set avoids them all iff its run-length vectors avoid the two
  reconstructed non-membership sets and no column is full.
* Maximal gen-avoiding sets therefore miss, per axis, only their lowest and
  highest missing level; they correspond to comparable cell pairs (lo, hi)
  with lo in the reconstructed membership set and hi outside it.  Pairs with
  one strict axis are the expected facets; a pair with two or more strict
  axes that admits no single-vertex extension is a maximal face of the wrong
  dimension, i.e. a route mismatch.
* Face counts by size aggregate row polynomials over valid pairs, giving f_0
  and the Euler characteristic without materializing the face lattice.
* The canonical characteristic map restricted to a facet depends only on the
  facet's missing profile, not on the multicomplex, so each facet shape is
  verified once per composition with the same exact integer routine the
  object layer uses, and per-sphere accounting just looks the result up.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .buchstaber import _snf_unit_diagonal
from .errors import CensusTooLargeError

if os.environ.get("MURAI_NO_NUMBA"):
    HAVE_NUMBA = False
else:
    try:
        from numba import njit as _njit
        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False

if not HAVE_NUMBA:
    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


U0 = np.uint64(0)

# stats vector layout
N_PROPER = 0
PROP_FAIL = 1          # min(M dual) != complements of max(M)
PW_FAIL = 2            # gen-reconstructed membership masks disagree
ROUTE_FAIL = 3         # facet sets of the two routes differ
PM_FAIL = 4            # some ridge not in exactly two facets
CONN_FAIL = 5          # facet adjacency graph disconnected
CHI_FAIL = 6           # Euler characteristic wrong
F0_FAIL = 7            # vertex count outside [|c|, |c|+m]
CANON_FACETS = 8       # facet instances whose canonical block was verified
CANON_FAIL = 9         # facet instances failing the canonical check
FIRST_BAD = 10         # census index of the first failure, -1 if none
STATS_LEN = 11


_ARG_NAMES = ("n", "m", "total", "bits", "child_mask", "child_idx", "parent_idx",
              "up_mask", "dual_perm", "plo", "phi", "pk", "psoff", "saxis",
              "slosw", "shisw", "prow_f0", "prow_m1", "k1id", "k1lo", "k1hi",
              "n_k1", "arow", "maxL", "exps", "centries", "strides", "pmoff",
              "pmcand", "k1canon", "check_window", "expected_chi")


@dataclass
class KernelTables:
    """Per-composition precomputed arrays consumed by the jitted scan."""

    c: tuple[int, ...]
    n_cells: int
    args: tuple

    def __getattr__(self, name):
        try:
            return self.args[_ARG_NAMES.index(name)]
        except ValueError:
            raise AttributeError(name) from None


@dataclass
class KernelReport:
    c: tuple[int, ...]
    n_proper: int
    failures: dict[str, int]
    canonical_facets: int
    canonical_failures: int
    first_bad_index: int

    @property
    def ok(self) -> bool:
        return not any(self.failures.values()) and self.canonical_failures == 0


def build_tables(c: tuple[int, ...]) -> KernelTables:
    m = len(c)
    bars = [ci + 1 for ci in c]
    n = 1
    for b in bars:
        n *= b
    if n > 64:
        raise CensusTooLargeError(f"kernel grids are capped at 64 cells, got {n}")
    total = sum(c)

    # lex cell ids: first axis most significant
    strides = [0] * m
    s = 1
    for i in range(m - 1, -1, -1):
        strides[i] = s
        s *= bars[i]
    cells = list(product(*[range(b) for b in bars]))
    cells.sort()
    index = {a: i for i, a in enumerate(cells)}
    assert all(index[a] == sum(a[i] * strides[i] for i in range(m)) for a in cells)

    bits = np.array([1 << i for i in range(64)], dtype=np.uint64)
    exps = np.zeros((n, m), dtype=np.int64)
    child_idx = np.full((n, m), -1, dtype=np.int64)
    parent_idx = np.full((n, m), -1, dtype=np.int64)
    child_mask_py = [0] * n
    dual_perm = np.zeros(n, dtype=np.int64)
    for a in cells:
        i = index[a]
        for ax in range(m):
            exps[i, ax] = a[ax]
            if a[ax] > 0:
                ch = index[a[:ax] + (a[ax] - 1,) + a[ax + 1:]]
                child_idx[i, ax] = ch
                child_mask_py[i] |= 1 << ch
            if a[ax] < c[ax]:
                parent_idx[i, ax] = index[a[:ax] + (a[ax] + 1,) + a[ax + 1:]]
        dual_perm[i] = index[tuple(ci - ai for ai, ci in zip(a, c))]
    child_mask = np.array(child_mask_py, dtype=np.uint64)

    up_mask_py = [0] * n
    for a in cells:
        i = index[a]
        mask = 0
        for b in product(*[range(ai, ci + 1) for ai, ci in zip(a, c)]):
            mask |= 1 << index[b]
        up_mask_py[i] = mask
    up_mask = np.array(up_mask_py, dtype=np.uint64)

    # pair table: all coordinatewise-comparable (lo, hi)
    pairs = []
    for lo in cells:
        for hi in product(*[range(l, ci + 1) for l, ci in zip(lo, c)]):
            pairs.append((lo, tuple(hi)))
    P = len(pairs)
    plo = np.zeros(P, dtype=np.int64)
    phi = np.zeros(P, dtype=np.int64)
    pk = np.zeros(P, dtype=np.int64)
    prow_f0 = np.zeros(P, dtype=np.int64)
    prow_m1 = np.zeros(P, dtype=np.int64)
    k1id = np.full(P, -1, dtype=np.int64)
    strict_rows = []
    k1_of_pair: dict[tuple[int, int], int] = {}
    k1lo_list, k1hi_list, k1axis_list = [], [], []
    for r, (lo, hi) in enumerate(pairs):
        li, hi_i = index[lo], index[hi]
        plo[r], phi[r] = li, hi_i
        strict = [ax for ax in range(m) if lo[ax] < hi[ax]]
        pk[r] = len(strict)
        # row polynomial prod_i N_i, N_i = x^{c_i-g}(1+x)^{g-1} (g = gap), x^{c_i} at g=0
        poly = np.array([1], dtype=object)
        for ax in range(m):
            g = hi[ax] - lo[ax]
            if g == 0:
                axis_poly = np.array([0] * c[ax] + [1], dtype=object)
            else:
                axis_poly = np.array([0] * (c[ax] - g) + [1], dtype=object)
                for _ in range(g - 1):
                    axis_poly = np.convolve(axis_poly, np.array([1, 1], dtype=object))
            poly = np.convolve(poly, axis_poly)
        prow_f0[r] = int(poly[1]) if len(poly) > 1 else 0
        acc = 0
        for e, coeff in enumerate(poly):
            acc += int(coeff) * ((-1) ** e)
        prow_m1[r] = acc
        row_strict = []
        for ax in strict:
            losw = index[lo[:ax] + (hi[ax],) + lo[ax + 1:]]
            hisw = index[hi[:ax] + (lo[ax],) + hi[ax + 1:]]
            row_strict.append((ax, losw, hisw))
        strict_rows.append(row_strict)
        if len(strict) == 1:
            kid = len(k1lo_list)
            k1id[r] = kid
            k1_of_pair[(li, hi_i)] = kid
            k1lo_list.append(li)
            k1hi_list.append(hi_i)
            k1axis_list.append(strict[0])

    psoff = np.zeros(P + 1, dtype=np.int64)
    for r in range(P):
        psoff[r + 1] = psoff[r] + len(strict_rows[r])
    S = int(psoff[P])
    saxis = np.zeros(S, dtype=np.int64)
    slosw = np.zeros(S, dtype=np.int64)
    shisw = np.zeros(S, dtype=np.int64)
    t = 0
    for row_strict in strict_rows:
        for ax, losw, hisw in row_strict:
            saxis[t], slosw[t], shisw[t] = ax, losw, hisw
            t += 1

    n_k1 = len(k1lo_list)
    k1lo = np.array(k1lo_list, dtype=np.int64)
    k1hi = np.array(k1hi_list, dtype=np.int64)

    # route-A lookup: (member cell, axis, substituted level) -> k1 id
    maxL = max(bars)
    arow = np.full(n * m * maxL, -1, dtype=np.int64)
    for a in cells:
        i = index[a]
        for ax in range(m):
            for j in range(a[ax] + 1, c[ax] + 1):
                d = index[a[:ax] + (j,) + a[ax + 1:]]
                arow[(i * m + ax) * maxL + j] = k1_of_pair[(i, d)]

    # ridge candidate table per (facet, removed vertex)
    pmoff = np.zeros(n_k1 + 1, dtype=np.int64)
    cand_rows: list[list[int]] = []
    for kid in range(n_k1):
        lo = cells[k1lo[kid]]
        hi = cells[k1hi[kid]]
        sx = k1axis_list[kid]
        h = hi[sx]
        slots = []
        for ax in range(m):
            for w in range(c[ax] + 1):
                if w == lo[ax] or (ax == sx and w == h):
                    continue
                slots.append((ax, w))
        assert len(slots) == total - 1
        for ax, w in slots:
            cands = [-1, -1, -1]
            if ax != sx:
                lo2 = lo[:ax] + (w,) + lo[ax + 1:]
                hi2 = hi[:ax] + (w,) + hi[ax + 1:]
                cands[0] = k1_of_pair[(index[lo2], index[hi2])]
                a_, b_ = min(lo[ax], w), max(lo[ax], w)
                u = lo[:ax] + (a_,) + lo[ax + 1:]
                v = lo[:ax] + (b_,) + lo[ax + 1:]
                cands[1] = k1_of_pair[(index[u], index[v])]
                z = lo[:sx] + (h,) + lo[sx + 1:]
                u = z[:ax] + (a_,) + z[ax + 1:]
                v = z[:ax] + (b_,) + z[ax + 1:]
                cands[2] = k1_of_pair[(index[u], index[v])]
            else:
                a_, b_ = min(lo[ax], w), max(lo[ax], w)
                u = lo[:ax] + (a_,) + lo[ax + 1:]
                v = lo[:ax] + (b_,) + lo[ax + 1:]
                cands[0] = k1_of_pair[(index[u], index[v])]
                a_, b_ = min(h, w), max(h, w)
                u = lo[:ax] + (a_,) + lo[ax + 1:]
                v = lo[:ax] + (b_,) + lo[ax + 1:]
                cands[1] = k1_of_pair[(index[u], index[v])]
            cand_rows.append(cands)
        pmoff[kid + 1] = pmoff[kid] + len(slots)
    pmcand = (np.array(cand_rows, dtype=np.int64).reshape(-1)
              if cand_rows else np.zeros(0, dtype=np.int64))

    # canonical characteristic map verified once per facet shape
    axis_off = [0] * m
    acc = 0
    for ax in range(m):
        axis_off[ax] = acc
        acc += c[ax]
    k1canon = np.zeros(n_k1, dtype=np.int64)
    for kid in range(n_k1):
        lo = cells[k1lo[kid]]
        hi = cells[k1hi[kid]]
        sx = k1axis_list[kid]
        rows = []
        for ax in range(m):
            for j in range(c[ax] + 1):
                if j == lo[ax] or (ax == sx and j == hi[ax]):
                    continue
                vec = [0] * total
                if j >= 1:
                    vec[axis_off[ax] + j - 1] = 1
                else:
                    for tt in range(c[ax]):
                        vec[axis_off[ax] + tt] = 1
                rows.append(tuple(vec))
        k1canon[kid] = 1 if _snf_unit_diagonal(rows, total) else 0

    centries = np.array(c, dtype=np.int64)
    strides_arr = np.array(strides, dtype=np.int64)
    expected_chi = 1 + (-1) ** total
    check_window = 1 if total >= 2 else 0

    args = (n, m, total, bits, child_mask, child_idx, parent_idx, up_mask,
            dual_perm, plo, phi, pk, psoff, saxis, slosw, shisw,
            prow_f0, prow_m1, k1id, k1lo, k1hi, n_k1, arow, maxL,
            exps, centries, strides_arr, pmoff, pmcand, k1canon,
            check_window, expected_chi)
    return KernelTables(tuple(c), n, args)


@_njit(cache=True)
def _scan(n, m, total, bits, child_mask, child_idx, parent_idx, up_mask,
          dual_perm, plo, phi, pk, psoff, saxis, slosw, shisw,
          prow_f0, prow_m1, k1id, k1lo, k1hi, n_k1, arow, maxL,
          exps, centries, strides, pmoff, pmcand, k1canon,
          check_window, expected_chi):
    stats = np.zeros(STATS_LEN, dtype=np.int64)
    stats[FIRST_BAD] = -1
    u0 = np.uint64(0)
    full = u0
    for i in range(n):
        full |= bits[i]

    minM = np.zeros(n, dtype=np.int64)
    dminM = np.zeros(n, dtype=np.int64)
    maxM = np.zeros(n, dtype=np.int64)
    k1A = np.zeros(n_k1, dtype=np.uint8)
    k1B = np.zeros(n_k1, dtype=np.uint8)
    uf = np.zeros(n_k1, dtype=np.int64)
    n_pairs = plo.shape[0]

    stack_pos = np.zeros(n + 2, dtype=np.int64)
    stack_mask = np.zeros(n + 2, dtype=np.uint64)
    top = 0
    stack_pos[0] = 0
    stack_mask[0] = u0
    census = np.int64(-1)

    while top >= 0:
        pos = stack_pos[top]
        mask = stack_mask[top]
        top -= 1
        while pos < n:
            cm = child_mask[pos]
            if mask & cm == cm:
                top += 1
                stack_pos[top] = pos + 1
                stack_mask[top] = mask | bits[pos]
            pos += 1
        if mask == u0 or mask == full:
            continue
        census += 1
        stats[N_PROPER] += 1
        bad = False

        # --- antichains, dual, reconstructed membership masks
        n_min = 0
        n_max = 0
        for cell in range(n):
            if mask & bits[cell] != u0:
                is_gen = True
                for ax in range(m):
                    pidx = parent_idx[cell, ax]
                    if pidx >= 0 and mask & bits[pidx] != u0:
                        is_gen = False
                        break
                if is_gen:
                    maxM[n_max] = cell
                    n_max += 1
            else:
                is_min = True
                for ax in range(m):
                    cidx = child_idx[cell, ax]
                    if cidx >= 0 and mask & bits[cidx] == u0:
                        is_min = False
                        break
                if is_min:
                    minM[n_min] = cell
                    n_min += 1
        dmask = u0
        for cell in range(n):
            if mask & bits[dual_perm[cell]] == u0:
                dmask |= bits[cell]
        n_dmin = 0
        for cell in range(n):
            if dmask & bits[cell] == u0:
                ok = True
                for ax in range(m):
                    cidx = child_idx[cell, ax]
                    if cidx >= 0 and dmask & bits[cidx] == u0:
                        ok = False
                        break
                if ok:
                    dminM[n_dmin] = cell
                    n_dmin += 1

        # duality of generators: min(M dual) == complements of max(M)
        if n_dmin != n_max:
            stats[PROP_FAIL] += 1
            bad = True
        else:
            cmpl = u0
            for t in range(n_max):
                cmpl |= bits[dual_perm[maxM[t]]]
            got = u0
            for t in range(n_dmin):
                got |= bits[dminM[t]]
            if cmpl != got:
                stats[PROP_FAIL] += 1
                bad = True

        Pm = full
        for t in range(n_min):
            Pm &= ~up_mask[minM[t]]
        Qm = full
        for t in range(n_dmin):
            Qm &= ~up_mask[dminM[t]]
        Wm = u0
        for cell in range(n):
            if Qm & bits[dual_perm[cell]] != u0:
                Wm |= bits[cell]
        if Pm != mask or Wm != (~mask & full):
            stats[PW_FAIL] += 1
            bad = True

        # --- pair scan: ideal-route facets, maximality, f0 and chi
        for idx in range(n_k1):
            k1B[idx] = 0
            k1A[idx] = 0
        f0_acc = np.int64(0)
        chi_acc = np.int64(0)
        route_bad = False
        for row in range(n_pairs):
            if Pm & bits[plo[row]] == u0:
                continue
            if Wm & bits[phi[row]] == u0:
                continue
            f0_acc += prow_f0[row]
            chi_acc += prow_m1[row]
            kk = pk[row]
            if kk == 1:
                k1B[k1id[row]] = 1
            elif kk >= 2:
                ext = False
                for t in range(psoff[row], psoff[row + 1]):
                    if Pm & bits[slosw[t]] != u0 or Wm & bits[shisw[t]] != u0:
                        ext = True
                        break
                if not ext:
                    route_bad = True

        # --- facet-formula route
        for cell in range(n):
            if mask & bits[cell] == u0:
                continue
            for ax in range(m):
                e = exps[cell, ax]
                ci = centries[ax]
                dcell = cell
                for j in range(e + 1, ci + 1):
                    dcell += strides[ax]
                    if mask & bits[dcell] != u0:
                        continue
                    k1A[arow[(cell * m + ax) * maxL + j]] = 1

        for idx in range(n_k1):
            if k1A[idx] != k1B[idx]:
                route_bad = True
            if k1A[idx] != 0:
                stats[CANON_FACETS] += 1
                if k1canon[idx] == 0:
                    stats[CANON_FAIL] += 1
                    bad = True
        if route_bad:
            stats[ROUTE_FAIL] += 1
            bad = True

        chi = 1 - chi_acc
        if chi != expected_chi:
            stats[CHI_FAIL] += 1
            bad = True
        if check_window != 0 and (f0_acc < total or f0_acc > total + m):
            stats[F0_FAIL] += 1
            bad = True

        # --- pseudomanifold: ridges in two facets, facet adjacency connected
        pm_bad = False
        for idx in range(n_k1):
            uf[idx] = idx
        for idx in range(n_k1):
            if k1A[idx] == 0:
                continue
            for sl in range(pmoff[idx], pmoff[idx + 1]):
                cnt = 1
                other = np.int64(-1)
                for q in range(3):
                    cd = pmcand[sl * 3 + q]
                    if cd >= 0 and k1A[cd] != 0:
                        cnt += 1
                        other = cd
                if cnt != 2:
                    pm_bad = True
                    break
                ra = idx
                while uf[ra] != ra:
                    uf[ra] = uf[uf[ra]]
                    ra = uf[ra]
                rb = other
                while uf[rb] != rb:
                    uf[rb] = uf[uf[rb]]
                    rb = uf[rb]
                if ra != rb:
                    uf[ra] = rb
            if pm_bad:
                break
        if pm_bad:
            stats[PM_FAIL] += 1
            bad = True
        else:
            roots = 0
            for idx in range(n_k1):
                if k1A[idx] != 0:
                    r = idx
                    while uf[r] != r:
                        r = uf[r]
                    if r == idx:
                        roots += 1
            if roots != 1:
                stats[CONN_FAIL] += 1
                bad = True

        if bad and stats[FIRST_BAD] < 0:
            stats[FIRST_BAD] = census
    return stats


def check_composition(c: tuple[int, ...]) -> KernelReport:
    """Run every kernel check over the full census of ``c``."""
    tables = build_tables(tuple(c))
    stats = _scan(*tables.args)
    failures = {
        "generator_duality": int(stats[PROP_FAIL]),
        "gen_reconstruction": int(stats[PW_FAIL]),
        "route_equivalence": int(stats[ROUTE_FAIL]),
        "ridge_degree": int(stats[PM_FAIL]),
        "facet_connectivity": int(stats[CONN_FAIL]),
        "euler_characteristic": int(stats[CHI_FAIL]),
        "vertex_window": int(stats[F0_FAIL]),
    }
    return KernelReport(tuple(c), int(stats[N_PROPER]), failures,
                        int(stats[CANON_FACETS]), int(stats[CANON_FAIL]),
                        int(stats[FIRST_BAD]))


def acceptance_compositions(max_total: int = 7, max_cells: int = 64) -> list[tuple[int, ...]]:
    """Sorted (descending) composition representatives within the range caps.

    Axis order only relabels vertices, so one representative per multiset of
    entries covers the range; the relabeling equivariance is tested separately.
    """
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], rest: int, maxpart: int, cells: int):
        if prefix:
            out.append(tuple(prefix))
        for k in range(min(maxpart, rest), 0, -1):
            if cells * (k + 1) <= max_cells:
                rec(prefix + [k], rest - k, k, cells * (k + 1))

    rec([], max_total, max_total, 1)
    return sorted(set(out), key=lambda t: (len(t), t))
