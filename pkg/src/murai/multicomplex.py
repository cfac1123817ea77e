"""Multicomplexes: divisibility-closed sets of bounded-exponent monomials.

A composition vector ``c = (c_1, ..., c_m)`` bounds the exponent grid: the
monomials are the exponent vectors ``a`` with ``0 <= a_i <= c_i``.  A
multicomplex is a nonempty, divisibility-closed subset of that grid; membership
is stored as one Python int used as a flat bit table over mixed-radix cell
indexes (``index(a) = sum a_i * strides_i``), so closure checks and duals are
cheap bit work.

Exponent vectors are plain ``tuple[int, ...]`` throughout.  Axes are 0-based
here; only the simplicial vertex labels (``Vertex``) are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .errors import CensusTooLargeError, InvalidMonomialError, NotProperError

#: Default cap on grid cells for enumeration (2**24).
DEFAULT_GRID_CAP = 1 << 24


@dataclass(frozen=True)
class CompositionVector:
    """The vector c of per-axis exponent bounds; parameterizes everything."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 1:
            raise InvalidMonomialError("composition vector needs at least one axis")
        if any(e < 1 for e in entries):
            raise InvalidMonomialError(f"composition entries must be >= 1, got {entries}")

    @classmethod
    def parse(cls, text: str) -> "CompositionVector":
        """Parse ``"2,1"`` (commas and/or spaces) into a composition vector."""
        parts = text.replace(",", " ").split()
        if not parts:
            raise InvalidMonomialError("empty composition vector")
        return cls(tuple(int(p) for p in parts))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        """|c|, the sum of the entries."""
        return sum(self.entries)

    @property
    def bar(self) -> tuple[int, ...]:
        """The shifted vector (c_1 + 1, ..., c_m + 1)."""
        return tuple(e + 1 for e in self.entries)

    @property
    def cells(self) -> int:
        """Number of grid cells, prod(c_i + 1)."""
        n = 1
        for e in self.entries:
            n *= e + 1
        return n

    @property
    def strides(self) -> tuple[int, ...]:
        s, out = 1, []
        for e in self.entries:
            out.append(s)
            s *= e + 1
        return tuple(out)

    def index(self, a: tuple[int, ...]) -> int:
        """Mixed-radix cell index of the exponent vector ``a``."""
        return sum(ai * si for ai, si in zip(a, self.strides))

    def exponents(self, idx: int) -> tuple[int, ...]:
        """Inverse of :meth:`index`."""
        out = []
        for e in self.entries:
            idx, r = divmod(idx, e + 1)
            out.append(r)
        return tuple(out)

    def iter_monomials(self) -> Iterator[tuple[int, ...]]:
        """All grid monomials in lexicographic order."""
        yield from product(*[range(e + 1) for e in self.entries])

    def is_monomial(self, a: tuple[int, ...]) -> bool:
        return len(a) == self.m and all(0 <= ai <= ci for ai, ci in zip(a, self.entries))

    def validate_monomial(self, a: tuple[int, ...]) -> tuple[int, ...]:
        a = tuple(int(x) for x in a)
        if not self.is_monomial(a):
            raise InvalidMonomialError(f"{a} is not a monomial for c={self.entries}")
        return a

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


def complement(a: tuple[int, ...], c: CompositionVector) -> tuple[int, ...]:
    """The complementary exponent vector c - a."""
    a = c.validate_monomial(a)
    return tuple(ci - ai for ai, ci in zip(a, c.entries))


def diamond(a: tuple[int, ...], axis: int, level: int) -> tuple[int, ...]:
    """Replace the exponent on ``axis`` (0-based) by ``level``."""
    return a[:axis] + (level,) + a[axis + 1:]


def divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


# -- monomial text format: semicolon-separated exponent tuples, e.g. "2 0; 1 1"

def parse_monomials(text: str, c: CompositionVector) -> tuple[tuple[int, ...], ...]:
    gens = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        gens.append(c.validate_monomial(tuple(int(t) for t in chunk.split())))
    if not gens:
        raise InvalidMonomialError("no monomials in %r" % text)
    return tuple(gens)


def format_monomials(gens: Iterable[tuple[int, ...]]) -> str:
    ordered = sorted(gens, reverse=True)
    return "; ".join(" ".join(str(x) for x in g) for g in ordered)


class Multicomplex:
    """A proper-or-full multicomplex with eagerly cached antichains.

    Instances are immutable after construction.  ``generators`` (the maximal
    members) and ``min_non_elements`` (minimal non-members) are computed once;
    every downstream construction reads them repeatedly.
    """

    __slots__ = ("c", "_mask", "generators", "min_non_elements", "is_proper")

    def __init__(self, c: CompositionVector, mask: int):
        if mask == 0:
            raise InvalidMonomialError("a multicomplex must be nonempty")
        self.c = c
        self._mask = mask
        self._check_closure()
        gens, mins = self._antichains()
        self.generators = gens
        self.min_non_elements = mins
        self.is_proper = mask != (1 << c.cells) - 1

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_generators(cls, c: CompositionVector, gens: Iterable[tuple[int, ...]]) -> "Multicomplex":
        """Downward closure of the given monomials."""
        mask = 0
        seen_any = False
        for g in gens:
            g = c.validate_monomial(g)
            seen_any = True
            for a in product(*[range(gi + 1) for gi in g]):
                mask |= 1 << c.index(a)
        if not seen_any:
            raise InvalidMonomialError("at least one generator required")
        return cls(c, mask)

    @classmethod
    def from_members(cls, c: CompositionVector, members: Iterable[tuple[int, ...]]) -> "Multicomplex":
        mask = 0
        for a in members:
            mask |= 1 << c.index(c.validate_monomial(a))
        return cls(c, mask)

    @classmethod
    def full(cls, c: CompositionVector) -> "Multicomplex":
        return cls(c, (1 << c.cells) - 1)

    @classmethod
    def parse(cls, c: CompositionVector, text: str) -> "Multicomplex":
        return cls.from_generators(c, parse_monomials(text, c))

    # -- queries -----------------------------------------------------------

    def contains(self, a: tuple[int, ...]) -> bool:
        return bool(self._mask >> self.c.index(self.c.validate_monomial(a)) & 1)

    __contains__ = contains

    def members(self) -> Iterator[tuple[int, ...]]:
        """Members in lexicographic monomial order."""
        for a in self.c.iter_monomials():
            if self._mask >> self.c.index(a) & 1:
                yield a

    def member_count(self) -> int:
        return bin(self._mask).count("1")

    @property
    def mask(self) -> int:
        return self._mask

    def generators_text(self) -> str:
        return format_monomials(self.generators)

    # -- structure ---------------------------------------------------------

    def _check_closure(self):
        c = self.c
        if not self._mask & 1:
            raise InvalidMonomialError("the unit monomial must be a member")
        for a in c.iter_monomials():
            if not self._mask >> c.index(a) & 1:
                continue
            for i, ai in enumerate(a):
                if ai and not self._mask >> c.index(diamond(a, i, ai - 1)) & 1:
                    raise InvalidMonomialError(
                        f"membership set is not divisibility-closed at {a}")

    def _antichains(self):
        c = self.c
        gens, mins = [], []
        for a in c.iter_monomials():
            if self._mask >> c.index(a) & 1:
                if all(ai == ci or not self._mask >> c.index(diamond(a, i, ai + 1)) & 1
                       for i, (ai, ci) in enumerate(zip(a, c.entries))):
                    gens.append(a)
            else:
                if all(ai == 0 or self._mask >> c.index(diamond(a, i, ai - 1)) & 1
                       for i, ai in enumerate(a)):
                    mins.append(a)
        return tuple(gens), tuple(mins)

    # -- operations --------------------------------------------------------

    def alexander_dual(self) -> "Multicomplex":
        """The dual {c - a : a not a member}; an involution on proper multicomplexes."""
        if not self.is_proper:
            raise NotProperError("the full multicomplex has no Alexander dual")
        c = self.c
        mask = 0
        for a in c.iter_monomials():
            if not self._mask >> c.index(a) & 1:
                mask |= 1 << c.index(complement(a, c))
        return Multicomplex(c, mask)

    def ideal_generators(self) -> tuple[tuple[int, ...], ...]:
        """Minimal generating set of the ideal of non-members: min(M)."""
        if not self.is_proper:
            raise NotProperError("the full multicomplex generates the zero ideal")
        return self.min_non_elements

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multicomplex)
                and self.c.entries == other.c.entries and self._mask == other._mask)

    def __hash__(self) -> int:
        return hash((self.c.entries, self._mask))

    def __repr__(self) -> str:
        return f"Multicomplex(c={self.c}, <{self.generators_text()}>)"


def enumerate_proper(c: CompositionVector, max_cells: int = DEFAULT_GRID_CAP) -> Iterator[Multicomplex]:
    """Yield every proper multicomplex for ``c`` exactly once.

    The order is fixed and documented: ascending lexicographic over the
    membership characteristic vector read in lexicographic monomial order, so
    census output is stable across runs and platforms.  ``<1>`` comes first.
    """
    if c.cells > max_cells:
        raise CensusTooLargeError(
            f"grid has {c.cells} cells, exceeding the cap of {max_cells}")
    for mask in _downset_masks(c):
        yield Multicomplex(c, mask)


def _downset_masks(c: CompositionVector) -> Iterator[int]:
    cells = sorted(c.iter_monomials())  # lexicographic
    n = len(cells)
    index = {a: i for i, a in enumerate(cells)}
    child_masks = []
    for a in cells:
        mask = 0
        for i, ai in enumerate(a):
            if ai:
                mask |= 1 << index[diamond(a, i, ai - 1)]
        child_masks.append(mask)
    full = (1 << n) - 1
    grid_index = [c.index(a) for a in cells]

    # Iterative DFS over cells in lex order, absent branch explored first, so
    # leaves come out in ascending lex order of the characteristic vector.
    stack = [(0, 0)]
    while stack:
        pos, mask = stack.pop()
        while pos < n:
            cm = child_masks[pos]
            if mask & cm == cm:
                stack.append((pos + 1, mask | 1 << pos))
            pos += 1
        if mask and mask != full:
            out = 0
            for i in range(n):
                if mask >> i & 1:
                    out |= 1 << grid_index[i]
            yield out


def count_proper(c: CompositionVector, max_cells: int = DEFAULT_GRID_CAP) -> int:
    return sum(1 for _ in enumerate_proper(c, max_cells))
