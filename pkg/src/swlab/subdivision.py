"""Barycentric subdivision realized on flags of the base complex.

A derived vertex is a base simplex (its barycenter); a derived k-simplex is a
flag: a chain of k+1 base simplices each a proper face of the previous one.
Derived vertex ids are assigned by decreasing base dimension (ties broken
lexicographically), so the id tuple of a flag is automatically increasing and
canonical.  The flag behind every derived simplex is stored at build time;
dual-cell queries are dictionary lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionOutOfRange, NotAFlagCell, NotPseudomanifold
from .gf2 import BitMatrix
from .simplicial import Simplex, SimplicialComplex

__all__ = [
    "FlagSimplex",
    "SubdividedComplex",
    "barycentric_subdivide",
    "subdivision_chain_map",
    "flag_dual_cells",
    "flag_partner",
]


def _is_proper_face(a: Simplex, b: Simplex) -> bool:
    return len(a) < len(b) and set(a) <= set(b)


@dataclass(frozen=True)
class FlagSimplex:
    """Descending chain of base simplices (each a proper face of the previous)."""

    chain: tuple[Simplex, ...]

    def __post_init__(self):
        if not self.chain:
            raise NotAFlagCell("empty flag")
        for a, b in zip(self.chain, self.chain[1:]):
            if not _is_proper_face(b, a):
                raise NotAFlagCell(f"{b} is not a proper face of {a}")

    @property
    def degree(self) -> int:
        return len(self.chain) - 1

    @property
    def top(self) -> Simplex:
        return self.chain[0]

    @property
    def bottom(self) -> Simplex:
        return self.chain[-1]

    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) - 1 for s in self.chain)


class SubdividedComplex:
    """Base complex, its barycentric subdivision, and the flag bookkeeping."""

    __slots__ = ("base", "derived", "barycenter_of", "vertex_id", "_flags", "_chain_maps")

    def __init__(self, base: SimplicialComplex):
        self.base = base
        order = sorted(base.simplices(), key=lambda s: (-len(s), s))
        self.barycenter_of: tuple[Simplex, ...] = tuple(order)
        self.vertex_id: dict[Simplex, int] = {s: i for i, s in enumerate(order)}
        flags: dict[tuple[int, ...], tuple[Simplex, ...]] = {}
        vid = self.vertex_id

        def extend(ids: tuple[int, ...], chain: tuple[Simplex, ...]):
            flags[ids] = chain
            last = chain[-1]
            for k in range(1, len(last)):
                for face in combinations(last, k):
                    extend(ids + (vid[face],), chain + (face,))

        for s in order:
            extend((vid[s],), (s,))
        self._flags = flags
        by_dim: dict[int, list[tuple[int, ...]]] = {}
        for t in flags:
            by_dim.setdefault(len(t) - 1, []).append(t)
        skeletons = tuple(tuple(sorted(by_dim[d])) for d in range(len(by_dim)))
        self.derived = SimplicialComplex(skeletons)
        self._chain_maps: dict[int, BitMatrix] = {}

    def flag_of(self, derived_simplex) -> FlagSimplex:
        t = tuple(derived_simplex)
        chain = self._flags.get(t)
        if chain is None:
            raise NotAFlagCell(f"{t} is not a derived simplex")
        return FlagSimplex(chain)

    def derived_index_of_flag(self, flag: FlagSimplex) -> int:
        ids = tuple(self.vertex_id[s] for s in flag.chain)
        return self.derived.index(ids)

    def chain_map(self, d: int) -> BitMatrix:
        """Mod-2 subdivision chain map C_d(base) -> C_d(derived).

        Column sigma carries the (d+1)! full flags inside sigma (dimensions
        d, d-1, ..., 0 starting at sigma).
        """
        if not 0 <= d <= self.base.dim:
            raise DimensionOutOfRange(f"dimension {d} outside 0..{self.base.dim}")
        if d not in self._chain_maps:
            vid = self.vertex_id
            didx = self.derived._index[d]
            entries = []

            def descend(ids: tuple[int, ...], last: Simplex, j: int):
                if len(last) == 1:
                    entries.append((didx[ids], j))
                    return
                for k in range(len(last)):
                    face = last[:k] + last[k + 1 :]
                    descend(ids + (vid[face],), face, j)

            for j, s in enumerate(self.base.skeleton(d)):
                descend((vid[s],), s, j)
            self._chain_maps[d] = BitMatrix.from_entries(
                self.derived.n_simplices(d), self.base.n_simplices(d), entries
            )
        return self._chain_maps[d]

    def __repr__(self):
        return f"SubdividedComplex(base f={self.base.f_vector}, derived f={self.derived.f_vector})"


def barycentric_subdivide(complex: SimplicialComplex) -> SubdividedComplex:
    return SubdividedComplex(complex)


def subdivision_chain_map(subdivision: SubdividedComplex, d: int) -> BitMatrix:
    return subdivision.chain_map(d)


def _require_closed_base(subdivision: SubdividedComplex):
    report = subdivision.base.is_closed_pseudomanifold()
    if not report.passed:
        raise NotPseudomanifold("base complex is not a closed pseudomanifold", report)


def flag_dual_cells(subdivision: SubdividedComplex, i: int):
    """Derived i-simplices whose flags run through dimensions n, n-1, ..., n-i.

    Returns {base (n-i)-simplex: [derived id tuples]} with keys in skeleton
    order and cells in derived skeleton order.
    """
    _require_closed_base(subdivision)
    n = subdivision.base.dim
    if not 0 <= i <= n:
        raise DimensionOutOfRange(f"cell degree {i} outside 0..{n}")
    want = tuple(range(n, n - i - 1, -1))
    groups: dict[Simplex, list[tuple[int, ...]]] = {
        s: [] for s in subdivision.base.skeleton(n - i)
    }
    for t in subdivision.derived.skeleton(i):
        chain = subdivision._flags[t]
        if tuple(len(s) - 1 for s in chain) == want:
            groups[chain[-1]].append(t)
    return groups


def flag_partner(subdivision: SubdividedComplex, cell: FlagSimplex) -> FlagSimplex:
    """Swap the top simplex for the other facet around the same ridge.

    Defined for cells of degree >= 1 whose flag starts at a top-dimensional
    simplex with consecutive dimensions; a fixed-point-free involution on
    closed pseudomanifolds.
    """
    n = subdivision.base.dim
    dims = cell.dims()
    if cell.degree < 1 or dims != tuple(range(n, n - cell.degree - 1, -1)):
        raise NotAFlagCell(f"flag dimensions {dims} are not consecutive from {n}")
    ridge = cell.chain[1]
    tops = [t for t in subdivision.base.cofacets(ridge) if len(t) == n + 1]
    if len(tops) != 2:
        raise NotPseudomanifold(
            f"ridge {ridge} lies in {len(tops)} top simplices, need exactly 2"
        )
    other = tops[0] if tops[1] == cell.top else tops[1]
    return FlagSimplex((other,) + cell.chain[1:])
