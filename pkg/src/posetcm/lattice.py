"""Lattice recognition, structural classes and the Möbius function."""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import NotALattice
from .poset import Poset, bits


@dataclass(frozen=True)
class LatticeStructure:
    is_lattice: bool
    meet: tuple[tuple[int, ...], ...] | None = None
    join: tuple[tuple[int, ...], ...] | None = None


def _least(P: Poset, mask: int) -> int | None:
    """The element of ``mask`` lying below all of ``mask``, if any."""
    for u in bits(mask):
        if P.up[u] & mask == mask:
            return u
    return None


def _greatest(P: Poset, mask: int) -> int | None:
    for u in bits(mask):
        if P.down[u] & mask == mask:
            return u
    return None


def lattice_structure(P: Poset) -> LatticeStructure:
    """Meet and join tables (indexed by element index) when ``P`` is a lattice."""
    n = len(P)
    if n == 0:
        return LatticeStructure(False)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            j = _least(P, P.up[x] & P.up[y])
            m = _greatest(P, P.down[x] & P.down[y])
            if j is None or m is None:
                return LatticeStructure(False)
            join[x][y] = join[y][x] = j
            meet[x][y] = meet[y][x] = m
    return LatticeStructure(True, tuple(map(tuple, meet)), tuple(map(tuple, join)))


def is_lattice(P: Poset) -> bool:
    return lattice_structure(P).is_lattice


def _is_atomic_interval(P: Poset, join, lo: int, hi: int) -> bool:
    mask = P.up[lo] & P.down[hi]
    atoms = [a for a in bits(mask) if a != lo and P.strict_down(a) & mask == 1 << lo]
    for z in bits(mask):
        if z == lo:
            continue
        acc = lo
        for a in atoms:
            if P.down[z] >> a & 1:
                acc = join[acc][a]
        if acc != z:
            return False
    return True


def lattice_classes(L: Poset) -> dict[str, bool]:
    """Flags ``atomic``, ``relatively_atomic``, ``semimodular`` and ``geometric``."""
    structure = lattice_structure(L)
    if not structure.is_lattice:
        raise NotALattice("lattice_classes needs a lattice")
    meet, join = structure.meet, structure.join
    (bottom,) = L.minimal()
    (top,) = L.maximal()
    atomic = _is_atomic_interval(L, join, bottom, top)
    relatively_atomic = atomic and all(
        _is_atomic_interval(L, join, x, y) for x, y in L.comparable_pairs()
    )
    covers = L.covers
    n = len(L)
    # x covers x^y  =>  x v y covers y
    semimodular = all(
        (y, join[x][y]) in covers
        for x in range(n)
        for y in range(n)
        if (meet[x][y], x) in covers
    )
    return {
        "atomic": atomic,
        "relatively_atomic": relatively_atomic,
        "semimodular": semimodular,
        "geometric": atomic and semimodular,
    }


@dataclass(frozen=True)
class MobiusTable:
    """Möbius values on comparable pairs, keyed by element index."""

    values: dict[tuple[int, int], int]
    nowhere_zero: bool

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return self.values[pair]


def mobius_function(P: Poset) -> MobiusTable:
    values: dict[tuple[int, int], int] = {}
    below = [bin(d).count("1") for d in P.down]
    for x in range(len(P)):
        above = sorted(bits(P.up[x]), key=below.__getitem__)
        for y in above:
            if y == x:
                values[x, y] = 1
            else:
                between = P.up[x] & P.strict_down(y)
                values[x, y] = -sum(values[x, z] for z in bits(between))
    return MobiusTable(values, all(v != 0 for v in values.values()))
