"""Finite posets stored as Hasse diagrams with a cached order closure.

Elements are addressed either by label or by index into ``Poset.labels``.
Subsets of the ground set are Python ints used as bit masks; bit ``i``
stands for ``labels[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Literal, Sequence

from .exceptions import (
    CycleDetected,
    LabelClash,
    NotBounded,
    NotComparable,
    PosetError,
    RedundantCover,
    TooLarge,
    UnknownLabel,
)

MAX_ELEMENTS = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """Immutable finite poset.

    ``up[i]`` is the mask of elements ``>= i`` and ``down[i]`` the mask of
    elements ``<= i``; both are computed once at construction.
    """

    __slots__ = ("labels", "covers", "up", "down", "_index", "_grading")

    def __init__(self, labels: Sequence[str], covers: Iterable[tuple[int, int]]):
        labels = tuple(labels)
        if len(labels) > MAX_ELEMENTS:
            raise TooLarge(f"{len(labels)} elements exceeds the limit of {MAX_ELEMENTS}")
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise PosetError("element labels must be distinct")
        covers = frozenset(covers)
        n = len(labels)
        succ: list[list[int]] = [[] for _ in range(n)]
        for a, b in covers:
            if a == b:
                raise CycleDetected(f"self-loop on {labels[a]!r}")
            succ[a].append(b)

        sorter = TopologicalSorter({i: succ[i] for i in range(n)})
        try:
            # predecessors-first order of the graph i -> succ[i] is top-down
            top_down = list(sorter.static_order())
        except CycleError as exc:
            cyc = [labels[i] for i in exc.args[1]]
            raise CycleDetected(f"cover relations contain a cycle: {cyc}") from None

        up = [1 << i for i in range(n)]
        for i in top_down:
            for j in succ[i]:
                up[i] |= up[j]
        down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i

        for a, b in covers:
            for c in succ[a]:
                if c != b and up[c] >> b & 1:
                    raise RedundantCover((labels[a], labels[b]))

        self.labels = labels
        self.covers = covers
        self.up = tuple(up)
        self.down = tuple(down)
        self._index = index
        self._grading: tuple[bool, int | None] | None = None

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_leq(cls, labels: Sequence[str], leq) -> "Poset":
        """Build from a full order predicate ``leq(i, j)`` on indices.

        The cover relation is extracted from the order; ``leq`` must already
        be a partial order.
        """
        n = len(labels)
        strict_up = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and leq(i, j):
                    strict_up[i] |= 1 << j
        covers = []
        for i in range(n):
            above = strict_up[i]
            for j in bits(above):
                # j covers i unless some k in (i, j)
                if not any(strict_up[k] >> j & 1 for k in bits(above) if k != j):
                    covers.append((i, j))
        return cls(labels, covers)

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Poset({len(self.labels)} elements, {len(self.covers)} covers)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (
            set(self.labels) == set(other.labels)
            and self.cover_labels() == other.cover_labels()
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.labels), self.cover_labels()))

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, x: int | str) -> int:
        if isinstance(x, str):
            try:
                return self._index[x]
            except KeyError:
                raise UnknownLabel(x) from None
        if not 0 <= x < len(self.labels):
            raise UnknownLabel(str(x))
        return x

    def cover_labels(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.labels[a], self.labels[b]) for a, b in self.covers)

    def sorted_covers(self) -> list[tuple[int, int]]:
        return sorted(self.covers)

    def leq(self, a: int | str, b: int | str) -> bool:
        return bool(self.up[self.index(a)] >> self.index(b) & 1)

    def lt(self, a: int | str, b: int | str) -> bool:
        a, b = self.index(a), self.index(b)
        return a != b and bool(self.up[a] >> b & 1)

    def strict_up(self, i: int) -> int:
        return self.up[i] & ~(1 << i)

    def strict_down(self, i: int) -> int:
        return self.down[i] & ~(1 << i)

    def upper_covers(self, i: int) -> list[int]:
        return sorted(b for a, b in self.covers if a == i)

    def lower_covers(self, i: int) -> list[int]:
        return sorted(a for a, b in self.covers if b == i)

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if self.strict_down(i) == 0]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if self.strict_up(i) == 0]

    def mask_of(self, elements: Iterable[int | str]) -> int:
        mask = 0
        for x in elements:
            mask |= 1 << self.index(x)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def comparable_pairs(self, strict: bool = True) -> Iterator[tuple[int, int]]:
        """Pairs ``(a, b)`` with ``a <= b`` ordered by ``a`` then ``b``."""
        for a in range(len(self)):
            mask = self.strict_up(a) if strict else self.up[a]
            for b in bits(mask):
                yield a, b

    # -- induced subposets ----------------------------------------------

    def restricted_covers(self, mask: int) -> list[tuple[int, int]]:
        """Covers of the order restricted to ``mask``, in ambient indices."""
        out = []
        for i in bits(mask):
            above = self.strict_up(i) & mask
            for j in bits(above):
                if self.strict_down(j) & above == 0:
                    out.append((i, j))
        return out

    def induced(self, mask: int) -> "Poset":
        """Induced subposet on ``mask``, labels kept in ambient order."""
        idx = list(bits(mask))
        pos = {i: k for k, i in enumerate(idx)}
        covers = [(pos[a], pos[b]) for a, b in self.restricted_covers(mask)]
        return Poset([self.labels[i] for i in idx], covers)

    def maximal_chains(self, mask: int | None = None) -> list[int]:
        """Inclusion-maximal chains of the subposet on ``mask`` as bit masks."""
        if mask is None:
            mask = self.full
        succ: dict[int, list[int]] = {i: [] for i in bits(mask)}
        has_lower = 0
        for a, b in self.restricted_covers(mask):
            succ[a].append(b)
            has_lower |= 1 << b
        chains = []
        stack = [(i, 1 << i) for i in bits(mask & ~has_lower)]
        while stack:
            i, chain = stack.pop()
            if not succ[i]:
                chains.append(chain)
                continue
            for j in succ[i]:
                stack.append((j, chain | 1 << j))
        return chains

    # -- grading -----------------------------------------------------------

    def grading(self) -> tuple[bool, int | None]:
        if self._grading is None:
            self._grading = _grading(self)
        return self._grading

    def rank_function(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        n = len(self)
        height = [0] * n
        for i in sorted(range(n), key=lambda i: popcount(self.down[i])):
            for j in self.lower_covers(i):
                height[i] = max(height[i], height[j] + 1)
        return height

    def interval_rank(self, a: int, b: int) -> int:
        """Length of the longest chain in the closed interval ``[a, b]``."""
        mask = self.up[a] & self.down[b]
        return max(popcount(c) for c in self.maximal_chains(mask)) - 1

    def is_bounded(self) -> bool:
        return len(self) > 0 and len(self.minimal()) == 1 and len(self.maximal()) == 1

    def hasse_connected(self) -> bool:
        n = len(self)
        if n == 0:
            return True
        adj = [0] * n
        for a, b in self.covers:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        seen = frontier = 1
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= adj[i]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full


def _grading(P: Poset) -> tuple[bool, int | None]:
    n = len(P)
    if n == 0:
        return True, None
    # shortest and longest saturated chains from a minimal element
    order = sorted(range(n), key=lambda i: popcount(P.down[i]))
    lo = [0] * n
    hi = [0] * n
    for i in order:
        lower = P.lower_covers(i)
        if lower:
            lo[i] = min(lo[j] for j in lower) + 1
            hi[i] = max(hi[j] for j in lower) + 1
    tops = P.maximal()
    shortest = min(lo[i] for i in tops)
    longest = max(hi[i] for i in tops)
    if shortest == longest:
        return True, longest
    return False, None


# -- public operations -------------------------------------------------------


def build_poset(labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from element labels and its Hasse diagram.

    ``covers`` holds pairs ``(a, b)`` meaning ``b`` covers ``a``. Unknown
    labels, cycles and covers implied by other covers are rejected.
    """
    labels = list(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise PosetError("element labels must be distinct")
    pairs = []
    for a, b in covers:
        for x in (a, b):
            if x not in index:
                raise UnknownLabel(x)
        pairs.append((index[a], index[b]))
    return Poset(labels, pairs)


IntervalKind = Literal["closed", "open", "up", "down"]


@dataclass(frozen=True)
class Interval:
    """Selector for a subposet: ``[lo, hi]``, ``(lo, hi)``, ``P>=lo`` or ``P<=hi``."""

    lo: int | str | None = None
    hi: int | str | None = None
    kind: IntervalKind = "closed"


def interval_mask(P: Poset, spec: Interval) -> int:
    if spec.kind == "up":
        return P.up[P.index(spec.lo)]
    if spec.kind == "down":
        return P.down[P.index(spec.hi)]
    lo, hi = P.index(spec.lo), P.index(spec.hi)
    if not P.up[lo] >> hi & 1:
        raise NotComparable(f"{P.labels[lo]!r} is not below {P.labels[hi]!r}")
    mask = P.up[lo] & P.down[hi]
    if spec.kind == "open":
        mask &= ~(1 << lo) & ~(1 << hi)
    elif spec.kind != "closed":
        raise ValueError(f"unknown interval kind {spec.kind!r}")
    return mask


def interval(P: Poset, spec: Interval) -> Poset:
    """Induced subposet selected by ``spec``."""
    return P.induced(interval_mask(P, spec))


def grading(P: Poset) -> tuple[bool, int | None]:
    """``(is_graded, rank)``; the empty poset counts as graded with no rank."""
    return P.grading()


def _fresh(label: str, taken: set[str]) -> str:
    while label in taken:
        label += "'"
    return label


def add_bounds(P: Poset) -> Poset:
    """Adjoin a new minimum ``0^`` and maximum ``1^``."""
    taken = set(P.labels)
    bottom = _fresh("0^", taken)
    top = _fresh("1^", taken | {bottom})
    n = len(P)
    covers = set(P.covers)
    for i in P.minimal():
        covers.add((n, i))
    for i in P.maximal():
        covers.add((i, n + 1))
    if n == 0:
        covers.add((n, n + 1))
    return Poset(P.labels + (bottom, top), covers)


def proper_part(P: Poset) -> Poset:
    """Remove the minimum and maximum of a bounded poset."""
    if not P.is_bounded():
        raise NotBounded("proper part needs a minimum and a maximum")
    (bottom,) = P.minimal()
    (top,) = P.maximal()
    return P.induced(P.full & ~(1 << bottom) & ~(1 << top))


def bound_and_strip(P: Poset, direction: Literal["add_bounds", "proper_part"]) -> Poset:
    if direction == "add_bounds":
        return add_bounds(P)
    if direction == "proper_part":
        return proper_part(P)
    raise ValueError(f"unknown direction {direction!r}")


def ordinal_sum(P: Poset, Q: Poset) -> Poset:
    """Every element of ``P`` placed below every element of ``Q``."""
    clash = set(P.labels) & set(Q.labels)
    if clash:
        raise LabelClash(f"shared labels: {sorted(clash)}")
    n = len(P)
    covers = set(P.covers)
    covers.update((a + n, b + n) for a, b in Q.covers)
    for i in P.maximal():
        for j in Q.minimal():
            covers.add((i, j + n))
    return Poset(P.labels + Q.labels, covers)


def dual(P: Poset) -> Poset:
    return Poset(P.labels, [(b, a) for a, b in P.covers])


def combine(P: Poset, Q: Poset | None, mode: Literal["ordinal_sum", "dual"]) -> Poset:
    if mode == "ordinal_sum":
        return ordinal_sum(P, Q)
    if mode == "dual":
        return dual(P)
    raise ValueError(f"unknown mode {mode!r}")


def relabel(P: Poset, mapping) -> Poset:
    """Rename elements via a dict or a callable."""
    fn = mapping.__getitem__ if isinstance(mapping, dict) else mapping
    return Poset([fn(x) for x in P.labels], P.covers)


def interval_edges(P: Poset, a: int, b: int) -> set[tuple[int, int]]:
    """Cover relations with both ends in the closed interval ``[a, b]``."""
    mask = P.up[a] & P.down[b]
    return {(x, y) for x, y in P.covers if mask >> x & 1 and mask >> y & 1}


def remove_interval_edges(P: Poset, a: int | str, b: int | str) -> Poset:
    """The poset whose Hasse diagram is that of ``P`` minus the edges inside ``[a, b]``.

    The remaining edges are validated as a Hasse diagram, so the cover set
    of the result is exactly ``E(P) - E([a, b])``.
    """
    a, b = P.index(a), P.index(b)
    if not P.up[a] >> b & 1:
        raise NotComparable(f"{P.labels[a]!r} is not below {P.labels[b]!r}")
    if a == b:
        return P
    return Poset(P.labels, P.covers - interval_edges(P, a, b))
