"""Brute-force shellability of pure complexes.

The searcher works on facet bit masks; :func:`check_shelling_order` is a
separate, set-based checker for returned certificates.
"""

from __future__ import annotations

import sys

from .cm import CmVerdict, complex_cm_failure, interval_sweep
from .complex import SimplicialComplex, order_complex
from .exceptions import NotPure, SearchBudgetExceeded
from .poset import Poset, bits, popcount, remove_interval_edges

DEFAULT_BUDGET = 10**7


class _Search:
    def __init__(self, facets: list[int], budget: int):
        self.facets = facets
        self.size = popcount(facets[0])
        self.budget = budget
        self.nodes = 0
        self.dead: set[int] = set()
        n = len(facets)
        # ridge_with[j]: facets meeting facet j in a codimension-one face
        self.ridge_with = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and popcount(facets[i] & facets[j]) == self.size - 1:
                    self.ridge_with[j] |= 1 << i

    def can_add(self, placed: int, j: int) -> bool:
        if not placed:
            return True
        fj = self.facets[j]
        # vertices v of F_j such that F_j - v lies in an earlier facet
        free = 0
        for k in bits(placed & self.ridge_with[j]):
            free |= fj & ~self.facets[k]
        if not free:
            return False
        for i in bits(placed):
            if fj & ~self.facets[i] & free == 0:
                return False
        return True

    def run(self) -> list[int] | None:
        n = len(self.facets)
        full = (1 << n) - 1
        order: list[int] = []

        def extend(placed: int) -> bool:
            if placed == full:
                return True
            # which facets remain addable depends only on the placed set
            if placed in self.dead:
                return False
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.budget)
            candidates = [j for j in range(n) if not placed >> j & 1 and self.can_add(placed, j)]
            # most ridge contacts first
            candidates.sort(key=lambda j: -popcount(placed & self.ridge_with[j]))
            for j in candidates:
                order.append(j)
                if extend(placed | 1 << j):
                    return True
                order.pop()
            self.dead.add(placed)
            return False

        return order if extend(0) else None


def is_shellable(
    cx: SimplicialComplex, budget: int = DEFAULT_BUDGET
) -> tuple[bool, list[tuple[str, ...]] | None]:
    """Search for a shelling order of a pure complex.

    Returns ``(True, order)`` with the facets in shelling order, or
    ``(False, None)``. Raises :class:`SearchBudgetExceeded` when the node
    budget runs out before the search space is exhausted.
    """
    if not cx.is_pure:
        raise NotPure("shellability is only decided for pure complexes")
    facets = sorted(cx.facets, key=lambda f: tuple(bits(f)))
    if len(facets) == 1:
        return True, [cx.names(facets[0])]
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(facets) + 100))
    try:
        order = _Search(facets, budget).run()
    finally:
        sys.setrecursionlimit(limit)
    if order is None:
        return False, None
    return True, [cx.names(facets[j]) for j in order]


def check_shelling_order(order: list[tuple[str, ...]] | list[frozenset[str]]) -> bool:
    """Validate a shelling certificate facet by facet."""
    facets = [frozenset(f) for f in order]
    if len(set(facets)) != len(facets):
        return False
    if len({len(f) for f in facets}) > 1:
        return False
    for j in range(1, len(facets)):
        fj = facets[j]
        meets = {facets[i] & fj for i in range(j)}
        tops = [m for m in meets if not any(m < other for other in meets)]
        if any(len(m) != len(fj) - 1 for m in tops):
            return False
    return True


def is_edgewise_strongly_shellable(P: Poset, budget: int = DEFAULT_BUDGET) -> CmVerdict:
    """Every ``P ⊖ I`` (``I`` any closed interval) is shellable of the rank of ``P``.

    A non-CM complex cannot be shellable, so cases failing the homology
    test are reported with reason ``not_cm`` instead of being searched.
    """
    name = "edgewise-strongly-shellable"
    graded, rank = P.grading()
    if not graded:
        raise NotPure("edgewise strong shellability needs a graded poset")
    cases = [(0, 0)] if len(P) else []  # P itself
    cases += [(a, b) for a, b, _ in interval_sweep(P)]
    for a, b in cases:
        where = [P.labels[a], P.labels[b]]
        cx = order_complex(remove_interval_edges(P, a, b))
        if not cx.is_pure:
            return CmVerdict(name, False, {"kind": "interval", "interval": where, "reason": "not_graded"})
        if cx.dim != rank:
            return CmVerdict(name, False, {"kind": "interval", "interval": where, "reason": "rank_drop"})
        if complex_cm_failure(cx) is not None:
            return CmVerdict(name, False, {"kind": "interval", "interval": where, "reason": "not_cm"})
        try:
            ok, _ = is_shellable(cx, budget)
        except SearchBudgetExceeded:
            raise SearchBudgetExceeded(budget, (where[0], where[1])) from None
        if not ok:
            return CmVerdict(name, False, {"kind": "interval", "interval": where, "reason": "not_shellable"})
    return CmVerdict(name, True)
