"""Seeded random posets.

All randomness comes from a Philox generator keyed by ``(seed, stream)``,
so trial ``i`` of a run can be regenerated without replaying trials
``0..i-1``.
"""

from __future__ import annotations

import numpy as np

from .poset import Poset

_MASK64 = (1 << 64) - 1


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed & _MASK64) << 64 | (stream & _MASK64)))


def _rank_vector(rng: np.random.Generator, max_elements: int, max_rank: int | None) -> list[int]:
    top = max_elements - 1 if max_rank is None else min(max_rank, max_elements - 1)
    rank = int(rng.integers(1, top + 1))
    sizes = [1] * (rank + 1)
    spare = int(rng.integers(0, max_elements - (rank + 1) + 1))
    for _ in range(spare):
        sizes[int(rng.integers(0, rank + 1))] += 1
    return sizes


def random_graded_poset(
    rng: np.random.Generator,
    max_elements: int,
    p: float = 0.5,
    connected: bool = True,
    rank: int | None = None,
    max_rank: int | None = None,
    max_tries: int = 10_000,
) -> tuple[Poset, dict]:
    """Graded poset built level by level.

    A rank vector is drawn once (``rank`` fixes its length), then each
    candidate cover between consecutive levels is kept with probability
    ``p``. The covers are redrawn until the result is graded (and
    connected, if asked). Returns the poset and the sampler parameters.
    """
    if max_elements < 2:
        raise ValueError("need room for at least two elements")
    if rank is None:
        sizes = _rank_vector(rng, max_elements, max_rank)
    else:
        sizes = [1] * (rank + 1)
        for _ in range(int(rng.integers(0, max_elements - rank))):
            sizes[int(rng.integers(0, rank + 1))] += 1
    labels: list[str] = []
    levels: list[list[int]] = []
    for h, size in enumerate(sizes):
        levels.append(list(range(len(labels), len(labels) + size)))
        labels.extend(f"r{h}_{j}" for j in range(size))
    for attempt in range(max_tries):
        covers = []
        for lower, upper in zip(levels, levels[1:]):
            for a in lower:
                for b in upper:
                    if rng.random() < p:
                        covers.append((a, b))
        P = Poset(labels, covers)
        g, r = P.grading()
        if not g or r != len(sizes) - 1:
            continue
        if connected and not P.hasse_connected():
            continue
        return P, {"sizes": sizes, "p": p, "connected": connected, "attempts": attempt + 1}
    raise RuntimeError("sampler exhausted its retry budget")


def random_poset(rng: np.random.Generator, max_elements: int, p: float = 0.4) -> Poset:
    """Arbitrary poset: a random relation on a random linear extension, closed transitively."""
    n = int(rng.integers(1, max_elements + 1))
    rel = [[False] * n for _ in range(n)]
    for i in range(n):
        rel[i][i] = True
        for j in range(i + 1, n):
            rel[i][j] = bool(rng.random() < p)
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    perm = [int(x) for x in rng.permutation(n)]
    labels = [f"e{perm[i]}" for i in range(n)]
    return Poset.from_leq(labels, lambda i, j: rel[i][j])


def has_three_element_interval(P: Poset) -> bool:
    for a, b in P.comparable_pairs():
        if bin(P.up[a] & P.down[b]).count("1") == 3:
            return True
    return False
