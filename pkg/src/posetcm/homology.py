"""Reduced simplicial homology over exact fields.

Boundary ranks are computed by incremental row echelon reduction: integer
rows with content removal for the rationals, XOR on int bit rows for
GF(2), and modular arithmetic for other primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Sequence

from .complex import SimplicialComplex
from .poset import bits


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``p == 0`` means the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if self.p > 2**31 or not _is_prime(self.p):
                raise ValueError(f"{self.p} is not a prime <= 2^31")

    @classmethod
    def parse(cls, text: str | int) -> "FieldSpec":
        s = str(text).strip().lower()
        if s in ("q", "qq", "rationals", "0"):
            return cls(0)
        if s.startswith("gf(") and s.endswith(")"):
            s = s[3:-1]
        try:
            return cls(int(s))
        except ValueError:
            raise ValueError(f"unrecognized field {text!r}") from None

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime_field"

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers; ``values[0]`` is dimension -1."""

    values: tuple[int, ...]

    def __getitem__(self, dim: int) -> int:
        if -1 <= dim < len(self.values) - 1:
            return self.values[dim + 1]
        return 0

    @property
    def top_dim(self) -> int:
        return len(self.values) - 2

    def nonzero(self) -> list[int]:
        return [d - 1 for d, b in enumerate(self.values) if b]

    def is_zero(self) -> bool:
        return not any(self.values)

    def as_dict(self) -> dict[int, int]:
        return {d - 1: b for d, b in enumerate(self.values)}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d - 1) * b for d, b in enumerate(self.values))


# -- rank kernels ------------------------------------------------------------


def rank_rational(rows: Sequence[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                pivots[col] = row
                break
            a, b = prow[col], row[col]
            new = {c: a * v for c, v in row.items()}
            for c, v in prow.items():
                new[c] = new.get(c, 0) - b * v
            row = {c: v for c, v in new.items() if v}
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
    return len(pivots)


def rank_mod_p(rows: Sequence[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = pow(row[col], -1, p)
                pivots[col] = {c: v * inv % p for c, v in row.items()}
                break
            factor = row[col]
            for c, v in prow.items():
                row[c] = (row.get(c, 0) - factor * v) % p
            row = {c: v for c, v in row.items() if v}
    return len(pivots)


def rank_gf2(rows: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            prow = pivots.get(low)
            if prow is None:
                pivots[low] = row
                break
            row ^= prow
    return len(pivots)


# -- boundary ranks -----------------------------------------------------------


def _boundary_ranks(by_dim: dict[int, list[tuple[int, ...]]], p: int) -> dict[int, int]:
    """``rank ∂_k`` for ``∂_k : C_k -> C_{k-1}``, k >= 0."""
    ranks = {}
    for k in range(0, max(by_dim) + 1):
        lower = {face: i for i, face in enumerate(by_dim[k - 1])}
        faces = by_dim[k]
        if p == 2:
            rows = []
            for face in faces:
                r = 0
                for j in range(len(face)):
                    r |= 1 << lower[face[:j] + face[j + 1:]]
                rows.append(r)
            ranks[k] = rank_gf2(rows)
            continue
        rows = []
        for face in faces:
            rows.append({lower[face[:j] + face[j + 1:]]: -1 if j % 2 else 1 for j in range(len(face))})
        ranks[k] = rank_rational(rows) if p == 0 else rank_mod_p(rows, p)
    return ranks


@lru_cache(maxsize=200_000)
def _betti_cached(facets: frozenset[int], p: int) -> tuple[int, ...]:
    cx = SimplicialComplex(_ground_for(facets), facets)
    by_dim = cx.faces_by_dim()
    ranks = _boundary_ranks(by_dim, p)
    top = max(by_dim)
    out = []
    for d in range(-1, top + 1):
        out.append(len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return tuple(out)


def _ground_for(facets: frozenset[int]) -> list[str]:
    width = max(f.bit_length() for f in facets)
    return [str(i) for i in range(width)]


def _canonical(cx: SimplicialComplex) -> frozenset[int]:
    """Facets re-indexed onto the used vertices, so relabelled copies share a key."""
    pos = {i: k for k, i in enumerate(bits(cx.vertex_mask))}
    out = []
    for f in cx.facets:
        m = 0
        for i in bits(f):
            m |= 1 << pos[i]
        out.append(m)
    return frozenset(out)


def reduced_betti(cx: SimplicialComplex, field: FieldSpec = QQ) -> BettiVector:
    """Reduced Betti numbers of ``cx`` over ``field``, dimensions -1 .. dim."""
    return BettiVector(_betti_cached(_canonical(cx), field.p))


def is_acyclic(cx: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    return reduced_betti(cx, field).is_zero()


def clear_cache() -> None:
    _betti_cached.cache_clear()
