"""Order ideals of the root poset.

Ideals are stored as bitmasks over the canonical root order. Because that
order is a linear extension of the poset, every root below index ``i`` has
an index smaller than ``i``, which is what the enumeration relies on.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .rootsys import Root, RootSystem, RootSystemError, leq

__all__ = [
    "Ideal",
    "leq",
    "ideal_closure",
    "ideal_from_mask",
    "enumerate_ideals",
    "height_layer",
    "truncation_ideal",
    "is_ideal",
    "is_antichain",
    "count_ideals_brute_force",
]


@dataclass(frozen=True)
class Ideal:
    members: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def to_json(self) -> dict:
        return {"members": list(self.members), "generators": list(self.generators)}


@lru_cache(maxsize=None)
def _below_masks(rs: RootSystem) -> tuple[int, ...]:
    """For each root, the bitmask of roots strictly below it."""
    roots = rs.positive_roots
    out = []
    for i, r in enumerate(roots):
        m = 0
        for j in range(i):
            if leq(roots[j], r):
                m |= 1 << j
        out.append(m)
    return tuple(out)


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def ideal_from_mask(rs: RootSystem, mask: int) -> Ideal:
    below = _below_masks(rs)
    members = _indices(mask)
    covered = 0
    for i in members:
        covered |= below[i]
    gens = tuple(i for i in members if not covered >> i & 1)
    return Ideal(members, gens)


def is_ideal(rs: RootSystem, mask: int) -> bool:
    below = _below_masks(rs)
    return all(below[i] & ~mask == 0 for i in _indices(mask))


def is_antichain(rs: RootSystem, indices: Iterable[int]) -> bool:
    idx = list(indices)
    roots = rs.positive_roots
    return all(
        not leq(roots[a], roots[b]) and not leq(roots[b], roots[a])
        for k, a in enumerate(idx)
        for b in idx[k + 1 :]
    )


def ideal_closure(rs: RootSystem, generators: Iterable[int]) -> Ideal:
    """Smallest ideal containing the given root indices."""
    below = _below_masks(rs)
    mask = 0
    for g in generators:
        if not 0 <= g < rs.num_positive:
            raise RootSystemError(f"root index {g} out of range for {rs.rtype}")
        mask |= (1 << g) | below[g]
    return ideal_from_mask(rs, mask)


def ideal_from_coefficients(rs: RootSystem, vectors: Iterable[Iterable[int]]) -> Ideal:
    return ideal_closure(rs, [rs.index(Root(tuple(v))) for v in vectors])


def enumerate_ideals(rs: RootSystem) -> Iterator[Ideal]:
    """Every ideal exactly once, depth first, 'exclude' branch before 'include'."""
    below = _below_masks(rs)
    n = rs.num_positive

    def rec(i: int, mask: int):
        if i == n:
            yield mask
            return
        yield from rec(i + 1, mask)
        if below[i] & ~mask == 0:
            yield from rec(i + 1, mask | (1 << i))

    for mask in rec(0, 0):
        yield ideal_from_mask(rs, mask)


def height_layer(rs: RootSystem, ideal: Ideal, j: int) -> Ideal:
    """The sub-ideal of roots of height at most ``j``."""
    if j < 0:
        raise ValueError("layer index must be nonnegative")
    heights = rs.heights
    mask = 0
    for i in ideal.members:
        if heights[i] <= j:
            mask |= 1 << i
    return ideal_from_mask(rs, mask)


def ideal_height(rs: RootSystem, ideal: Ideal) -> int:
    return max((rs.heights[i] for i in ideal.members), default=0)


def truncation_ideal(rs: RootSystem, t: int) -> Ideal:
    """First ``t`` roots of the canonical order."""
    if not 0 <= t <= rs.num_positive:
        raise ValueError(f"truncation length must lie in [0, {rs.num_positive}], got {t}")
    mask = (1 << t) - 1
    if not is_ideal(rs, mask):
        raise RootSystemError("internal consistency: truncation is not an ideal")
    return ideal_from_mask(rs, mask)


def count_ideals_brute_force(rs: RootSystem) -> int:
    """Test all 2^|Phi+| subsets; only sensible for small systems."""
    return sum(is_ideal(rs, m) for m in range(1 << rs.num_positive))
