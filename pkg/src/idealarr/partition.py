"""Height distributions and their dual partitions (ideal exponents)."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootposet import Ideal
from .rootsys import RootSystem


class NotAPartitionError(ValueError):
    pass


@dataclass(frozen=True)
class HeightDistribution:
    counts: tuple[int, ...]

    @property
    def max_height(self) -> int:
        return len(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def is_partition(self) -> bool:
        return all(a >= b for a, b in zip(self.counts, self.counts[1:]))


@dataclass(frozen=True)
class ExponentRecord:
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(sorted(self.exponents)))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)


def height_distribution(rs: RootSystem, ideal: Ideal) -> HeightDistribution:
    by_height = Counter(rs.heights[i] for i in ideal.members)
    m = max(by_height, default=0)
    return HeightDistribution(tuple(by_height[j] for j in range(1, m + 1)))


def dual_partition(rank: int, dist: HeightDistribution | Sequence[int]) -> ExponentRecord:
    """((0)^(l-i_1), (1)^(i_1-i_2), ..., (m)^(i_m)) as a sorted tuple."""
    counts = tuple(dist.counts if isinstance(dist, HeightDistribution) else dist)
    for j in range(len(counts) - 1):
        if counts[j] < counts[j + 1]:
            raise NotAPartitionError(
                f"not a partition: i_{j + 1} = {counts[j]} < i_{j + 2} = {counts[j + 1]}"
            )
    first = counts[0] if counts else 0
    if first > rank:
        raise NotAPartitionError(f"i_1 = {first} exceeds the rank {rank}")
    exps = [0] * (rank - first)
    padded = counts + (0,)
    for j in range(1, len(counts) + 1):
        exps.extend([j] * (padded[j - 1] - padded[j]))
    return ExponentRecord(tuple(exps))


def ideal_exponents(rs: RootSystem, ideal: Ideal) -> ExponentRecord:
    return dual_partition(rs.rank, height_distribution(rs, ideal))


def product_exponents(records: Iterable[ExponentRecord | Sequence[int]]) -> ExponentRecord:
    """Exponents of a product arrangement: the multiset union."""
    out: list[int] = []
    for r in records:
        out.extend(r)
    return ExponentRecord(tuple(out))


def split_by_component(rs: RootSystem, ideal: Ideal) -> list[tuple[int, list[int]]]:
    """(component rank, heights of the ideal's roots in that component) per component."""
    ranks = [r for _, r in rs.rtype.components]
    heights: list[list[int]] = [[] for _ in ranks]
    for i in ideal.members:
        heights[rs.component_of_root(i)].append(rs.heights[i])
    return list(zip(ranks, heights))


def componentwise_exponents(rs: RootSystem, ideal: Ideal) -> ExponentRecord:
    """DP computed per irreducible component, then merged."""
    records = []
    for rank, hs in split_by_component(rs, ideal):
        c = Counter(hs)
        m = max(c, default=0)
        records.append(dual_partition(rank, [c[j] for j in range(1, m + 1)]))
    return product_exponents(records)


def symmetric_about_half_coxeter(rs: RootSystem, exps: ExponentRecord) -> bool | None:
    """Advisory duality check d_i + d_{l+1-i} = h for the full arrangement."""
    h = rs.coxeter_number
    if h is None:
        return None
    e = exps.exponents
    return all(e[i] + e[-1 - i] == h for i in range(len(e)))
