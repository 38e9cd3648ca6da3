"""Crystallographic root systems with exact integer data.

Simple roots are labelled as in Bourbaki: for B_n the last simple root is
short, for C_n it is long, for F_4 the roots 3 and 4 are short and for G_2
the first root is short. ``cartan[i][j] = <alpha_i, alpha_j^vee>``, so a
simple reflection acts on coefficient vectors by

    s_i(a) = a - (sum_j a_j cartan[j][i]) alpha_i.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

SERIES = "ABCDEFG"


class RootSystemError(ValueError):
    """Invalid root system request or failed internal consistency check."""


@dataclass(frozen=True)
class RootSystemType:
    """A (possibly reducible) root system type, e.g. ``F4`` or ``A2xA1``."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise RootSystemError("a root system type needs at least one component")
        for series, rank in self.components:
            _check_series_rank(series, rank)

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        parts = [p.strip() for p in text.strip().split("x")]
        comps = []
        for part in parts:
            m = re.fullmatch(r"([A-Ga-g])(\d+)", part)
            if not m:
                raise RootSystemError(f"cannot parse root system type {part!r} (expected e.g. 'B3')")
            comps.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(comps))

    @property
    def series(self) -> str:
        return self.components[0][0] if self.irreducible else "x".join(s for s, _ in self.components)

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def alias_note(self) -> str | None:
        if ("D", 3) in self.components:
            return "D3 is isomorphic to A3"
        return None

    def __str__(self) -> str:
        return "x".join(f"{s}{r}" for s, r in self.components)


def _check_series_rank(series: str, rank: int) -> None:
    if series not in SERIES:
        raise RootSystemError(f"unknown series {series!r}; expected one of {', '.join(SERIES)}")
    if rank < 1:
        raise RootSystemError(f"{series}{rank}: rank must be a positive integer")
    if series in "BC" and rank < 2:
        raise RootSystemError(f"{series}{rank}: series {series} requires rank >= 2")
    if series == "D" and rank < 3:
        raise RootSystemError(f"D{rank}: series D requires rank >= 3")
    if series == "E" and rank not in (6, 7, 8):
        raise RootSystemError(f"E{rank}: series E requires rank in {{6, 7, 8}}")
    if series == "F" and rank != 4:
        raise RootSystemError(f"F{rank}: series F requires rank 4")
    if series == "G" and rank != 2:
        raise RootSystemError(f"G{rank}: series G requires rank 2")


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix ``<alpha_i, alpha_j^vee>`` of an irreducible type."""
    _check_series_rank(series, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if series in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if series == "B":
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            link(n - 2, n - 1, -2, -1)
        elif series == "C":
            link(n - 2, n - 1, -1, -2)
    elif series == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif series == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif series == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif series == "G":
        link(0, 1, -1, -3)
    return a


@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_simple(self) -> bool:
        return self.height == 1 and all(c >= 0 for c in self.coeffs)

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coeffs))


def _block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def _symmetrizer(cartan: list[list[int]]) -> list[Fraction]:
    """Squared lengths (alpha_i, alpha_i), long roots normalized to 2 per component."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    # (a_i,a_j) = cartan[i][j] d_j / 2 = cartan[j][i] d_i / 2
                    d[j] = d[i] * Fraction(cartan[j][i], cartan[i][j])
                    comp.append(j)
                    stack.append(j)
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] * 2 / top
    return d  # type: ignore[return-value]


def _canonical_key(coeffs: tuple[int, ...]):
    # ascending height; equal heights by descending lexicographic order,
    # which puts alpha_1, ..., alpha_l at indices 0, ..., l-1
    return (sum(coeffs), tuple(-c for c in coeffs))


@dataclass(frozen=True, eq=False)
class RootSystem:
    rtype: RootSystemType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    component_of_simple: tuple[int, ...]
    _index: dict = field(repr=False, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @property
    def irreducible(self) -> bool:
        return self.rtype.irreducible

    def index(self, root) -> int:
        """Canonical index of a positive root (Root or coefficient sequence)."""
        coeffs = root.coeffs if isinstance(root, Root) else tuple(int(c) for c in root)
        try:
            return self._index[coeffs]
        except KeyError:
            raise RootSystemError(f"{list(coeffs)} is not a positive root of {self.rtype}") from None

    def contains(self, coeffs) -> bool:
        """Membership in the full root system (positive or negative)."""
        c = tuple(coeffs)
        return c in self._index or tuple(-x for x in c) in self._index

    def height(self, i: int) -> int:
        return self.positive_roots[i].height

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return tuple(r.height for r in self.positive_roots)

    @cached_property
    def coeff_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r.coeffs for r in self.positive_roots)

    def component_of_root(self, i: int) -> int:
        c = self.positive_roots[i].coeffs
        return self.component_of_simple[next(j for j, x in enumerate(c) if x)]

    @cached_property
    def highest_root_index(self) -> int | None:
        if not self.irreducible:
            return None
        return self.num_positive - 1

    @cached_property
    def coxeter_number(self) -> int | None:
        if not self.irreducible:
            return None
        return self.positive_roots[-1].height + 1

    def to_json(self) -> dict:
        return {
            "type": str(self.rtype),
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r.coeffs) for r in self.positive_roots],
        }


def coroot_pairing(cartan, a: tuple[int, ...], i: int) -> int:
    """<a, alpha_i^vee> for a root given by its simple-root coefficients."""
    return sum(c * cartan[j][i] for j, c in enumerate(a))


def build_root_system(rtype: RootSystemType | str) -> RootSystem:
    """Generate the positive roots height by height from the Cartan matrix."""
    if isinstance(rtype, str):
        rtype = RootSystemType.parse(rtype)
    blocks = [cartan_matrix(s, r) for s, r in rtype.components]
    cartan = _block_diag(blocks)
    n = len(cartan)
    comp_of_simple = []
    for k, b in enumerate(blocks):
        comp_of_simple.extend([k] * len(b))

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for a in layer:
            for i in range(n):
                # p = largest k with a - k alpha_i a root
                p = 0
                b = list(a)
                while True:
                    b[i] -= 1
                    if tuple(b) in known:
                        p += 1
                    else:
                        break
                if p - coroot_pairing(cartan, a, i) > 0:
                    c = list(a)
                    c[i] += 1
                    c = tuple(c)
                    if c not in known:
                        known.add(c)
                        nxt.append(c)
        layer = nxt

    ordered = sorted(known, key=_canonical_key)
    d = _symmetrizer(cartan)
    gram = tuple(tuple(Fraction(cartan[i][j]) * d[j] / 2 for j in range(n)) for i in range(n))
    rs = RootSystem(
        rtype=rtype,
        cartan=tuple(tuple(r) for r in cartan),
        positive_roots=tuple(Root(c) for c in ordered),
        gram=gram,
        component_of_simple=tuple(comp_of_simple),
        _index={c: k for k, c in enumerate(ordered)},
    )
    _self_check(rs)
    return rs


def _self_check(rs: RootSystem) -> None:
    n = rs.rank
    for k, r in enumerate(rs.positive_roots):
        if k < n and r.coeffs != tuple(int(i == k) for i in range(n)):
            raise RootSystemError("simple roots are not at the first indices")
        for i in range(n):
            reflect(rs, r, i)
    if rs.irreducible:
        top = rs.positive_roots[-1]
        if any(not leq(r, top) for r in rs.positive_roots):
            raise RootSystemError(f"{rs.rtype}: last root is not the unique maximum")


def leq(a: Root, b: Root) -> bool:
    """a <= b in the root poset."""
    return all(x <= y for x, y in zip(a.coeffs, b.coeffs))


def inner_product(rs: RootSystem, a: Root, b: Root) -> Fraction:
    if len(a.coeffs) != rs.rank or len(b.coeffs) != rs.rank:
        raise RootSystemError(
            f"dimension mismatch: expected {rs.rank} coefficients, got {len(a.coeffs)} and {len(b.coeffs)}"
        )
    g = rs.gram
    total = Fraction(0)
    for i, x in enumerate(a.coeffs):
        if x:
            row = g[i]
            for j, y in enumerate(b.coeffs):
                if y:
                    total += x * y * row[j]
    return total


def reflect(rs: RootSystem, a: Root, i: int) -> Root:
    """Simple reflection s_i applied to a root."""
    k = coroot_pairing(rs.cartan, a.coeffs, i)
    c = list(a.coeffs)
    c[i] -= k
    out = Root(tuple(c))
    if not rs.contains(out.coeffs):
        raise RootSystemError(f"internal consistency: s_{i + 1}({list(a.coeffs)}) = {c} is not a root")
    return out


def highest_root(rs: RootSystem) -> Root:
    if not rs.irreducible:
        raise RootSystemError(f"{rs.rtype} is reducible: the highest root is ambiguous")
    return rs.positive_roots[rs.highest_root_index]
