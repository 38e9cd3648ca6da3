"""Sub-root-systems of flats, local heights, and the local-global identities."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .lattice import Flat, restriction
from .linalg import solve_combination
from .rootposet import Ideal, height_layer
from .rootsys import RootSystem, RootSystemError, inner_product


@dataclass(frozen=True)
class SubRootSystem:
    flat: Flat
    positive_roots: tuple[int, ...]
    simple_system: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    # root index -> coefficients over simple_system
    expansions: dict = field(repr=False, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return len(self.simple_system)

    def component_of(self, alpha: int) -> tuple[int, ...]:
        coeffs = self.expansions[alpha]
        support = {s for s, c in zip(self.simple_system, coeffs) if c}
        return next(comp for comp in self.components if support <= set(comp))


def sub_root_system(rs: RootSystem, flat: Flat) -> SubRootSystem:
    """Phi_X for a flat given by its localization over Phi+."""
    members = flat.localization
    present = set(members)
    roots = rs.positive_roots
    sums = set()
    for a, b in combinations(members, 2):
        c = (roots[a] + roots[b]).coeffs
        if c in rs._index and rs._index[c] in present:
            sums.add(rs._index[c])
    simple = tuple(i for i in members if i not in sums)
    if len(simple) != flat.span_rank:
        raise RootSystemError(
            f"internal consistency: {len(simple)} indecomposable roots for a flat of codimension {flat.span_rank}"
        )

    basis = [roots[i].coeffs for i in simple]
    expansions = {}
    for i in members:
        x = solve_combination(basis, roots[i].coeffs)
        if x is None or any(c < 0 or c.denominator != 1 for c in x):
            raise RootSystemError(
                f"internal consistency: root {list(roots[i].coeffs)} has expansion {x} over the simple system"
            )
        expansions[i] = tuple(int(c) for c in x)

    # connected components of the non-orthogonality graph
    comps = []
    unseen = list(simple)
    while unseen:
        stack = [unseen.pop(0)]
        comp = set(stack)
        while stack:
            a = stack.pop()
            for b in list(unseen):
                if inner_product(rs, roots[a], roots[b]) != 0:
                    unseen.remove(b)
                    comp.add(b)
                    stack.append(b)
        comps.append(tuple(sorted(comp)))
    comps.sort()
    return SubRootSystem(flat, tuple(members), simple, tuple(comps), expansions)


def local_height(rs: RootSystem, sub: SubRootSystem, alpha: int) -> int:
    """Height of alpha inside the irreducible component of Phi_X containing it."""
    if alpha not in sub.expansions:
        raise RootSystemError(f"root {list(rs.positive_roots[alpha].coeffs)} is not in the sub-root-system")
    comp = set(sub.component_of(alpha))
    return sum(c for s, c in zip(sub.simple_system, sub.expansions[alpha]) if s in comp)


@dataclass
class LocalGlobalReport:
    root: tuple[int, ...]
    lhs: int
    rhs: int
    terms: list[tuple[tuple[int, ...], int]]

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "root": list(self.root),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "flats": [{"loc": list(loc), "local_height": h} for loc, h in self.terms],
            "pass": self.passed,
        }


def verify_local_global(rs: RootSystem, alpha: int) -> LocalGlobalReport:
    """Compare Ht(alpha) - 1 with the sum of (Ht_X(alpha) - 1) over A^alpha."""
    lhs = rs.heights[alpha] - 1
    terms = []
    rhs = 0
    for flat in restriction(rs, range(rs.num_positive), alpha):
        h = local_height(rs, sub_root_system(rs, flat), alpha)
        terms.append((flat.localization, h))
        rhs += h - 1
    return LocalGlobalReport(rs.positive_roots[alpha].coeffs, lhs, rhs, terms)


def _positive_solution(b1, b2, target, equal_only: bool) -> bool:
    """Is target = a*b1 + b*b2 with integers a, b >= 1?"""
    n = len(target)
    for i, j in combinations(range(n), 2):
        det = b1[i] * b2[j] - b1[j] * b2[i]
        if det:
            a = Fraction(target[i] * b2[j] - target[j] * b2[i], det)
            b = Fraction(b1[i] * target[j] - b1[j] * target[i], det)
            break
    else:
        return False  # proportional vectors (never two distinct roots) or rank 1
    if a.denominator != 1 or b.denominator != 1 or a < 1 or b < 1:
        return False
    if equal_only and (a != 1 or b != 1):
        return False
    return all(a * x + b * y == t for x, y, t in zip(b1, b2, target))


def decomposition_pairs(rs: RootSystem, alpha: int, candidates=None, equal_only: bool = False):
    """Unordered pairs {b1, b2} of distinct roots with alpha in Z>0 b1 + Z>0 b2."""
    target = rs.positive_roots[alpha].coeffs
    pool = range(rs.num_positive) if candidates is None else sorted(candidates)
    roots = rs.positive_roots
    return [
        (i, j)
        for i, j in combinations(pool, 2)
        if _positive_solution(roots[i].coeffs, roots[j].coeffs, target, equal_only)
    ]


def decomposition_pair_count(rs: RootSystem, alpha: int, equal_only: bool = False) -> int:
    return len(decomposition_pairs(rs, alpha, equal_only=equal_only))


def restriction_count(rs: RootSystem, lower: Ideal | list[int], alpha: int) -> int:
    """|B'| - |B''| for the hyperplanes of ``lower`` restricted to H_alpha."""
    members = list(lower.members if isinstance(lower, Ideal) else lower)
    return len(members) - len(restriction(rs, members, alpha))


def verify_restriction_count(rs: RootSystem, ideal: Ideal, alpha: int) -> tuple[int, int]:
    """For alpha in I of height k+1 > 1: (|B'| - |B''|, k)."""
    k = rs.heights[alpha] - 1
    lower = height_layer(rs, ideal, k)
    return restriction_count(rs, lower, alpha), k


def coxeter_identity(rs: RootSystem) -> tuple[int, int]:
    """(|A| - |A^theta|, h - 1) for the highest root theta."""
    if not rs.irreducible:
        raise RootSystemError(f"{rs.rtype} is reducible")
    top = rs.highest_root_index
    n_restricted = len(restriction(rs, range(rs.num_positive), top))
    return rs.num_positive - n_restricted, rs.coxeter_number - 1
