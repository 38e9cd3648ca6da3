"""Intersection lattices of ideal subarrangements.

The hyperplane of a positive root is the kernel of the linear form
sum_i c_i x_i, where the coordinates x_i are the simple roots. A flat is
identified with its localization (the roots whose hyperplanes contain it),
which is the set of roots in the rational span of any spanning subset.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .linalg import integer_nullspace, max_abs_minor, rank
from .rootposet import Ideal
from .rootsys import RootSystem


@dataclass(frozen=True)
class Flat:
    localization: tuple[int, ...]
    dim: int
    ambient_dim: int

    @property
    def span_rank(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def mask(self) -> int:
        m = 0
        for i in self.localization:
            m |= 1 << i
        return m


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial in t, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "CharPoly":
        c = [1]
        for r in roots:
            # multiply by (t - r)
            c = [-r * c[0]] + [c[k - 1] - r * c[k] for k in range(1, len(c))] + [c[-1]]
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", s))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{sg} {s}" for sg, s in terms[1:]])


class _SpanOracle:
    """Vectorized membership test 'root in span(basis)' over all of Phi+."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.rank
        self.roots = np.array(rs.coeff_matrix, dtype=np.int64).reshape(-1, self.n)
        self.bits = [1 << i for i in range(rs.num_positive)]

    def closure_mask(self, basis: Sequence[int]) -> int:
        if not basis:
            return 0
        rows = [self.rs.positive_roots[i].coeffs for i in basis]
        null = integer_nullspace(rows, self.n)
        if not null:
            return (1 << self.rs.num_positive) - 1
        hits = np.flatnonzero(~np.any(self.roots @ np.array(null, dtype=np.int64).T, axis=1))
        m = 0
        for i in hits:
            m |= self.bits[i]
        return m


@lru_cache(maxsize=None)
def _oracle(rs: RootSystem) -> _SpanOracle:
    return _SpanOracle(rs)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _universe_mask(rs: RootSystem, universe: Ideal | Iterable[int] | None) -> int:
    if universe is None:
        return (1 << rs.num_positive) - 1
    m = 0
    for i in universe:
        m |= 1 << i
    return m


def roots_rank(rs: RootSystem, indices: Iterable[int]) -> int:
    rows = [rs.positive_roots[i].coeffs for i in indices]
    return rank(rows)


def span_closure(rs: RootSystem, roots: Iterable[int], universe: Ideal | Iterable[int] | None = None) -> Flat:
    """Flat cut out by the given roots, localized in ``universe`` (default Phi+)."""
    roots = list(roots)
    r = roots_rank(rs, roots)
    mask = _oracle(rs).closure_mask(roots) & _universe_mask(rs, universe)
    return Flat(_bits(mask), rs.rank - r, rs.rank)


@dataclass
class Lattice:
    flats: list[Flat]
    mu: list[int]

    def charpoly(self) -> CharPoly:
        dim = max(f.ambient_dim for f in self.flats)
        c = [0] * (dim + 1)
        for f, m in zip(self.flats, self.mu):
            c[f.dim] += m
        return CharPoly(tuple(c))

    def to_json(self) -> dict:
        return {
            "flats": [{"loc": list(f.localization), "dim": f.dim, "mu": m} for f, m in zip(self.flats, self.mu)],
            "charpoly": list(self.charpoly().coeffs),
        }


def build_lattice(rs: RootSystem, ideal: Ideal | Iterable[int]) -> Lattice:
    """All flats of A(I) with their Moebius values, ordered by codimension."""
    oracle = _oracle(rs)
    members = tuple(ideal.members if isinstance(ideal, Ideal) else sorted(ideal))
    umask = _universe_mask(rs, members)
    n = rs.rank
    basis_of: dict[int, tuple[int, ...]] = {0: ()}
    levels: list[list[int]] = [[0]]
    for r in range(n):
        nxt: list[int] = []
        for fmask in levels[r]:
            covered = fmask
            base = basis_of[fmask]
            for h in members:
                if covered >> h & 1:
                    continue
                new_basis = base + (h,)
                new = oracle.closure_mask(new_basis) & umask
                covered |= new
                if new not in basis_of:
                    basis_of[new] = new_basis
                    nxt.append(new)
        if not nxt:
            break
        nxt.sort(key=_bits)
        levels.append(nxt)

    flats: list[Flat] = []
    mu: list[int] = []
    done: list[tuple[int, int]] = []  # (mask, mu) of all flats of lower codimension
    for r, level in enumerate(levels):
        current = []
        for fmask in level:
            if r == 0:
                m = 1
            else:
                m = -sum(v for y, v in done if y & ~fmask == 0)
            flats.append(Flat(_bits(fmask), n - r, n))
            mu.append(m)
            current.append((fmask, m))
        done.extend(current)
    return Lattice(flats, mu)


def characteristic_polynomial(rs: RootSystem, ideal: Ideal | Iterable[int]) -> CharPoly:
    return build_lattice(rs, ideal).charpoly()


def whitney_charpoly(rs: RootSystem, ideal: Ideal | Iterable[int]) -> CharPoly:
    """Sum over all subsets S of (-1)^|S| t^(l - rank S); exponential in |I|."""
    members = tuple(ideal.members if isinstance(ideal, Ideal) else sorted(ideal))
    n = rs.rank
    c = [0] * (n + 1)
    for k in range(len(members) + 1):
        for sub in combinations(members, k):
            c[n - roots_rank(rs, sub)] += (-1) ** k
    return CharPoly(tuple(c))


def restriction(rs: RootSystem, ideal: Ideal | Iterable[int], alpha: int) -> list[Flat]:
    """Distinct flats K cap H_alpha for K in A(I) other than H_alpha."""
    members = tuple(ideal.members if isinstance(ideal, Ideal) else sorted(ideal))
    oracle = _oracle(rs)
    umask = _universe_mask(rs, members) | (1 << alpha)
    seen: dict[int, None] = {}
    covered = 1 << alpha
    for k in members:
        if covered >> k & 1:
            continue
        m = oracle.closure_mask((alpha, k)) & umask
        covered |= m
        seen[m] = None
    return [Flat(_bits(m), rs.rank - 2, rs.rank) for m in sorted(seen, key=_bits)]


# ----------------------------------------------------------------------
# finite field oracle


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@lru_cache(maxsize=None)
def prime_bound(rs: RootSystem) -> int:
    """Largest absolute square minor of the positive-root coefficient matrix."""
    rows = sorted(set(rs.coeff_matrix))
    return max_abs_minor(rows)


def valid_primes(rs: RootSystem, ideal: Ideal, count: int | None = None) -> list[int]:
    """The smallest ``count`` (default l+1) primes exceeding every bound."""
    count = rs.rank + 1 if count is None else count
    lo = max(len(ideal), prime_bound(rs))
    out = []
    q = lo + 1
    while len(out) < count:
        if _is_prime(q):
            out.append(q)
        q += 1
    return out


def count_complement_points(rs: RootSystem, ideal: Ideal | Iterable[int], q: int) -> int:
    """Number of points of F_q^l lying on none of the hyperplanes of A(I)."""
    members = tuple(ideal.members if isinstance(ideal, Ideal) else sorted(ideal))
    n = rs.rank
    if not members:
        return q**n
    forms = np.array([rs.positive_roots[i].coeffs for i in members], dtype=np.int64) % q
    last = forms[:, n - 1]
    head = forms[:, : n - 1]
    # fibre over each point of F_q^(l-1): the last coordinate avoids one value per form
    if n == 1:
        pts = np.zeros((1, 0), dtype=np.int64)
    else:
        pts = np.indices((q,) * (n - 1), dtype=np.int64).reshape(n - 1, -1).T
    vals = (pts @ head.T) % q
    flat_forms = last == 0
    good = np.all(vals[:, flat_forms] != 0, axis=1)
    slope = ~flat_forms
    if not slope.any():
        return int(good.sum()) * q
    inv = np.array([pow(int(a), -1, q) for a in last[slope]], dtype=np.int64)
    forbidden = (-vals[:, slope] * inv) % q
    forbidden.sort(axis=1)
    distinct = 1 + np.count_nonzero(np.diff(forbidden, axis=1), axis=1)
    return int(((q - distinct) * good).sum())


def _interpolate(samples: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (ascending) of the unique polynomial of degree < len(samples)."""
    k = len(samples)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(samples):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(samples):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(k):
            coeffs[d] += yi * basis[d] / denom
    return coeffs


class PrimeError(ValueError):
    pass


def point_count_charpoly(rs: RootSystem, ideal: Ideal, primes: Sequence[int] | None = None) -> CharPoly:
    """Interpolate the complement point counts over l+1 prime fields."""
    if primes is None:
        primes = valid_primes(rs, ideal)
    primes = list(primes)
    if len(set(primes)) < rs.rank + 1:
        raise PrimeError(f"need {rs.rank + 1} distinct primes, got {primes}")
    bound = max(len(ideal), prime_bound(rs))
    for q in primes:
        if not _is_prime(q):
            raise PrimeError(f"{q} is not prime")
        if q <= bound:
            raise PrimeError(f"prime {q} is too small: it must exceed {bound} (|I| and every minor)")
    samples = [(q, count_complement_points(rs, ideal, q)) for q in primes]
    coeffs = _interpolate(samples)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError(f"non-integral interpolation {coeffs}")
    poly = CharPoly(tuple(int(c) for c in coeffs))
    if poly.degree != rs.rank or poly.coeffs[-1] != 1:
        raise ArithmeticError(f"interpolated polynomial {poly} is not monic of degree {rs.rank}")
    return poly


def poincare_polynomial(exps: Iterable[int]) -> tuple[int, ...]:
    """Coefficients (ascending) of prod (1 + d_i t)."""
    c = [1]
    for d in exps:
        c = [c[0]] + [c[k] + d * c[k - 1] for k in range(1, len(c))] + [d * c[-1]]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poincare_from_charpoly(chi: CharPoly, rank: int) -> tuple[int, ...]:
    """Coefficients of (-t)^l chi(-1/t)."""
    c = [0] * (rank + 1)
    for k, a in enumerate(chi.coeffs):
        # (-t)^l (-1/t)^k = (-1)^(l+k) t^(l-k)
        c[rank - k] += (-1) ** (rank + k) * a
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)
