"""Logarithmic derivations and explicit free bases of ideal subarrangements.

Coordinates are x_i = alpha_i, so the defining form of H_beta is
sum_i c_i x_i with c the simple-root coefficients of beta, and a derivation
is the vector of its values on x_1, ..., x_l.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from .lattice import restriction
from .partition import ideal_exponents
from .poly import Poly, determinant, product
from .rootposet import Ideal, height_layer, ideal_height
from .rootsys import RootSystem

DEFAULT_RANK_LIMIT = 4

NuPolicy = Union[str, Callable[[Sequence[int]], int]]


class RankLimitError(ValueError):
    pass


class ConstructionError(ArithmeticError):
    """An identity guaranteed by the construction failed."""


@dataclass(frozen=True)
class Derivation:
    coeffs: tuple[Poly, ...]

    @classmethod
    def partial(cls, n: int, i: int) -> "Derivation":
        return cls(tuple(Poly.const(n, int(j == i)) for j in range(n)))

    @classmethod
    def euler(cls, n: int) -> "Derivation":
        return cls(tuple(Poly.var(n, j) for j in range(n)))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {c.degree for c in self.coeffs if c}
        return len(degs) <= 1 and all(c.is_homogeneous() for c in self.coeffs)

    def apply(self, form: Sequence) -> Poly:
        """theta(sum a_i x_i) = sum a_i theta(x_i)."""
        out = Poly.zero(self.nvars)
        for a, c in zip(form, self.coeffs):
            if a:
                out = out + c * a
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, f) -> "Derivation":
        return Derivation(tuple(c * f for c in self.coeffs))

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    def __str__(self) -> str:
        parts = [f"({c})*d{i + 1}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


def rank_limit() -> int:
    env = os.environ.get("IDEALARR_RANK_LIMIT")
    return int(env) if env else DEFAULT_RANK_LIMIT


def linear_form(rs: RootSystem, beta: int) -> tuple[int, ...]:
    return rs.positive_roots[beta].coeffs


def defining_polynomial(rs: RootSystem, members) -> Poly:
    return product((Poly.linear(linear_form(rs, b)) for b in members), rs.rank)


def is_logarithmic(rs: RootSystem, theta: Derivation, ideal: Ideal | Sequence[int]) -> bool:
    members = ideal.members if isinstance(ideal, Ideal) else ideal
    for b in members:
        form = linear_form(rs, b)
        if not theta.apply(form).divisible_by_linear(form):
            return False
    return True


def boolean_basis(rs: RootSystem, base: Ideal | Sequence[int]) -> list[Derivation]:
    """x_i d_i for simple roots in ``base``, d_i for the others."""
    members = set(base.members if isinstance(base, Ideal) else base)
    n = rs.rank
    if any(i >= n for i in members):
        raise ValueError("the Boolean base case only contains simple roots")
    out = []
    for i in range(n):
        d = Derivation.partial(n, i)
        out.append(d.scale(Poly.var(n, i)) if i in members else d)
    return out


# -- nu policies ------------------------------------------------------------


def _choose(policy: NuPolicy, candidates: Sequence[int]) -> int:
    if callable(policy):
        pick = policy(candidates)
    elif policy == "first":
        pick = min(candidates)
    elif policy == "last":
        pick = max(candidates)
    else:
        raise ValueError(f"unknown nu policy {policy!r}")
    if pick not in candidates:
        raise ValueError(f"nu policy picked {pick}, not one of {list(candidates)}")
    return pick


def random_nu(seed: int) -> Callable[[Sequence[int]], int]:
    rng = random.Random(seed)
    return lambda candidates: rng.choice(sorted(candidates))


def restriction_groups(rs: RootSystem, lower: Ideal, beta: int) -> list[tuple[int, ...]]:
    """For each flat Y = H cap H_beta, the hyperplanes of A(lower) through Y."""
    return [tuple(h for h in y.localization if h != beta) for y in restriction(rs, lower, beta)]


def b_polynomial(
    rs: RootSystem, lower: Ideal, beta: int, nu_policy: NuPolicy = "first"
) -> tuple[Poly, list[int]]:
    """Q(A') divided by one chosen defining form per flat of the restriction.

    Returns the quotient and the chosen hyperplanes (root indices).
    """
    chosen = [_choose(nu_policy, g) for g in restriction_groups(rs, lower, beta)]
    q = defining_polynomial(rs, [h for h in lower.members if h not in set(chosen)])
    # cross-check the quotient by exact division
    full = defining_polynomial(rs, lower.members)
    check = full
    for h in chosen:
        check = check.exact_div_linear(linear_form(rs, h))
    if check != q:
        raise ConstructionError("b polynomial differs from the exact quotient")
    return q, chosen


def c_matrix(
    rs: RootSystem, top: Sequence[Derivation], betas: Sequence[int], b_polys: Sequence[Poly]
) -> list[list[Fraction]]:
    """c_ij with phi_i(alpha_j) = c_ij b_j modulo alpha_j."""
    out = []
    for phi in top:
        row = []
        for beta, b in zip(betas, b_polys):
            form = linear_form(rs, beta)
            lhs = phi.apply(form).reduce_mod_linear(form)
            rb = b.reduce_mod_linear(form)
            if not rb:
                raise ConstructionError(f"b vanishes modulo the form of root {beta}")
            if not lhs:
                row.append(Fraction(0))
                continue
            m, c = rb.leading_term()
            ratio = lhs.terms.get(m, Fraction(0)) / c
            if rb * ratio != lhs:
                raise ConstructionError(
                    f"phi(alpha) = {lhs} is not a multiple of b = {rb} modulo the form of root {beta}"
                )
            row.append(ratio)
        out.append(row)
    return out


def row_reduce(c: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[list[Fraction]], int]:
    """Gauss-Jordan on C; returns (P, P C, rank) with P the accumulated row operations."""
    p = len(c)
    q = len(c[0]) if c else 0
    m = [list(r) for r in c]
    ops = [[Fraction(int(i == j)) for j in range(p)] for i in range(p)]
    r = 0
    for col in range(q):
        piv = next((i for i in range(r, p) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        ops[r], ops[piv] = ops[piv], ops[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        ops[r] = [x * inv for x in ops[r]]
        for i in range(p):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                ops[i] = [a - f * b for a, b in zip(ops[i], ops[r])]
        r += 1
    return ops, m, r


@dataclass
class LayerBasisData:
    layer: int
    betas: list[int]
    nu: list[list[int]]
    b_polys: list[Poly]
    c: list[list[Fraction]]
    row_ops: list[list[Fraction]]
    saito: bool
    degrees: list[int]


@dataclass
class BasisBuild:
    rs: RootSystem
    ideal: Ideal
    basis: list[Derivation]
    layers: list[LayerBasisData] = field(default_factory=list)
    saito: bool = False

    @property
    def degrees(self) -> list[int]:
        return sorted(d.degree if any(d.coeffs) else 0 for d in self.basis)

    def to_json(self) -> dict:
        return {
            "type": str(self.rs.rtype),
            "ideal": self.ideal.to_json(),
            "degrees": self.degrees,
            "saito": self.saito,
            "derivations": [d.to_json() for d in self.basis],
            "layers": [
                {
                    "layer": L.layer,
                    "betas": L.betas,
                    "nu": L.nu,
                    "b": [b.to_json() for b in L.b_polys],
                    "c": [[str(x) for x in row] for row in L.c],
                    "degrees": L.degrees,
                    "saito": L.saito,
                }
                for L in self.layers
            ],
        }


def saito_check(rs: RootSystem, basis: Sequence[Derivation], ideal: Ideal | Sequence[int]) -> bool:
    """det(theta_i(x_j)) is a nonzero constant multiple of Q(A(I))."""
    members = ideal.members if isinstance(ideal, Ideal) else ideal
    if len(basis) != rs.rank or not all(t.is_homogeneous() for t in basis):
        return False
    det = determinant([list(t.coeffs) for t in basis])
    if not det:
        return False
    q = defining_polynomial(rs, members)
    m, c = q.leading_term()
    ratio = det.terms.get(m, Fraction(0)) / c
    return ratio != 0 and q * ratio == det


def mat_basis_step(
    build: BasisBuild,
    lower: Ideal,
    upper: Ideal,
    nu_policy: NuPolicy = "first",
    check_saito: bool = True,
) -> BasisBuild:
    """Add the layer upper \\ lower to a free basis of A(lower)."""
    rs = build.rs
    betas = [b for b in upper.members if b not in lower]
    if not betas:
        return build
    basis = list(build.basis)
    degrees = [t.degree if any(t.coeffs) else 0 for t in basis]
    d = max(degrees)
    low = [t for t, g in zip(basis, degrees) if g < d]
    top = [t for t, g in zip(basis, degrees) if g == d]

    b_polys, nus = [], []
    for beta in betas:
        b, chosen = b_polynomial(rs, lower, beta, nu_policy)
        if b.degree != d:
            raise ConstructionError(f"deg b = {b.degree} but the top degree is {d}")
        b_polys.append(b)
        nus.append(chosen)

    for t in low:
        if not is_logarithmic(rs, t, upper):
            raise ConstructionError(f"low-degree basis member {t} is not logarithmic for the new layer")

    c = c_matrix(rs, top, betas, b_polys)
    ops, reduced, r = row_reduce(c)
    if r != len(betas):
        raise ConstructionError(f"rank C = {r}, expected q = {len(betas)}")

    combos = []
    for row in ops:
        acc = Derivation(tuple(Poly.zero(rs.rank) for _ in range(rs.rank)))
        for coef, phi in zip(row, top):
            if coef:
                acc = acc + phi.scale(coef)
        combos.append(acc)
    new_top = [combos[j].scale(Poly.linear(linear_form(rs, beta))) for j, beta in enumerate(betas)]
    carried = combos[len(betas) :]
    new_basis = low + carried + new_top

    for t in new_basis:
        if not is_logarithmic(rs, t, upper):
            raise ConstructionError(f"basis member {t} is not logarithmic")
    saito = saito_check(rs, new_basis, upper) if check_saito else False
    layer = LayerBasisData(
        layer=max(rs.heights[b] for b in betas),
        betas=betas,
        nu=nus,
        b_polys=b_polys,
        c=c,
        row_ops=ops,
        saito=saito,
        degrees=sorted(t.degree for t in new_basis),
    )
    return BasisBuild(rs, upper, new_basis, build.layers + [layer], saito)


def build_basis_for_ideal(
    rs: RootSystem,
    ideal: Ideal,
    nu_policy: NuPolicy = "first",
    limit: int | None = None,
    check_each_layer: bool = True,
    layer_policies: dict[int, NuPolicy] | None = None,
) -> BasisBuild:
    """Boolean base case followed by one addition step per height layer.

    ``layer_policies`` overrides ``nu_policy`` for individual added heights.
    """
    limit = rank_limit() if limit is None else limit
    if rs.rank > limit:
        raise RankLimitError(
            f"{rs.rtype} has rank {rs.rank} above the symbolic limit {limit}; "
            "raise it with --rank-limit or IDEALARR_RANK_LIMIT"
        )
    base = height_layer(rs, ideal, 1)
    basis = boolean_basis(rs, base)
    build = BasisBuild(rs, base, basis, [], saito_check(rs, basis, base))
    lower = base
    for k in range(1, ideal_height(rs, ideal)):
        upper = height_layer(rs, ideal, k + 1)
        policy = (layer_policies or {}).get(k + 1, nu_policy)
        last = k + 1 == ideal_height(rs, ideal)
        build = mat_basis_step(build, lower, upper, policy, check_saito=check_each_layer or last)
        if build.degrees != list(ideal_exponents(rs, upper)):
            raise ConstructionError(f"degrees {build.degrees} differ from the dual partition")
        lower = upper
    return build


def reduced_b_ratio(rs: RootSystem, lower: Ideal, beta: int, policy_a: NuPolicy, policy_b: NuPolicy) -> Fraction:
    """Scalar r with b_a = r b_b modulo the form of beta; raises if none exists."""
    form = linear_form(rs, beta)
    ba = b_polynomial(rs, lower, beta, policy_a)[0].reduce_mod_linear(form)
    bb = b_polynomial(rs, lower, beta, policy_b)[0].reduce_mod_linear(form)
    m, c = bb.leading_term()
    r = ba.terms.get(m, Fraction(0)) / c
    if r == 0 or bb * r != ba:
        raise ConstructionError("b polynomials are not proportional modulo the added form")
    return r
