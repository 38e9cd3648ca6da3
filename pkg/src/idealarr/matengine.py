"""Layer-by-layer freeness certificates for ideal subarrangements.

Starting from the Boolean arrangement of the height-one roots, each height
layer is added at once with the multiple addition step. The three
hypotheses of that step are checked from scratch on every layer and the
resulting exponents are compared with the dual partition.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .lattice import restriction, roots_rank
from .partition import ExponentRecord, ideal_exponents
from .rootposet import Ideal, height_layer, ideal_height
from .rootsys import RootSystem


class LayerError(ValueError):
    pass


def check_condition_codim(rs: RootSystem, betas) -> bool:
    """The hyperplanes of ``betas`` meet in a subspace of codimension |betas|."""
    betas = list(betas)
    if len({rs.heights[b] for b in betas}) > 1:
        raise LayerError("roots of one layer must share a height")
    return roots_rank(rs, betas) == len(betas)


def check_condition_avoid(rs: RootSystem, lower: Ideal, betas) -> bool:
    """No hyperplane of ``lower`` contains the intersection of the betas' hyperplanes."""
    betas = list(betas)
    r = roots_rank(rs, betas)
    return all(roots_rank(rs, betas + [a]) > r for a in lower.members)


def check_condition_count(rs: RootSystem, lower: Ideal, beta: int) -> tuple[int, int, bool]:
    """(|A'| - |A''|, k, equal) with A' = A(lower) and k = Ht(beta) - 1."""
    k = rs.heights[beta] - 1
    lhs = len(lower) - len(restriction(rs, lower, beta))
    return lhs, k, lhs == k


@dataclass
class LayerRecord:
    layer: int  # the added height k+1; 1 for the Boolean base
    d: int
    p: int
    q: int
    added: list[int]
    codim_ok: bool = True
    avoid_ok: bool = True
    count_ok: bool = True
    count_lhs: list[int] = field(default_factory=list)
    q_le_p: bool = True
    exponents: list[int] = field(default_factory=list)
    matches_dp: bool = True

    @property
    def passed(self) -> bool:
        return self.codim_ok and self.avoid_ok and self.count_ok and self.q_le_p and self.matches_dp


@dataclass
class MatCertificate:
    rtype: str
    ideal: list[int]
    layers: list[LayerRecord]
    exponents: list[int]
    dual_partition: list[int]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.layers) and self.exponents == self.dual_partition

    @property
    def failed_layer(self) -> int | None:
        return next((r.layer for r in self.layers if not r.passed), None)

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        out["failed_layer"] = self.failed_layer
        return out


def run_induction(rs: RootSystem, ideal: Ideal) -> MatCertificate:
    n = rs.rank
    height = ideal_height(rs, ideal)
    dp = list(ideal_exponents(rs, ideal))
    if height == 0:
        return MatCertificate(str(rs.rtype), list(ideal.members), [], [0] * n, dp)

    base = height_layer(rs, ideal, 1)
    i1 = len(base)
    exps = sorted([0] * (n - i1) + [1] * i1)
    boolean = LayerRecord(
        layer=1,
        d=0,
        p=n,
        q=i1,
        added=list(base.members),
        codim_ok=roots_rank(rs, base.members) == i1,
        exponents=list(exps),
        matches_dp=exps == list(ideal_exponents(rs, base)),
    )
    layers = [boolean]
    lower = base
    for k in range(1, height):
        upper = height_layer(rs, ideal, k + 1)
        betas = [b for b in upper.members if b not in lower]
        d = exps[-1]
        p = exps.count(d)
        q = len(betas)
        counts = [check_condition_count(rs, lower, b)[0] for b in betas]
        rec = LayerRecord(
            layer=k + 1,
            d=d,
            p=p,
            q=q,
            added=betas,
            codim_ok=check_condition_codim(rs, betas),
            avoid_ok=check_condition_avoid(rs, lower, betas),
            count_ok=all(c == d for c in counts) and d == k,
            count_lhs=counts,
            q_le_p=q <= p,
        )
        if rec.codim_ok and rec.avoid_ok and rec.count_ok and rec.q_le_p:
            exps = exps[: n - q] + [d + 1] * q
        rec.exponents = list(exps)
        rec.matches_dp = exps == list(ideal_exponents(rs, upper))
        layers.append(rec)
        if not rec.passed:
            break
        lower = upper
    return MatCertificate(str(rs.rtype), list(ideal.members), layers, list(exps), dp)


def count_by_flats(rs: RootSystem, lower: Ideal, beta: int) -> int:
    """sum over Y in A'' of (|A'_Y| - 1); equals |A'| - |A''|."""
    return sum(len([h for h in y.localization if h != beta]) - 1 for y in restriction(rs, lower, beta))
