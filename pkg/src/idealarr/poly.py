"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


def _grlex_key(m: Monomial):
    return (sum(m), m)


class Poly:
    """A polynomial in x_1..x_n stored as {exponent tuple: Fraction}.

    Zero coefficients are never stored. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction | int] | None = None):
        self.nvars = nvars
        t: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} does not have {nvars} variables")
                if c:
                    t[tuple(m)] = Fraction(c)
        self.terms = t

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monomials(self) -> list[Monomial]:
        """Monomials in descending graded lexicographic order."""
        return sorted(self.terms, key=_grlex_key, reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def constant_value(self) -> Fraction | None:
        """The value if the polynomial is constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            m, c = next(iter(self.terms.items()))
            if not any(m):
                return c
        return None

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different numbers of variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    del t[m]
        return Poly._raw(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly.const(self.nvars, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # -- linear forms ---------------------------------------------------

    def _split_var(self, s: int) -> dict[int, "Poly"]:
        """Write self = sum_e P_e x_s^e; returns {e: P_e} (P_e free of x_s)."""
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[s]
            rest = m[:s] + (0,) + m[s + 1 :]
            parts.setdefault(e, {})[rest] = c
        return {e: Poly._raw(self.nvars, t) for e, t in parts.items()}

    def divmod_linear(self, form: Sequence) -> tuple["Poly", "Poly"]:
        """Divide by the linear form sum a_i x_i in the variable x_s, s = min{i : a_i != 0}.

        The remainder is free of x_s and equals ``reduce_mod_linear``.
        """
        s = _pivot(form)
        a_s = Fraction(form[s])
        r = Poly.linear([0 if i == s else c for i, c in enumerate(form)])
        parts = self._split_var(s)
        top = max(parts, default=0)
        xs = Poly.var(self.nvars, s)
        quotient = Poly.zero(self.nvars)
        for e in range(top, 0, -1):
            coef = parts.pop(e, None)
            if coef is None or not coef:
                continue
            coef = coef * (1 / a_s)
            quotient = quotient + coef * xs ** (e - 1)
            parts[e - 1] = parts.get(e - 1, Poly.zero(self.nvars)) - coef * r
        remainder = parts.get(0, Poly.zero(self.nvars))
        return quotient, remainder

    def reduce_mod_linear(self, form: Sequence) -> "Poly":
        """Normal form modulo (form): substitute x_s = -(sum_{i != s} a_i x_i) / a_s."""
        return self.divmod_linear(form)[1]

    def divisible_by_linear(self, form: Sequence) -> bool:
        return self.reduce_mod_linear(form).is_zero()

    def exact_div_linear(self, form: Sequence) -> "Poly":
        q, r = self.divmod_linear(form)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {Poly.linear(form)}")
        return q

    # -- display / serialization -----------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in self.monomials():
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            out.append((sign, body))
        head = ("-" if out[0][0] == "-" else "") + out[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in out[1:]])

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(m), "numerator": self.terms[m].numerator, "denominator": self.terms[m].denominator}
            for m in self.monomials()
        ]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Mapping]) -> "Poly":
        return cls(nvars, {tuple(d["exponents"]): Fraction(d["numerator"], d["denominator"]) for d in data})


def _pivot(form: Sequence) -> int:
    for i, a in enumerate(form):
        if a:
            return i
    raise ZeroDivisionError("the zero linear form has no pivot")


def product(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly.const(nvars, 1)
    for p in polys:
        out = out * p
    return out


def determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Cofactor expansion with memoized minors (fine for l <= 6)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    memo: dict[tuple[int, ...], Poly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Poly:
        if row == n:
            return Poly.const(nvars, 1)
        if cols in memo:
            return memo[cols]
        total = Poly.zero(nvars)
        for k, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1 :])
            if not sub:
                continue
            term = entry * sub
            total = total + term if k % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))
