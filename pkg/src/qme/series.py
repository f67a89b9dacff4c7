"""Truncated Laurent/Puiseux series in one variable with exact rational coefficients.

A ``QSeries`` stores the coefficients of x^e for ``lo <= e < trunc`` as
``Fraction`` values.  Exponents below ``lo`` are exactly zero, exponents at or
above ``trunc`` are unknown.  Binary operations keep the tightest window that
both operands can justify, so precision loss is explicit, never silent.
``trunc == INF_ORDER`` marks an exact Laurent polynomial (constants, monomials,
finite products of such); those have no unknown coefficients at all.

Variable tags ("q", "p", "Q", ...) are enforced on every binary operation;
mixing tags silently is almost always a bug in this engine, so it raises.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int]

#: Truncation value meaning "exact polynomial, no unknown coefficients".
INF_ORDER = 10 ** 9


class SeriesError(Exception):
    """Base class for series arithmetic errors."""


class VariableMismatch(SeriesError):
    pass


class DivisionByZeroSeries(SeriesError):
    pass


class EmptyTruncationWindow(SeriesError):
    pass


class NonUnitLeading(SeriesError):
    pass


class FractionalMonomialExponent(SeriesError):
    pass


class NonNilpotentConstant(SeriesError):
    pass


class NonCompositionalInner(SeriesError):
    pass


class NonInvertibleLinearTerm(SeriesError):
    pass


class MissingL(SeriesError):
    pass


def _rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    """Truncated Laurent series sum_{lo <= e < trunc} c_e x^e over Q."""

    __slots__ = ("var", "lo", "coeffs", "trunc")

    def __init__(self, var: str, lo: int, coeffs: Sequence[RatLike], trunc: int):
        coeffs = [_rat(c) for c in coeffs]
        if trunc >= INF_ORDER:
            trunc = INF_ORDER
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        elif trunc - lo != len(coeffs):
            raise ValueError(f"window [{lo},{trunc}) holds {trunc - lo} coefficients, got {len(coeffs)}")
        self.var = var
        self.lo = lo
        self.coeffs = tuple(coeffs)
        self.trunc = trunc

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var: str, trunc: int = INF_ORDER, lo: int = 0) -> "QSeries":
        if trunc >= INF_ORDER:
            return cls(var, lo, [], INF_ORDER)
        return cls(var, lo, [0] * (trunc - lo), trunc)

    @classmethod
    def const(cls, var: str, value: RatLike, trunc: int = INF_ORDER) -> "QSeries":
        return cls.monomial(var, 0, value, trunc)

    @classmethod
    def monomial(cls, var: str, exponent: int, value: RatLike = 1, trunc: int = INF_ORDER) -> "QSeries":
        if trunc >= INF_ORDER:
            return cls(var, exponent, [value], INF_ORDER)
        if exponent >= trunc:
            raise EmptyTruncationWindow(f"monomial exponent {exponent} not below truncation {trunc}")
        return cls(var, exponent, [value] + [0] * (trunc - exponent - 1), trunc)

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Sequence[RatLike], lo: int = 0) -> "QSeries":
        return cls(var, lo, coeffs, lo + len(coeffs))

    def with_trunc(self, trunc: int) -> "QSeries":
        """Clip (or, for exact polynomials, annotate) to the window below trunc."""
        if trunc >= INF_ORDER:
            if self.trunc < INF_ORDER:
                raise EmptyTruncationWindow("cannot extend a truncated series to an exact one")
            return self
        if trunc <= self.lo:
            return QSeries(self.var, trunc - 1, [0], trunc)
        if self.trunc >= INF_ORDER:
            return QSeries(self.var, self.lo, [self.coeff(e) for e in range(self.lo, trunc)], trunc)
        if trunc > self.trunc:
            raise EmptyTruncationWindow(f"cannot widen window {self.trunc} to {trunc}")
        return QSeries(self.var, self.lo, self.coeffs[: trunc - self.lo], trunc)

    # -- inspection --------------------------------------------------------

    def coeff(self, exponent: int) -> Fraction:
        """Coefficient of x^exponent; exact zero below lo, error at/above trunc."""
        if exponent >= self.trunc:
            raise EmptyTruncationWindow(f"exponent {exponent} is beyond the window {self.trunc}")
        i = exponent - self.lo
        if i < 0 or i >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[i]

    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient, or None if zero on the window."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.lo + i
        return None

    def _lo_eff(self) -> int:
        """Tight lower bound of the support (trunc for a stored-zero series)."""
        v = self.valuation()
        return v if v is not None else (self.trunc if self.trunc < INF_ORDER else self.lo)

    def _hi_stored(self) -> int:
        return self.lo + len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        """Equality of all commonly-known coefficients."""
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(self.var, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.var != other.var:
            return False
        lo = min(self.lo, other.lo)
        hi = min(min(self.trunc, other.trunc), max(self._hi_stored(), other._hi_stored()))
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*{self.var}^{self.lo + i}")
            if len(terms) > 6:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.trunc >= INF_ORDER else f" + O({self.var}^{self.trunc})"
        return f"<{body}{tail}>"

    # -- ring operations ---------------------------------------------------

    def _check_var(self, other: "QSeries") -> None:
        if self.var != other.var:
            raise VariableMismatch(f"{self.var!r} vs {other.var!r}")

    def __add__(self, other: Union["QSeries", RatLike]) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(self.var, other)
        self._check_var(other)
        lo = min(self.lo, other.lo)
        trunc = min(self.trunc, other.trunc)
        if trunc >= INF_ORDER:
            hi = max(self._hi_stored(), other._hi_stored())
            return QSeries(self.var, lo, [self.coeff(e) + other.coeff(e) for e in range(lo, hi)], INF_ORDER)
        lo = min(lo, trunc)
        return QSeries(self.var, lo, [self.coeff(e) + other.coeff(e) for e in range(lo, trunc)], trunc)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.var, self.lo, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other: Union["QSeries", RatLike]) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self + (-_rat(other))
        return self + (-other)

    def __rsub__(self, other: RatLike) -> "QSeries":
        return (-self) + other

    def __mul__(self, other: Union["QSeries", RatLike]) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries(self.var, self.lo, [c * other for c in self.coeffs], self.trunc)
        self._check_var(other)
        alo, blo = self._lo_eff(), other._lo_eff()
        lo = alo + blo
        cands = []
        if self.trunc < INF_ORDER:
            cands.append(self.trunc + blo)
        if other.trunc < INF_ORDER:
            cands.append(other.trunc + alo)
        trunc = min(cands) if cands else INF_ORDER
        if trunc < INF_ORDER and trunc <= lo:
            # a factor is zero on its whole window: the product is known zero below trunc
            return QSeries(self.var, trunc, [], trunc)
        hi = trunc if trunc < INF_ORDER else (self._hi_stored() + other._hi_stored())
        out = [Fraction(0)] * max(hi - lo, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ei = self.lo + i
            for j, b in enumerate(other.coeffs):
                if b:
                    k = ei + other.lo + j - lo
                    if 0 <= k < len(out):
                        out[k] += a * b
        return QSeries(self.var, lo, out, trunc)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """1/self; requires a nonzero coefficient at the valuation."""
        v = self.valuation()
        if v is None:
            raise DivisionByZeroSeries("inverting a zero series")
        c0 = self.coeff(v)
        if self.trunc >= INF_ORDER:
            if len([c for c in self.coeffs if c]) == 1:
                return QSeries.monomial(self.var, -v, Fraction(1) / c0)
            raise EmptyTruncationWindow("inverse of a non-monomial needs a finite window; clip with with_trunc")
        n = self.trunc - v
        a = [self.coeff(v + i) / c0 for i in range(n)]
        b = [Fraction(0)] * n
        b[0] = Fraction(1)
        for m in range(1, n):
            b[m] = -sum(a[k] * b[m - k] for k in range(1, m + 1) if a[k])
        return QSeries(self.var, -v, [c / c0 for c in b], -v + n)

    def __truediv__(self, other: Union["QSeries", RatLike]) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            other = _rat(other)
            if other == 0:
                raise DivisionByZeroSeries("division by the zero constant")
            return self * (Fraction(1) / other)
        self._check_var(other)
        return self * other.inverse()

    def __rtruediv__(self, other: RatLike) -> "QSeries":
        return self.inverse() * other

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int):
            raise TypeError("integer power only; use pow_rat for rational exponents")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return QSeries.const(self.var, 1)
        result, base, m = None, self, n
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    # -- transcendental / structural operations -----------------------------

    def pow_rat(self, r: RatLike) -> "QSeries":
        """Rational power via the binomial series.

        The series must be a monomial times a unit part with leading
        coefficient 1 (other leading coefficients are accepted only for
        integer exponents), and (valuation * r) must be an integer.
        """
        r = _rat(r)
        if r.denominator == 1:
            return self ** int(r)
        v = self.valuation()
        if v is None:
            raise NonUnitLeading("rational power of a zero series")
        if (v * r).denominator != 1:
            raise FractionalMonomialExponent(f"monomial exponent {v} times {r} is not an integer")
        if self.coeff(v) != 1:
            raise NonUnitLeading(f"leading coefficient {self.coeff(v)} != 1")
        if self.trunc >= INF_ORDER:
            raise EmptyTruncationWindow("rational power needs a finite window; clip with with_trunc")
        n = self.trunc - v
        u = [self.coeff(v + i) for i in range(n)]
        # (1+w)^r via k p_k = sum_{j=1..k} (j(r+1) - k) u_j p_{k-j}
        p = [Fraction(0)] * n
        p[0] = Fraction(1)
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if u[j]:
                    acc += ((r + 1) * j - k) * u[j] * p[k - j]
            p[k] = acc / k
        e0 = int(v * r)
        return QSeries(self.var, e0, p, e0 + n)

    def log(self) -> "QSeries":
        """Formal log; requires constant term 1."""
        if self.coeff(0) != 1 or (self.valuation() or 0) < 0:
            raise NonUnitLeading("log requires a series with constant term 1")
        if self.trunc >= INF_ORDER:
            raise EmptyTruncationWindow("log needs a finite window; clip with with_trunc")
        n = self.trunc
        g = self.q_ddq() / self  # coefficient of x^k is k * log(f)_k
        return QSeries(self.var, 0, [Fraction(0)] + [g.coeff(e) / e for e in range(1, n)], n)

    def exp(self) -> "QSeries":
        """Formal exp; requires zero constant term and no negative exponents."""
        v = self.valuation()
        if self.coeff(0) != 0 or (v is not None and v < 0):
            raise NonNilpotentConstant("exp requires a series vanishing at 0")
        if self.trunc >= INF_ORDER:
            raise EmptyTruncationWindow("exp needs a finite window; clip with with_trunc")
        n = self.trunc
        f = [self.coeff(e) for e in range(n)]
        g = [Fraction(0)] * n
        g[0] = Fraction(1)
        for k in range(1, n):
            g[k] = sum(j * f[j] * g[k - j] for j in range(1, k + 1) if f[j]) / k
        return QSeries(self.var, 0, g, n)

    def compose(self, inner: "QSeries") -> "QSeries":
        """self(inner); the inner series must vanish at 0."""
        v = self.valuation()
        if v is not None and v < 0:
            raise NonCompositionalInner("outer series has negative exponents")
        iv = inner.valuation()
        if inner.coeff(0) != 0 or (iv is not None and iv < 0):
            raise NonCompositionalInner("inner series must vanish at 0")
        trunc = min(self.trunc, inner.trunc)
        if trunc >= INF_ORDER:
            raise EmptyTruncationWindow("compose needs a finite window; clip with with_trunc")
        out = QSeries.zero(inner.var, trunc)
        power = QSeries.const(inner.var, 1)
        for e in range(0, min(self.trunc, trunc)):
            c = self.coeff(e)
            if c:
                out = out + power * c
            if e + 1 < trunc:
                power = (power * inner).with_trunc(trunc)
        return out.with_trunc(trunc)

    def revert(self) -> "QSeries":
        """Compositional inverse g with g(self(x)) = x (same variable tag)."""
        v = self.valuation()
        if self.coeff(0) != 0 or (v is not None and v < 0):
            raise NonInvertibleLinearTerm("revert requires zero constant term")
        if self.trunc >= INF_ORDER:
            raise EmptyTruncationWindow("revert needs a finite window; clip with with_trunc")
        if self.trunc < 2 or self.coeff(1) == 0:
            raise NonInvertibleLinearTerm("revert requires an invertible linear coefficient")
        n = self.trunc
        a1 = self.coeff(1)
        # triangular solve of sum_k g_k self^k = x, order by order
        g = [Fraction(0)] * n
        acc = QSeries.zero(self.var, n)
        powers = []
        power = QSeries.const(self.var, 1)
        for _ in range(n):
            powers.append(power)
            power = (power * self).with_trunc(n)
        for m in range(1, n):
            target = Fraction(1) if m == 1 else Fraction(0)
            g[m] = (target - acc.coeff(m)) / (a1 ** m)
            if g[m]:
                acc = acc + powers[m] * g[m]
        return QSeries(self.var, 0, g, n)

    def q_ddq(self) -> "QSeries":
        """The Euler derivative x d/dx (window preserved)."""
        return QSeries(self.var, self.lo, [(self.lo + i) * c for i, c in enumerate(self.coeffs)], self.trunc)

    def d_du(self, L: "QSeries | None") -> "QSeries":
        """d/du = L^{-1} x d/dx for the given unit series L."""
        if L is None:
            raise MissingL("d/du requires the series L")
        if L.coeff(0) == 0:
            raise MissingL("L must have a unit constant term")
        return self.q_ddq() / L

    # -- Puiseux rescaling ---------------------------------------------------

    def puiseux_expand(self, scale: int, var: str) -> "QSeries":
        """Map x -> y^scale (y the new tag): all exponents multiply by scale."""
        lo = self.lo * scale
        if self.trunc >= INF_ORDER:
            trunc, hi = INF_ORDER, self._hi_stored()
        else:
            trunc = (self.trunc - 1) * scale + 1
            hi = self.trunc
        out = [Fraction(0)] * ((hi - self.lo - 1) * scale + 1 if hi > self.lo else 0)
        for i, c in enumerate(self.coeffs):
            out[i * scale] = c
        return QSeries(var, lo, out if trunc >= INF_ORDER else out + [0] * (trunc - lo - len(out)), trunc)

    def puiseux_collapse(self, scale: int, var: str) -> "QSeries":
        """Inverse of puiseux_expand; support must lie on multiples of scale."""
        for i, c in enumerate(self.coeffs):
            if c and (self.lo + i) % scale != 0:
                raise FractionalMonomialExponent(f"exponent {self.lo + i} not divisible by {scale}")
        lo = -((-self.lo) // scale)
        if self.trunc >= INF_ORDER:
            hi = -((-self._hi_stored()) // scale)
            return QSeries(var, lo, [self.coeff(e * scale) for e in range(lo, hi)], INF_ORDER)
        trunc = (self.trunc - 1) // scale + 1
        return QSeries(var, lo, [self.coeff(e * scale) for e in range(lo, trunc)], trunc)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "variable": self.var,
            "lowest": self.lo,
            "truncation": self.trunc,
            "coefficients": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, d: dict) -> "QSeries":
        return cls(d["variable"], d["lowest"], [Fraction(c) for c in d["coefficients"]], d["truncation"])


def geometric(var: str, ratio: RatLike, trunc: int) -> QSeries:
    """1/(1 - ratio*x) as an explicit geometric series up to trunc."""
    r = _rat(ratio)
    coeffs = [Fraction(1)]
    for _ in range(trunc - 1):
        coeffs.append(coeffs[-1] * r)
    return QSeries(var, 0, coeffs, trunc)
