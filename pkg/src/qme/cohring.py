"""Equivariant cohomology scalars: H-polynomials mod H^5 (or H^4) over Laurent-t.

``TExp`` is a Laurent polynomial in the equivariant parameter t whose
coefficients are q-series; ``CohElem`` is a vector of TExp values indexed by
the power of the hyperplane class H, with H^nilpotency = 0 enforced on every
product.  The twisted Poincare pairing is

    (H^i, H^j)^t = 5 if i+j = 3,  -t if i+j = 4,  0 otherwise,

and ``tilde_h4`` is the distinguished dual class 1/t + 5H/t^2 + ... + 625H^4/t^5.
Tensor squares of the ring (two-pointed classes) are 5x5 arrays of TExp.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Union

from .series import INF_ORDER, QSeries, Rat, RatLike

QVAR = "q"


class NilpotencyMismatch(Exception):
    pass


class NonInvertibleLeading(Exception):
    pass


class SingularGram(Exception):
    pass


ScalarLike = Union["TExp", QSeries, Fraction, int]


class TExp:
    """Laurent polynomial in t with QSeries (in q) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, QSeries] | None = None):
        self.terms: Dict[int, QSeries] = {}
        if terms:
            for e, s in terms.items():
                if not s.is_zero():
                    self.terms[e] = s

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "TExp":
        return cls()

    @classmethod
    def of(cls, value: ScalarLike, t_exp: int = 0) -> "TExp":
        if isinstance(value, TExp):
            return value if t_exp == 0 else value.t_shift(t_exp)
        if isinstance(value, (int, Fraction)):
            value = QSeries.const(QVAR, value)
        return cls({t_exp: value})

    @classmethod
    def t_power(cls, e: int, value: RatLike = 1) -> "TExp":
        return cls({e: QSeries.const(QVAR, value)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.terms.values())

    def coeff(self, t_exp: int) -> QSeries:
        return self.terms.get(t_exp, QSeries.zero(QVAR))

    def t_exponents(self) -> List[int]:
        return sorted(self.terms)

    def as_qseries(self) -> QSeries:
        """The t^0 part, asserting no other t-power is present."""
        extra = [e for e in self.terms if e != 0]
        if extra:
            raise NonInvertibleLeading(f"unexpected t-powers {extra} in a pure q-series value")
        return self.coeff(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, QSeries)):
            other = TExp.of(other)
        if not isinstance(other, TExp):
            return NotImplemented
        for e in set(self.terms) | set(other.terms):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    def __repr__(self) -> str:
        if not self.terms:
            return "<TExp 0>"
        bits = [f"t^{e}*({s!r})" for e, s in sorted(self.terms.items())]
        return "<TExp " + " + ".join(bits) + ">"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "TExp":
        other = TExp.of(other)
        out = dict(self.terms)
        for e, s in other.terms.items():
            out[e] = out[e] + s if e in out else s
        return TExp(out)

    __radd__ = __add__

    def __neg__(self) -> "TExp":
        return TExp({e: -s for e, s in self.terms.items()})

    def __sub__(self, other: ScalarLike) -> "TExp":
        return self + (-TExp.of(other))

    def __rsub__(self, other: ScalarLike) -> "TExp":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "TExp":
        if isinstance(other, (int, Fraction, QSeries)):
            other = TExp.of(other)
        out: Dict[int, QSeries] = {}
        for e1, s1 in self.terms.items():
            for e2, s2 in other.terms.items():
                p = s1 * s2
                e = e1 + e2
                out[e] = out[e] + p if e in out else p
        return TExp(out)

    __rmul__ = __mul__

    def t_shift(self, k: int) -> "TExp":
        return TExp({e + k: s for e, s in self.terms.items()})

    def inverse(self) -> "TExp":
        """Inverse of a single-t-power value with an invertible q-series."""
        live = {e: s for e, s in self.terms.items() if not s.is_zero()}
        if len(live) != 1:
            raise NonInvertibleLeading("only monomial-in-t values are invertible here")
        ((e, s),) = live.items()
        return TExp({-e: s.inverse()})

    def __truediv__(self, other: ScalarLike) -> "TExp":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * TExp.of(other).inverse()

    def q_ddq(self) -> "TExp":
        return TExp({e: s.q_ddq() for e, s in self.terms.items()})

    def map_series(self, fn) -> "TExp":
        return TExp({e: fn(s) for e, s in self.terms.items()})

    def clip(self, trunc: int) -> "TExp":
        return TExp({e: (s.with_trunc(trunc) if s.trunc > trunc else s) for e, s in self.terms.items()})

    def to_json(self) -> dict:
        return {str(e): s.to_json() for e, s in sorted(self.terms.items())}


class CohElem:
    """Element of Q[H, t, t^-1][[q]] / (H^nilpotency)."""

    __slots__ = ("nilp", "comps")

    def __init__(self, nilp: int, comps: Iterable[ScalarLike]):
        comps = [TExp.of(c) for c in comps]
        if len(comps) > nilp:
            raise ValueError("too many components")
        comps += [TExp.zero() for _ in range(nilp - len(comps))]
        self.nilp = nilp
        self.comps = comps

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nilp: int = 5) -> "CohElem":
        return cls(nilp, [])

    @classmethod
    def unit(cls, nilp: int = 5) -> "CohElem":
        return cls.h_power(0, nilp=nilp)

    @classmethod
    def h_power(cls, k: int, value: ScalarLike = 1, nilp: int = 5) -> "CohElem":
        comps = [TExp.zero() for _ in range(nilp)]
        if 0 <= k < nilp:
            comps[k] = TExp.of(value)
        return cls(nilp, comps)

    # -- inspection --------------------------------------------------------

    def comp(self, k: int) -> TExp:
        return self.comps[k] if 0 <= k < self.nilp else TExp.zero()

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, QSeries, TExp)):
            other = CohElem(self.nilp, [TExp.of(other)])
        if not isinstance(other, CohElem):
            return NotImplemented
        if self.nilp != other.nilp:
            return False
        return all(a == b for a, b in zip(self.comps, other.comps))

    def __repr__(self) -> str:
        bits = [f"H^{k}*{c!r}" for k, c in enumerate(self.comps) if not c.is_zero()]
        return "<CohElem " + (" + ".join(bits) if bits else "0") + ">"

    def _check(self, other: "CohElem") -> None:
        if self.nilp != other.nilp:
            raise NilpotencyMismatch(f"{self.nilp} vs {other.nilp}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Union["CohElem", ScalarLike]) -> "CohElem":
        if not isinstance(other, CohElem):
            other = CohElem(self.nilp, [TExp.of(other)])
        self._check(other)
        return CohElem(self.nilp, [a + b for a, b in zip(self.comps, other.comps)])

    __radd__ = __add__

    def __neg__(self) -> "CohElem":
        return CohElem(self.nilp, [-c for c in self.comps])

    def __sub__(self, other: Union["CohElem", ScalarLike]) -> "CohElem":
        if not isinstance(other, CohElem):
            other = CohElem(self.nilp, [TExp.of(other)])
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "CohElem":
        return (-self) + other

    def __mul__(self, other: Union["CohElem", ScalarLike]) -> "CohElem":
        if not isinstance(other, CohElem):
            s = TExp.of(other)
            return CohElem(self.nilp, [c * s for c in self.comps])
        self._check(other)
        out = [TExp.zero() for _ in range(self.nilp)]
        for i, a in enumerate(self.comps):
            if a.is_zero():
                continue
            for j, b in enumerate(other.comps):
                if i + j < self.nilp and not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return CohElem(self.nilp, out)

    __rmul__ = __mul__

    def scale(self, s: ScalarLike) -> "CohElem":
        return self * s

    def h_shift(self, k: int) -> "CohElem":
        """Multiply by H^k (degrees overflowing the nilpotency are dropped)."""
        out = [TExp.zero() for _ in range(self.nilp)]
        for i, c in enumerate(self.comps):
            if 0 <= i + k < self.nilp:
                out[i + k] = c
        return CohElem(self.nilp, out)

    def q_ddq(self) -> "CohElem":
        return CohElem(self.nilp, [c.q_ddq() for c in self.comps])

    def map_series(self, fn) -> "CohElem":
        return CohElem(self.nilp, [c.map_series(fn) for c in self.comps])

    def clip(self, trunc: int) -> "CohElem":
        return CohElem(self.nilp, [c.clip(trunc) for c in self.comps])

    def reciprocal_affine(self) -> "CohElem":
        """Inverse of c0 + (nilpotent part); c0 must be monomial-invertible.

        The expansion 1/(c0 (1 + n/c0)) = c0^-1 sum (-n/c0)^k terminates after
        at most ``nilp`` terms because n is supported on H^1..H^{nilp-1}.
        """
        c0 = self.comps[0]
        if c0.is_zero():
            raise NonInvertibleLeading("constant (H^0) part is zero")
        inv0 = c0.inverse()
        n = CohElem(self.nilp, [TExp.zero()] + [c for c in self.comps[1:]])
        out = CohElem.unit(self.nilp)
        acc = CohElem.unit(self.nilp)
        for step in range(1, self.nilp):
            acc = (acc * n) * inv0
            out = out - acc if step % 2 == 1 else out + acc
        return out * inv0

    def to_json(self) -> dict:
        return {"nilpotency": self.nilp, **{f"H^{k}": c.to_json() for k, c in enumerate(self.comps)}}


# -- pairing and Gram data ---------------------------------------------------


def pair(a: CohElem, b: CohElem) -> TExp:
    """Twisted Poincare pairing (a, b)^t = int_{P^4} a b (5H - t)."""
    if a.nilp != 5 or b.nilp != 5:
        raise NilpotencyMismatch("the twisted pairing lives in the nilpotency-5 ring")
    out = TExp.zero()
    for i in range(5):
        ai = a.comps[i]
        if ai.is_zero():
            continue
        for j in range(5):
            bj = b.comps[j]
            if bj.is_zero():
                continue
            if i + j == 3:
                out = out + ai * bj * 5
            elif i + j == 4:
                out = out - (ai * bj).t_shift(1)
    return out


def gram_matrix() -> List[List[TExp]]:
    """G[i][j] = (H^i, H^j)^t."""
    g = [[TExp.zero() for _ in range(5)] for _ in range(5)]
    for i in range(5):
        for j in range(5):
            if i + j == 3:
                g[i][j] = TExp.t_power(0, 5)
            elif i + j == 4:
                g[i][j] = TExp.t_power(1, -1)
    return g


def gram_inverse() -> List[List[TExp]]:
    """Exact inverse of the Gram matrix (a Laurent matrix in t).

    Solving (phi^i, H^j) = delta_ij gives the closed form
    G^-1[k][i] = -5^{k-4+i} t^{-(k-3+i)} for k >= 4-i, else 0.
    """
    inv = [[TExp.zero() for _ in range(5)] for _ in range(5)]
    for i in range(5):
        for k in range(5):
            if k >= 4 - i:
                inv[k][i] = TExp.t_power(-(k - 3 + i), -(5 ** (k - 4 + i)))
    return inv


def dual_basis() -> List[CohElem]:
    """phi^i with (phi^i, H^j)^t = delta_ij."""
    inv = gram_inverse()
    return [CohElem(5, [inv[k][i] for k in range(5)]) for i in range(5)]


def tilde_h4() -> CohElem:
    """The class 1/t + 5H/t^2 + 25H^2/t^3 + 125H^3/t^4 + 625H^4/t^5."""
    return CohElem(5, [TExp.t_power(-(k + 1), 5 ** k) for k in range(5)])


def casimir() -> "Tensor2":
    """sum_i phi_i (x) phi^i for the twisted pairing (basis independent)."""
    duals = dual_basis()
    out = Tensor2.zero()
    for i in range(5):
        for k in range(5):
            out.comps[i][k] = out.comps[i][k] + duals[i].comps[k]
    return out


class Tensor2:
    """Element of the tensor square of the nilpotency-5 ring: 5x5 TExp array."""

    __slots__ = ("comps",)

    def __init__(self, comps: List[List[TExp]] | None = None):
        if comps is None:
            comps = [[TExp.zero() for _ in range(5)] for _ in range(5)]
        self.comps = comps

    @classmethod
    def zero(cls) -> "Tensor2":
        return cls()

    @classmethod
    def outer(cls, a: CohElem, b: CohElem) -> "Tensor2":
        out = cls()
        for i in range(5):
            if a.comps[i].is_zero():
                continue
            for j in range(5):
                if not b.comps[j].is_zero():
                    out.comps[i][j] = out.comps[i][j] + a.comps[i] * b.comps[j]
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.comps for c in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor2):
            return NotImplemented
        return all(self.comps[i][j] == other.comps[i][j] for i in range(5) for j in range(5))

    def __add__(self, other: "Tensor2") -> "Tensor2":
        return Tensor2([[self.comps[i][j] + other.comps[i][j] for j in range(5)] for i in range(5)])

    def __neg__(self) -> "Tensor2":
        return Tensor2([[-self.comps[i][j] for j in range(5)] for i in range(5)])

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        return self + (-other)

    def __mul__(self, other: Union["Tensor2", ScalarLike]) -> "Tensor2":
        if not isinstance(other, Tensor2):
            s = TExp.of(other)
            return Tensor2([[c * s for c in row] for row in self.comps])
        out = Tensor2.zero()
        for i in range(5):
            for j in range(5):
                a = self.comps[i][j]
                if a.is_zero():
                    continue
                for k in range(5 - i):
                    for l in range(5 - j):
                        b = other.comps[k][l]
                        if not b.is_zero():
                            out.comps[i + k][j + l] = out.comps[i + k][j + l] + a * b
        return out

    __rmul__ = __mul__

    def apply_slots(self, m1: List[List[TExp]] | None, m2: List[List[TExp]] | None) -> "Tensor2":
        """Apply flat-basis matrices to the two slots: sum m1[i][k] m2[j][l] X[k][l]."""
        out = Tensor2.zero()
        for k in range(5):
            for l in range(5):
                x = self.comps[k][l]
                if x.is_zero():
                    continue
                for i in range(5) if m1 is not None else [k]:
                    a = m1[i][k] if m1 is not None else None
                    if a is not None and a.is_zero():
                        continue
                    for j in range(5) if m2 is not None else [l]:
                        b = m2[j][l] if m2 is not None else None
                        term = x
                        if a is not None:
                            term = term * a
                        if b is not None:
                            term = term * b
                        out.comps[i][j] = out.comps[i][j] + term
        return out

    def reciprocal_affine(self) -> "Tensor2":
        """Inverse of c00 + nilpotent, c00 monomial-invertible (finite expansion)."""
        c0 = self.comps[0][0]
        if c0.is_zero():
            raise NonInvertibleLeading("constant part of the tensor is zero")
        inv0 = c0.inverse()
        n = Tensor2([[self.comps[i][j] if (i, j) != (0, 0) else TExp.zero() for j in range(5)] for i in range(5)])
        out = Tensor2.zero()
        out.comps[0][0] = TExp.of(1)
        acc = Tensor2.zero()
        acc.comps[0][0] = TExp.of(1)
        for step in range(1, 9):
            acc = (acc * n) * inv0
            if acc.is_zero():
                break
            out = out - acc if step % 2 == 1 else out + acc
        return out * inv0

    def crosspair(self) -> TExp:
        """Pair the two slots with each other: sum X_ij (H^i, H^j)^t."""
        out = TExp.zero()
        for i in range(5):
            for j in range(5):
                x = self.comps[i][j]
                if x.is_zero():
                    continue
                if i + j == 3:
                    out = out + x * 5
                elif i + j == 4:
                    out = out - x.t_shift(1)
        return out

    def pair_against(self, a: CohElem, b: CohElem) -> TExp:
        """(a (x) b, self) with the pairing applied slotwise."""
        out = TExp.zero()
        for i in range(5):
            for j in range(5):
                x = self.comps[i][j]
                if x.is_zero():
                    continue
                row = pair(a, CohElem.h_power(i))
                col = pair(b, CohElem.h_power(j))
                if not row.is_zero() and not col.is_zero():
                    out = out + x * row * col
        return out


def clip_tensor(x: Tensor2, order: int) -> Tensor2:
    """Clip every q-series inside to the window below ``order + 1``."""
    def clip(s: QSeries) -> QSeries:
        return s.with_trunc(order + 1) if s.trunc > order + 1 else s
    return Tensor2([[x.comps[i][j].map_series(clip) for j in range(5)] for i in range(5)])
