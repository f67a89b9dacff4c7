"""Canonical-coordinate data of the twisted theory: Psi-matrix, R-matrix, T-vector.

Everything here is a *generic-alpha profile*: one Laurent series in the
variable qf (with qf_alpha = -5 xi^alpha q^{1/5} at the five canonical
indices) represents all five indices at once.  Coefficients are rationals
times integer powers of the formal unit h = (-t/5)^{1/2} (so h^2 rewrites to
-t/5); observables must come out with even h-powers, and the summation over
alpha is the root-of-unity filter

    sum_alpha qf_alpha^m = 5 [5 | m] (-5)^m q^{m/5}.

Row 0 of the R-matrix comes from the closed Picard-Fuchs asymptotics with the
constants c1 = -1/12, c2 = -287/288, c3 = 5039/10368; the remaining flat rows
follow the inductive Birkhoff recursion, and the dual (tilde-H4) row follows
its own first-order equation.  All of these are cross-checked against each
other and against the closed forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

try:  # gmpy2 keeps the dense profile arithmetic fast; Fraction is the fallback
    from gmpy2 import mpq as _mpq

    def RatK(a=0, b=1):
        return _mpq(a, b)
except ImportError:  # pragma: no cover
    def RatK(a=0, b=1):
        return Fraction(a, b)

from .cohring import CohElem, TExp, gram_inverse
from .mirror import MirrorData, mirror_data
from .series import QSeries

QVAR = "q"

C1 = Fraction(-1, 12)
C2 = Fraction(-287, 288)
C3 = Fraction(5039, 10368)


class ParityViolation(Exception):
    pass


class RecursionInconsistency(Exception):
    pass


class AlphaSeries:
    """Laurent series in qf whose coefficients are rational multiples of h^k."""

    __slots__ = ("terms", "qlo", "qtrunc")

    def __init__(self, terms: Dict[Tuple[int, int], object], qlo: int, qtrunc: int):
        self.terms = {key: val for key, val in terms.items() if val != 0 and key[0] < qtrunc}
        self.qlo = qlo
        self.qtrunc = qtrunc

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, qtrunc: int) -> "AlphaSeries":
        return cls({}, 0, qtrunc)

    @classmethod
    def monomial(cls, qtrunc: int, m: int = 0, k: int = 0, value=1) -> "AlphaSeries":
        return cls({(m, k): RatK(Fraction(value).numerator, Fraction(value).denominator)}, m, qtrunc)

    @classmethod
    def from_qseries(cls, s: QSeries, qtrunc: int) -> "AlphaSeries":
        """q^d -> (-1/3125)^d qf^{5d} (the inverse of qf^5 = -5^5 q)."""
        terms: Dict[Tuple[int, int], object] = {}
        for i, c in enumerate(s.coeffs):
            d = s.lo + i
            if c:
                terms[(5 * d, 0)] = RatK(c.numerator, c.denominator) * RatK(-1, 3125) ** d
        return cls(terms, 5 * s.lo, min(qtrunc, 5 * s.trunc))

    @classmethod
    def from_texp(cls, x: TExp, qtrunc: int) -> "AlphaSeries":
        """Convert a Laurent-t value with q-series coefficients: t^n = (-5)^n h^{2n}."""
        out = cls.zero(qtrunc)
        for n, s in x.terms.items():
            piece = cls.from_qseries(s, qtrunc).h_shift(2 * n) * (Fraction(-5) ** n)
            out = out + piece
        return out

    @classmethod
    def one_plus_qf_inverse(cls, qtrunc: int) -> "AlphaSeries":
        """(1 + qf)^{-1} expanded to the window."""
        terms = {(m, 0): RatK(-1) ** m for m in range(0, max(qtrunc, 0))}
        return cls(terms, 0, qtrunc)

    # -- inspection ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlphaSeries):
            return NotImplemented
        t = min(self.qtrunc, other.qtrunc)
        for key in set(self.terms) | set(other.terms):
            if key[0] < t and self.terms.get(key, 0) != other.terms.get(key, 0):
                return False
        return True

    def __repr__(self) -> str:
        bits = [f"{v}*qf^{m}*h^{k}" for (m, k), v in sorted(self.terms.items())[:6]]
        return "<Alpha " + " + ".join(bits) + f" ... O(qf^{self.qtrunc})>"

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "AlphaSeries") -> "AlphaSeries":
        qtrunc = min(self.qtrunc, other.qtrunc)
        out = dict(self.terms)
        for key, val in other.terms.items():
            acc = out.get(key)
            out[key] = val if acc is None else acc + val
        return AlphaSeries(out, min(self.qlo, other.qlo), qtrunc)

    def __neg__(self) -> "AlphaSeries":
        return AlphaSeries({k: -v for k, v in self.terms.items()}, self.qlo, self.qtrunc)

    def __sub__(self, other: "AlphaSeries") -> "AlphaSeries":
        return self + (-other)

    def __mul__(self, other) -> "AlphaSeries":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                return AlphaSeries.zero(self.qtrunc)
            r = RatK(f.numerator, f.denominator)
            return AlphaSeries({k: v * r for k, v in self.terms.items()}, self.qlo, self.qtrunc)
        alo = min((m for m, _ in self.terms), default=self.qtrunc)
        blo = min((m for m, _ in other.terms), default=other.qtrunc)
        qtrunc = min(self.qtrunc + blo, other.qtrunc + alo)
        out: Dict[Tuple[int, int], object] = {}
        items = list(other.terms.items())
        for (m1, k1), v1 in self.terms.items():
            for (m2, k2), v2 in items:
                m = m1 + m2
                if m < qtrunc:
                    key = (m, k1 + k2)
                    acc = out.get(key)
                    p = v1 * v2
                    out[key] = p if acc is None else acc + p
        return AlphaSeries(out, alo + blo, qtrunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "AlphaSeries":
        if n < 0:
            return self.inverse() ** (-n)
        out, base, m = None, self, n
        while m:
            if m & 1:
                out = base if out is None else out * base
            m >>= 1
            if m:
                base = base * base
        return out if out is not None else AlphaSeries.monomial(self.qtrunc)

    def h_shift(self, k: int) -> "AlphaSeries":
        return AlphaSeries({(m, kk + k): v for (m, kk), v in self.terms.items()}, self.qlo, self.qtrunc)

    def q_shift(self, j: int) -> "AlphaSeries":
        return AlphaSeries({(m + j, kk): v for (m, kk), v in self.terms.items()},
                           self.qlo + j, self.qtrunc + j)

    def t_mul(self, n: int = 1) -> "AlphaSeries":
        """Multiply by t^n = (-5)^n h^{2n}."""
        return self.h_shift(2 * n) * (Fraction(-5) ** n)

    def qdq(self) -> "AlphaSeries":
        """q d/dq = (1/5) qf d/dqf on profiles."""
        return AlphaSeries({(m, k): v * RatK(m, 5) for (m, k), v in self.terms.items()},
                           self.qlo, self.qtrunc)

    def inverse(self) -> "AlphaSeries":
        """Series inverse; the lowest qf-coefficient must be a single h-monomial."""
        if not self.terms:
            raise ZeroDivisionError("inverting the zero profile")
        v0 = min(m for m, _ in self.terms)
        lead = {k: val for (m, k), val in self.terms.items() if m == v0}
        if len(lead) != 1:
            raise ParityViolation("leading qf-coefficient is not an h-monomial")
        ((k0, c0),) = lead.items()
        n = self.qtrunc - v0
        # u = self / (c0 qf^{v0} h^{k0}), then invert 1 + (u - 1)
        u: List[Dict[int, object]] = [dict() for _ in range(n)]
        inv_c0 = 1 / c0
        for (m, k), val in self.terms.items():
            u[m - v0][k - k0] = u[m - v0].get(k - k0, 0) + val * inv_c0
        b: List[Dict[int, object]] = [dict() for _ in range(n)]
        b[0] = {0: RatK(1)}

        def hmul(x: Dict[int, object], y: Dict[int, object]) -> Dict[int, object]:
            out: Dict[int, object] = {}
            for kx, vx in x.items():
                for ky, vy in y.items():
                    out[kx + ky] = out.get(kx + ky, 0) + vx * vy
            return {k: v for k, v in out.items() if v != 0}

        for m in range(1, n):
            acc: Dict[int, object] = {}
            for j in range(1, m + 1):
                if u[j]:
                    for k, v in hmul(u[j], b[m - j]).items():
                        acc[k] = acc.get(k, 0) + v
            b[m] = {k: -v for k, v in acc.items() if v != 0}
        terms: Dict[Tuple[int, int], object] = {}
        for m in range(n):
            for k, v in b[m].items():
                terms[(m - v0, k - k0)] = v * inv_c0
        return AlphaSeries(terms, -v0, -v0 + n)

    def truediv(self, other: "AlphaSeries") -> "AlphaSeries":
        return self * other.inverse()

    __truediv__ = truediv

    # -- the root-of-unity filter ------------------------------------------------

    def filter_sum(self, order: int) -> TExp:
        """sum_alpha of the profile: keeps qf^{5s}, maps to 5 (-3125)^s q^s.

        Raises ParityViolation if an odd h-power survives on a kept term and
        RecursionInconsistency if the window cannot cover q^0..q^order.
        """
        if self.qtrunc < 5 * order + 1:
            raise RecursionInconsistency(
                f"profile window O(qf^{self.qtrunc}) cannot certify q^{order}")
        by_t: Dict[int, Dict[int, Fraction]] = {}
        for (m, k), v in self.terms.items():
            if m % 5 != 0:
                continue
            if k % 2 != 0:
                raise ParityViolation(f"odd power h^{k} survives the alpha-sum at qf^{m}")
            s = m // 5
            if s > order:
                continue
            n = k // 2
            coeff = 5 * Fraction(v.numerator, v.denominator) * Fraction(-3125) ** s * Fraction(-1, 5) ** n
            by_t.setdefault(n, {})[s] = by_t.get(n, {}).get(s, Fraction(0)) + coeff
        out: Dict[int, QSeries] = {}
        for n, coeffs in by_t.items():
            lo = min(coeffs)
            vec = [coeffs.get(s, Fraction(0)) for s in range(lo, order + 1)]
            out[n] = QSeries(QVAR, lo, vec, order + 1)
        return TExp(out)


class RMatrixData:
    """Flat rows, dual row, Psi data, flat matrices and T-vector at order N.

    The internal profile window is 5*(order + pad) + 5 in the qf-exponent so
    that repeated multiplication by negative-valuation closed forms still
    certifies every q-coefficient up to the working order.
    """

    def __init__(self, order: int, pad: int = 6):
        self.order = order
        self.md: MirrorData = mirror_data(order + pad)
        self.qtrunc = 5 * (order + pad) + 5
        T = self.qtrunc

        def prof(s: QSeries) -> AlphaSeries:
            return AlphaSeries.from_qseries(s, T)

        one = AlphaSeries.monomial(T)
        qf = AlphaSeries.monomial(T, m=1)
        inv_1q = AlphaSeries.one_plus_qf_inverse(T)
        self.one, self.qf, self.inv_1q = one, qf, inv_1q

        md = self.md
        self.I0p = prof(md.I0)
        # L_alpha = (t/5) qf/(1+qf) = -h^2 qf/(1+qf)
        self.L_alpha = -(qf * inv_1q).h_shift(2)
        # kappa = q d/dq log Delta^{-1/2} = (1/5)(qf/(1+qf) - 2) - q d/dq log I0
        self.kappa = (qf * inv_1q - 2 * one) * Fraction(1, 5) - prof(md.I0.q_ddq() / md.I0)
        # Delta^{-1} = (1+qf)^2/(I0^2 qf^4) h^{-6}; Delta likewise inverted
        one_plus = one + qf
        self.delta_inv = ((one_plus * one_plus) * (self.I0p * self.I0p * AlphaSeries.monomial(T, m=4)).inverse()).h_shift(-6)
        self.delta = self.delta_inv.inverse()

        # row 0 of R(z) in the e^alpha pairing, from the closed asymptotics
        r0 = [one]
        r0.append((one + C1 * qf) * AlphaSeries.monomial(T, m=-1).t_mul(-1))
        r0.append((one + (C1 - 1) * qf + C2 * qf * qf)
                  * AlphaSeries.monomial(T, m=-2).t_mul(-2))
        r0.append((one * Fraction(2, 5) + (C1 - Fraction(24, 5)) * qf
                   + (C2 - C1 - Fraction(14, 5)) * qf * qf + C3 * qf ** 3 * one)
                  * AlphaSeries.monomial(T, m=-3).t_mul(-3))
        #: rows[i][m] = (R_m)_i^alpha = (H^i, R_m e^alpha), i flat, m z-order
        self.rows: List[List[AlphaSeries]] = [r0]

        a_prof = {(c, j): prof(md.ikk_sub(c, j)) for c in range(1, 5) for j in range(1, c + 1)}
        ikk_inv = {c: prof(md.ikk(c)).inverse() for c in range(1, 5)}
        for k in range(4):
            prev = self.rows[k]
            new: List[AlphaSeries] = []
            for m in range(4):
                val = self.L_alpha * prev[m] - a_prof[(k + 1, 1)].t_mul(1) * prev[m]
                if m >= 1:
                    val = val + prev[m - 1].qdq() + self.kappa * prev[m - 1]
                for j in range(2, k + 2):
                    val = val - a_prof[(k + 1, j)].t_mul(j) * self.rows[k + 1 - j][m]
                new.append(val * ikk_inv[k + 1])
            self.rows.append(new)

        # dual row (R_m)^{4,alpha} via its first-order equation; the inverse of
        # (L_alpha - t/5) = h^2/(1+qf) is (1+qf) h^{-2}
        inv_lt = one_plus.h_shift(-2)
        dual = [-(self.I0p * Fraction(1, 5)) * r0[0] * inv_lt]
        for m in range(1, 4):
            rhs = dual[m - 1].qdq() + self.kappa * dual[m - 1] + self.I0p * Fraction(1, 5) * r0[m]
            dual.append(-rhs * inv_lt)
        self.dual_row = dual

        self._flat: Dict[int, List[List[TExp]]] = {}
        self._coords: List[AlphaSeries] | None = None

    # -- profile views of engine series ---------------------------------------

    def prof(self, s: QSeries) -> AlphaSeries:
        return AlphaSeries.from_qseries(s, self.qtrunc)

    def prof_texp(self, x: TExp) -> AlphaSeries:
        return AlphaSeries.from_texp(x, self.qtrunc)

    # -- coordinates of e^alpha in the flat basis ------------------------------

    def coords(self) -> List[AlphaSeries]:
        """a^alpha with e^alpha = sum_i a^alpha_i H^i (profiles over alpha)."""
        if self._coords is None:
            ginv = gram_inverse()
            out = []
            for i in range(5):
                acc = AlphaSeries.zero(self.qtrunc)
                for l in range(5):
                    entry = ginv[i][l]
                    if not entry.is_zero():
                        acc = acc + self.prof_texp(entry) * self.rows[l][0]
                out.append(acc)
            self._coords = out
        return self._coords

    # -- verification data ------------------------------------------------------

    def pf_row_residual(self) -> List[AlphaSeries]:
        """(D_a^5 - q prod_k (5 D_a + k z - t)) I0 R_{0 bar alpha}(z), z-coeffs 0..3.

        D_a = z q d/dq + L_alpha acts on z-polynomials F(z) by
        (D_a F)_m = qdq F_{m-1} + L_alpha F_m.  The normalized-canonical row
        R_{0 bar alpha} = Delta^{-1/2} (R_0)^alpha carries h^{-3}.
        """
        one_plus = self.one + self.qf
        half = one_plus * (self.I0p * AlphaSeries.monomial(self.qtrunc, m=2)).inverse()
        half = half.h_shift(-3)  # Delta^{-1/2}
        F = [half * self.I0p * self.rows[0][m] for m in range(4)]

        def apply(c5, cz, ct, G):
            out = []
            for m in range(4):
                val = (self.L_alpha * G[m]) * c5
                if m >= 1:
                    val = val + G[m - 1].qdq() * c5 + G[m - 1] * cz
                if ct:
                    val = val + G[m].t_mul(1) * ct
                out.append(val)
            return out

        lead = F
        for _ in range(5):
            lead = apply(1, 0, 0, lead)
        prod = F
        for k in range(1, 6):
            prod = apply(5, k, -1, prod)
        qprof = AlphaSeries.monomial(self.qtrunc, m=5, value=Fraction(-1, 3125))
        return [lead[m] - qprof * prod[m] for m in range(4)]

    def l_alpha_equation_residual(self) -> AlphaSeries:
        """q (5 L_alpha - t)^5 - L_alpha^5 must vanish.

        This is the z^0 coefficient of the Picard-Fuchs operator; the minus
        sign is forced by D^5 - q prod(...) (the displayed equation has +).
        """
        qprof = AlphaSeries.monomial(self.qtrunc, m=5, value=Fraction(-1, 3125))
        five_l_minus_t = 5 * self.L_alpha - self.one.t_mul(1)
        return qprof * five_l_minus_t ** 5 - self.L_alpha ** 5

    def psi_orthonormality_residuals(self) -> List[List[TExp]]:
        """sum_alpha Psi_j Psi_k - (H^j, H^k)^t for all j, k."""
        from .cohring import gram_matrix

        gram = gram_matrix()
        out = []
        for j in range(5):
            row = []
            for k in range(5):
                s = (self.delta_inv * self.rows[j][0] * self.rows[k][0]).filter_sum(self.order)
                row.append(s - gram[j][k])
            out.append(row)
        return out

    # -- flat matrices and T-vector ----------------------------------------------

    def flat_matrix(self, m: int) -> List[List[TExp]]:
        """R_m as a matrix in the flat basis H^0..H^4 (pure q-series entries)."""
        if m not in self._flat:
            coords = self.coords()
            ginv = gram_inverse()
            mat = []
            for i in range(5):
                parts = []
                for l in range(5):
                    entry = ginv[i][l]
                    if entry.is_zero():
                        parts.append(None)
                    else:
                        parts.append(self.prof_texp(entry))
                mat.append(parts)
            out = [[TExp.zero() for _ in range(5)] for _ in range(5)]
            for j in range(5):
                wj = self.delta_inv * self.rows[j][0]
                for i in range(5):
                    acc = AlphaSeries.zero(self.qtrunc)
                    for l in range(5):
                        if mat[i][l] is not None:
                            acc = acc + mat[i][l] * self.rows[l][m]
                    out[i][j] = (wj * acc).filter_sum(self.order)
            self._flat[m] = out
        return self._flat[m]

    def t_vectors(self) -> List[CohElem]:
        """T_1, T_2, T_3 with T(z) = z(1 - R^{-1}(z) 1)."""
        m1, m2, m3 = self.flat_matrix(1), self.flat_matrix(2), self.flat_matrix(3)

        def mat_mul(x, y):
            return [[sum((x[i][k] * y[k][j] for k in range(5)), TExp.zero())
                     for j in range(5)] for i in range(5)]

        def col0(mat) -> CohElem:
            return CohElem(5, [mat[i][0] for i in range(5)])

        t1 = col0(m1)
        t2 = col0(mat_mul(m1, m1)) * (-1) + col0(m2)
        m1m2 = mat_mul(m1, m2)
        m2m1 = mat_mul(m2, m1)
        m111 = mat_mul(m1, mat_mul(m1, m1))
        t3 = col0(m111) + col0(m3) - col0(m1m2) - col0(m2m1)
        return [t1, t2, t3]

    def adjoint(self, mat: List[List[TExp]]) -> List[List[TExp]]:
        """Pairing adjoint X* = G^{-1} X^T G in the flat basis."""
        from .cohring import gram_matrix

        g = gram_matrix()
        ginv = gram_inverse()
        xt = [[mat[j][i] for j in range(5)] for i in range(5)]

        def mat_mul(x, y):
            return [[sum((x[i][k] * y[k][j] for k in range(5)), TExp.zero())
                     for j in range(5)] for i in range(5)]

        return mat_mul(ginv, mat_mul(xt, g))


_RMATRIX_CACHE: Dict[int, RMatrixData] = {}


def rmatrix_data(order: int) -> RMatrixData:
    if order not in _RMATRIX_CACHE:
        _RMATRIX_CACHE[order] = RMatrixData(order)
    return _RMATRIX_CACHE[order]
