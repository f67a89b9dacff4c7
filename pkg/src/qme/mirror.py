"""I-functions, Picard-Fuchs residuals, Birkhoff factorization, S-matrix data.

The I-function of the quintic (and its Euler-twisted P^4 variant) is built
degree by degree as a finite "z-tower": a map from z-exponent to CohElem.
Applying the hyperplane operator D_H = z q d/dq + H to towers is exact, so the
Picard-Fuchs residual can be asserted to vanish identically.

Birkhoff factorization runs the triangular chain

    S*_0 = I(z)/(z I_0),
    S*_{k+1} = (1/I_{k+1,k+1}) [ (D_H - I_{k+1,k+1;a} t) S*_k
                                 - I_{k+1,k+1;b} t^2 S*_{k-1} - ... ],

fixing each unknown series so that S*_{k+1} = H^{k+1} + O(z^{-1}); the
extracted series are exactly the entries of the quantum product matrix A.
Replacing z by t-5H (or (t-5H)/2) in the same chain produces the modified
S-matrix columns used by the graph sums.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .cohring import CohElem, TExp, tilde_h4
from .series import QSeries

QVAR = "q"

Tower = Dict[int, CohElem]


class NormalizationFailure(Exception):
    pass


class InsufficientDepth(Exception):
    pass


# -- tower arithmetic ---------------------------------------------------------


def tower_add(a: Tower, b: Tower) -> Tower:
    out = dict(a)
    for e, c in b.items():
        out[e] = out[e] + c if e in out else c
    return {e: c for e, c in out.items() if not c.is_zero()}


def tower_neg(a: Tower) -> Tower:
    return {e: -c for e, c in a.items()}


def tower_sub(a: Tower, b: Tower) -> Tower:
    return tower_add(a, tower_neg(b))


def tower_scale(a: Tower, s) -> Tower:
    out = {e: c * s for e, c in a.items()}
    return {e: c for e, c in out.items() if not c.is_zero()}


def tower_zshift(a: Tower, k: int) -> Tower:
    return {e + k: c for e, c in a.items()}


def tower_is_zero(a: Tower) -> bool:
    return all(c.is_zero() for c in a.values())


def tower_clip(a: Tower, trunc: int) -> Tower:
    """Clip every q-series in the tower to exponents below trunc."""
    return {e: c.clip(trunc) for e, c in a.items()}


def tower_mul(a: Tower, b: Tower, nilp: int) -> Tower:
    out: Tower = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            p = c1 * c2
            if not p.is_zero():
                e = e1 + e2
                out[e] = out[e] + p if e in out else p
    return {e: c for e, c in out.items() if not c.is_zero()}


def apply_dh(a: Tower) -> Tower:
    """D_H = z q d/dq + H on a tower."""
    out = tower_zshift({e: c.q_ddq() for e, c in a.items()}, 1)
    return tower_add(out, {e: c.h_shift(1) for e, c in a.items()})


def apply_affine_dh(a: Tower, factor5: int, shift_z: int, t_shift) -> Tower:
    """(factor5 * D_H + shift_z * z - t_shift * t) on a tower (one PF factor)."""
    out = tower_scale(apply_dh(a), Fraction(factor5))
    if shift_z:
        out = tower_add(out, tower_zshift(tower_scale(a, Fraction(shift_z)), 1))
    if t_shift:
        out = tower_add(out, {e: c * TExp.t_power(1, -Fraction(t_shift)) for e, c in a.items()})
    return out


# -- construction of the I-function -------------------------------------------


def i_function(twisted: bool, order: int) -> Tower:
    """The (un)twisted quintic I-function as an exact z-tower, orders q^0..q^order.

    untwisted:  z sum_d q^d prod_{j<=5d}(5H+jz) / prod_{k<=d}(H+kz)^5,  H^4 = 0
    twisted:    z sum_d q^d prod_{j<=5d}(5H+jz-t) / prod_{k<=d}(H+kz)^5, H^5 = 0
    """
    if order < 0:
        raise InsufficientDepth("order must be >= 0")
    nilp = 5 if twisted else 4
    total: Tower = {}
    for d in range(order + 1):
        qmono = QSeries.monomial(QVAR, d, 1, order + 1)
        term: Tower = {0: CohElem.unit(nilp) * TExp.of(qmono)}
        # numerator prod_{j=1}^{5d} (5H + j z - t)
        for j in range(1, 5 * d + 1):
            factor: Tower = {0: CohElem.h_power(1, 5, nilp=nilp), 1: CohElem.unit(nilp) * Fraction(j)}
            if twisted:
                factor[0] = factor[0] + CohElem.unit(nilp) * TExp.t_power(1, -1)
            term = tower_mul(term, factor, nilp)
        # inverse denominator prod_{k=1}^{d} (H + k z)^{-5}
        for k in range(1, d + 1):
            inv: Tower = {}
            coeff = Fraction(1)
            for m in range(nilp):
                # binom(-5, m) H^m (k z)^{-5-m}
                inv[-5 - m] = CohElem.h_power(m, coeff * Fraction(1, k ** (5 + m)), nilp=nilp)
                coeff = coeff * Fraction(-5 - m, m + 1)
            term = tower_mul(term, inv, nilp)
        total = tower_add(total, tower_clip(term, order + 1))
    return tower_zshift(total, 1)


def pf_residual(tower: Tower, twisted: bool, order: int) -> Tower:
    """Picard-Fuchs residual; identically empty for the true I-function.

    untwisted: (D_H^4 - 5 q prod_{k=1..4}(5 D_H + k z)) I
    twisted:   (D_H^5 -   q prod_{k=1..5}(5 D_H + k z - t)) I
    """
    n = 5 if twisted else 4
    lead = tower
    for _ in range(n):
        lead = apply_dh(lead)
    prod = tower
    for k in range(1, n + 1):
        prod = apply_affine_dh(prod, 5, k, 1 if twisted else 0)
    qmono = QSeries.monomial(QVAR, 1, 1 if twisted else 5)
    prod = tower_scale(prod, TExp.of(qmono))
    return tower_clip(tower_sub(lead, prod), order + 1)


# -- Birkhoff factorization ----------------------------------------------------


class MirrorData:
    """All Birkhoff-derived data of the twisted theory at a fixed q-order."""

    def __init__(self, order: int):
        if order < 1:
            raise InsufficientDepth("order must be >= 1")
        self.order = order

        untw = i_function(False, order)
        self.untwisted_tower = untw
        self.I0 = untw[1].comp(0).as_qseries()
        self.I1 = untw[0].comp(1).as_qseries()
        self.tauQ = self.I1 / self.I0
        self.I11 = 1 + self.tauQ.q_ddq()
        base = QSeries.from_coeffs(QVAR, [1, -3125] + [0] * (order - 1))
        self.L = base.pow_rat(Fraction(-1, 5))

        self.twisted_tower = i_function(True, order)
        self.I1a = self.twisted_tower[0].comp(0).coeff(1)  # coefficient of t in the z^0 part

        # Birkhoff chain for the adjoint S-matrix columns.
        inv_i0 = self.I0.inverse()
        col0 = tower_scale(tower_zshift(self.twisted_tower, -1), TExp.of(inv_i0))
        self.s_columns: List[Tower] = [col0]
        #: a_entries[c] maps t-power j to the series I_{c,c} (j=0) / I_{c,c;*} (j>=1)
        self.a_entries: List[Dict[int, QSeries]] = [dict() for _ in range(6)]
        for k in range(5):
            dcol = tower_clip(apply_dh(self.s_columns[k]), order + 1)
            level0 = dcol.get(0, CohElem.zero(5))
            entries: Dict[int, QSeries] = {}
            for m in range(5):
                texp = level0.comp(m)
                for e in texp.t_exponents():
                    if e != k + 1 - m:
                        raise NormalizationFailure(
                            f"column {k + 1}: H^{m} carries t^{e}, expected t^{k + 1 - m}")
                entries[k + 1 - m] = texp.coeff(k + 1 - m)
            self.a_entries[k + 1] = {j: s for j, s in entries.items() if 0 <= j <= k + 1}
            new_col = dcol
            for j, s in self.a_entries[k + 1].items():
                if j == 0:
                    continue
                new_col = tower_sub(new_col, tower_scale(self.s_columns[k + 1 - j], TExp({j: s})))
            new_col = tower_clip(new_col, order + 1)
            if k == 4:
                # H^5 = 0 forces the whole combination to vanish (S_5^* = 0)
                if not tower_is_zero(new_col):
                    raise NormalizationFailure("S_5^* does not vanish")
                break
            ikk = self.a_entries[k + 1][0]
            if ikk.coeff(0) == 0:
                raise NormalizationFailure(f"I_{k + 1},{k + 1} is not invertible")
            inv = ikk.inverse()
            new_col = tower_scale(new_col, TExp.of(inv))
            for e, c in new_col.items():
                if e > 0 and not c.is_zero():
                    raise NormalizationFailure(f"column {k + 1} has a positive z-power {e}")
            if not (new_col.get(0, CohElem.zero(5)) == CohElem.h_power(k + 1)):
                raise NormalizationFailure(f"column {k + 1} z^0 part is not H^{k + 1}")
            self.s_columns.append(new_col)

        self._sbar: Dict[Fraction, List[CohElem]] = {}

    # -- named A-matrix entries -----------------------------------------------

    def ikk(self, k: int) -> QSeries:
        """I_{k,k} for k = 0..4 (I_{0,0} := I_0)."""
        if k == 0:
            return self.I0
        return self.a_entries[k][0]

    def ikk_sub(self, k: int, j: int) -> QSeries:
        """I_{k,k;a} (j=1), I_{k,k;b} (j=2), ... for column k = 1..5."""
        return self.a_entries[k].get(j, QSeries.zero(QVAR, self.order + 1))

    def a_matrix(self) -> List[List[TExp]]:
        """A as an operator matrix in the flat basis: (A H^j)_i = A[i][j] H^i."""
        out = [[TExp.zero() for _ in range(5)] for _ in range(5)]
        for col in range(1, 6):
            for j, s in self.a_entries[col].items():
                i = col - j  # H-power of the image term I_{col,col;*} t^j H^{col-j}
                if 0 <= i <= 4:
                    out[i][col - 1] = TExp({j: s})
        return out

    # -- modified S-matrix ------------------------------------------------------

    def sbar_columns(self, half: Fraction = Fraction(1)) -> List[CohElem]:
        """Columns Sbar*(H^k) of S*(z) specialized at z = half*(t-5H), k = 0..4."""
        if half in self._sbar:
            return self._sbar[half]
        zsub = CohElem(5, [TExp.t_power(1, half), TExp.of(-5 * half)])
        cols = [CohElem.unit(5) * TExp.of(self.I0.inverse())]
        for k in range(4):
            new = zsub * cols[k].q_ddq() + cols[k].h_shift(1)
            for j, s in self.a_entries[k + 1].items():
                if j > 0:
                    new = new - cols[k + 1 - j] * TExp({j: s})
            cols.append((new * TExp.of(self.a_entries[k + 1][0].inverse())).clip(self.order + 1))
        self._sbar[half] = cols
        return cols

    def sbar_tilde_h4(self, half: Fraction = Fraction(1)) -> CohElem:
        """Sbar*(tilde H_4) assembled from the columns."""
        cols = self.sbar_columns(half)
        out = CohElem.zero(5)
        for k in range(5):
            out = out + cols[k] * TExp.t_power(-(k + 1), 5 ** k)
        return out

    # -- the distinguished dual class -----------------------------------------

    def s_tilde_h4_tower(self) -> Tower:
        """S*(z)(tilde H_4) = sum_k 5^k t^{-1-k} S*(z)(H^k)."""
        out: Tower = {}
        for k in range(5):
            out = tower_add(out, tower_scale(self.s_columns[k], TExp.t_power(-(k + 1), 5 ** k)))
        return out

    def hdual4_residual(self) -> Tower:
        """(D_H - t/5) S*(z)(tilde H_4) + (1/5) I(z)/z; vanishes identically.

        The normalization I(z)/z is forced by the z = t-5H specialization,
        where I(z)/z collapses to 1 and the residual becomes
        (t-5H)(-1/5 + q d/dq) Sbar*(tilde H_4) + 1/5.
        """
        s = self.s_tilde_h4_tower()
        out = apply_dh(s)
        out = tower_sub(out, tower_scale(s, TExp.t_power(1, Fraction(1, 5))))
        out = tower_add(out, tower_scale(tower_zshift(self.twisted_tower, -1), Fraction(1, 5)))
        return tower_clip(out, self.order + 1)


_MIRROR_CACHE: Dict[int, MirrorData] = {}


def mirror_data(order: int) -> MirrorData:
    if order not in _MIRROR_CACHE:
        _MIRROR_CACHE[order] = MirrorData(order)
    return _MIRROR_CACHE[order]


# -- A-matrix identities ---------------------------------------------------------


def _xpoly_mul(a: List[TExp], b: List[TExp]) -> List[TExp]:
    out = [TExp.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            if not cb.is_zero():
                out[i + j] = out[i + j] + ca * cb
    return out


def _xpoly_det(m: List[List[List[TExp]]]) -> List[TExp]:
    """Determinant of a matrix of x-polynomials (lists of TExp) by expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    out = [TExp.zero()]
    for i in range(n):
        if all(c.is_zero() for c in m[i][0]):
            continue
        minor = [[m[r][c] for c in range(1, n)] for r in range(n) if r != i]
        term = _xpoly_mul(m[i][0], _xpoly_det(minor))
        if i % 2:
            term = [-c for c in term]
        pad = max(len(out), len(term))
        out = [(out[k] if k < len(out) else TExp.zero()) + (term[k] if k < len(term) else TExp.zero())
               for k in range(pad)]
    return out


def char_poly_residual(md: MirrorData) -> List[TExp]:
    """det(x - A) - (x^5 - q(5x-t)^5)/(1-5^5 q), coefficient list in x."""
    a = md.a_matrix()
    m = [[[(-a[i][j]), TExp.of(1 if i == j else 0)] for j in range(5)] for i in range(5)]
    det = _xpoly_det(m)
    xinv = QSeries.from_coeffs(QVAR, [1, -3125] + [0] * (md.order - 1)).inverse()
    rhs = [TExp.zero() for _ in range(6)]
    rhs[5] = TExp.of(xinv)
    binom = [1, 5, 10, 10, 5, 1]
    qser = QSeries.monomial(QVAR, 1, 1, md.order + 1)
    for k in range(6):  # -q/(1-5^5 q) * C(5,k) (5x)^k (-t)^{5-k}
        coeff = Fraction(binom[k] * 5 ** k * (-1) ** (5 - k))
        rhs[k] = rhs[k] - TExp({5 - k: qser * xinv * coeff})
    pad = max(len(det), 6)
    det = det + [TExp.zero()] * (pad - len(det))
    return [det[k] - rhs[k] for k in range(pad)]


def minimal_poly_residual(md: MirrorData) -> List[List[TExp]]:
    """A^5 - q (5A - t)^5 as a matrix of TExp (must vanish)."""
    a = md.a_matrix()

    def mat_mul(x, y):
        return [[sum((x[i][k] * y[k][j] for k in range(5)), TExp.zero()) for j in range(5)] for i in range(5)]

    def mat_pow(x, n):
        out = None
        base = x
        while n:
            if n & 1:
                out = base if out is None else mat_mul(out, base)
            n >>= 1
            if n:
                base = mat_mul(base, base)
        return out

    five_a_minus_t = [[a[i][j] * 5 - (TExp.t_power(1) if i == j else TExp.zero()) for j in range(5)] for i in range(5)]
    lhs = mat_pow(a, 5)
    rhs = mat_pow(five_a_minus_t, 5)
    qser = TExp.of(QSeries.monomial(QVAR, 1, 1, md.order + 1))
    return [[lhs[i][j] - rhs[i][j] * qser for j in range(5)] for i in range(5)]


# -- mirror map helpers --------------------------------------------------------


def q_of_Q(tau_q: QSeries, order: int) -> QSeries:
    """Invert the mirror map Q = q exp(tauQ(q)); returns q(Q) tagged "Q"."""
    f = (QSeries.monomial(QVAR, 1, 1, order + 1) * tau_q.exp()).with_trunc(order + 1)
    g = f.revert()
    return QSeries(  # retag the reverted series in the flat coordinate
        "Q", g.lo, list(g.coeffs), g.trunc)


def transport_to_Q(series_q: QSeries, tau_q: QSeries, order: int) -> QSeries:
    """Rewrite a q-series as a Q-series through the inverse mirror map."""
    qq = q_of_Q(tau_q, order)
    retagged = QSeries("Q", series_q.lo, list(series_q.coeffs), series_q.trunc)
    return retagged.compose(qq)
