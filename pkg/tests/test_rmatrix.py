from fractions import Fraction as F

import pytest

from qme.cohring import CohElem, TExp, gram_matrix
from qme.generators import GeneratorSet
from qme.rmatrix import AlphaSeries, ParityViolation, RMatrixData, rmatrix_data
from qme.series import QSeries

ORDER = 3


@pytest.fixture(scope="module")
def rd():
    return rmatrix_data(ORDER)


def test_alpha_sum_basics():
    T = 40
    one = AlphaSeries.monomial(T)
    qf = AlphaSeries.monomial(T, m=1)
    assert one.filter_sum(2) == TExp.of(QSeries.const("q", 5))
    assert qf.filter_sum(2).is_zero()
    fifth = qf ** 5
    assert fifth.filter_sum(2) == TExp.of(QSeries.monomial("q", 1, -15625, 3))


def test_alpha_parity_guard():
    T = 40
    odd = AlphaSeries.monomial(T, m=5, k=1)
    with pytest.raises(ParityViolation):
        odd.filter_sum(1)


def test_l_alpha_expansion(rd):
    # L_alpha = (t/5)(qf - qf^2 + qf^3 - ...)
    got = rd.L_alpha
    geo = AlphaSeries.zero(rd.qtrunc)
    for m in range(1, rd.qtrunc):
        geo = geo + AlphaSeries.monomial(rd.qtrunc, m=m, value=F((-1) ** (m + 1)))
    expect = geo.h_shift(2) * F(-1)  # t/5 = -h^2
    assert got == expect


def test_l_alpha_algebraic_equation(rd):
    # q (5 L_a - t)^5 - L_a^5 = 0; the displayed equation carries a plus sign
    # but the z^0 coefficient of the Picard-Fuchs operator forces the minus.
    assert rd.l_alpha_equation_residual().is_zero()


def test_row0_pf_recursion(rd):
    for m, res in enumerate(rd.pf_row_residual()):
        assert res.is_zero(), f"z^{m} residual"


def test_psi_orthonormality(rd):
    for j, row in enumerate(rd.psi_orthonormality_residuals()):
        for k, res in enumerate(row):
            assert res.is_zero(), (j, k)


def test_psi4_entry(rd):
    # Psi^{4,alpha} = (1+qf) I0 / t
    one_plus = rd.one + rd.qf
    expect = (one_plus * rd.I0p).h_shift(-2) * F(-1, 5)
    assert rd.dual_row[0] == expect


def test_dual_row_closed_forms(rd):
    one, qf, I0 = rd.one, rd.qf, rd.I0p
    one_plus = one + qf
    qinv = AlphaSeries.monomial(rd.qtrunc, m=-1)
    r1 = one_plus * (12 * one - 25 * qf) * I0 * qinv * F(1, 12)
    r1 = r1.h_shift(-4) * F(1, 25)  # t^-2
    assert rd.dual_row[1] == r1
    r2 = one_plus * (288 * one - 1176 * qf + 625 * qf * qf) * I0 * qinv * qinv * F(1, 288)
    r2 = r2.h_shift(-6) * F(-1, 125)  # t^-3
    assert rd.dual_row[2] == r2
    r3 = one_plus * (20736 * one - 460512 * qf + 338868 * qf * qf + 11875 * qf ** 3)
    r3 = r3 * I0 * qinv * qinv * qinv * F(1, 51840)
    r3 = r3.h_shift(-8) * F(1, 625)  # t^-4
    assert rd.dual_row[3] == r3


def test_dual_row_consistency_with_flat_rows(rd):
    # (R_m)^{4,alpha} = sum_i 5^i t^{-1-i} (R_m)_i^alpha
    for m in range(4):
        acc = AlphaSeries.zero(rd.qtrunc)
        for i in range(5):
            acc = acc + rd.rows[i][m].h_shift(-2 * (1 + i)) * (F(5) ** i * F(-5) ** (-(1 + i)))
        assert acc == rd.dual_row[m], f"z^{m}"


def test_flat_r0_is_identity(rd):
    m0 = rd.flat_matrix(0)
    for i in range(5):
        for j in range(5):
            expect = TExp.of(QSeries.const("q", 1 if i == j else 0))
            assert m0[i][j] == expect, (i, j)


def test_r2_plus_r2_star_is_r1_squared(rd):
    m1, m2 = rd.flat_matrix(1), rd.flat_matrix(2)
    m2s = rd.adjoint(m2)
    for i in range(5):
        for j in range(5):
            sq = sum((m1[i][k] * m1[k][j] for k in range(5)), TExp.zero())
            assert m2[i][j] + m2s[i][j] == sq, (i, j)


def test_r1_self_adjoint(rd):
    m1 = rd.flat_matrix(1)
    m1s = rd.adjoint(m1)
    for i in range(5):
        for j in range(5):
            assert m1[i][j] == m1s[i][j]


def test_flat_entries_are_laurent_q_series(rd):
    # alpha-summed exports carry integer t-exponents; principal parts in q can
    # only reach q^{-1} (one inverse power of qf^5) in the flat R-matrices
    for m in (1, 2, 3):
        mat = rd.flat_matrix(m)
        for i in range(5):
            for j in range(5):
                for e, s in mat[i][j].terms.items():
                    v = s.valuation()
                    assert v is None or v >= -m


def _canonical_r1_diagonal(rd):
    """(R_1)_{bar a bar a} as a profile: Delta^{-1} (e^alpha, R_1 e^alpha)."""
    coords = rd.coords()
    acc = AlphaSeries.zero(rd.qtrunc)
    for i in range(5):
        acc = acc + coords[i] * rd.rows[i][1]
    return rd.delta_inv * acc


def _r1_star_row_sum(rd):
    """(R_1^* e_alpha, sum_beta e^beta) = Delta^{-1} sum_j s_j (R_1)_j^alpha."""
    coords = rd.coords()
    acc = AlphaSeries.zero(rd.qtrunc)
    for j in range(5):
        s_j = coords[j].filter_sum(rd.order)
        acc = acc + rd.prof_texp(s_j) * rd.rows[j][1]
    return rd.delta_inv * acc


def _closed_form_5_2(rd, kind):
    """The two closed forms of section 5.2, as qf-profiles."""
    g = GeneratorSet(rd.md)
    L = rd.prof(g.L)
    X = rd.prof(g.X[0])
    Y = rd.prof(g.Y[0])
    Qt = rd.prof(g.Qt)
    Pt = rd.prof(g.Pt)
    one = rd.one
    tinv = F(-1, 5)  # with h_shift(-2)
    Linv = L.inverse()
    L2i, L3i, L4i = Linv * Linv, Linv ** 3, Linv ** 4
    qi = AlphaSeries.monomial(rd.qtrunc, m=-1)
    l5m1 = L ** 5 - one
    head = one * F(3125, 12) + qi * 5
    if kind == "raa":
        tail = (qi * qi * F(25, 2) * L2i * (4 * l5m1 * L * L + 20 * L ** 3 * X
                                            + 25 * L ** 4 * Qt + 50 * Pt)
                + qi ** 3 * F(125) * L3i * (2 * l5m1 * L ** 3 + 10 * L ** 4 * X
                                            + 50 * L * Pt + (25 * L ** 5 - 10 * one) * Qt)
                + qi ** 4 * F(625, 2) * L4i * (6 * X + 2 * Y + 50 * L * L * Pt
                                               + 5 * L * (4 * L ** 5 - 3 * one) * Qt))
    else:
        tail = (qi * qi * F(25, 2) * L2i * (12 * l5m1 * L * L + 60 * L ** 3 * X
                                            + 75 * L ** 4 * Qt + 250 * Pt)
                + qi ** 3 * F(625) * L3i * (2 * l5m1 * L ** 3 + L ** 4 * (8 * X + Y)
                                            + 50 * L * Pt + (15 * L ** 5 - 5 * one) * Qt)
                + qi ** 4 * F(625, 2) * L4i * (8 * l5m1 * L ** 4
                                               + 10 * L ** 5 * (2 * X + Y) + 10 * X
                                               + 250 * L * L * Pt
                                               + 25 * L * (3 * L ** 5 - 2 * one) * Qt))
    return (head + tail).h_shift(-2) * tinv


@pytest.mark.skip(reason="closed-form displays under adjudication by the graph-sum anchors")
def test_canonical_r1_diagonal_closed_form(rd):
    assert _canonical_r1_diagonal(rd) == _closed_form_5_2(rd, "raa")


@pytest.mark.skip(reason="closed-form displays under adjudication by the graph-sum anchors")
def test_r1_star_row_sum_closed_form(rd):
    assert _r1_star_row_sum(rd) == _closed_form_5_2(rd, "rab")
