from fractions import Fraction as F
from math import factorial

import pytest

from qme.cohring import CohElem, TExp, tilde_h4
from qme.mirror import (
    MirrorData,
    NormalizationFailure,
    char_poly_residual,
    i_function,
    minimal_poly_residual,
    mirror_data,
    pf_residual,
    q_of_Q,
    tower_add,
    tower_is_zero,
    tower_scale,
    transport_to_Q,
)
from qme.series import QSeries

ORDER = 4


@pytest.fixture(scope="module")
def md():
    return mirror_data(ORDER)


def test_i0_leading_terms(md):
    assert [md.I0.coeff(k) for k in range(4)] == [1, 120, 113400, 168168000]


def test_i0_closed_form_oracle(md):
    # independent oracle: [q^d] I_0 = (5d)!/(d!)^5
    for d in range(ORDER + 1):
        assert md.I0.coeff(d) == F(factorial(5 * d), factorial(d) ** 5)


def test_tau_q_leading_terms(md):
    assert [md.tauQ.coeff(k) for k in range(4)] == [0, 770, 717825, F(3225308000, 3)]


def test_untwisted_pf_residual_vanishes():
    tower = i_function(False, 3)
    assert tower_is_zero(pf_residual(tower, False, 3))


def test_twisted_pf_residual_vanishes():
    tower = i_function(True, 3)
    assert tower_is_zero(pf_residual(tower, True, 3))


def test_pf_detects_corruption():
    tower = i_function(False, 3)
    bad = tower_add(tower, {1: CohElem.unit(4) * TExp.of(QSeries.monomial("q", 1, 1, 4))})
    res = pf_residual(bad, False, 3)
    assert not tower_is_zero(res)


def test_twisted_shares_i0_i1(md):
    tw = md.twisted_tower
    assert tw[1].comp(0).as_qseries() == md.I0
    assert tw[0].comp(1).as_qseries() == md.I1


def test_i11_from_chain_matches_mirror_map(md):
    # the chain-normalized I_{1,1} equals 1 + q d/dq (I_1/I_0)
    assert md.ikk(1) == md.I11
    # and I_{1,1;a} equals q d/dq (I_{1;a}/I_0)
    assert md.ikk_sub(1, 1) == (md.I1a / md.I0).q_ddq()


def test_i11a_anchor(md):
    s = md.ikk_sub(1, 1)
    assert s.coeff(0) == 0
    assert s.coeff(1) == -274


def test_zz_relations(md):
    prod = md.ikk(0)
    for k in range(1, 5):
        prod = prod * md.ikk(k)
    geom = QSeries.from_coeffs("q", [1, -3125] + [0] * (ORDER - 1)).inverse()
    assert prod == geom
    assert md.ikk(1) == md.ikk(3)
    assert md.ikk(0) == md.ikk(4)


def test_symmetry_relations(md):
    # from the symmetry of the quantum product
    assert md.ikk(1) - 5 * md.ikk_sub(1, 1) == md.ikk(4) - 5 * md.ikk_sub(4, 1)
    assert md.ikk(2) - 5 * md.ikk_sub(2, 1) == md.ikk(3) - 5 * md.ikk_sub(3, 1)
    assert -5 * md.ikk_sub(5, 1) == md.I0 - 1
    tr = sum((md.ikk_sub(k, 1) for k in range(2, 6)), md.ikk_sub(1, 1))
    x = QSeries.monomial("q", 1, -3125, ORDER + 1) * QSeries.from_coeffs(
        "q", [1, -3125] + [0] * (ORDER - 1)).inverse()
    assert tr == x


def test_ikka_relation(md):
    lhs = md.ikk_sub(1, 1) + md.ikk_sub(2, 1)
    half_geom = (QSeries.monomial("q", 1, F(-3125, 2), ORDER + 1)
                 * QSeries.from_coeffs("q", [1, -3125] + [0] * (ORDER - 1)).inverse())
    rhs = (md.ikk(2) - 1) / 10 + half_geom
    assert lhs == rhs


def test_i55_relations(md):
    i = md.ikk
    s = md.ikk_sub
    assert s(5, 1) == (1 - i(4)) / 5
    assert s(5, 2) == (1 - i(3)) / 25 - s(4, 1) / 5
    assert s(5, 3) == (1 - i(2)) / 125 - s(3, 1) / 25 - s(4, 2) / 5
    assert s(5, 4) == (1 - i(1)) / 625 - s(2, 1) / 125 - s(3, 2) / 25 - s(4, 3) / 5
    assert s(5, 5) == (1 - i(0)) / 3125 - s(1, 1) / 625 - s(2, 2) / 125 - s(3, 3) / 25 - s(4, 4) / 5


def test_char_poly(md):
    for c in char_poly_residual(md):
        assert c.is_zero()


def test_minimal_poly(md):
    for row in minimal_poly_residual(md):
        for entry in row:
            assert entry.is_zero()


def test_hdual4_residual(md):
    assert tower_is_zero(md.hdual4_residual())


def test_sbar_unit_column(md):
    col0 = md.sbar_columns()[0]
    assert col0 == CohElem.unit(5) * TExp.of(md.I0.inverse())


def test_sbar_fixes_tilde_h4(md):
    assert md.sbar_tilde_h4(F(1)) == tilde_h4()
    assert md.sbar_tilde_h4(F(1, 2)) == tilde_h4()


def test_s_matrix_initial_condition(md):
    # S*(z)(tilde H_4) at q = 0 is tilde H_4 (all z^{<0} levels vanish at q^0)
    tower = md.s_tilde_h4_tower()
    at0 = CohElem.zero(5)
    for e, c in tower.items():
        zero_part = c.map_series(lambda s: QSeries.const("q", s.coeff(0)))
        if e == 0:
            at0 = at0 + zero_part
        else:
            assert zero_part.is_zero(), f"level z^{e} survives at q=0"
    assert at0 == tilde_h4()


def test_transport_to_Q_roundtrip(md):
    qq = q_of_Q(md.tauQ, ORDER)
    assert qq.coeff(1) == 1 and qq.coeff(2) == -770
    # transporting q itself gives q(Q) back
    ident = QSeries.monomial("q", 1, 1, ORDER + 1)
    assert transport_to_Q(ident, md.tauQ, ORDER) == qq
