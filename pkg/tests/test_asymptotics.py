from fractions import Fraction

from gallai.asymptotics import check_facts_A, f_eval, f_of, feps_log
from gallai.constants import ConstantsGeneral, ConstantsTight3
from gallai.exact import LogExpr


def test_f_at_one_literal():
    k = ConstantsTight3.literal()
    assert f_eval(0, 2 * k.log_C, k) == Fraction(1, 4)


def test_f_desk_first_interval():
    assert f_eval(8, 36, ConstantsTight3.desk()) == Fraction(144, 64)


def test_f_at_m_shape():
    k = ConstantsTight3.desk()
    L = 900
    a = Fraction(4, 9) * L
    assert f_eval(L, L, k) == k.c ** 3 * a ** 4 * (k.log_C + L - 2 * a) ** 2


def test_f_monotone_within_intervals():
    # desk constants are too small for the pieces to join monotonically
    k = ConstantsTight3.desk()
    for lo, hi in ((0, 40), (41, 80), (81, 90)):
        vals = [f_eval(i, 90, k) for i in range(lo, hi + 1)]
        assert all(x <= y for x, y in zip(vals, vals[1:]))


def test_f_of_matches_eval():
    k = ConstantsTight3.desk()
    assert f_of(2 ** 10, LogExpr.const(36), k).exact == f_eval(10, 36, k)


def test_feps_definitions():
    assert feps_log(20, 20, 10, 0, 7) == 0
    eps = Fraction(1, 3)
    assert feps_log(20, 20, 10, eps, 7) == eps * 7 * 10


def test_fact1_threshold_example():
    C = ConstantsGeneral.literal(3, 2).C
    assert C == 2592
    assert C * Fraction(16, 2 ** 16) > Fraction(1, 2)
    assert C * Fraction(17, 2 ** 17) <= Fraction(1, 2)


def test_facts_A_literal_hold():
    reports = check_facts_A(ConstantsTight3.literal())
    assert [r.fact for r in reports] == ["A1", "A2", "A3", "A4", "A5"]
    assert all(r.holds for r in reports)
