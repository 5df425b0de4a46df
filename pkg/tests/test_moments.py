from fractions import Fraction
from math import comb, factorial

import pytest

from kloostercodes import (
    ConsistencyError,
    DomainError,
    GroupId,
    field_create,
    histogram_closed_form,
    pless_check,
    sk2_recursive,
    sk2_recursive_chain,
    sk_initial,
    sk_moment,
    sk_recursive,
    sk_recursive_chain,
    stirling2,
    trinomial,
    verify_report,
    weight_prefix_dp,
)
from kloostercodes.codes import WeightPrefix
from kloostercodes.ogroups import group_order

C3_Q9_PREFIX = (
    1,
    13284,
    68921113626,
    21983095182588912,
    5912117869558982080230,
    1254884868290098179930909204,
)


def stirling2_by_formula(h, t):
    total = sum((-1) ** (t - j) * comb(t, j) * j ** h for j in range(t + 1))
    assert total % factorial(t) == 0
    return total // factorial(t)


def trinomial_by_factorials(c, a, b):
    if a + b > c:
        return 0
    return factorial(c) // (factorial(a) * factorial(b) * factorial(c - a - b))


def test_stirling_examples():
    assert stirling2(1, 1) == 1
    assert stirling2(3, 2) == 3
    assert stirling2(4, 2) == 7
    assert stirling2(0, 0) == 1
    assert stirling2(5, 7) == 0


def test_stirling_matches_formula_up_to_30():
    for h in range(31):
        for t in range(h + 1):
            assert stirling2(h, t) == stirling2_by_formula(h, t)


def test_trinomial_examples():
    assert trinomial(3, 1, 1) == 6
    assert trinomial(2, 1, 0) == 2
    assert trinomial(1, 1, 1) == 0
    assert trinomial(0, 0, 0) == 1


def test_trinomial_matches_factorials_up_to_30():
    for c in range(31):
        for a in range(c + 2):
            for b in range(c + 2):
                assert trinomial(c, a, b) == trinomial_by_factorials(c, a, b)


def test_trinomial_huge_class_sizes():
    # class sizes reach q^5; the helper must stay exact there
    n = 3 ** 10
    assert trinomial(n, 1, 1) == n * (n - 1)
    assert trinomial(n, 2, 0) == n * (n - 1) // 2


def _prefix(ctx, gid, j_max):
    return weight_prefix_dp(histogram_closed_form(ctx, gid), ctx, j_max)


def test_pless_q3_rank2(f3):
    chk = pless_check(f3, GroupId.SO2, 1)
    assert (chk.lhs, chk.rhs, chk.match) == (4, 4, True)
    chk0 = pless_check(f3, GroupId.SO2, 0)
    assert (chk0.lhs, chk0.rhs) == (3, 3)


def test_pless_q3_rank4(f3):
    chk = pless_check(f3, GroupId.SO4, 1)
    assert (chk.lhs, chk.rhs) == (1260, 1260)
    deep = pless_check(f3, GroupId.SO4, 6)
    assert deep.lhs == deep.rhs == 125047004418000000


@pytest.mark.parametrize("gid", [GroupId.SO2, GroupId.O2, GroupId.SO4])
@pytest.mark.parametrize("h", range(7))
def test_pless_all_codes_q3(f3, gid, h):
    assert pless_check(f3, gid, h).match


@pytest.mark.parametrize("gid", [GroupId.SO2, GroupId.O2])
@pytest.mark.parametrize("h", range(7))
def test_pless_rank2_q9(f9, gid, h):
    assert pless_check(f9, gid, h).match


def test_sk_recursive_q3_hand_values(f3):
    prefix = _prefix(f3, GroupId.SO2, 4)
    assert sk_recursive(f3, GroupId.SO2, 1, prefix) == -1
    assert sk_recursive(f3, GroupId.SO2, 2, prefix) == 1
    prefix2 = _prefix(f3, GroupId.O2, 8)
    assert sk_recursive(f3, GroupId.O2, 1, prefix2) == -1


def test_sk2_recursive_q3(f3):
    prefix = _prefix(f3, GroupId.SO4, 5)
    assert sk2_recursive(f3, 1, prefix) == 1
    assert sk2_recursive(f3, 2, prefix) == 1


def test_sk2_recursive_q9_matches_direct(f9):
    prefix = _prefix(f9, GroupId.SO4, 5)
    assert prefix.counts == C3_Q9_PREFIX
    chain = sk2_recursive_chain(f9, 5, prefix)
    assert chain[0] == sk_initial(9)
    for h in range(1, 6):
        assert chain[h] == sk_moment(f9, 2 * h)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("gid", [GroupId.SO2, GroupId.O2])
def test_rank2_chains_match_direct(r, gid):
    ctx = field_create(r)
    n = group_order(gid, ctx.q)
    chain = sk_recursive_chain(ctx, gid, 10, _prefix(ctx, gid, min(n, 10)))
    for h in range(11):
        assert chain[h] == sk_moment(ctx, h)


def test_recursion_validation(f3):
    prefix = _prefix(f3, GroupId.SO2, 4)
    with pytest.raises(DomainError):
        sk_recursive(f3, GroupId.SO4, 1, prefix)
    with pytest.raises(DomainError):
        sk_recursive(f3, GroupId.SO2, 0, prefix)
    short = _prefix(f3, GroupId.SO2, 2)
    with pytest.raises(DomainError):
        sk_recursive(f3, GroupId.SO2, 3, short)  # needs j <= min(N, h) = 3


def test_corrupted_prefix_is_detected(f3):
    # a wrong weight count makes the result non-integral, which is trapped
    bad = WeightPrefix(4, (1, 5, 6, 8, 8))
    with pytest.raises(ConsistencyError):
        sk_recursive(f3, GroupId.SO2, 1, bad)
    bad3 = WeightPrefix(2, (1, 181, 412290))
    with pytest.raises(ConsistencyError):
        sk2_recursive(f3, 1, bad3)


def test_two_path_consistency(f3):
    # the same prefix closes both the power moment identity and the recursion
    prefix = _prefix(f3, GroupId.SO2, 4)
    for h in range(5):
        assert pless_check(f3, GroupId.SO2, h, prefix=prefix).match
    chain = sk_recursive_chain(f3, GroupId.SO2, 4, prefix)
    assert chain == [1, -1, 1, -1, 1]


def test_verify_report_q3(f3):
    reports = verify_report(f3, 10)
    assert [rep.code for rep in reports] == ["so2", "o2", "so4"]
    for rep in reports:
        assert rep.all_match
    so2 = reports[0]
    assert [row.recursive for row in so2.rows] == [(-1) ** h for h in range(1, 11)]
    so4 = reports[2]
    assert [row.h for row in so4.rows] == [2, 4, 6, 8, 10]
    assert all(row.recursive == 1 for row in so4.rows)


def test_verify_report_shape(f9):
    reports = verify_report(f9, 4)
    d = reports[0].to_dict()
    assert set(d) == {"q", "r", "code", "rows"}
    assert d["rows"][0] == {"h": 1, "direct": "5", "recursive": "5", "match": True}
    timed = reports[0].to_dict(include_timing=True)
    assert "elapsed_ms" in timed


def test_moment_inner_terms_use_exact_rationals():
    # 2^{t-h-j-1} exponents go negative; spot-check one inner sum stays exact
    from kloostercodes.moments import _moment_inner_sum

    val = _moment_inner_sum(4, 1, 0)
    assert val == Fraction(2)  # t=1: 1 * 1 * 1 * 2^{-1} * C(4,3) = 2
    assert _moment_inner_sum(4, 1, 1) == Fraction(1, 4)
