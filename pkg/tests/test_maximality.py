import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from bspec.errors import InvalidArgument
from bspec.exact import LambdaParam
from bspec.maximality import (
    CASE0_QUARTER,
    CASE1_DIGIT2,
    CASE1_DIGIT3,
    CASE2_M_EQ_1_DIGIT2,
    CASE2_M_EQ_1_DIGIT3,
    CASE2_M_GT_1,
    NOT_IN_O,
    is_member_gamma1,
    non_orthogonal_witness,
)
from bspec.families import gamma_k
from bspec.oracle import are_orthogonal, in_zero_set

F = Fraction
LAM = LambdaParam(3, 4)


@pytest.mark.parametrize("x, expected", [(F(5, 3), True), (F(7, 3), False), (F(0), True),
                                         (F(1), False), (F(-1, 3), False), (F(1, 9), False)])
def test_is_member_gamma1(x, expected):
    assert is_member_gamma1(x) is expected


def test_membership_matches_enumeration():
    members = set(gamma_k(1, 6))
    for num in range(0, 4**7 // 3 * 3 + 1):
        x = F(num, 3)
        if x < F(4**7, 3):
            assert is_member_gamma1(x) == (x in members)


@pytest.mark.parametrize(
    "x, gamma, tag",
    [
        (F(7, 3), F(1, 3), CASE1_DIGIT3),
        (F(2, 3), F(0), NOT_IN_O),
        (F(4, 9), F(1, 3), CASE2_M_GT_1),
    ],
)
def test_witness_examples(x, gamma, tag):
    res = non_orthogonal_witness(x)
    assert (res.witness, res.case_tag) == (gamma, tag)
    assert not are_orthogonal(x, res.witness, LAM)
    assert not in_zero_set(x - res.witness, LAM)


def test_witness_rejects_members():
    with pytest.raises(InvalidArgument):
        non_orthogonal_witness(F(5, 3))


@pytest.mark.parametrize(
    "x, tag",
    [
        (F(1, 4), CASE0_QUARTER),
        (F(-3, 4), CASE0_QUARTER),
        (F(9, 3), CASE1_DIGIT2),  # 9 = 1 + 2*4
        (F(1), CASE1_DIGIT3),
        (F(-1, 3), CASE1_DIGIT3),
        (F(12), CASE2_M_EQ_1_DIGIT2),  # 4 * 9 / 3, 9 = 1 + 2*4
        (F(4), CASE2_M_EQ_1_DIGIT3),
        (F(16), CASE2_M_EQ_1_DIGIT3),  # 16 * 3 / 3
        (F(48), CASE2_M_EQ_1_DIGIT2),  # 16 * 9 / 3
        (F(16, 27), CASE2_M_GT_1),
    ],
)
def test_every_case_is_reached(x, tag):
    res = non_orthogonal_witness(x)
    assert res.case_tag == tag
    assert is_member_gamma1(res.witness)
    assert not are_orthogonal(x, res.witness, LAM)


def _sample_zero_set(rng):
    n = rng.randint(0, 4)
    k = rng.randint(-1000, 1000)
    return F(4**n * (2 * k + 1), 4 * 3**n)


def test_random_zero_set_points_get_witnesses():
    rng = random.Random(11)
    done = 0
    while done < 300:
        x = _sample_zero_set(rng)
        if is_member_gamma1(x):
            continue
        res = non_orthogonal_witness(x)
        assert is_member_gamma1(res.witness)
        assert not are_orthogonal(x, res.witness, LAM)
        done += 1


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=4**8))
def test_case1_witness_is_smaller(k):
    x = F(2 * k + 1, 3)
    assume(not is_member_gamma1(x))
    res = non_orthogonal_witness(x)
    if res.case_tag in (CASE1_DIGIT2, CASE1_DIGIT3):
        assert 0 <= res.witness < x


@settings(max_examples=300)
@given(st.fractions(max_denominator=3**6))
def test_arbitrary_rationals(x):
    assume(not is_member_gamma1(x))
    res = non_orthogonal_witness(x)
    assert is_member_gamma1(res.witness)
    assert not are_orthogonal(x, res.witness, LAM)
