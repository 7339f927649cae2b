import math

import pytest

from radsg.bounds import ConstantBound, eval_C
from radsg.ideal import subalgebra_member
from radsg.poly import GradedVectorSpace, Ring
from radsg.strength import (
    INFINITY,
    collapse_search,
    min_strength,
    quadric_rank,
    quadric_strength,
    strength_translate_check,
    strengthen,
)

from oracles import quadric_strength_by_charts

S = Ring([f"x{i}" for i in range(1, 7)])
x1, x2, x3, x4, x5, x6 = S.gens()


class TestQuadric:
    @pytest.mark.parametrize("text,s", [
        ("x1*x2", 0),
        ("x1*x2 + x3*x4 + x5^2", 2),
        ("x5^2", 0),
        ("x1*x2 + x2*x3 + x3*x1", 1),
        ("x1*x2 + x3*x4", 1),
    ])
    def test_values_match_chart_oracle(self, text, s):
        q = S.parse(text)
        est = quadric_strength(q)
        assert est.exact and est.upper == s
        assert quadric_strength_by_charts(q) == s
        assert est.certificate.verify()

    def test_formal_certificate(self):
        est = quadric_strength(x1 ** 2 + x2 ** 2)
        assert est.upper == 0
        assert not est.certificate.rational
        assert "formal-certificate" in est.methods

    def test_rank(self):
        assert quadric_rank(x1 * x2 + x3 * x4 + x5 ** 2) == 5
        assert quadric_rank((x1 + x2) ** 2) == 1

    def test_rejects_cubic(self):
        with pytest.raises(ValueError):
            quadric_strength(x1 ** 3)


class TestSearch:
    def test_sum_of_cubes(self):
        est = collapse_search(x1 ** 3 + x2 ** 3)
        assert est.upper == 0 and est.certificate.verify()
        # the factor found is the hand one, up to scalar
        assert (x1 ** 2 - x1 * x2 + x2 ** 2) * (x1 + x2) == x1 ** 3 + x2 ** 3

    def test_linear_is_infinite(self):
        est = collapse_search(x1 + x2)
        assert est.lower == INFINITY == est.upper

    def test_dense_cubic_contract(self):
        f = sum(((a + 2 * b) % 5 - 2) * a_ * b_ * c_
                for a, a_ in enumerate(S.gens()) for b, b_ in enumerate(S.gens())
                for c_ in S.gens()[:2])
        est = collapse_search(f, radius=1)
        assert est.lower == 0 and est.lower <= est.upper < math.inf
        assert est.certificate.verify()

    def test_rejects_inhomogeneous(self):
        with pytest.raises(ValueError):
            collapse_search(x1 ** 2 + x2)


class TestSpaces:
    def test_zero_space(self):
        assert min_strength(GradedVectorSpace(S, [])) == {}

    def test_products(self):
        est = min_strength(GradedVectorSpace(S, [x1 * x2, x3 * x4]))[2]
        assert est.upper == 0

    def test_single_quadric(self):
        est = min_strength(GradedVectorSpace(S, [x1 * x2 + x3 * x4 + x5 ** 2]))[2]
        assert est.lower == est.upper == 2


class TestTranslate:
    def test_rank_goes_up(self):
        out = strength_translate_check(x1 * x2, 1)
        assert (out["rank_before"], out["rank_after"]) == (2, 3)
        assert out["strength_before"] == [0, 0] and out["strength_after"] == [1, 1]
        assert out["holds"]

    def test_alpha_zero(self):
        out = strength_translate_check(x1 * x2 + x3 * x4, 0)
        assert out["strength_before"] == out["strength_after"]

    def test_square(self):
        out = strength_translate_check(x5 ** 2, 1)
        assert out["rank_after"] == 2 and out["strength_after"] == [0, 0]

    def test_collision(self):
        with pytest.raises(ValueError):
            strength_translate_check(x1 * x2, 1, z="x3")


class TestStrengthen:
    def test_rank_four(self):
        V = GradedVectorSpace(S, [x1 * x2 + x3 * x4])
        B = ConstantBound([2, 2])
        res = strengthen(V, B)
        assert res.status == "B-STRONG" and len(res.trace) == 1
        assert sorted(map(str, res.space.basis)) == ["x1", "x2", "x3", "x4"]
        assert res.contained and subalgebra_member(x1 * x2 + x3 * x4, res.space.basis)
        assert res.bound == eval_C(B, (0, 1)) == (4, 1)
        assert all(d <= c for d, c in zip(res.dims, res.bound))

    def test_product(self):
        res = strengthen(GradedVectorSpace(S, [x1 * x2]), ConstantBound([1, 1]))
        assert sorted(map(str, res.space.basis)) == ["x1", "x2"]
        assert res.contained

    def test_already_strong(self):
        V = GradedVectorSpace(S, [x1 * x2 + x3 * x4 + x5 ** 2])
        res = strengthen(V, ConstantBound([1, 1]))
        assert res.status == "B-STRONG" and res.trace == []
        assert res.space.basis == V.basis

    def test_formal_only_is_undecided(self):
        res = strengthen(GradedVectorSpace(S, [x1 ** 2 + x2 ** 2]), ConstantBound([1, 1]))
        assert res.status == "UNDECIDED"

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            strengthen(GradedVectorSpace(S, [x1 * x2]), ConstantBound([1, 1]), policy="hope")


def test_lifted_strength_uses_given_lifts():
    from radsg.strength import lifted_strength

    est = lifted_strength([x1 * x2 + x3 * x4 + x5 ** 2], U_forms=[x6])
    assert est[2].upper == 2 and est[1].upper == INFINITY
    assert lifted_strength([]) == {}
