import pytest

from radsg.catalog import (
    ExampleRangeError,
    builtin_example,
    fermat,
    kelly_nwankpa,
    quotient_counter,
    recursive,
    ufd_quadric,
)
from radsg.ideal import QuotientContext, ideal_member, radical_member
from radsg.poly import Ring
from radsg.scalar import Field
from radsg.sg import (
    MAX_WITNESS_POWER,
    SGConfig,
    config_span,
    embed_basic,
    potential,
    robust_linear_check,
    sg_sets,
    validate,
    verify_sg,
)


def _basic(ring, forms, d=1):
    return SGConfig(QuotientContext.polynomial(ring), "basic", forms, d)


class TestCatalog:
    def test_fermat_three(self):
        cfg = fermat(3)
        assert len(cfg.forms) == 9
        assert cfg.ring.field == Field(6)

    def test_kelly_nwankpa(self):
        cfg = kelly_nwankpa()
        assert len(cfg.forms) == 12
        assert cfg.ring.field == Field(4)
        i = Field(4).zeta()
        a = (Field(4)(1) + i) * Field(4)(1) / Field(4)(2)
        x, y, z = cfg.ring.gens()
        # p5 = [a : a : 1]
        target = x * a + y * a + z
        assert any(f.monic() == target.monic() for f in cfg.forms)

    def test_recursive_degrees(self):
        # unrolled by hand: F5 = F3 F4 + y^5, F6 = F3 F4 F5 + y^10
        assert [f.degree() for f in recursive(6).forms] == [1, 1, 2, 3, 5, 10]
        R = recursive(5).ring
        x, y, z = (R.var(v) for v in ("x", "y", "z"))
        F3 = x * z + y ** 2
        F4 = x * F3 + y ** 3
        assert recursive(5).forms[4] == F3 * F4 + y ** 5

    def test_quotient_counter_shape(self):
        cfg = quotient_counter(4)
        assert cfg.ring.nvars == 8
        assert len(cfg.ambient.relations) == 8
        assert [str(f) for f in cfg.forms] == ["x1", "x3", "x5", "x7"]
        assert cfg.annotations["stated_span"] == 3

    @pytest.mark.parametrize("name,kw", [("fermat", {"n": 2}), ("fermat", {"n": 7}),
                                         ("recursive", {"m": 9}), ("quotient-counter", {"r": 2})])
    def test_ranges(self, name, kw):
        with pytest.raises(ExampleRangeError):
            builtin_example(name, **kw)

    def test_unknown(self):
        with pytest.raises(KeyError):
            builtin_example("sylvester")


class TestValidate:
    def test_fermat_clean(self):
        assert validate(fermat(3)) == []

    def test_duplicate(self):
        R = Ring(["x", "y"])
        x, y = R.gens()
        v = validate(_basic(R, [x, y, 2 * x]))
        assert [e.kind for e in v] == ["associate"]

    def test_general_gcd(self):
        R = Ring(["x", "y", "z"])
        x, y, z = R.gens()
        cfg = SGConfig(QuotientContext.polynomial(R), "general", [x, x * y], 2, z=z)
        assert "gcd" in [e.kind for e in validate(cfg)]


class TestVerify:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_fermat(self, n):
        rep = verify_sg(fermat(n))
        assert rep.passed and rep.span_dimension == 3

    def test_recursive_witness_table(self):
        rep = verify_sg(recursive(6))
        assert rep.passed and rep.span_dimension == 6
        radical = {(p.i, p.j): (p.witness, p.power) for p in rep.pairs if p.method == "radical"}
        assert radical == {(1, 6): (2, 10), (2, 6): (3, 6), (3, 6): (2, 10),
                           (4, 6): (2, 10), (5, 6): (2, 10)}

    def test_recursive_power_beyond_cap(self):
        # F6 = y^10 mod x, so y needs exactly the tenth power
        cfg = recursive(6)
        x, y = cfg.forms[0], cfg.forms[1]
        F6 = cfg.forms[5]
        assert ideal_member(y ** 10, [x, F6]).member
        assert not ideal_member(y ** 9, [x, F6]).member
        assert 10 > MAX_WITNESS_POWER

    def test_quotient_counter_warning(self):
        rep = verify_sg(quotient_counter(4))
        assert rep.passed and rep.span_dimension == 4
        assert rep.warnings == ["computed span dimension 4 differs from the stated value 3"]

    def test_ufd_quadric_is_not_sg(self):
        rep = verify_sg(ufd_quadric())
        assert not rep.passed
        assert [(p.i, p.j) for p in rep.failures()] == [(1, 3), (2, 3)]
        ok = rep.pairs[0]
        assert (ok.i, ok.j, ok.witness, ok.power) == (1, 2, 3, 2)

    def test_two_quadrics_fail(self):
        R = Ring(["x", "y", "z"])
        cfg = _basic(R, [R.parse("x^2 + y*z"), R.parse("y^2 - x*z")], 2)
        rep = verify_sg(cfg)
        assert not rep.passed and len(rep.failures()) == 1

    def test_parallel_matches_serial(self):
        cfg = kelly_nwankpa()
        a, b = verify_sg(cfg).to_dict(), verify_sg(cfg, jobs=2).to_dict()
        assert a == b

    def test_report_is_deterministic(self):
        assert verify_sg(fermat(4)).to_dict() == verify_sg(fermat(4)).to_dict()


class TestEmbed:
    def test_triangle(self):
        R = Ring(["x", "y"])
        x, y = R.gens()
        g = embed_basic(_basic(R, [x, y, x + y]))
        assert g.kind == "general"
        assert [str(e) for e in g.elements()] == ["z", "x*z", "y*z", "x*z + y*z"]

    def test_empty(self):
        R = Ring(["x", "y"])
        assert [str(e) for e in embed_basic(_basic(R, [])).elements()] == ["z"]

    def test_recursive_same_outcome(self):
        a = verify_sg(recursive(5))
        b = verify_sg(embed_basic(recursive(5)))
        assert a.passed and b.passed
        assert config_span(embed_basic(recursive(6))) == 7


class TestRobust:
    def test_kelly_nwankpa(self):
        out = robust_linear_check(kelly_nwankpa().forms)
        assert out["holds"] and out["span_dimension"] == 3 == out["bound_no_W"]
        assert not out["violation"]

    def test_collinear(self):
        R = Ring(["x", "y", "z"])
        x, y, _ = R.gens()
        assert robust_linear_check([x, y, x + y])["span_dimension"] == 2

    def test_fermat_four(self):
        out = robust_linear_check(fermat(4).forms)
        assert out["holds"] and out["span_dimension"] == 3


class TestPotentialAndSets:
    def test_potential(self):
        R = Ring(["x", "y", "z"])
        x, y, z = R.gens()
        amb = QuotientContext.polynomial(R)
        # two linear and three quadric residual forms: 1*2 + 2*3
        quads = [x ** 2 + y * z, y ** 2 + x * z, x * x + y * y - z * z]
        cfg = SGConfig(amb, "general", [x, y] + quads, 2, z=z)
        assert potential(cfg) == 8
        assert potential(SGConfig(amb, "general", [], 1, z=z)) == 0

    def test_fspan_pencil(self):
        R = Ring(["x", "y", "w", "z"])
        x, y, w, z = R.gens()
        Q1, Q2 = x * y + w * w, x * x - y * w
        cfg = SGConfig(QuotientContext.polynomial(R), "general", [Q1, Q2, Q1 + Q2], 2, z=z)
        res = sg_sets(cfg, Q1)
        assert res.fspan == [Q2, Q1 + Q2]
        assert res.grad == []

    def test_grad_recursive(self):
        cfg = embed_basic(recursive(6))
        F6 = cfg.forms[5]
        res = sg_sets(cfg, F6)
        # every lower form leaves a witness: rad(F6, x) = (x, y) is bigger than (F6, x)
        x, y = cfg.forms[0], cfg.forms[1]
        assert radical_member(y, [F6, x]) and not ideal_member(y, [F6, x]).member
        assert res.grad == [] and res.unknown == []
        assert res.details[str(x)]["radicality"]["status"] == "NOT_RADICAL"

    def test_no_lower_forms(self):
        R = Ring(["x", "y", "z"])
        x, y, z = R.gens()
        cfg = SGConfig(QuotientContext.polynomial(R), "general", [x, y, x + y], 1, z=z)
        assert sg_sets(cfg, x).grad == []
