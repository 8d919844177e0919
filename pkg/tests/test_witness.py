import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from mapdeg.dsl import parse
from mapdeg.errors import NotDecomposableError, NoWitnessError
from mapdeg.geometry import NormalForm, normal_form
from mapdeg.model import S2xS1
from mapdeg.witness import (
    ConnectedSum,
    Pinch,
    SelfMap,
    build_witness,
    connected_sum,
    decide_exists_infinite,
    decide_self_infinite,
    four_forms,
    pinch,
    validate_recipe,
)

import gen

T3 = "tb[[1,0],[0,1]]"


class TestDecisions:
    def test_hyperbolic_blocks(self):
        v = decide_exists_infinite(parse("hyp(x)"))
        assert not v.exists_infinite
        assert [str(r.descriptor) for r in v.blocking_factors] == ["hyp(x)"]

    def test_lens_plus_s2xs1(self):
        m = parse("lens(5,1) # S2xS1")
        assert decide_exists_infinite(m).exists_infinite
        assert decide_self_infinite(m)

    def test_torus_contrast(self):
        assert decide_self_infinite(parse(T3))
        assert not decide_self_infinite(parse(f"{T3} # {T3}"))
        assert decide_exists_infinite(parse(f"{T3} # {T3}")).exists_infinite

    @pytest.mark.parametrize("text,expected", [
        ("sfs(o 2; 0)", True), ("tb[[2,1],[1,1]]", True), ("nilother(h)", True),
        ("psl(x)", False), ("graph(g)", False), ("ico # lens(7,3) # S2xS1", True),
        ("S2xS1 # sfs(o 2; 0)", False), ("lens(3,1) # hyp(a)", False),
    ])
    def test_self_infinite_table(self, text, expected):
        assert decide_self_infinite(parse(text)) is expected

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2 ** 32))
    def test_self_implies_exists(self, seed):
        m = gen.random_expression(gen.rng_for(seed))
        v = decide_exists_infinite(m)
        assert v.exists_infinite == (not v.blocking_factors)
        if decide_self_infinite(m):
            assert v.exists_infinite


class TestFourForms:
    def test_one(self):
        ff = four_forms(1, normal_form(parse("lens(5,1) # tb[[2,1],[1,1]] # nilother(h)")))
        assert ff.c1_list == ((5, 0),) and ff.c3 == 0 and ff.c4 == 0

    def test_361(self):
        d = 361 ** 4
        assert d == 16983563041
        ff = four_forms(d, NormalForm(orders=(5,), alphas=(6,)))
        assert ff.c1_list == ((5, (d - 1) // 5),)
        assert ff.c2_list == ((6, (d - 1) // 6),)
        assert 2 * ff.c3 + 1 == 361 ** 2 == 130321
        assert 12 * ff.c4 + 1 == 361
        assert ff.check()

    def test_sixteen_fails_c4(self):
        with pytest.raises(NotDecomposableError) as exc:
            four_forms(16, normal_form(parse("nilother(h)")))
        assert exc.value.form == "C4"

    def test_c1_failure_named(self):
        with pytest.raises(NotDecomposableError) as exc:
            four_forms(7, normal_form(parse("lens(5,1)")))
        assert exc.value.form == "C1"

    def test_optional_forms_reported_when_they_hold(self):
        ff = four_forms(6, normal_form(parse("lens(5,1)")))
        assert ff.c3 is None and ff.c4 is None
        ff = four_forms(81, normal_form(parse("lens(5,1)")))
        assert ff.c3 == 4 and ff.c4 is None


class TestBuildWitness:
    def test_s2xs1(self):
        pkg = build_witness(parse("S2xS1"), [0])
        assert pkg.base == 12 and pkg.samples == ((0, 2),)

    def test_alpha_six_arithmetic(self):
        # the recipe only needs the bucket arithmetic, so go through four_forms directly
        nf = NormalForm(orders=(5,), alphas=(6,))
        assert four_forms(361 ** 4, nf).check()
        assert 361 ** 4 + 1 == 16983563042

    def test_lens_and_h2xe1(self):
        pkg = build_witness(parse("lens(5,1) # sfs(o 1; -1; (2,1); (2,1))"), [1])
        assert pkg.base == 240
        assert pkg.samples == ((1, 241 ** 4 + 1),)
        assert validate_recipe(pkg.recipe)
        assert str(pkg.domain).count("lens(5,1)") == 2

    def test_blocked(self):
        with pytest.raises(NoWitnessError) as exc:
            build_witness(parse("hyp(x) # S2xS1"))
        assert [(str(d), tag) for d, tag in exc.value.blockers] == [("hyp(x)", "hyperbolic")]

    def test_default_samples(self):
        pkg = build_witness(parse(T3))
        assert [l for l, _ in pkg.samples] == [0, 1, 2, 3, 4]

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2 ** 32), st.integers(-50, 50))
    def test_random_witnesses_validate(self, seed, l):
        m = gen.random_infinite_expression(gen.rng_for(seed))
        pkg = build_witness(m, [l])
        d = (pkg.base * l + 1) ** 4
        assert pkg.samples == ((l, d + 1),)
        assert validate_recipe(pkg.recipe).degree == d + 1
        ff = pkg.four_forms[0]
        if l >= 0:
            vals = [c for _, c in ff.c1_list + ff.c2_list] + [ff.c3, ff.c4]
            assert all(v >= 0 for v in vals)

    def test_deterministic(self):
        a = build_witness(parse("ico # sfs(o 2; 0) # nilother(z)"), [3, -2])
        b = build_witness(parse("ico # sfs(o 2; 0) # nilother(z)"), [3, -2])
        assert a == b


class TestValidateRecipe:
    def test_pinch_of_s2xs1(self):
        r = pinch(SelfMap(S2xS1(), 1, 1))
        check = validate_recipe(r)
        assert check.ok and check.degree == 2

    def test_unequal_children(self):
        r = ConnectedSum((pinch(SelfMap(S2xS1(), 5, 5)), pinch(SelfMap(S2xS1(), 7, 7))), 6)
        check = validate_recipe(r)
        assert not check.ok
        assert check.diagnostics == ("unequal child degrees 6 ≠ 8",)

    def test_bad_pinch(self):
        assert not validate_recipe(Pinch(SelfMap(S2xS1(), 1, 1), 3))

    def test_degree_not_in_family(self):
        lens = parse("lens(5,1)").factors[0]
        assert not validate_recipe(pinch(SelfMap(lens, 7, 1)))
        assert validate_recipe(pinch(SelfMap(lens, 6, 1)))

    def test_wrong_parameter(self):
        lens = parse("lens(5,1)").factors[0]
        assert not validate_recipe(SelfMap(lens, 6, 2))

    def test_finite_factor(self):
        assert not validate_recipe(pinch(SelfMap(parse("hyp(a)").factors[0], 1, 1)))

    def test_connected_sum_degree(self):
        kids = [pinch(SelfMap(S2xS1(), 4, 4))] * 2
        assert validate_recipe(connected_sum(kids)).degree == 5
        assert not validate_recipe(ConnectedSum(tuple(kids), 6))
        assert not validate_recipe(ConnectedSum((), 1))

    def test_surjectivity_annotations(self):
        r = build_witness(parse("S2xS1 # lens(3,1)"), [0]).recipe
        assert r.pi1_surjective is True
        assert all(c.pi1_surjective is True for c in r.children)
        assert all(c.inner.pi1_surjective is None for c in r.children)
