import random
from fractions import Fraction

import pytest

from adjoint_keel.errors import (
    ModelMismatchError,
    NotContractibleError,
    UnsupportedRankError,
)
from adjoint_keel.surfaces import (
    _contraction,
    arithmetic_genus,
    contract,
    custom_model,
    from_multiplicities,
    hirzebruch,
    intersect,
    is_effective,
    is_nef,
    minimalize,
    multiplicities,
    neg_one_classes,
    plane_blowup,
    plane_deg4_blowup,
    quadric,
    quadric_deg2_blowup,
    quadric_rank1,
)

ALL_MODELS = [
    plane_blowup(0),
    plane_blowup(3),
    plane_blowup(6),
    hirzebruch(0),
    hirzebruch(1),
    hirzebruch(2),
    quadric(),
    quadric_rank1(),
    quadric_deg2_blowup(),
    plane_deg4_blowup(),
]


class TestModels:
    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.label())
    def test_gram_symmetric(self, model):
        g = model.gram
        assert all(g[i][j] == g[j][i] for i in range(model.rank) for j in range(model.rank))

    def test_canonical_self_intersections(self):
        expected = {
            "plane_blowup(0)": 9,
            "plane_blowup(3)": 6,
            "plane_blowup(6)": 3,
            "hirzebruch(0)": 8,
            "hirzebruch(1)": 8,
            "hirzebruch(2)": 8,
            "quadric": 8,
            "quadric_rank1": 8,
            "quadric_deg2_blowup": 6,
            "plane_deg4_blowup": 5,
        }
        for model in ALL_MODELS:
            k = model.canonical_class()
            assert k.dot(k) == expected[model.label()]

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.label())
    def test_contractibles_are_exceptional(self, model):
        k = model.canonical_class()
        for e in model.contractibles:
            cls = model.divisor(e)
            assert cls.dot(cls) == cls.dot(k) < 0

    def test_rank_cap(self):
        with pytest.raises(UnsupportedRankError):
            plane_blowup(9)

    def test_custom_model_signature_validated(self):
        with pytest.raises(ValueError):
            custom_model([[1, 0], [0, 1]], (1, 1), [])
        model = custom_model([[2]], (-2,), [(1,)])
        assert model.rank == 1


class TestIntersection:
    def test_line_self_intersection(self):
        pb1 = plane_blowup(1)
        assert intersect(pb1.divisor((1, 0)), pb1.divisor((1, 0))) == 1

    def test_canonical_square_pb6(self):
        k = plane_blowup(6).canonical_class()
        assert intersect(k, k) == 3

    def test_rulings_meet_once(self):
        q = quadric()
        assert intersect(q.divisor((1, 0)), q.divisor((0, 1))) == 1

    def test_bilinear_and_symmetric(self):
        rng = random.Random(7)
        pb3 = plane_blowup(3)
        for _ in range(20):
            a = pb3.divisor(tuple(rng.randint(-5, 5) for _ in range(4)))
            b = pb3.divisor(tuple(rng.randint(-5, 5) for _ in range(4)))
            c = pb3.divisor(tuple(rng.randint(-5, 5) for _ in range(4)))
            assert a.dot(b) == b.dot(a)
            assert (a + b).dot(c) == a.dot(c) + b.dot(c)

    def test_model_mismatch(self):
        with pytest.raises(ModelMismatchError):
            intersect(quadric().divisor((1, 0)), hirzebruch(0).divisor((1, 0)))


class TestGenus:
    def test_quadric_fiber(self):
        q = quadric()
        assert arithmetic_genus(q.divisor((1, 0))) == 0

    def test_line(self):
        p2 = plane_blowup(0)
        assert arithmetic_genus(p2.divisor((1,))) == 0

    def test_conic(self):
        p2 = plane_blowup(0)
        assert arithmetic_genus(p2.divisor((2,))) == 0

    def test_cubic(self):
        p2 = plane_blowup(0)
        assert arithmetic_genus(p2.divisor((3,))) == 1

    def test_half_integer_allowed(self):
        pb1 = plane_blowup(1)
        assert arithmetic_genus(pb1.divisor((0, 1))) == Fraction(0)


class TestNegOneClasses:
    def test_single_blowup(self):
        pb1 = plane_blowup(1)
        assert [c.coeffs for c in neg_one_classes(pb1)] == [(0, 1)]

    def test_three_points(self):
        pb3 = plane_blowup(3)
        got = [multiplicities(c) for c in neg_one_classes(pb3)]
        assert got == [
            (0, -1, 0, 0),
            (0, 0, -1, 0),
            (0, 0, 0, -1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 0),
        ]

    @pytest.mark.parametrize(
        "r,count", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)]
    )
    def test_counts(self, r, count):
        assert len(neg_one_classes(plane_blowup(r))) == count

    def test_defining_equations(self):
        for r in range(1, 8):
            model = plane_blowup(r)
            k = model.canonical_class()
            for c in neg_one_classes(model):
                assert c.dot(c) == -1
                assert c.dot(k) == -1

    def test_degree_bound_parameter(self):
        pb6 = plane_blowup(6)
        low = neg_one_classes(pb6, bound=1)
        assert all(c.coeffs[0] <= 1 for c in low)
        assert len(low) == 21


class TestNef:
    def test_line_nef(self):
        pb2 = plane_blowup(2)
        assert is_nef(pb2.divisor((1, 0, 0)))

    def test_exceptional_not_nef(self):
        pb2 = plane_blowup(2)
        assert not is_nef(pb2.divisor((0, 1, 0)))

    def test_conic_through_two(self):
        pb2 = plane_blowup(2)
        assert is_nef(from_multiplicities(pb2, 2, (1, 1)))

    def test_single_blowup_fiber_matters(self):
        pb1 = plane_blowup(1)
        assert not is_nef(from_multiplicities(pb1, 1, (2,)))
        assert is_nef(from_multiplicities(pb1, 1, (1,)))

    def test_hirzebruch(self):
        h2 = hirzebruch(2)
        assert is_nef(h2.divisor((1, 2)))
        assert not is_nef(h2.divisor((1, 1)))
        assert is_nef(h2.divisor((0, 1)))


class TestEffective:
    def test_line_through_two_points(self):
        pb2 = plane_blowup(2)
        assert is_effective(from_multiplicities(pb2, 1, (1, 1)))

    def test_no_line_through_three(self):
        pb3 = plane_blowup(3)
        assert not is_effective(from_multiplicities(pb3, 1, (1, 1, 1)))

    def test_negative_line(self):
        p2 = plane_blowup(0)
        assert not is_effective(p2.divisor((-1,)))

    def test_zero_class(self):
        assert is_effective(plane_blowup(0).zero())

    def test_multiple_of_exceptional(self):
        pb1 = plane_blowup(1)
        assert is_effective(pb1.divisor((0, 2)))

    def test_anti_exceptional(self):
        pb1 = plane_blowup(1)
        assert not is_effective(pb1.divisor((0, -1)))

    def test_double_conic(self):
        pb5 = plane_blowup(5)
        assert is_effective(from_multiplicities(pb5, 4, (2, 2, 2, 2, 2)))

    def test_hirzebruch_cone(self):
        h2 = hirzebruch(2)
        assert is_effective(h2.divisor((1, 0)))
        assert is_effective(h2.divisor((1, 1)))
        assert not is_effective(h2.divisor((-1, 3)))
        assert not is_effective(h2.divisor((1, -1)))

    def test_rank_two_arithmetic_models(self):
        qd2 = quadric_deg2_blowup()
        assert is_effective(qd2.divisor((1, 0)))
        assert is_effective(qd2.divisor((0, 1)))
        assert not is_effective(qd2.divisor((-1, 0)))
        pd4 = plane_deg4_blowup()
        assert is_effective(pd4.divisor((2, -1)))
        assert is_effective(pd4.divisor((1, 0)))
        assert not is_effective(pd4.divisor((1, -1)))


class TestContract:
    def test_drop_coordinate(self):
        pb1 = plane_blowup(1)
        target, pushed = contract(pb1, pb1.divisor((0, 1)), pb1.divisor((1, 0)))
        assert target.label() == "plane_blowup(0)"
        assert pushed.coeffs == (1,)

    def test_cubic_class_drop(self):
        pb6 = plane_blowup(6)
        d = from_multiplicities(pb6, 3, (1, 1, 1, 1, 1, 0))
        target, pushed = contract(pb6, pb6.divisor((0, 0, 0, 0, 0, 0, 1)), d)
        assert target.label() == "plane_blowup(5)"
        assert multiplicities(pushed) == (3, 1, 1, 1, 1, 1)

    def test_not_contractible(self):
        pb1 = plane_blowup(1)
        with pytest.raises(NotContractibleError):
            contract(pb1, pb1.divisor((1, 0)), pb1.divisor((1, 0)))

    def test_two_point_line_lands_on_quadric(self):
        pb2 = plane_blowup(2)
        line = pb2.divisor((1, -1, -1))
        con = _contraction(pb2, line)
        assert con.target.label() == "quadric"
        assert con.pushforward(pb2.canonical_class()) == con.target.canonical_class()

    def test_hirzebruch1_lands_on_plane(self):
        h1 = hirzebruch(1)
        con = _contraction(h1, h1.divisor((1, 0)))
        assert con.target.label() == "plane_blowup(0)"
        assert con.pushforward(h1.canonical_class()).coeffs == (-3,)

    def test_deg2_point_blowdown(self):
        qd2 = quadric_deg2_blowup()
        con = _contraction(qd2, qd2.divisor((0, 1)))
        assert con.target.label() == "quadric_rank1"
        assert con.pushforward(qd2.canonical_class()).coeffs == (-2,)

    def test_deg4_point_blowdown(self):
        pd4 = plane_deg4_blowup()
        con = _contraction(pd4, pd4.divisor((0, 1)))
        assert con.target.label() == "plane_blowup(0)"
        assert con.pushforward(pd4.canonical_class()).coeffs == (-3,)

    def test_pushforward_pullback_identities(self):
        rng = random.Random(11)
        models = [plane_blowup(r) for r in range(1, 7)]
        for _ in range(60):
            model = rng.choice(models)
            e = rng.choice(neg_one_classes(model))
            con = _contraction(model, e)
            x = model.divisor(tuple(rng.randint(-5, 5) for _ in range(model.rank)))
            y = x + x.dot(e) * e  # orthogonal correction: y.e = 0
            assert y.dot(e) == 0
            assert con.pullback(con.pushforward(y)) == y
            z = con.target.divisor(
                tuple(rng.randint(-5, 5) for _ in range(con.target.rank))
            )
            lift = con.pullback(z)
            assert lift.dot(lift) == z.dot(z)
            assert con.pushforward(x).dot(z) == x.dot(lift)
            assert con.pushforward(model.canonical_class()) == con.target.canonical_class()

    def test_identities_on_special_blowdowns(self):
        rng = random.Random(13)
        for model in (hirzebruch(1), quadric_deg2_blowup(), plane_deg4_blowup()):
            e = model.divisor(model.contractibles[0])
            con = _contraction(model, e)
            for _ in range(20):
                x = model.divisor((rng.randint(-5, 5), rng.randint(-5, 5)))
                z = con.target.divisor(
                    tuple(rng.randint(-5, 5) for _ in range(con.target.rank))
                )
                lift = con.pullback(z)
                assert lift.dot(lift) == z.dot(z)
                assert con.pushforward(x).dot(z) == x.dot(lift)
                assert con.pushforward(con.pullback(z)) == z


class TestMinimalize:
    def test_zero_class_contracts_everything(self):
        pb6 = plane_blowup(6)
        target, pushed, trail = minimalize(pb6, pb6.zero())
        assert target.label() == "plane_blowup(0)"
        assert len(trail) == 6
        assert pushed.is_zero

    def test_line_orthogonal_to_exceptional(self):
        pb1 = plane_blowup(1)
        target, pushed, trail = minimalize(pb1, pb1.divisor((1, 0)))
        assert target.label() == "plane_blowup(0)"
        assert pushed.coeffs == (1,)

    def test_conic_through_point_unchanged(self):
        pb1 = plane_blowup(1)
        d = from_multiplicities(pb1, 2, (1,))
        target, pushed, trail = minimalize(pb1, d)
        assert target is pb1
        assert pushed == d
        assert trail == []

    def test_pullback_recovers_input(self):
        pb6 = plane_blowup(6)
        d = pb6.divisor((2, 0, 0, -1, 0, -1, 0))
        target, pushed, trail = minimalize(pb6, d)
        back = pushed
        for con in reversed(trail):
            back = con.pullback(back)
        assert back == d

    def test_reverse_tiebreak_same_downstream(self):
        pb2 = plane_blowup(2)
        d = from_multiplicities(pb2, 2, (1, 1))  # orthogonal to the two-point line
        t1, p1, _ = minimalize(pb2, d)
        t2, p2, _ = minimalize(pb2, d, reverse=True)
        assert t1.rank == t2.rank
        assert p1.dot(p1) == p2.dot(p2)
        assert p1.dot(t1.canonical_class()) == p2.dot(t2.canonical_class())
