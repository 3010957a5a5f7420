import random
from fractions import Fraction

import pytest

from adjoint_keel.errors import (
    DegenerateInputError,
    NonLatticeVerticesError,
    UnboundedRegionError,
)
from adjoint_keel.polygon import (
    LatticePolygon,
    RationalPolygon,
    Shape,
    as_rational,
    interior_hull,
    lattice_points,
    level_keel,
    nmc_polygon,
    normalize,
    offset_scale,
    polygon_adjoint_chain,
)


def tri(n):
    return normalize([(0, 0), (n, 0), (0, n)])


def rect(w, h):
    return normalize([(0, 0), (w, 0), (w, h), (0, h)])


UNIT_SQUARE = rect(1, 1)


class TestNormalize:
    def test_interior_point_absorbed(self):
        poly = normalize([(0, 0), (3, 0), (0, 3), (1, 1)])
        assert poly.vertices == ((0, 0), (3, 0), (0, 3))

    def test_unit_square_halfplanes(self):
        expected = {((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)}
        assert set(UNIT_SQUARE.edges) == expected

    def test_segment_rejected(self):
        with pytest.raises(DegenerateInputError):
            normalize([(0, 0), (2, 0)])

    def test_point_rejected(self):
        with pytest.raises(DegenerateInputError):
            normalize([(1, 1), (1, 1)])

    def test_non_integer_rejected(self):
        with pytest.raises(NonLatticeVerticesError):
            normalize([(0, 0), (1.5, 0), (0, 1)])

    def test_idempotent(self):
        poly = normalize([(0, 0), (4, 1), (5, 5), (1, 4), (2, 2)])
        again = normalize(poly.vertices)
        assert again == poly


class TestOffsetScale:
    def test_square_scale2_step1_is_point(self):
        fig = offset_scale(UNIT_SQUARE, 2, 1)
        assert fig.shape is Shape.POINT
        assert fig.vertices == ((Fraction(1), Fraction(1)),)

    def test_triangle3_step1_is_point(self):
        fig = offset_scale(tri(3), 1, 1)
        assert fig.shape is Shape.POINT
        assert fig.vertices == ((Fraction(1), Fraction(1)),)

    def test_square_step1_empty(self):
        assert offset_scale(UNIT_SQUARE, 1, 1).shape is Shape.EMPTY

    def test_identity_offset_is_same_set(self):
        poly = normalize([(0, 0), (4, 1), (5, 5), (1, 4)])
        fig = offset_scale(poly, 1, 0)
        assert fig.shape is Shape.POLYGON
        assert set(fig.vertices) == {
            (Fraction(x), Fraction(y)) for x, y in poly.vertices
        }

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            offset_scale(UNIT_SQUARE, 0, 1)
        with pytest.raises(ValueError):
            offset_scale(UNIT_SQUARE, 1, -1)


class TestInteriorHull:
    def test_square_side3(self):
        hull = interior_hull(rect(3, 3))
        assert hull.shape is Shape.POLYGON
        assert set(hull.lattice_vertices()) == {(1, 1), (2, 1), (2, 2), (1, 2)}

    def test_triangle3_single_point(self):
        hull = interior_hull(tri(3))
        assert hull.shape is Shape.POINT
        assert hull.lattice_vertices() == ((1, 1),)

    def test_unit_square_empty(self):
        assert interior_hull(UNIT_SQUARE).shape is Shape.EMPTY


class TestLatticePoints:
    def test_segment(self):
        seg = RationalPolygon.from_points([(0, 0), (3, 0)])
        assert lattice_points(seg) == [(0, 0), (1, 0), (2, 0), (3, 0)]

    def test_point(self):
        assert lattice_points(RationalPolygon.from_points([(1, 1)])) == [(1, 1)]

    def test_square_grid(self):
        assert len(lattice_points(as_rational(rect(2, 2)))) == 9

    def test_lexicographic_order(self):
        pts = lattice_points(as_rational(tri(3)))
        assert pts == sorted(pts)

    def test_unbounded_rejected_at_construction(self):
        with pytest.raises(UnboundedRegionError):
            RationalPolygon.from_halfplanes([((1, 0), 0), ((0, 1), 0)])

    def test_empty_region_errors(self):
        with pytest.raises(ValueError):
            lattice_points(RationalPolygon.empty())


class TestLevelKeel:
    def test_triangle_side6(self):
        inv = level_keel(tri(6))
        assert (inv.level, inv.keel) == (Fraction(2), Fraction(0))
        assert inv.optimal_face.shape is Shape.POINT

    def test_rectangle_5x3(self):
        inv = level_keel(rect(5, 3))
        assert (inv.level, inv.keel) == (Fraction(3, 2), Fraction(2))
        assert inv.optimal_face.shape is Shape.SEGMENT
        assert inv.denominator == 2

    def test_rectangle_6x5(self):
        inv = level_keel(rect(6, 5))
        assert (inv.level, inv.keel) == (Fraction(5, 2), Fraction(1))

    def test_triangle_side7(self):
        inv = level_keel(tri(7))
        assert (inv.level, inv.keel) == (Fraction(7, 3), Fraction(0))
        assert inv.denominator == 3

    @pytest.mark.parametrize("n", range(1, 16))
    def test_triangle_family(self, n):
        inv = level_keel(tri(n))
        assert inv.level == Fraction(n, 3)
        assert inv.keel == 0

    def test_level_positive(self):
        poly = normalize([(0, 0), (4, 1), (5, 5), (1, 4)])
        assert level_keel(poly).level > 0


class TestNmc:
    def test_point(self):
        assert nmc_polygon(RationalPolygon.from_points([(2, 3)])) == 0

    def test_segment_with_interior_lattice_points(self):
        seg = RationalPolygon.from_points([(0, 0), (4, 2)])
        assert nmc_polygon(seg) == 2

    def test_surface_case(self):
        assert nmc_polygon(as_rational(UNIT_SQUARE)) == 1

    def test_non_lattice_vertices_rejected(self):
        face = level_keel(UNIT_SQUARE).optimal_face
        with pytest.raises(NonLatticeVerticesError):
            nmc_polygon(face)

    def test_shape_table_on_interior_figures(self):
        # interior figures of the standard battery hit every shape
        assert nmc_polygon(interior_hull(tri(3))) == 0
        seg = interior_hull(normalize([(0, 0), (5, 0), (5, 2), (0, 2)]))
        assert seg.shape is Shape.SEGMENT
        assert nmc_polygon(seg) == len(lattice_points(seg)) - 1
        assert nmc_polygon(interior_hull(rect(4, 4))) == 1


class TestChain:
    def test_square_side4(self):
        chain = polygon_adjoint_chain(rect(4, 4))
        shapes = [m.shape for m in chain.members]
        assert shapes == [Shape.POLYGON, Shape.POLYGON, Shape.POINT]
        assert chain.members[1].lattice_vertices() == ((1, 1), (3, 1), (3, 3), (1, 3))
        assert chain.members[2].lattice_vertices() == ((2, 2),)
        assert (chain.level, chain.keel) == (Fraction(2), Fraction(0))

    def test_triangle_side3(self):
        chain = polygon_adjoint_chain(tri(3))
        assert [m.shape for m in chain.members] == [Shape.POLYGON, Shape.POINT]
        assert (chain.level, chain.keel) == (Fraction(1), Fraction(0))

    def test_hexagon(self):
        hexagon = normalize([(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2)])
        chain = polygon_adjoint_chain(hexagon)
        assert [m.shape for m in chain.members] == [Shape.POLYGON, Shape.POINT]
        assert chain.members[1].lattice_vertices() == ((1, 1),)

    @pytest.mark.parametrize(
        "vertices,case,level,keel",
        [
            ([(0, 0), (1, 0), (0, 1)], "scale3_single_interior_point", Fraction(1, 3), 0),
            ([(0, 0), (2, 0), (0, 2)], "scale3_hull_single_interior_point", Fraction(2, 3), 0),
            ([(0, 0), (1, 0), (1, 1), (0, 1)], "scale2_single_interior_point", Fraction(1, 2), 0),
            ([(0, 0), (3, 0), (3, 1), (0, 1)], "scale2_collinear_interior_points", Fraction(1, 2), 2),
        ],
    )
    def test_terminal_cases(self, vertices, case, level, keel):
        chain = polygon_adjoint_chain(normalize(vertices))
        assert chain.terminal_case == case
        assert (chain.level, chain.keel) == (level, keel)

    @pytest.mark.parametrize("n", range(1, 21))
    def test_chain_matches_critical_offset_on_triangles(self, n):
        inv = level_keel(tri(n))
        chain = polygon_adjoint_chain(tri(n))
        assert (chain.level, chain.keel) == (inv.level, inv.keel)

    def test_chain_matches_critical_offset_on_rectangles(self):
        for w in range(1, 9):
            for h in range(1, w + 1):
                inv = level_keel(rect(w, h))
                chain = polygon_adjoint_chain(rect(w, h))
                assert (chain.level, chain.keel) == (inv.level, inv.keel)


def _random_unimodular(rng):
    m = [[1, 0], [0, 1]]
    for _ in range(rng.randint(1, 6)):
        k = rng.randint(-3, 3)
        if rng.random() < 0.5:
            m = [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]]
        else:
            m = [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]]
        if rng.random() < 0.3:
            m = [m[1], [-c for c in m[0]]]
    return m


class TestInvariance:
    def test_unimodular_invariance(self):
        rng = random.Random(2024)
        base = [
            tri(5),
            rect(5, 3),
            normalize([(0, 0), (4, 1), (5, 5), (1, 4)]),
            normalize([(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2)]),
        ]
        for poly in base:
            inv = level_keel(poly)
            for _ in range(8):
                u = _random_unimodular(rng)
                tx, ty = rng.randint(-9, 9), rng.randint(-9, 9)
                moved = normalize(
                    [
                        (u[0][0] * x + u[0][1] * y + tx, u[1][0] * x + u[1][1] * y + ty)
                        for x, y in poly.vertices
                    ]
                )
                other = level_keel(moved)
                assert (other.level, other.keel) == (inv.level, inv.keel)

    @pytest.mark.parametrize("s", [2, 3, 5])
    def test_scaling_homogeneity(self, s):
        for poly in (tri(4), rect(5, 3), normalize([(0, 0), (4, 1), (5, 5), (1, 4)])):
            inv = level_keel(poly)
            scaled = normalize([(s * x, s * y) for x, y in poly.vertices])
            other = level_keel(scaled)
            assert other.level == s * inv.level
            assert other.keel == s * inv.keel

    def test_keel_count_stabilization(self):
        # On rectangles the critical face has denominator q, so the
        # counted reading (#points - 1)/(q k) matches at every multiple.
        for w in range(2, 8):
            for h in range(1, w):
                inv = level_keel(rect(w, h))
                q, p = inv.level.denominator, inv.level.numerator
                for k in range(1, 6):
                    fig = offset_scale(rect(w, h), q * k, p * k)
                    assert fig.shape is Shape.SEGMENT
                    count = len(lattice_points(fig))
                    assert inv.keel * q * k == count - 1

    def test_face_is_scaled_figure(self):
        inv = level_keel(rect(5, 3))
        fig = offset_scale(rect(5, 3), 2, 3)
        assert {(2 * x, 2 * y) for x, y in inv.optimal_face.vertices} == set(
            fig.vertices
        )
