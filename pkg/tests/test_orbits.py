import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ebilliards.conic import Billiard, GeometryError, Line, signed_area, tangency_residual, turning_number
from ebilliards.orbits import (
    FamilyNonexistent,
    Tag,
    bowtie_umax,
    build_orbit,
    caustic_for,
    check_orbit,
    chord_chain,
    closed_form_perimeter,
    family_orbit,
    family_params,
    first_chord,
    n3_orbit,
    n4_self_caustic,
    n4_self_orbit,
    n4_simple_orbit,
    n5_aux,
    n5_caustic,
    n6_caustic,
    n7_caustics,
    n8_seed,
    topologies,
    topology,
)

from conftest import FAMILY_RATIOS

# (label, a/b) -> (caustic x-semi-axis, perimeter), computed with the brute-force
# launch-angle search in ebilliards.bounce and frozen here
ORACLE = {
    ("3", 1.5): (1.1430749027719962, 6.737508324182201),
    ("4", 1.5): (1.2480754415067654, 7.211102550927979),
    ("4i", 1.5): (0.6708203932499367, 8.049844718999243),
    ("5", 1.5): (1.3260005019839642, 7.4593226254675775),
    ("5i", 1.2): (0.6733041124059376, 10.663088799514329),
    ("6", 1.5): (1.3747727084867518, 7.599999999999998),
    ("6i", 2.5): (1.8633899812498245, 12.666666666666664),
    ("6ii", 1.5): (1.0865818830092577, 13.58668968615942),
    ("7", 1.2): (1.1025780349900454, 6.698819936442395),
    ("7i", 1.2): (0.8505940411620954, 12.103884913981991),
    ("7ii", 1.1): (0.4652888982986024, 14.47627595298067),
    ("8", 2): (1.9319025966839416, 9.484502995827736),
    ("8i", 3): (1.9188280175244787, 16.3258718968137),
    ("8ii", 1.5): (1.1138872240924647, 19.536058727578045),
    ("8iii", 1.3): (0.845282281549269, 17.44704918457921),
}

LABELS = {t.label: t for t in topologies()}


@pytest.mark.parametrize("label,ab", sorted(ORACLE))
def test_matches_frozen_oracle(label, ab):
    topo = LABELS[label]
    a2, L = ORACLE[(label, ab)]
    B = Billiard.from_ratio(ab)
    orbit = build_orbit(B, topo.n, topo.tag)
    assert orbit.caustic.a2 == pytest.approx(a2, rel=1e-9)
    assert orbit.L == pytest.approx(L, rel=1e-9)


@pytest.mark.parametrize("label", sorted(FAMILY_RATIOS))
def test_valid_across_window(label):
    topo = LABELS[label]
    B = Billiard.from_ratio(FAMILY_RATIOS[label][1])
    for t in family_params(B, topo, 8):
        chk = check_orbit(family_orbit(B, topo, float(t)))
        assert chk.ok()


def test_registry_counts():
    # self-intersected types per N: 0, 1, 1, 2, 2, 3 for N = 3..8
    counts = {n: sum(t.tag is not Tag.SIMPLE for t in topologies(n)) for n in range(3, 9)}
    assert counts == {3: 0, 4: 1, 5: 1, 6: 2, 7: 2, 8: 3}


def test_unknown_topology():
    with pytest.raises(FamilyNonexistent):
        topology(3, "type1")
    with pytest.raises(ValueError):
        topology(5, "type9")


def test_aliases():
    assert topology(4, "bowtie") is topology(4, Tag.TYPE1)
    assert topology(8, "III") is topology(8, Tag.TYPE3)


def test_n3_isosceles_at_vertex():
    B = Billiard(2, 1)
    o = n3_orbit(B, (2.0, 0.0))
    v = o.vertices
    ys = sorted(v[:, 1])
    assert ys[0] == pytest.approx(-ys[2], abs=1e-12) and abs(ys[1]) < 1e-12
    for i in range(3):
        assert abs(tangency_residual(o.caustic, Line.through(v[i], v[(i + 1) % 3]))) < 1e-10


def test_n3_explicit_matches_chain():
    B = Billiard.from_ratio(1.7)
    o = build_orbit(B, 3, t=0.9)
    e = n3_orbit(B, o.vertices[0])
    assert e.L == pytest.approx(o.L, rel=1e-12)
    assert e.caustic.a2 == pytest.approx(o.caustic.a2, rel=1e-12)


def test_n3_circle_limit():
    B = Billiard(1.0 + 1e-7, 1.0)
    o = build_orbit(B, 3)
    assert o.L == pytest.approx(3 * math.sqrt(3), rel=1e-6)
    assert o.J == pytest.approx(math.sqrt(3) / 2, rel=1e-6)


def test_n4_rhombus_and_rectangle():
    B = Billiard(2, 1)
    assert signed_area(n4_simple_orbit(B, (2.0, 0.0)).vertices) == pytest.approx(4, rel=1e-12)
    x1 = B.a**2 / math.hypot(B.a, B.b)
    rect = n4_simple_orbit(B, (x1, B.b**2 * x1 / B.a**2))
    assert abs(signed_area(rect.vertices)) == pytest.approx(16 / 5, rel=1e-12)
    for t in (0.1, 0.5, 1.2):
        assert build_orbit(B, 4, t=t).L == pytest.approx(4 * math.sqrt(5), rel=1e-12)


def test_bowtie_window():
    with pytest.raises(FamilyNonexistent):
        n4_self_caustic(Billiard.from_ratio(1.3))
    B = Billiard(2, 1)
    o = n4_self_orbit(B, 0.3)
    assert abs(signed_area(o.vertices)) < 1e-12
    assert check_orbit(o).reflection < 1e-10
    with pytest.raises(GeometryError):
        n4_self_orbit(B, 0.0)  # doubled up
    with pytest.raises(FamilyNonexistent):
        n4_self_orbit(B, 1.1 * bowtie_umax(B))


def test_n5_circle_caustics():
    B = Billiard(1, 1)
    assert n5_caustic(B, Tag.SIMPLE).a2 == pytest.approx(math.cos(math.pi / 5), abs=1e-12)
    assert n5_caustic(B, Tag.TYPE1).a2 == pytest.approx(math.cos(2 * math.pi / 5), abs=1e-12)


def test_n5_aux_consistent():
    B = Billiard.from_ratio(1.2)
    aux = n5_aux(B)
    o = build_orbit(B, 5)
    assert aux["J"] == pytest.approx(o.J, rel=1e-9)
    assert aux["L"] == pytest.approx(o.L, rel=1e-8)
    # the axis-symmetric member: P1 = (a, 0), abscissae of P2 and P3
    sym = build_orbit(B, 5, t=0.0)
    xs = sorted(abs(sym.vertices[1:, 0]))
    assert min(abs(xs[0] - aux["x3"]), abs(xs[0] - aux["x2"])) < 1e-8


def test_n5_pentagram_turning():
    assert build_orbit(Billiard.from_ratio(1.3), 5, Tag.TYPE1).turning in (2, -2)


def test_n6_windows():
    with pytest.raises(FamilyNonexistent):
        n6_caustic(Billiard.from_ratio(1.5), Tag.TYPE1)
    B = Billiard(2, 1)
    o = build_orbit(B, 6, Tag.TYPE2)
    a, c = B.a, B.c
    assert o.L == pytest.approx(4 * (a + c) * math.sqrt(2 * a / c - 1), rel=1e-10)


def test_hexagon_in_circle():
    o = build_orbit(Billiard(1, 1), 6)
    assert o.L == pytest.approx(6, rel=1e-12)


def test_n7_turnings():
    B = Billiard.from_ratio(1.1)
    caustics = n7_caustics(B)
    assert set(caustics) == {Tag.SIMPLE, Tag.TYPE1, Tag.TYPE2}
    assert abs(build_orbit(B, 7).turning) == 1
    assert abs(build_orbit(B, 7, Tag.TYPE2).turning) == 3


def test_n8_type1_zero_area():
    o = build_orbit(Billiard(3, 1), 8, Tag.TYPE1)
    assert abs(signed_area(o.vertices)) < 1e-10


def test_n8_type3_outer_on_ellipse():
    from ebilliards.invariants import outer_polygon

    o = build_orbit(Billiard(1.1, 1), 8, Tag.TYPE3)
    q = outer_polygon(o)
    # axis-aligned concentric ellipse x^2/A + y^2/B = 1 through all 8 points
    M = np.column_stack([q[:, 0] ** 2, q[:, 1] ** 2])
    coef, res, *_ = np.linalg.lstsq(M, np.ones(len(q)), rcond=None)
    assert np.max(np.abs(M @ coef - 1)) < 1e-8


def test_n8_seed_valid():
    assert check_orbit(n8_seed(Billiard(2, 1))).ok(1)


def test_first_chord_is_tangent():
    B = Billiard.from_ratio(1.5)
    cau = caustic_for(B, topology(3))
    p = np.array([B.a, 0.0])
    q = p + first_chord(B, cau, p)
    assert abs(tangency_residual(cau, Line.through(p, q))) < 1e-12


def test_chain_closes_for_circle_pentagon():
    verts, gap = chord_chain(Billiard(1, 1), n5_caustic(Billiard(1, 1)), np.array([math.cos(0.3), math.sin(0.3)]), 5)
    assert gap < 1e-12
    k = np.hypot(*(np.roll(verts, -1, axis=0) - verts).T)
    assert np.ptp(k) < 1e-12


@pytest.mark.parametrize("label", ["3", "4", "4i", "5", "6", "6i", "6ii"])
def test_closed_form_perimeters(label):
    topo = LABELS[label]
    for ab in FAMILY_RATIOS[label]:
        B = Billiard.from_ratio(ab)
        assert build_orbit(B, topo.n, topo.tag).L == pytest.approx(closed_form_perimeter(B, topo), rel=1e-10)


@given(st.floats(0, 2 * math.pi), st.sampled_from(["3", "4", "5", "6", "7", "8"]), st.floats(1.2, 2.5))
def test_poncelet_porism(t, label, ab):
    # every start point of a simple family closes with the same perimeter
    topo = LABELS[label]
    B = Billiard.from_ratio(ab)
    o = build_orbit(B, topo.n, topo.tag, t)
    ref = build_orbit(B, topo.n, topo.tag)
    assert o.gap < 1e-8 * o.L
    assert o.L == pytest.approx(ref.L, rel=1e-8)
    assert turning_number(o.vertices) == 1


@given(st.floats(1.45, 3.0), st.floats(0.02, 0.98))
def test_bowtie_members_valid(ab, s):
    B = Billiard.from_ratio(ab)
    o = n4_self_orbit(B, s * bowtie_umax(B))
    assert check_orbit(o).ok(0)
    assert o.L == pytest.approx(4 * B.a**2 / B.c, rel=1e-10)
