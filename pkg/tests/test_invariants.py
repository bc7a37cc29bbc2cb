import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ebilliards import polyroots as pr
from ebilliards import polys
from ebilliards.conic import Billiard, signed_area, turn_signed_cosines
from ebilliards.invariants import (
    CODES,
    REGISTRY,
    ApplicabilityError,
    DegenerateError,
    DerivedPolygons,
    NotDerived,
    applicable,
    closed_form,
    closed_form_entry,
    dual_form_check,
    k119_universal,
    measure,
    measure_all,
    outer_polygon,
    parse_codes,
)
from ebilliards.orbits import Tag, build_orbit, family_orbit, family_params, topologies, topology

from conftest import FAMILY_RATIOS

LABELS = {t.label: t for t in topologies()}

# parity classes: which N each code is defined for
DERIVED_FOR = {
    "k102": {3, 4, 5, 6}, "k103": {3, 5}, "k104": {3, 4, 5, 6, 8}, "k105": {3, 5},
    "k106": {4, 6}, "k110": {4, 6}, "k119": {3, 4, 6}, "k802a": {3, 4, 6},
    "k803": {3, 4, 6}, "k804": {3}, "k805a": {4, 8}, "k806": {6}, "k807": {3},
}


def _orbit(label, ab=None, t=None):
    topo = LABELS[label]
    B = Billiard.from_ratio(ab or FAMILY_RATIOS[label][1])
    return build_orbit(B, topo.n, topo.tag, t)


def test_every_code_known():
    assert len(CODES) == 14
    assert parse_codes("k804, k106") == ["k804", "k106"]
    with pytest.raises(ApplicabilityError):
        parse_codes("k999")


def test_registry_covers_table():
    for code, ns in DERIVED_FOR.items():
        for n in ns:
            assert any(k[0] == code and k[1] == n for k in REGISTRY) or code in ("k103", "k105", "k804",
                                                                               "k805a", "k806", "k807")


def test_applicability_error():
    o = _orbit("4")
    with pytest.raises(ApplicabilityError):
        measure("k804", o)
    assert math.isfinite(measure("k804", o, force=True))


def test_not_derived():
    with pytest.raises(NotDerived):
        closed_form_entry("k806", topology(3))


def test_circle_triangle_cosines():
    o = build_orbit(Billiard(1, 1), 3)
    assert measure("k101", o) == pytest.approx(1.5, abs=1e-12)


def test_n4_values():
    B = Billiard(2, 1)
    o = build_orbit(B, 4, t=0.4)
    assert measure("k102", o) == pytest.approx(0, abs=1e-12)
    assert measure("k104", o) == pytest.approx(-4, abs=1e-12)
    assert measure("k106", o) == pytest.approx(32, rel=1e-12)
    assert closed_form("k106", B, topology(4)) == 32


def test_n4_k110_rhombus():
    # rhombus of area 2ab, inner rectangle of area 4 a^3 b^3 / (a^2 + b^2)^2
    B = Billiard(2, 1)
    o = build_orbit(B, 4, t=0.0)
    assert measure("k110", o) == pytest.approx(2 * 2 * 4 * 8 / 25, rel=1e-12)
    assert measure("k110", o) == pytest.approx(closed_form("k110", B, topology(4)), rel=1e-12)


def test_n8_k104_zero():
    assert measure("k104", _orbit("8", 1.5)) == pytest.approx(0, abs=1e-12)


def test_n6_k102_circle():
    assert closed_form("k102", Billiard(1, 1), topology(6)) == pytest.approx(1 / 64)


def test_n5_k102_root():
    B = Billiard.from_ratio(1.25)
    want = pr.largest_negative().choose(pr.real_roots(polys.n5_k102_poly(B)))
    assert measure("k102", build_orbit(B, 5)) == pytest.approx(want, rel=1e-8)


@pytest.mark.parametrize("code,label,ab,tol", [
    ("k106", "6", 2.0, 1e-10),
    ("k110", "6i", 3.0, 1e-10),
    ("k104", "3", 1.5, 1e-10),
    ("k102", "6ii", 2.0, 1e-10),
])
def test_dual_forms(code, label, ab, tol):
    assert dual_form_check(code, Billiard.from_ratio(ab), LABELS[label]) < tol


def test_n8_k102_jl_form():
    o = _orbit("8", 1.4)
    JL = o.J * o.L
    assert measure("k102", o, force=True) == pytest.approx((JL - 4) ** 2 * (JL - 12) ** 2 / 2**12, rel=1e-8)


def test_corrected_forms_keep_printed():
    for key in (("k110", 4, Tag.SIMPLE), ("k104", 6, Tag.TYPE2)):
        e = REGISTRY[key]
        B = Billiard.from_ratio(2.0)
        assert e.printed is not None
        assert abs(e.printed(B, 1.0) - e.value(B)) > 1e-3


def test_bowtie_degenerate_inversive():
    o = _orbit("4i", 2.0)
    with pytest.raises(DegenerateError):
        measure("k805a", o, force=True)


def test_bowtie_signed_sums_vanish():
    o = _orbit("4i", 2.0)
    q = outer_polygon(o)
    for poly in (o.vertices, q):
        assert abs(signed_area(poly)) < 1e-12
        assert abs(np.sum(turn_signed_cosines(poly))) < 1e-12


def test_k109_only_for_triangles():
    o = _orbit("3")
    assert measure("k109", o) == pytest.approx(measure("k103", o), rel=1e-9)


def test_measure_all_skips_inapplicable():
    out = measure_all(_orbit("6"))
    assert set(out) == {c for c in CODES if applicable(c, 6)}


def test_derived_polygons_sizes():
    o = _orbit("5")
    d = DerivedPolygons.of(o)
    assert len(d.outer) == len(d.inner) == len(d.inversive1) == 5


labels = st.sampled_from(sorted(FAMILY_RATIOS))
fraction = st.floats(0.05, 0.95)


def _member(label, s):
    topo = LABELS[label]
    B = Billiard.from_ratio(FAMILY_RATIOS[label][1])
    params = family_params(B, topo, 64)
    return family_orbit(B, topo, float(params[int(s * 63)]))


@given(labels, fraction)
def test_k101_is_jl_minus_n(label, s):
    o = _member(label, s)
    assert measure("k101", o, force=True) == pytest.approx(o.J * o.L - o.n, abs=1e-9)


@given(labels, fraction)
def test_k119_universal(label, s):
    o = _member(label, s)
    assert measure("k119", o, force=True) == pytest.approx(k119_universal(o), rel=1e-9)


@given(labels, fraction, st.sampled_from(CODES))
def test_reversal_invariance(label, s, code):
    o = _member(label, s)
    rev = dataclasses.replace(o, vertices=o.vertices[::-1].copy())
    try:
        x = measure(code, o, force=True)
    except DegenerateError:
        return
    assert measure(code, rev, force=True) == pytest.approx(x, rel=1e-9, abs=1e-12)


SCALING = {"k803": 2, "k804": 0, "k805a": 4, "k806": -4, "k807": 8, "k802a": 0}


@given(st.sampled_from(["3", "4", "6", "8"]), fraction, st.floats(0.3, 3.0), st.sampled_from(sorted(SCALING)))
def test_inversion_radius_scaling(label, s, rho, code):
    from ebilliards.conic import InversionContext

    o = _member(label, s)
    try:
        base = measure(code, o, ctx=InversionContext(1, 1.0), force=True)
        scaled = measure(code, o, DerivedPolygons.of(o, rho), InversionContext(1, rho), force=True)
    except DegenerateError:
        return
    assert scaled == pytest.approx(base * rho ** SCALING[code], rel=1e-9)


@given(st.sampled_from(sorted(REGISTRY, key=lambda k: (k[0], k[1], k[2].value))), st.floats(0, 1))
def test_closed_forms_track_family(key, s):
    code, n, tag = key
    topo = topology(n, tag)
    label = topo.label
    B = Billiard.from_ratio(FAMILY_RATIOS[label][int(s * 2.999)])
    o = build_orbit(B, n, tag)
    want = closed_form(code, B, topo)
    assert measure(code, o, force=True) == pytest.approx(want, rel=1e-7, abs=1e-9)
