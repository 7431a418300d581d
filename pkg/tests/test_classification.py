import math
from fractions import Fraction

import numpy as np
import pytest

from isocurv.classification import (
    EMPTY,
    ROTATION_FAMILY,
    ClassQuery,
    Interval,
    classify,
    nonexistence_witness,
    query_to_json,
    witness,
)
from isocurv.profiles import (
    AmbientSpec,
    ExponentialProfile,
    ParabolicProfile,
    QuadraticProfile,
    TrigProfile,
    cic_along_profile,
    domain_check,
    principal_curvatures,
)
from isocurv.spectra import MinimalKind, minimal_classify


def tags(outcomes):
    return sorted(o.tag for o in outcomes)


def families(outcomes):
    return sorted(o.family for o in outcomes if o.tag == ROTATION_FAMILY)


# ---------------------------------------------------------------------------
# decision tree


def test_high_dimension_branches():
    assert tags(classify(ClassQuery(5, 1, 4))) == ["TotallyGeodesic"]
    assert tags(classify(ClassQuery(6, 1, 5))) == ["UmbilicalNonTG"]
    assert tags(classify(ClassQuery(5, -1, -4))) == ["ConstantCurvature"]
    assert tags(classify(ClassQuery(5, 1, 3))) == ["Empty"]
    out = classify(ClassQuery(5, 1, 8))[0]
    assert out.lambda_sq == pytest.approx(1.0)  # (C - 4c)/4


def test_flat_ambient_branches():
    assert tags(classify(ClassQuery(4, 0, -1))) == ["Empty"]
    out = classify(ClassQuery(4, 0, 0))
    assert tags(out) == ["FlatLocal", "RotationFamily"]
    assert families(out) == ["parabolic"]
    out = classify(ClassQuery(4, 0, 2))
    assert tags(out) == ["RotationFamily", "TotallyGeodesic", "UmbilicalNonTG"]
    assert families(out) == ["trig"]


def test_spherical_ambient_branches():
    assert classify(ClassQuery(4, 1, 1.5))[0].tag == EMPTY
    assert "C <= 2c" in classify(ClassQuery(4, 1, 1.5))[0].reason
    out = classify(ClassQuery(4, 1, 3))
    assert tags(out) == ["RotationFamily"]
    rng = out[0].ranges["alpha"]
    assert (rng.lo, rng.hi, rng.lo_open, rng.hi_open) == (0.0, 0.5, True, True)
    out = classify(ClassQuery(4, 1, 4))
    assert tags(out) == ["RotationFamily", "TotallyGeodesic"]
    assert out[1].ranges["alpha"].lo_open is False
    out = classify(ClassQuery(4, 1, 6))
    assert tags(out) == ["RotationFamily", "UmbilicalNonTG"]


def test_hyperbolic_ambient_branches():
    assert classify(ClassQuery(4, -1, -5))[0].tag == EMPTY
    out = classify(ClassQuery(4, -1, -4))
    assert tags(out) == ["ConstantCurvature", "RotationFamily"]
    assert families(out) == ["exponential"]
    assert out[1].deltas == (1, 0, -1)
    assert "4*A*B > delta^2" in out[1].conditions
    out = classify(ClassQuery(4, -1, -2))
    assert tags(out) == ["RotationFamily", "UmbilicalNonTG"]
    out = classify(ClassQuery(4, -1, 0))
    assert families(out) == ["quadratic"]
    out = classify(ClassQuery(4, -1, 3))
    assert families(out) == ["trig"]
    assert out[1].deltas == (1,)  # only spherical rotation types for C > 0


def test_query_validation():
    with pytest.raises(ValueError):
        ClassQuery(3, 1, 1)


def test_exact_fraction_boundaries():
    # C = 4c exactly, via rationals a float grid would miss
    out = classify(ClassQuery(4, Fraction(1, 3), Fraction(4, 3)))
    assert tags(out) == ["RotationFamily", "TotallyGeodesic"]
    out = classify(ClassQuery(4, Fraction(1, 3), Fraction(2, 3)))
    assert tags(out) == ["Empty"]
    out = classify(ClassQuery(5, Fraction(-2, 7), Fraction(-8, 7)))
    assert tags(out) == ["ConstantCurvature"]


def test_float_boundary_tolerance():
    # within 1e-12 of the boundary counts as on it; 1e-6 off does not
    assert tags(classify(ClassQuery(4, 1.0, 4.0 + 1e-13))) == ["RotationFamily", "TotallyGeodesic"]
    assert tags(classify(ClassQuery(4, 1.0, 4.0 + 1e-6))) == ["RotationFamily", "UmbilicalNonTG"]
    assert tags(classify(ClassQuery(4, 1.0, 4.0 - 1e-6))) == ["RotationFamily"]


def empty_expected(n, c, C):
    if n >= 5:
        return C < 4 * c
    if c == 0:
        return C < 0
    if c > 0:
        return C <= 2 * c
    return C < 4 * c


def test_exhaustive_grid_matches_empty_predicate():
    """~10^4 queries: classify never crashes and Empty hits exactly the
    excluded parameter region."""
    count = 0
    for n in (4, 5, 6):
        for c in np.linspace(-2.0, 2.0, 58):
            for C in np.linspace(-10.0, 10.0, 58):
                out = classify(ClassQuery(n, float(c), float(C)))
                assert out, f"no outcomes for ({n}, {c}, {C})"
                got_empty = out[0].tag == EMPTY
                assert got_empty == empty_expected(n, float(c), float(C)), (n, c, C)
                if got_empty:
                    assert out[0].reason
                count += 1
    assert count == 3 * 58 * 58


# ---------------------------------------------------------------------------
# witnesses


def test_witness_examples():
    q = ClassQuery(4, 1, 3)
    w = witness(classify(q)[0], q)
    assert isinstance(w, TrigProfile)
    assert (w.C, w.alpha) == (3.0, 0.25)

    q = ClassQuery(4, 0, 0)
    w = witness(classify(q)[1], q)
    assert isinstance(w, ParabolicProfile) and w.beta == 1.0

    q = ClassQuery(4, -1, -4)
    w = witness(classify(q)[1], q)
    assert isinstance(w, ExponentialProfile)
    assert (w.C, w.A, w.B, w.delta) == (-4.0, 1.0, 1.0, 1)

    q = ClassQuery(4, -1, 0)
    w = witness(classify(q)[1], q)
    assert isinstance(w, QuadraticProfile) and (w.A, w.B) == (0.0, 1.0)


def test_witness_symbolic_for_non_rotation():
    q = ClassQuery(5, 1, 4)
    assert witness(classify(q)[0], q) == "TotallyGeodesic"


@pytest.mark.parametrize(
    "n,c,C",
    [
        (4, 1.0, 3.0),
        (4, 1.0, 4.0),
        (4, 1.0, 7.0),
        (4, 0.0, 0.0),
        (4, 0.0, 2.5),
        (4, -0.25, -1.0),
        (4, -1.0, -2.0),
        (4, -1.0, 0.0),
        (4, -1.0, 1.0),
    ],
)
def test_witness_soundness(n, c, C):
    """Every rotation witness is domain-valid and holds its constant."""
    q = ClassQuery(n, c, C)
    for o in classify(q):
        if o.tag != ROTATION_FAMILY:
            continue
        fam = witness(o, q)
        ambient = AmbientSpec(c=c, delta=fam.ode_delta)
        assert domain_check(fam, ambient) is None
        samples, deviation = cic_along_profile(fam, ambient)
        mean = sum(p.cic for p in samples) / len(samples)
        assert deviation <= 1e-8
        assert abs(mean - C) <= 1e-8


def test_witness_soundness_deep_hyperbolic_boundary_constant():
    """At C = 4c the witness's curvature radicand decays like e^(-2a|s|)
    (a = sqrt(-C)), so for c = -1 it drops below double-precision
    cancellation noise near |s| ~ 9.6; the certificate window must stop
    short of that."""
    q = ClassQuery(4, -1.0, -4.0)
    o = next(o for o in classify(q) if o.tag == ROTATION_FAMILY)
    fam = witness(o, q)
    ambient = AmbientSpec(c=-1.0, delta=fam.ode_delta)
    assert domain_check(fam, ambient, (-8.0, 8.0)) is None
    samples, deviation = cic_along_profile(fam, ambient, (-8.0, 8.0))
    mean = sum(p.cic for p in samples) / len(samples)
    assert deviation <= 1e-8
    assert abs(mean + 4.0) <= 1e-8


# ---------------------------------------------------------------------------
# nonexistence evidence


def test_nonexistence_spherical_low_constant():
    ev = nonexistence_witness(ClassQuery(4, 1, 1.5))
    assert ev.mechanism == "positive-bound-at-origin"
    assert isinstance(ev.candidate, TrigProfile)
    assert ev.failure.s == 0.0
    assert "2c/C" in ev.detail


def test_nonexistence_flat_negative_constant():
    ev = nonexistence_witness(ClassQuery(4, 0, -1))
    assert ev.mechanism == "unit-speed"
    assert isinstance(ev.candidate, ExponentialProfile)
    assert 0.0 < ev.failure.s <= 10.0


def test_nonexistence_hyperbolic_below_4c():
    ev = nonexistence_witness(ClassQuery(4, -1, -5))
    assert ev.mechanism == "asymptotic-negative"
    assert 0.0 < ev.failure.s <= 10.0
    assert "-c + C/4" in ev.detail


def test_nonexistence_high_dimension_is_algebraic():
    ev = nonexistence_witness(ClassQuery(6, 1, 0))
    assert ev.mechanism == "algebraic"
    assert ev.candidate is None and ev.failure is None


def test_nonexistence_rejects_nonempty_queries():
    with pytest.raises(ValueError, match="non-empty"):
        nonexistence_witness(ClassQuery(4, 1, 3))


# ---------------------------------------------------------------------------
# serialization and cross-checks


def test_query_to_json_schema():
    q = ClassQuery(4, 1, 3)
    payload = query_to_json(q, classify(q))
    assert payload["query"] == {"n": 4, "c": 1.0, "C": 3.0}
    (entry,) = payload["outcomes"]
    assert entry["tag"] == "RotationFamily"
    assert entry["family"] == "trig"
    assert entry["constraints"]["alpha"] == {
        "lo": 0.0,
        "lo_open": True,
        "hi": 0.5,
        "hi_open": True,
    }


def test_interval_rejects_empty_range():
    with pytest.raises(ValueError):
        Interval(1.0, 0.5)


def test_outcome_json_reason_for_empty():
    q = ClassQuery(4, 1, 0.5)
    entry = query_to_json(q, classify(q))["outcomes"][0]
    assert entry["tag"] == "Empty"
    assert "2c" in entry["reason"]


@pytest.mark.parametrize("c", [0.25, 0.75, 1.0, 2.0])
def test_minimal_crosscheck_with_classification(c):
    """The Clifford verdict appears exactly where the classified rotation
    family contains a minimal constant-profile member."""
    C = 8.0 * c / 3.0
    verdict = minimal_classify(4, c, C)
    assert verdict.kind is MinimalKind.CLIFFORD

    out = classify(ClassQuery(4, c, C))
    rotation = [o for o in out if o.tag == ROTATION_FAMILY]
    assert len(rotation) == 1 and rotation[0].family == "trig"

    # the constant-profile member of that family sits at x0 = sqrt(3/(4c))
    x0 = math.sqrt(3.0 / (4.0 * c))
    assert x0 == pytest.approx(math.sqrt(2.0 / C), abs=1e-14)
    lam, mu = principal_curvatures(AmbientSpec(c=c, delta=1), x0, 0.0, 0.0)
    assert abs(3.0 * lam + mu) <= 1e-12  # minimal
    assert lam == pytest.approx(verdict.lam, abs=1e-13)
    assert mu == pytest.approx(verdict.mu, abs=1e-13)


@pytest.mark.parametrize("c,C", [(1.0, 3.0), (1.0, 3.5), (0.5, 1.8)])
def test_minimal_crosscheck_negative_cases(c, C):
    """Rotation families away from C = 8c/3 have no minimal member."""
    assert minimal_classify(4, c, C).kind is MinimalKind.NONE
    x0 = math.sqrt(2.0 / C)  # constant-profile member of the family
    lam, mu = principal_curvatures(AmbientSpec(c=c, delta=1), x0, 0.0, 0.0)
    assert abs(3.0 * lam + mu) > 1e-3
