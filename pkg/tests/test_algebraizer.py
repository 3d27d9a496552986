import random

import pytest

from geoprove.algebraizer import default_specialization, specialize, translate
from geoprove.discovery import realize
from geoprove.dsl import parse_construction, parse_polynomial
from geoprove.errors import NotAFreeVariable, NotEnoughFreePoints
from geoprove.polycore import Polynomial, Ring

from conftest import same_up_to_scalar


def in_v_names(sys, offset=13):
    """The system's polynomials re-expressed over GeoGebra-style v-variables."""
    sys.v_offset = offset
    vring = Ring([sys.v_name(n) for n in sys.ring.names])
    move = lambda p: Polynomial(vring, p.terms)  # noqa: E731
    return vring, [move(h) for h in sys.hypotheses], move(sys.thesis)


def assert_matches(ours, expected):
    assert len(ours) == len(expected)
    for k, (p, q) in enumerate(zip(ours, expected)):
        assert same_up_to_scalar(p, q), (k, p.render(), q.render())


def test_medians_reference_system(corpus):
    sys = translate(corpus("medians.geo"))
    R = sys.ring
    P = lambda s: parse_polynomial(s, R)  # noqa: E731
    expected = [
        P("e1 - (b1 + c1)/2"),
        P("e2 - (b2 + c2)/2"),
        P("d1 - (a1 + c1)/2"),
        P("d2 - (a2 + c2)/2"),
        P("(g1 - a1)*(e2 - a2) - (g2 - a2)*(e1 - a1)"),
        P("(g1 - b1)*(d2 - b2) - (g2 - b2)*(d1 - b1)"),
        P("f1 - (a1 + b1)/2"),
        P("f2 - (a2 + b2)/2"),
    ]
    assert_matches(sys.hypotheses, expected)
    assert same_up_to_scalar(sys.thesis, P("(g1 - c1)*(f2 - c2) - (g2 - c2)*(f1 - c1)"))
    # denominators cleared: integer coefficients, midpoint is 2f - a - b
    assert sys.hypotheses[0] == P("2*e1 - b1 - c1")


def test_heights_direct_reference_system(corpus):
    sys = translate(corpus("heights_direct.geo"))
    vring, hyps, thesis = in_v_names(sys)
    P = lambda s: parse_polynomial(s, vring)  # noqa: E731
    assert_matches(
        hyps,
        [
            P("(v19-v13)*(v17-v15) + (v20-v14)*(v18-v16)"),
            P("(v19-v15)*(v17-v13) + (v20-v16)*(v18-v14)"),
        ],
    )
    assert same_up_to_scalar(thesis, P("(v19-v17)*(v15-v13) + (v20-v18)*(v16-v14)"))


def test_heights_direct_specialized(corpus):
    sys = translate(corpus("heights_direct.geo"))
    spec = default_specialization(sys)
    assert spec == {"a1": 0, "a2": 0, "b1": 0, "b2": 1}
    vring, hyps, thesis = in_v_names(specialize(sys, spec))
    P = lambda s: parse_polynomial(s, vring)  # noqa: E731
    assert_matches(
        hyps,
        [P("(v19-0)*(v17-0) + (v20-0)*(v18-1)"), P("(v19-0)*(v17-0) + (v20-1)*(v18-0)")],
    )
    assert same_up_to_scalar(thesis, P("(v19-v17)*(0-0) + (v20-v18)*(1-0)"))


def test_heights_translation_reference_system(corpus):
    sys = translate(corpus("heights_translation.geo"))
    vring, hyps, thesis = in_v_names(sys)
    assert vring.names[0] == "v13" and vring.names[-1] == "v26"
    P = lambda s: parse_polynomial(s, vring)  # noqa: E731
    expected = [
        "-v20+v17-v15+v14",
        "-v19-v18+v16+v13",
        "-v22-v17+v16+v13",
        "-v21+v18+v15-v14",
        "-v24+v18+v15-v13",
        "-v23+v17-v16+v14",
        "v25*v20-v26*v19-v25*v14+v19*v14+v26*v13-v20*v13",
        "v25*v22-v26*v21-v25*v16+v21*v16+v26*v15-v22*v15",
    ]
    assert_matches(hyps, [P(s) for s in expected])
    assert same_up_to_scalar(thesis, P("v25*v24-v26*v23-v25*v18+v23*v18+v26*v17-v24*v17"))


def test_translation_reduces_to_direct_height(corpus):
    # substituting the translated point gives back the dot-product form
    sys = translate(corpus("heights_translation.geo"))
    vring, hyps, _ = in_v_names(sys)
    P = lambda s: parse_polynomial(s, vring)  # noqa: E731
    sub = hyps[6].substitute({"v20": P("v17-v15+v14"), "v19": P("v16+v13-v18")})
    assert sub == P("(v15 - v17)*(v13-v25)+(v16-v18)*(v14-v26)")


def test_degenerate_predicate_is_zero():
    sys = translate(parse_construction("point A\nthesis equal_length(A, A, A, A)"))
    assert sys.thesis.is_zero()


def test_specialize_edge_cases(corpus):
    sys = translate(corpus("medians.geo"))
    assert specialize(sys, {}) is sys
    with pytest.raises(NotAFreeVariable):
        specialize(sys, {"g1": 0})
    with pytest.raises(NotEnoughFreePoints):
        default_specialization(translate(parse_construction("point A\nthesis collinear(A, A, A)")))
    done = specialize(sys, default_specialization(sys))
    assert "a1" not in done.free and done.free_points == ("C",)
    with pytest.raises(NotEnoughFreePoints):
        default_specialization(done)


def test_specialization_preserves_zero_set(corpus):
    rng = random.Random(5)
    for name in ("medians.geo", "heights_direct.geo", "heights_translation.geo", "fig3.geo"):
        c = corpus(name)
        full = translate(c)
        special = specialize(full, default_specialization(full))
        for _ in range(25):
            point = realize(c, special, rng)
            assert all(h.evaluate(point) == 0 for h in full.hypotheses)
            assert all(h.evaluate(point) == 0 for h in special.hypotheses)


def test_translation_deterministic(corpus):
    for name in ("medians.geo", "heights_translation.geo", "fig3.geo"):
        a, b = translate(corpus(name)), translate(corpus(name))
        assert a.ring.names == b.ring.names
        assert a.hypotheses == b.hypotheses and a.thesis == b.thesis
        assert a.to_json() == b.to_json()


def test_roles_and_dependents(corpus):
    sys = translate(corpus("heights_translation.geo"))
    assert not set(sys.free) & set(sys.dependent)
    for v in sys.dependent:
        idx = sys.ring.index(v)
        assert any(idx in h.variables() for h in sys.hypotheses)


def test_on_line_point():
    c = parse_construction("point A, B\nl = line(A, B)\nX = on_line(l)\nthesis collinear(A, B, X)")
    sys = translate(c)
    assert "x1" in sys.free and "x2" in sys.dependent
    assert same_up_to_scalar(sys.thesis, sys.hypotheses[0])
