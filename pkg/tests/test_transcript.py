import json

import pytest

from geoprove.algebraizer import default_specialization, specialize, translate
from geoprove.dsl import parse_polynomial
from geoprove.errors import UnverifiedCertificate
from geoprove.prover import prove_and_score
from geoprove.transcript import HEADINGS, build, dumps, render


def _run(corpus, name, spec=True, **kw):
    sys = translate(corpus(name))
    s = default_specialization(sys) if spec else {}
    cert, diff = prove_and_score(specialize(sys, s), minimize=True, **kw)
    return sys, s, cert, diff


def test_heights_specialized_transcript(corpus):
    sys, s, cert, diff = _run(corpus, "heights_translation.geo", route="reductio")
    text = render(sys, s, cert, diff)
    assert text.splitlines()[-2:] == ["  (1) Statement is geometrically true", "  (2) Difficulty: 2"]
    headings = [ln[:-1] for ln in text.splitlines() if ln.endswith(":") and not ln.startswith(" ")]
    assert headings == list(HEADINGS)


def test_midpoint_transcript(corpus):
    text = render(*_run(corpus, "midpoint.geo"))
    assert text.rstrip().endswith("Difficulty: trivial")
    assert "0 = 0" in text


def test_no_specialization_line(corpus):
    tr = build(*_run(corpus, "heights_direct.geo", spec=False))
    heading, lines = tr.sections[2]
    assert heading == "Specialization" and [ln.text for ln in lines] == ["no specialization applied"]
    assert tr.mode_line == "Statement is formally true"


def test_combination_round_trip(corpus):
    for name, route in [
        ("heights_direct.geo", "ladder"),
        ("heights_translation.geo", "reductio"),
        ("medians.geo", "ladder"),
        ("fig3.geo", "reductio"),
    ]:
        for spec in (False, True):
            sys, s, cert, diff = _run(corpus, name, spec, route=route)
            tr = build(sys, s, cert, diff)
            combo = tr.sections[3][1][-1]
            lhs, rhs = combo.text.split(" = ", 1)
            assert rhs == combo.polynomial
            assert parse_polynomial(rhs, cert.ring) == cert.target
            assert parse_polynomial(lhs, cert.ring) == cert.target


def test_equation_lines_round_trip(corpus):
    sys, s, cert, diff = _run(corpus, "heights_translation.geo", route="reductio")
    tr = build(sys, s, cert, diff)
    hyp_lines = tr.sections[1][1]
    for ln, h in zip(hyp_lines, sys.hypotheses + [sys.thesis]):
        assert parse_polynomial(ln.polynomial, sys.ring) == h
    for ln in tr.sections[3][1][:-1]:
        assert parse_polynomial(ln.polynomial, cert.ring) in cert.generators


def test_byte_determinism(corpus):
    a = render(*_run(corpus, "medians.geo"))
    b = render(*_run(corpus, "medians.geo"))
    assert a.encode() == b.encode()
    ja = dumps(render(*_run(corpus, "medians.geo"), format="json"))
    jb = dumps(render(*_run(corpus, "medians.geo"), format="json"))
    assert ja == jb
    doc = json.loads(ja)
    assert doc["certificate"]["difficulty"] == {"value": 1, "minimized": True, "upper_bound": False}
    assert [ln["n"] for ln in doc["sections"][1]["lines"]] == list(range(1, 10))


def test_unverified_certificate_rejected(corpus):
    sys, s, cert, diff = _run(corpus, "medians.geo")
    cert.cofactors = [c * 2 for c in cert.cofactors]
    with pytest.raises(UnverifiedCertificate):
        render(sys, s, cert, diff)


def test_unknown_format(corpus):
    with pytest.raises(ValueError):
        render(*_run(corpus, "medians.geo"), format="latex")


def test_unproved_transcript(corpus):
    sys, s, cert, diff = _run(corpus, "falsehood.geo")
    text = render(sys, s, cert, diff)
    assert "Statement is not proved" in text and "no combination found" in text
