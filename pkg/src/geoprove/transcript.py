"""Step-by-step proof transcripts in text and JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .algebraizer import PolySystem, specialize
from .errors import UnverifiedCertificate
from .prover import Certificate, Difficulty, Mode

HEADINGS = (
    "Coordinates",
    "Hypotheses",
    "Specialization",
    "Combination",
    "Conclusion",
)


@dataclass
class Line:
    n: int
    text: str
    polynomial: Optional[str] = None
    label: str = ""

    def to_json(self) -> dict:
        doc = {"n": self.n, "text": self.text}
        if self.polynomial is not None:
            doc["polynomial"] = self.polynomial
        if self.label:
            doc["label"] = self.label
        return doc


@dataclass
class Transcript:
    name: str
    sections: list = field(default_factory=list)  # (heading, [Line])
    mode_line: str = ""
    difficulty_line: str = ""

    def add(self, heading: str) -> list:
        lines = []
        self.sections.append((heading, lines))
        return lines

    def text(self) -> str:
        out = [f"ShowProof: {self.name}" if self.name else "ShowProof"]
        for heading, lines in self.sections:
            out.append("")
            out.append(f"{heading}:")
            out.extend(f"  ({ln.n}) {ln.text}" for ln in lines)
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "sections": [
                {"heading": h, "lines": [ln.to_json() for ln in lines]} for h, lines in self.sections
            ],
            "mode": self.mode_line,
            "difficulty": self.difficulty_line,
        }


def _equation(lines, poly, order, label=""):
    text = f"{poly.render(order)} = 0"
    if label:
        text += f"    # {label}"
    lines.append(Line(len(lines) + 1, text, poly.render(order), label))


def combination_text(cert: Certificate) -> str:
    """``target = (c1)*(g1) + ...`` with zero cofactors left out."""
    order = cert.order
    parts = [
        f"({c.render(order)})*({g.render(order)})"
        for c, g in zip(cert.cofactors, cert.generators)
        if c
    ]
    return f"{cert.target.render(order)} = " + (" + ".join(parts) if parts else "0")


def build(
    sys: PolySystem,
    spec: Optional[dict],
    cert: Certificate,
    diff: Optional[Difficulty],
) -> Transcript:
    if not cert.check():
        raise UnverifiedCertificate("refusing to render an unverified certificate")
    spec = dict(spec or {})
    order = cert.order
    # same order restricted to the geometry variables
    base_order = None
    if order.kind != "block":
        base_order = sys.ring.order(order.kind, order.priority[-len(sys.ring):])
    tr = Transcript(sys.name)

    lines = tr.add(HEADINGS[0])
    free = set(sys.free)
    for p, (x, y) in sys.coords.items():
        role = "free" if x in free and y in free else "semi-free" if x in free else "dependent"
        lines.append(
            Line(len(lines) + 1, f"{p} = ({x}, {y})  [{sys.v_name(x)}, {sys.v_name(y)}]  {role}")
        )

    lines = tr.add(HEADINGS[1])
    for h, lab in zip(sys.hypotheses, sys.labels):
        _equation(lines, h, base_order, lab)
    _equation(lines, sys.thesis, base_order, f"thesis: {sys.thesis_label}")

    lines = tr.add(HEADINGS[2])
    if not spec:
        lines.append(Line(1, "no specialization applied"))
    else:
        for v, c in spec.items():
            lines.append(Line(len(lines) + 1, f"{v} = {c}  [{sys.v_name(v)}]"))
        special = specialize(sys, spec)
        for h, lab in zip(special.hypotheses, special.labels):
            _equation(lines, h, base_order, lab)
        _equation(lines, special.thesis, base_order, f"thesis: {sys.thesis_label}")

    lines = tr.add(HEADINGS[3])
    if cert.mode is Mode.UNPROVED:
        lines.append(Line(1, "no combination found"))
    elif cert.trivial:
        lines.append(Line(1, "thesis vanishes after substituting explicit coordinates: 0 = 0"))
    else:
        for g, lab in zip(cert.generators, cert.labels):
            _equation(lines, g, order, lab)
        for g in cert.nondegeneracy:
            lines.append(Line(len(lines) + 1, f"assuming {g.render(order)} != 0"))
        combo = combination_text(cert)
        lines.append(Line(len(lines) + 1, combo, combo.split(" = ", 1)[1], "combination"))

    lines = tr.add(HEADINGS[4])
    if cert.mode is Mode.UNPROVED:
        tr.mode_line = "Statement is not proved"
        tr.difficulty_line = "Difficulty: none"
    else:
        tr.mode_line = f"Statement is {cert.mode.phrase}"
        tr.difficulty_line = f"Difficulty: {diff}"
    lines.append(Line(1, tr.mode_line))
    lines.append(Line(2, tr.difficulty_line))
    if diff is not None and diff.upper_bound:
        lines.append(Line(3, "(upper bound from the Groebner certificate; not minimized)"))
    return tr


def render(
    sys: PolySystem,
    spec: Optional[dict],
    cert: Certificate,
    diff: Optional[Difficulty],
    format: str = "text",
):
    """Render a transcript as text (``str``) or JSON-ready ``dict``.

    The JSON form also carries the certificate and the unspecialized system.
    """
    tr = build(sys, spec, cert, diff)
    if format == "text":
        return tr.text()
    if format == "json":
        doc = tr.to_json()
        doc["certificate"] = cert.to_json(diff)
        doc["system"] = sys.to_json()
        return doc
    raise ValueError(f"unknown format {format!r}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
