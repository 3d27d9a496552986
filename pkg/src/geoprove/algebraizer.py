"""Translate constructions into polynomial systems and specialize them.

Each point gets two coordinate variables in declaration order.  A line is
kept as a base point plus a direction vector whose entries are polynomials,
and "point X lies on line l" becomes ``cross(X - base, direction) = 0``.
Denominators are always cleared, e.g. a midpoint yields ``2*f1 - a1 - b1``.

Two encodings of perpendicular and parallel lines are available:

``direct``
    the line through ``P`` keeps a symbolic direction, so membership of a
    point ``X`` in the perpendicular through ``P`` to ``l`` is the dot product
    ``(X - P) . dir(l)``.
``translation``
    an auxiliary point ``P + rot90(dir(l))`` (or ``P + dir(l)``) is
    introduced with two linear hypotheses, and the line is the line through
    ``P`` and that point.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Optional

from .dsl import ENCODINGS, Construction, Predicate
from .errors import NotAFreeVariable, NotEnoughFreePoints, UnsupportedStep
from .polycore import Polynomial, Ring


@dataclass(frozen=True)
class LineRep:
    base: tuple  # (x, y) polynomials
    direction: tuple

    def membership(self, point) -> Polynomial:
        return cross(sub(point, self.base), self.direction)


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def cross(u, v) -> Polynomial:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> Polynomial:
    return u[0] * v[0] + u[1] * v[1]


def rot90(u):
    return (-u[1], u[0])


def sqdist(u, v) -> Polynomial:
    d = sub(u, v)
    return dot(d, d)


@dataclass
class PolySystem:
    """Algebraic image of a construction together with a thesis.

    ``coords`` maps every point (including auxiliary translation points) to
    its pair of variable names.  ``explicit`` records coordinates that are
    explicit polynomials in earlier ones (midpoints, translation points); it
    is used to recognise theses that vanish identically.
    """

    ring: Ring
    hypotheses: list
    labels: list
    thesis: Polynomial
    thesis_label: str
    free: tuple
    dependent: tuple
    coords: dict
    free_points: tuple
    explicit: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict, repr=False)
    specialization: dict = field(default_factory=dict)
    encoding: str = "direct"
    name: str = ""
    v_offset: int = 1

    def v_name(self, var: str) -> str:
        """GeoGebra-style ``v<k>`` label of a coordinate variable."""
        return f"v{self.ring.index(var) + self.v_offset}"

    def point(self, name: str) -> tuple:
        x, y = self.coords[name]
        return (self.ring.var(x), self.ring.var(y))

    def normalized_thesis(self) -> Polynomial:
        """Thesis with every explicitly defined coordinate substituted away."""
        subs = {v: p for v, p in self.explicit.items()}
        t = self.thesis
        for _ in range(len(subs) + 1):
            used = {self.ring.names[i] for i in t.variables()}
            todo = {v: p for v, p in subs.items() if v in used}
            if not todo:
                break
            t = t.substitute(todo)
        return t

    def predicate_polynomial(self, pred: Predicate) -> Polynomial:
        return _predicate(pred, self.point, self.lines.__getitem__)

    def with_thesis(self, pred: Predicate) -> "PolySystem":
        return replace(self, thesis=self.predicate_polynomial(pred), thesis_label=str(pred))

    def to_json(self) -> dict:
        roles = {v: "free" for v in self.free}
        roles.update({v: "dependent" for v in self.dependent})
        for v in self.specialization:
            roles[v] = "specialized"
        order = self.ring.order("grevlex")
        return {
            "name": self.name,
            "encoding": self.encoding,
            "variables": [
                {"name": n, "role": roles.get(n, "unused"), "v_index": self.v_name(n)}
                for n in self.ring.names
            ],
            "points": {p: list(xy) for p, xy in self.coords.items()},
            "free_points": list(self.free_points),
            "hypotheses": [
                {"label": lab, "polynomial": h.render(order)}
                for lab, h in zip(self.labels, self.hypotheses)
            ],
            "thesis": {"label": self.thesis_label, "polynomial": self.thesis.render(order)},
            "specialization": {v: str(c) for v, c in self.specialization.items()},
        }


def _predicate(pred: Predicate, point, line) -> Polynomial:
    a = pred.args
    if pred.kind == "collinear":
        p, q, r = (point(n) for n in a)
        return cross(sub(q, p), sub(r, p))
    if pred.kind == "equal_length":
        p, q, r, s = (point(n) for n in a)
        return sqdist(p, q) - sqdist(r, s)
    if pred.kind == "perpendicular":
        return dot(line(a[0]).direction, line(a[1]).direction)
    if pred.kind == "parallel":
        return cross(line(a[0]).direction, line(a[1]).direction)
    if pred.kind == "on_line":
        return line(a[1]).membership(point(a[0]))
    if pred.kind == "on_circle":
        p, o, q = (point(n) for n in a)
        return sqdist(p, o) - sqdist(q, o)
    raise UnsupportedStep(f"predicate {pred.kind}")


def _variable_plan(c: Construction, encoding: str) -> list:
    """Objects that carry coordinates, as ``(object, point-name)`` pairs."""
    plan = []
    for s in c.steps:
        if s.produces == "point":
            plan.append((s.name, s.name))
        elif encoding == "translation" and s.kind in ("perpendicular", "parallel"):
            plan.append((s.name, f"{s.name}'"))
    return plan


def _allocate_names(plan) -> dict:
    taken, out = set(), {}
    for obj, pname in plan:
        base = obj.lower() if not pname.endswith("'") else f"{obj.lower()}p"
        pair = (f"{base}1", f"{base}2")
        if pair[0] in taken or pair[1] in taken:
            base = f"{obj}_" if not pname.endswith("'") else f"{obj}_p"
            pair = (f"{base}1", f"{base}2")
            k = 0
            while pair[0] in taken or pair[1] in taken:
                k += 1
                pair = (f"{base}{k}_1", f"{base}{k}_2")
        taken.update(pair)
        out[pname] = pair
    return out


def translate(c: Construction, encoding: Optional[str] = None) -> PolySystem:
    """Build the hypothesis and thesis polynomials of ``c``.

    ``encoding`` falls back to the construction's own pragma and then to
    ``"direct"``.
    """
    encoding = encoding or c.encoding or "direct"
    if encoding not in ENCODINGS:
        raise UnsupportedStep(f"unknown encoding {encoding!r}")
    plan = _variable_plan(c, encoding)
    coords = _allocate_names(plan)
    ring = Ring([v for pname in coords for v in coords[pname]])

    def P(name):
        x, y = coords[name]
        return (ring.var(x), ring.var(y))

    hyps, labels = [], []
    free, dependent, free_points = [], [], []
    explicit = {}
    lines = {}

    def emit(poly, label):
        hyps.append(poly)
        labels.append(label)

    for s in c.steps:
        if s.kind == "point":
            free.extend(coords[s.name])
            free_points.append(s.name)
        elif s.kind == "midpoint":
            (fx, fy), (ax, ay), (bx, by) = P(s.name), P(s.args[0]), P(s.args[1])
            emit(2 * fx - ax - bx, f"{s}, x")
            emit(2 * fy - ay - by, f"{s}, y")
            vx, vy = coords[s.name]
            explicit[vx] = (ax + bx) / 2
            explicit[vy] = (ay + by) / 2
            dependent.extend(coords[s.name])
        elif s.kind == "line":
            a, b = P(s.args[0]), P(s.args[1])
            lines[s.name] = LineRep(a, sub(b, a))
        elif s.kind in ("perpendicular", "parallel"):
            base = P(s.args[0])
            d = lines[s.args[1]].direction
            if s.kind == "perpendicular":
                d = rot90(d)
            if encoding == "direct":
                lines[s.name] = LineRep(base, d)
            else:
                aux = f"{s.name}'"
                ax, ay = P(aux)
                tx, ty = add(base, d)
                emit(ty - ay, f"{s}, translated point {aux} y")
                emit(tx - ax, f"{s}, translated point {aux} x")
                vx, vy = coords[aux]
                explicit[vx] = tx
                explicit[vy] = ty
                dependent.extend(coords[aux])
                lines[s.name] = LineRep(base, sub((ax, ay), base))
        elif s.kind == "intersect":
            X = P(s.name)
            emit(lines[s.args[0]].membership(X), f"{s.name} on {s.args[0]}")
            emit(lines[s.args[1]].membership(X), f"{s.name} on {s.args[1]}")
            dependent.extend(coords[s.name])
        elif s.kind == "on_line":
            X = P(s.name)
            emit(lines[s.args[0]].membership(X), f"{s.name} on {s.args[0]}")
            free.append(coords[s.name][0])
            dependent.append(coords[s.name][1])
        else:
            raise UnsupportedStep(f"{s.kind} under {encoding} encoding")

    thesis = _predicate(c.thesis, P, lines.__getitem__)
    return PolySystem(
        ring=ring,
        hypotheses=hyps,
        labels=labels,
        thesis=thesis,
        thesis_label=str(c.thesis),
        free=tuple(free),
        dependent=tuple(dependent),
        coords=coords,
        free_points=tuple(free_points),
        explicit=explicit,
        lines=lines,
        encoding=encoding,
        name=c.name,
    )


Specialization = Mapping  # variable name -> rational value


def specialize(sys: PolySystem, assignments: Specialization) -> PolySystem:
    """Substitute rational values for free variables and re-normalize."""
    assignments = {v: Fraction(c) for v, c in dict(assignments).items()}
    if not assignments:
        return sys
    for v in assignments:
        if v not in sys.free:
            raise NotAFreeVariable(f"{v!r} is not a free variable of the system")
    hyps, labels = [], []
    for h, lab in zip(sys.hypotheses, sys.labels):
        h = h.substitute(assignments)
        if h:
            hyps.append(h.normalize())
            labels.append(lab)
    thesis = sys.thesis.substitute(assignments)
    explicit = {v: p.substitute(assignments) for v, p in sys.explicit.items()}
    lines = {
        name: LineRep(
            tuple(c.substitute(assignments) for c in rep.base),
            tuple(c.substitute(assignments) for c in rep.direction),
        )
        for name, rep in sys.lines.items()
    }
    fixed = dict(sys.specialization)
    fixed.update(assignments)
    still_free = set(sys.free) - set(assignments)
    return replace(
        sys,
        hypotheses=hyps,
        labels=labels,
        thesis=thesis.normalize() if thesis else thesis,
        free=tuple(v for v in sys.free if v in still_free),
        free_points=tuple(
            p for p in sys.free_points if all(v in still_free for v in sys.coords[p])
        ),
        explicit=explicit,
        lines=lines,
        specialization=fixed,
    )


def default_specialization(sys: PolySystem) -> dict:
    """First free point to ``(0, 0)``, second to ``(0, 1)``."""
    if len(sys.free_points) < 2:
        raise NotEnoughFreePoints(
            f"need two free points to specialize, found {len(sys.free_points)}"
        )
    (ax, ay), (bx, by) = (sys.coords[p] for p in sys.free_points[:2])
    return {ax: Fraction(0), ay: Fraction(0), bx: Fraction(0), by: Fraction(1)}


def point_specialization(sys: PolySystem, points: Mapping) -> dict:
    """Turn ``{"A": (x, y)}`` into a variable assignment."""
    out = {}
    for p, (x, y) in points.items():
        if p not in sys.coords:
            raise NotAFreeVariable(f"unknown point {p!r}")
        vx, vy = sys.coords[p]
        out[vx] = Fraction(x)
        out[vy] = Fraction(y)
    return out
