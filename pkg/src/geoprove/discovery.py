"""Enumerate, filter, prove and rank statements over a construction."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .algebraizer import PolySystem, cross, rot90, sub, translate
from .dsl import Construction, Predicate
from .errors import BudgetExceeded, DegenerateSample, IrrationalStep
from .prover import Certificate, Difficulty, Mode, prove_and_score

KINDS = ("collinear", "equal_length", "perpendicular", "parallel")
MAX_REDRAWS = 10
COORD_BOUND = 1000


class Status(str, Enum):
    UNTESTED = "untested"
    PLAUSIBLE = "numerically_plausible"
    PROVED = "proved"
    REFUTED = "refuted"
    UNPROVED = "unproved"


@dataclass
class CandidateStatement:
    predicate: Predicate
    status: Status = Status.UNTESTED
    certificate: Optional[Certificate] = None
    difficulty: Optional[Difficulty] = None
    witness: Optional[dict] = None
    value: Optional[Fraction] = None
    note: str = ""

    @property
    def text(self) -> str:
        return str(self.predicate)

    def to_json(self) -> dict:
        doc = {"statement": self.text, "status": self.status.value}
        if self.certificate is not None:
            doc["mode"] = self.certificate.mode.value
            doc["nondegeneracy"] = [
                g.render(self.certificate.order) for g in self.certificate.nondegeneracy
            ]
        if self.difficulty is not None:
            doc["difficulty"] = self.difficulty.to_json()
        if self.witness is not None:
            doc["witness"] = {v: str(c) for v, c in self.witness.items()}
            doc["value"] = str(self.value)
        if self.note:
            doc["note"] = self.note
        return doc


def enumerate_candidates(c: Construction, kinds) -> list:
    """All symmetry-distinct candidates of the requested kinds.

    Triples and pairs are unordered, so each statement appears once; a
    segment compared with itself is never produced.
    """
    kinds = list(dict.fromkeys(kinds))
    if not kinds:
        raise ValueError("at least one statement kind is required")
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        raise ValueError(f"unsupported statement kinds: {bad}")
    points, lines = c.points, c.lines
    out = []
    for kind in kinds:
        if kind == "collinear":
            out += [Predicate(kind, t) for t in itertools.combinations(points, 3)]
        elif kind == "equal_length":
            segments = list(itertools.combinations(points, 2))
            out += [Predicate(kind, s + t) for s, t in itertools.combinations(segments, 2)]
        else:
            out += [Predicate(kind, pair) for pair in itertools.combinations(lines, 2)]
    return [CandidateStatement(p) for p in out]


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-COORD_BOUND, COORD_BOUND), rng.randint(1, COORD_BOUND))


def realize(c: Construction, sys: PolySystem, rng: random.Random) -> dict:
    """Exact coordinates of every variable for one random placement.

    Free points get random rationals (specialized ones keep their values);
    dependent coordinates follow the construction steps.  Raises
    :class:`DegenerateSample` when a step is undefined for this placement.
    """
    ring_vals = dict(sys.specialization)
    pts, lines = {}, {}

    def setp(name, xy):
        pts[name] = xy
        vx, vy = sys.coords[name]
        ring_vals[vx], ring_vals[vy] = xy

    for s in c.steps:
        if s.kind == "point":
            vx, vy = sys.coords[s.name]
            setp(
                s.name,
                (
                    ring_vals.get(vx, _random_rational(rng)),
                    ring_vals.get(vy, _random_rational(rng)),
                ),
            )
        elif s.kind == "midpoint":
            (ax, ay), (bx, by) = pts[s.args[0]], pts[s.args[1]]
            setp(s.name, ((ax + bx) / 2, (ay + by) / 2))
        elif s.kind == "line":
            a, b = pts[s.args[0]], pts[s.args[1]]
            d = sub(b, a)
            if d == (0, 0):
                raise DegenerateSample(f"{s.name}: coincident points")
            lines[s.name] = (a, d)
        elif s.kind in ("perpendicular", "parallel"):
            base = pts[s.args[0]]
            d = lines[s.args[1]][1]
            if s.kind == "perpendicular":
                d = rot90(d)
            if sys.encoding == "translation":
                setp(f"{s.name}'", (base[0] + d[0], base[1] + d[1]))
            lines[s.name] = (base, d)
        elif s.kind == "intersect":
            (p, d), (q, e) = lines[s.args[0]], lines[s.args[1]]
            den = cross(d, e)
            if den == 0:
                raise DegenerateSample(f"{s.name}: lines {s.args[0]} and {s.args[1]} are parallel")
            lam = cross(sub(q, p), e) / den
            setp(s.name, (p[0] + lam * d[0], p[1] + lam * d[1]))
        elif s.kind == "on_line":
            p, d = lines[s.args[0]]
            lam = _random_rational(rng)
            setp(s.name, (p[0] + lam * d[0], p[1] + lam * d[1]))
        else:
            raise IrrationalStep(f"{s.kind} has no rational construction")
    return ring_vals


def sample_witness(c: Construction, sys: PolySystem, rng: random.Random) -> dict:
    """A realization satisfying every hypothesis, redrawn on degeneracy."""
    last = None
    for _ in range(MAX_REDRAWS):
        try:
            point = realize(c, sys, rng)
        except DegenerateSample as exc:
            last = exc
            continue
        for h in sys.hypotheses:
            if h.evaluate(point):
                raise AssertionError("realized point violates a hypothesis")
        return point
    raise DegenerateSample(f"no nondegenerate sample in {MAX_REDRAWS} draws: {last}")


def numeric_prefilter(
    c: Construction,
    cand: CandidateStatement,
    trials: int,
    rng: Optional[random.Random] = None,
    sys: Optional[PolySystem] = None,
) -> CandidateStatement:
    """Refute ``cand`` on a random exact witness or mark it plausible."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = rng or random.Random(0)
    sys = sys or translate(c)
    poly = sys.predicate_polynomial(cand.predicate)
    for _ in range(trials):
        point = sample_witness(c, sys, rng)
        value = poly.evaluate(point)
        if value:
            cand.status = Status.REFUTED
            cand.witness = {v: point[v] for v in sys.ring.names if v in point}
            cand.value = value
            return cand
    cand.status = Status.PLAUSIBLE
    return cand


@dataclass
class DiscoveryReport:
    construction: str
    seed: int
    kinds: list
    ranked: list = field(default_factory=list)
    unproved: list = field(default_factory=list)
    refuted: list = field(default_factory=list)
    untested: list = field(default_factory=list)

    @property
    def candidates(self) -> list:
        return self.ranked + self.unproved + self.refuted + self.untested

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "seed": self.seed,
            "kinds": list(self.kinds),
            "ranked": [
                dict(rank=i + 1, **cand.to_json()) for i, cand in enumerate(self.ranked)
            ],
            "unproved": [cand.to_json() for cand in self.unproved],
            "refuted": [cand.to_json() for cand in self.refuted],
            "untested": [cand.to_json() for cand in self.untested],
        }

    def to_table(self) -> str:
        rows = [("rank", "statement", "mode", "difficulty", "nondegeneracy")]
        for i, cand in enumerate(self.ranked):
            cert = cand.certificate
            ndg = ", ".join(f"{g.render(cert.order)} != 0" for g in cert.nondegeneracy)
            rows.append((str(i + 1), cand.text, cert.mode.phrase, str(cand.difficulty), ndg or "-"))
        for cand in self.unproved:
            rows.append(("-", cand.text, "not proved", "-", "-"))
        widths = [max(len(r[k]) for r in rows) for k in range(5)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.append(
            f"{len(self.ranked)} proved, {len(self.unproved)} unproved, "
            f"{len(self.refuted)} refuted, {len(self.untested)} untested (seed {self.seed})"
        )
        return "\n".join(lines) + "\n"


_MODE_RANK = {
    Mode.FORMALLY_TRUE: 0,
    Mode.GEOMETRICALLY_TRUE: 1,
    Mode.GENERALLY_TRUE: 2,
}


def rank_key(cand: CandidateStatement):
    return (-cand.difficulty.value, _MODE_RANK[cand.certificate.mode], cand.text)


def _process(args):
    index, c, sys, cand, trials, seed, opts = args
    rng = random.Random(f"{seed}:{index}")
    try:
        numeric_prefilter(c, cand, trials, rng, sys)
    except DegenerateSample as exc:
        cand.note = str(exc)
        return cand
    if cand.status is not Status.PLAUSIBLE:
        return cand
    try:
        cert, diff = prove_and_score(sys.with_thesis(cand.predicate), **opts)
    except BudgetExceeded as exc:
        cand.status = Status.UNTESTED
        cand.note = str(exc)
        return cand
    cand.certificate = cert
    if cert.mode is Mode.UNPROVED:
        cand.status = Status.UNPROVED
    else:
        cand.status = Status.PROVED
        cand.difficulty = diff
    return cand


def discover(
    c: Construction,
    kinds=KINDS[:2],
    trials: int = 5,
    order=None,
    seed: int = 0,
    jobs: int = 1,
    encoding: Optional[str] = None,
    specialization: Optional[dict] = None,
    minimize: bool = True,
    budget: Optional[int] = None,
    budget_degree: int = 3,
) -> DiscoveryReport:
    """Enumerate, prefilter and prove candidates, then rank by difficulty.

    Proved statements are sorted by difficulty (highest first, trivial
    last), then by mode and statement text.
    """
    from .algebraizer import specialize

    sys = translate(c, encoding)
    if specialization:
        sys = specialize(sys, specialization)
    cands = enumerate_candidates(c, kinds)
    opts = dict(order=order, budget=budget, minimize=minimize, budget_degree=budget_degree)
    work = [(i, c, sys, cand, trials, seed, opts) for i, cand in enumerate(cands)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(_process, work))
    else:
        done = [_process(w) for w in work]
    report = DiscoveryReport(c.name, seed, list(kinds))
    for cand in done:
        if cand.status is Status.PROVED:
            report.ranked.append(cand)
        elif cand.status is Status.UNPROVED:
            report.unproved.append(cand)
        elif cand.status is Status.REFUTED:
            report.refuted.append(cand)
        else:
            report.untested.append(cand)
    report.ranked.sort(key=rank_key)
    return report
