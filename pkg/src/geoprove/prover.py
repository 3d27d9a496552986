"""Decide how a polynomial system is true and score the proof.

:func:`prove` walks a fixed ladder of increasingly weak claims:

1. the thesis vanishes once explicit coordinates are substituted (trivial);
2. the thesis is in the hypothesis ideal (formally true);
3. 1 is in the ideal of the hypotheses and ``thesis*t - 1`` (geometrically true);
4. an elimination onto the free variables yields a condition ``g != 0`` under
   which 1 is in the ideal of the hypotheses, ``thesis*t - 1`` and
   ``g*s - 1`` (generally true);

and otherwise reports the statement as unproved.  The difficulty of a proof
is the largest total degree among its cofactors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Union

from .algebraizer import PolySystem
from .errors import BudgetExceeded, InvalidSystem, UnprovedCertificate, UnverifiedCertificate
from .groebner import certificate_identity, eliminate, ideal_membership
from .linsolve import solve_sparse
from .polycore import MonomialOrder, Polynomial, Ring, mono_mul

DEFAULT_MAX_UNKNOWNS = 200_000


class Mode(str, Enum):
    FORMALLY_TRUE = "formally_true"
    GEOMETRICALLY_TRUE = "geometrically_true"
    GENERALLY_TRUE = "generally_true"
    UNPROVED = "unproved"

    @property
    def phrase(self) -> str:
        return {
            Mode.FORMALLY_TRUE: "formally true",
            Mode.GEOMETRICALLY_TRUE: "geometrically true",
            Mode.GENERALLY_TRUE: "generally true",
            Mode.UNPROVED: "not proved",
        }[self]


@dataclass
class Certificate:
    """``target == sum(cofactors[i] * generators[i])`` unless unproved.

    ``target`` is the thesis for formally true statements and the constant 1
    otherwise.  ``auxiliary`` lists the positions of Rabinowitsch generators
    (``thesis*t - 1`` and ``g*s - 1``) inside ``generators``.
    """

    mode: Mode
    target: Polynomial
    generators: list
    cofactors: list
    labels: list
    order: MonomialOrder
    thesis: Polynomial
    nondegeneracy: list = field(default_factory=list)
    auxiliary: list = field(default_factory=list)
    trivial: bool = False
    minimized: bool = False

    @property
    def ring(self) -> Ring:
        return self.target.ring

    def check(self) -> bool:
        if self.mode is Mode.UNPROVED:
            return True
        if bool(self.nondegeneracy) != (self.mode is Mode.GENERALLY_TRUE):
            return False
        return certificate_identity(self.target, self.generators, self.cofactors)

    def verify(self) -> "Certificate":
        if not self.check():
            raise UnverifiedCertificate(f"{self.mode.value} certificate fails its identity check")
        return self

    def degree(self, include_auxiliary: bool = True) -> int:
        degs = [
            c.total_degree()
            for i, c in enumerate(self.cofactors)
            if include_auxiliary or i not in self.auxiliary
        ]
        return max(degs, default=-1)

    def to_json(self, difficulty: Optional["Difficulty"] = None) -> dict:
        order = self.order
        doc = {
            "mode": self.mode.value,
            "order": order.name,
            "variables": list(self.ring.names),
            "target": self.target.render(order),
            "generators": [
                {"label": lab, "polynomial": g.render(order)}
                for lab, g in zip(self.labels, self.generators)
            ],
            "cofactors": [c.render(order) for c in self.cofactors],
            "nondegeneracy": [g.render(order) for g in self.nondegeneracy],
            "auxiliary": list(self.auxiliary),
        }
        if difficulty is not None:
            doc["difficulty"] = difficulty.to_json()
        return doc


@dataclass(frozen=True, order=True)
class Difficulty:
    """Maximum cofactor degree; ``value == -1`` is the trivial label."""

    value: int
    minimized: bool = field(default=False, compare=False)

    @property
    def trivial(self) -> bool:
        return self.value < 0

    @property
    def upper_bound(self) -> bool:
        return not self.trivial and not self.minimized

    def __str__(self):
        return "trivial" if self.trivial else str(self.value)

    def to_json(self) -> dict:
        return {
            "value": "trivial" if self.trivial else self.value,
            "minimized": self.minimized or self.trivial,
            "upper_bound": self.upper_bound,
        }


TRIVIAL = Difficulty(-1, minimized=True)


def resolve_order(ring: Ring, order: Union[None, str, MonomialOrder]) -> MonomialOrder:
    if order is None:
        return ring.order("grevlex")
    if isinstance(order, str):
        return ring.order(order)
    if order.nvars != len(ring):
        raise InvalidSystem("monomial order does not match the system's ring")
    return order


def _check_system(sys: PolySystem):
    for h in sys.hypotheses + [sys.thesis]:
        if h.ring != sys.ring:
            raise InvalidSystem("hypotheses and thesis must share the system ring")
    if set(sys.free) & set(sys.dependent):
        raise InvalidSystem("a variable cannot be both free and dependent")


def _canonical_pick(polys: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    return min(polys, key=lambda g: (g.total_degree(), g.render(order)))


def prove(
    sys: PolySystem,
    order: Union[None, str, MonomialOrder] = None,
    budget: Optional[int] = None,
    route: str = "ladder",
) -> Certificate:
    """Return a verified certificate for ``sys`` (possibly ``UNPROVED``).

    ``route="reductio"`` skips the direct membership test so the proof is
    always given as a combination equal to 1 involving the negated thesis.
    """
    if route not in ("ladder", "reductio"):
        raise ValueError(f"unknown route {route!r}")
    _check_system(sys)
    ring = sys.ring
    order = resolve_order(ring, order)
    hyps = [h for h in sys.hypotheses if h]
    labels = [lab for h, lab in zip(sys.hypotheses, sys.labels) if h]
    thesis = sys.thesis

    if sys.normalized_thesis().is_zero():
        return Certificate(
            Mode.FORMALLY_TRUE, ring.zero(), [], [], [], order, thesis, trivial=True
        ).verify()

    if route == "ladder" and hyps:
        cert = ideal_membership(thesis, hyps, order, budget)
        if cert is not None:
            return Certificate(
                Mode.FORMALLY_TRUE, thesis, hyps, cert.cofactors, labels, order, thesis
            ).verify()

    # Rabinowitsch variables t < s, both above the geometry variables
    t_name = ring.fresh_name("t")
    big = ring.extend(t_name, Ring(ring.names + (t_name,)).fresh_name("s"))
    n = len(ring)
    t, s = big.var(n), big.var(n + 1)
    big_order = order.with_leading(n + 1, n)
    lifted = [h.lift(big) for h in hyps]
    negation = thesis.lift(big) * t - 1
    neg_label = "negated thesis"

    gens = lifted + [negation]
    cert = ideal_membership(big.one(), gens, big_order, budget)
    if cert is not None:
        return Certificate(
            Mode.GEOMETRICALLY_TRUE,
            big.one(),
            gens,
            cert.cofactors,
            labels + [neg_label],
            big_order,
            thesis.lift(big),
            auxiliary=[len(gens) - 1],
        ).verify()

    keep = [big.names[ring.index(v)] for v in sys.free]
    kind = "lex" if order.kind == "lex" else "block"
    elim = eliminate(gens, keep, kind=kind, budget=budget)
    elim = [g for g in elim if g]
    if elim and not any(g.is_constant() for g in elim):
        g = _canonical_pick(elim, big_order)
        gens = gens + [g * s - 1]
        cert = ideal_membership(big.one(), gens, big_order, budget)
        if cert is not None:
            return Certificate(
                Mode.GENERALLY_TRUE,
                big.one(),
                gens,
                cert.cofactors,
                labels + [neg_label, "nondegeneracy"],
                big_order,
                thesis.lift(big),
                nondegeneracy=[g],
                auxiliary=[len(gens) - 2, len(gens) - 1],
            ).verify()

    return Certificate(Mode.UNPROVED, ring.zero(), [], [], [], order, thesis)


def difficulty(cert: Certificate, include_auxiliary: bool = True) -> Difficulty:
    """Score a proved certificate; trivial when the thesis vanishes identically."""
    if cert.mode is Mode.UNPROVED:
        raise UnprovedCertificate("an unproved statement has no difficulty")
    if cert.trivial:
        return TRIVIAL
    return Difficulty(cert.degree(include_auxiliary), minimized=cert.minimized)


def _monomials(nvars: int, variables: Sequence[int], degree: int) -> list:
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(variables, d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


def bounded_degree_certificate(
    target: Polynomial,
    generators: Sequence[Polynomial],
    degree: int,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
) -> Optional[list]:
    """Cofactors of total degree at most ``degree`` with ``sum c_i g_i == target``.

    Solves the coefficient-matching linear system exactly; ``None`` means no
    such cofactors exist.  Only variables occurring in the target or the
    generators are used, which loses nothing: setting any other variable to
    zero in a solution keeps the identity and cannot raise degrees.
    """
    ring = target.ring
    live = sorted(set().union(target.variables(), *(g.variables() for g in generators)))
    monos = _monomials(len(ring), live, degree)
    if len(monos) * len(generators) > max_unknowns:
        raise BudgetExceeded(
            f"degree-{degree} search needs {len(monos) * len(generators)} unknowns"
        )
    columns, keys = [], []
    for i, g in enumerate(generators):
        if not g:
            continue
        for m in monos:
            columns.append({mono_mul(gm, m): c for gm, c in g.terms.items()})
            keys.append((i, m))
    x = solve_sparse(columns, target.terms)
    if x is None:
        return None
    acc = [dict() for _ in generators]
    for (i, m), v in zip(keys, x):
        if v:
            acc[i][m] = v
    cofactors = [Polynomial(ring, a) for a in acc]
    if not certificate_identity(target, list(generators), cofactors):
        raise UnverifiedCertificate("linear solve produced an invalid certificate")
    return cofactors


def minimize_difficulty(
    sys: PolySystem,
    cert: Certificate,
    budget_degree: int,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
) -> Certificate:
    """Smallest-degree certificate over the same generators, up to ``budget_degree``.

    Degrees are tried upward from 0; if none up to
    ``min(budget_degree, current degree)`` works the input comes back unchanged.
    """
    if cert.mode is Mode.UNPROVED:
        raise UnprovedCertificate("cannot minimize an unproved certificate")
    if cert.trivial or cert.minimized:
        return cert
    current = cert.degree()
    for d in range(0, min(budget_degree, current) + 1):
        cofactors = bounded_degree_certificate(cert.target, cert.generators, d, max_unknowns)
        if cofactors is not None:
            return replace(cert, cofactors=cofactors, minimized=True).verify()
    return cert


def prove_and_score(
    sys: PolySystem,
    order=None,
    budget: Optional[int] = None,
    minimize: bool = False,
    budget_degree: int = 3,
    route: str = "ladder",
    include_auxiliary: bool = True,
) -> tuple:
    """Convenience pipeline returning ``(certificate, difficulty or None)``."""
    cert = prove(sys, order, budget, route)
    if cert.mode is Mode.UNPROVED:
        return cert, None
    if minimize:
        cert = minimize_difficulty(sys, cert, budget_degree)
    return cert, difficulty(cert, include_auxiliary)
