"""Division, extended Buchberger, elimination and radical membership.

Every basis element produced here remembers how it was obtained from the
input generators, so any ideal membership found through the basis can be
turned into explicit cofactors over the *original* inputs.  Internally a
polynomial is a plain ``{monomial: Fraction}`` dict; the public functions
take and return :class:`~geoprove.polycore.Polynomial`.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BudgetExceeded,
    EmptyIdeal,
    RingMismatch,
    UnverifiedCertificate,
    ZeroDivisorInList,
    ZeroPolynomial,
)
from .polycore import (
    MonomialOrder,
    Polynomial,
    Ring,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
)

DEFAULT_SPAIR_BUDGET = 50_000


def default_budget() -> int:
    """S-pair budget, overridable through ``GEOPROVE_BUDGET_SPAIRS``."""
    raw = os.environ.get("GEOPROVE_BUDGET_SPAIRS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"GEOPROVE_BUDGET_SPAIRS must be an integer, got {raw!r}")
        if value <= 0:
            raise ValueError("GEOPROVE_BUDGET_SPAIRS must be positive")
        return value
    return DEFAULT_SPAIR_BUDGET


@dataclass(frozen=True)
class DivisionResult:
    quotients: list
    remainder: Polynomial

    def check(self, dividend: Polynomial, divisors: Sequence[Polynomial]) -> bool:
        total = self.remainder
        for q, g in zip(self.quotients, divisors):
            total = total + q * g
        return total == dividend


@dataclass(frozen=True)
class ExtendedBasis:
    """A reduced Groebner basis plus the matrix expressing it in the inputs.

    ``generators[j] == sum(transform[j][i] * inputs[i] for i)`` holds exactly.
    """

    generators: list
    transform: list
    order: MonomialOrder
    inputs: list
    spairs: int = 0

    def check(self) -> bool:
        for g, row in zip(self.generators, self.transform):
            total = g.ring.zero()
            for c, h in zip(row, self.inputs):
                if c:
                    total = total + c * h
            if total != g:
                return False
        return True

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()


@dataclass
class MembershipCertificate:
    """``member == sum(cofactors[i] * generators[i])``, verified on creation.

    ``rabinowitsch`` is the index of the ``f*t - 1`` generator when the
    certificate came from a radical membership test.
    """

    member: Polynomial
    generators: list
    cofactors: list
    rabinowitsch: Optional[int] = None
    valid: bool = field(init=False, default=False)

    def __post_init__(self):
        self.valid = self.check()
        if not self.valid:
            raise UnverifiedCertificate("cofactor identity does not hold")

    def check(self) -> bool:
        return certificate_identity(self.member, self.generators, self.cofactors)

    def degree(self) -> int:
        return max((c.total_degree() for c in self.cofactors), default=-1)


def certificate_identity(member, generators, cofactors) -> bool:
    if len(generators) != len(cofactors):
        return False
    total = member.ring.zero()
    for c, g in zip(cofactors, generators):
        if c:
            total = total + c * g
    return total == member


# -- dict-level helpers -------------------------------------------------------


def _sub_scaled(p: dict, g: dict, mono, coeff) -> None:
    """In place: ``p -= coeff * mono * g``."""
    for m, c in g.items():
        mm = tuple(x + y for x, y in zip(m, mono))
        v = p.get(mm, 0) - coeff * c
        if v:
            p[mm] = v
        else:
            p.pop(mm, None)


def _reduce(f: dict, basis: list, lms: list, lcs: list, key) -> tuple:
    """Multivariate division of ``f`` by ``basis``.

    Returns ``(quotients, remainder)`` where quotients maps a basis position
    to a term dict.  Divisors are tried in list order at every step.
    """
    p = dict(f)
    rem = {}
    quots = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for j, lm in enumerate(lms):
            if mono_divides(lm, m):
                t = mono_div(m, lm)
                coeff = c / lcs[j]
                q = quots.setdefault(j, {})
                q[t] = q.get(t, 0) + coeff
                _sub_scaled(p, basis[j], t, coeff)
                break
        else:
            rem[m] = c
            del p[m]
    return quots, rem


def _same_ring(polys: Sequence[Polynomial]) -> Ring:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatch("all polynomials must share one ring")
    return ring


def _check_order(ring: Ring, order: MonomialOrder):
    if order.nvars != len(ring):
        raise RingMismatch(f"order over {order.nvars} variables used with {ring!r}")


# -- public operations --------------------------------------------------------


def divide(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder) -> DivisionResult:
    """Divide ``f`` by ``divisors``; first divisible leading term wins."""
    if not divisors:
        raise ValueError("divisor list must be nonempty")
    ring = _same_ring([f, *divisors])
    _check_order(ring, order)
    if any(g.is_zero() for g in divisors):
        raise ZeroDivisorInList("divisor list contains the zero polynomial")
    lts = [g.leading_term(order) for g in divisors]
    quots, rem = _reduce(
        f.terms, [g.terms for g in divisors], [m for m, _ in lts], [c for _, c in lts], order.key
    )
    quotients = [
        Polynomial._raw(ring, {m: c for m, c in quots.get(j, {}).items() if c})
        for j in range(len(divisors))
    ]
    return DivisionResult(quotients, Polynomial._raw(ring, rem))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """``lcm/lt(f) * f - lcm/lt(g) * g`` with leading terms normalized to 1."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("S-polynomial of the zero polynomial")
    _same_ring([f, g])
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_div(lcm, mf), 1 / cf) - g.mul_term(mono_div(lcm, mg), 1 / cg)


class _Engine:
    """State of one extended Buchberger run.

    Each node is either an input (ids ``0..s-1``) or a derived element whose
    recipe is a list of ``(child_node, cofactor_dict)`` pairs.
    """

    def __init__(self, inputs, order, budget):
        self.ring = inputs[0].ring
        self.order = order
        self.key = order.key
        self.budget = budget
        self.s = len(inputs)
        self.recipes = {}
        self.next_node = self.s
        self.unit = self.ring.unit
        # basis entries
        self.polys, self.lms, self.lcs, self.nodes = [], [], [], []
        self.spairs = 0

    def new_node(self, recipe):
        node = self.next_node
        self.next_node += 1
        self.recipes[node] = recipe
        return node

    def add(self, poly: dict, node: int):
        m = max(poly, key=self.key)
        c = poly[m]
        if c != 1:
            inv = 1 / c
            poly = {mm: v * inv for mm, v in poly.items()}
            node = self.new_node([(node, {self.unit: inv})])
        self.polys.append(poly)
        self.lms.append(m)
        self.lcs.append(Fraction(1))
        self.nodes.append(node)
        return len(self.polys) - 1

    def reduce_tracked(self, f: dict, positions):
        basis = [self.polys[k] for k in positions]
        quots, rem = _reduce(
            f, basis, [self.lms[k] for k in positions], [self.lcs[k] for k in positions], self.key
        )
        terms = [(self.nodes[positions[j]], {m: -c for m, c in q.items() if c}) for j, q in quots.items()]
        return [t for t in terms if t[1]], rem

    def run(self):
        key = self.key
        pending = []
        live = set()

        def push(i, j):
            lcm = mono_lcm(self.lms[i], self.lms[j])
            heapq.heappush(pending, (key(lcm), i, j, lcm))
            live.add((i, j))

        for i in range(len(self.polys)):
            for j in range(i):
                push(j, i)

        while pending:
            _, i, j, lcm = heapq.heappop(pending)
            live.discard((i, j))
            self.spairs += 1
            if self.spairs > self.budget:
                raise BudgetExceeded(f"S-pair budget of {self.budget} exhausted")
            if mono_coprime(self.lms[i], self.lms[j]):
                continue
            if self._chain_skip(i, j, lcm, live):
                continue
            ti, tj = mono_div(lcm, self.lms[i]), mono_div(lcm, self.lms[j])
            s = {}
            _sub_scaled(s, self.polys[i], ti, -1)
            _sub_scaled(s, self.polys[j], tj, 1)
            if not s:
                continue
            extra, rem = self.reduce_tracked(s, list(range(len(self.polys))))
            if not rem:
                continue
            node = self.new_node(
                [(self.nodes[i], {ti: Fraction(1)}), (self.nodes[j], {tj: Fraction(-1)})] + extra
            )
            n = self.add(rem, node)
            for k in range(n):
                push(k, n)
            if self.lms[n] == self.unit:
                return [n]
        return None

    def _chain_skip(self, i, j, lcm, live):
        for k in range(len(self.polys)):
            if k in (i, j) or not mono_divides(self.lms[k], lcm):
                continue
            if (min(i, k), max(i, k)) in live or (min(j, k), max(j, k)) in live:
                continue
            return True
        return False

    def finish(self, unit_hit):
        key = self.key
        if unit_hit is not None:
            keep = unit_hit
        else:
            order_idx = sorted(range(len(self.polys)), key=lambda k: (key(self.lms[k]), k))
            keep = []
            for k in order_idx:
                if not any(mono_divides(self.lms[h], self.lms[k]) for h in keep):
                    keep.append(k)
        finals = []
        for k in keep:
            others = [h for h in keep if h != k]
            if others:
                extra, rem = self.reduce_tracked(self.polys[k], others)
            else:
                extra, rem = [], self.polys[k]
            node = self.nodes[k]
            if extra:
                node = self.new_node([(node, {self.unit: Fraction(1)})] + extra)
            poly = Polynomial._raw(self.ring, rem)
            normal = poly.normalize(self.order)
            factor = normal.leading_coefficient(self.order) / poly.leading_coefficient(self.order)
            if factor != 1:
                node = self.new_node([(node, {self.unit: factor})])
            finals.append((normal, node))
        finals.sort(key=lambda pn: key(pn[0].leading_monomial(self.order)))
        return finals

    def expand(self, targets):
        """Rows over the inputs for every node in ``targets``."""
        ring = self.ring
        needed, stack = set(), list(targets)
        while stack:
            n = stack.pop()
            if n in needed:
                continue
            needed.add(n)
            if n >= self.s:
                stack.extend(child for child, _ in self.recipes[n])
        rows = {}
        zero = ring.zero()
        for n in sorted(needed):
            if n < self.s:
                row = [zero] * self.s
                row[n] = ring.one()
            else:
                acc = [dict() for _ in range(self.s)]
                for child, cof in self.recipes[n]:
                    cpoly = Polynomial._raw(ring, cof)
                    for i, entry in enumerate(rows[child]):
                        if entry:
                            for m, c in (cpoly * entry).terms.items():
                                v = acc[i].get(m, 0) + c
                                if v:
                                    acc[i][m] = v
                                else:
                                    acc[i].pop(m, None)
                row = [Polynomial._raw(ring, a) for a in acc]
            rows[n] = row
        return rows


def buchberger_extended(
    inputs: Sequence[Polynomial], order: MonomialOrder, budget: Optional[int] = None
) -> ExtendedBasis:
    """Reduced Groebner basis of ``inputs`` with its transformation matrix.

    Pairs are processed by the normal strategy (smallest lcm first) with the
    coprime and chain criteria.  Raises :class:`BudgetExceeded` when more than
    ``budget`` S-pairs are examined.
    """
    inputs = list(inputs)
    if not inputs:
        raise EmptyIdeal("no generators given")
    ring = _same_ring(inputs)
    _check_order(ring, order)
    if all(p.is_zero() for p in inputs):
        raise EmptyIdeal("all generators are zero")
    engine = _Engine(inputs, order, default_budget() if budget is None else budget)
    unit_hit = None
    for i, p in enumerate(inputs):
        if p.is_zero():
            continue
        k = engine.add(dict(p.terms), i)
        if engine.lms[k] == engine.unit:
            unit_hit = [k]
            break
    if unit_hit is None:
        unit_hit = engine.run()
    finals = engine.finish(unit_hit)
    rows = engine.expand([node for _, node in finals])
    basis = ExtendedBasis(
        generators=[g for g, _ in finals],
        transform=[rows[node] for _, node in finals],
        order=order,
        inputs=inputs,
        spairs=engine.spairs,
    )
    return basis


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Check that every S-polynomial reduces to zero modulo ``basis``."""
    basis = [g for g in basis if g]
    for j in range(len(basis)):
        for k in range(j + 1, len(basis)):
            s = s_polynomial(basis[j], basis[k], order)
            if s and divide(s, basis, order).remainder:
                return False
    return True


def ideal_membership(
    f: Polynomial,
    inputs: Sequence[Polynomial],
    order: MonomialOrder,
    budget: Optional[int] = None,
    basis: Optional[ExtendedBasis] = None,
) -> Optional[MembershipCertificate]:
    """Cofactors expressing ``f`` over ``inputs``, or ``None`` if ``f`` is not in the ideal."""
    inputs = list(inputs)
    if not inputs:
        raise ValueError("generator list must be nonempty")
    _same_ring([f, *inputs])
    if f.is_zero():
        return MembershipCertificate(f, inputs, [f.ring.zero()] * len(inputs))
    if all(p.is_zero() for p in inputs):
        return None
    if basis is None:
        basis = buchberger_extended(inputs, order, budget)
    division = divide(f, basis.generators, basis.order)
    if division.remainder:
        return None
    ring = f.ring
    cofactors = []
    for i in range(len(inputs)):
        total = ring.zero()
        for q, row in zip(division.quotients, basis.transform):
            if q and row[i]:
                total = total + q * row[i]
        cofactors.append(total)
    return MembershipCertificate(f, inputs, cofactors)


def eliminate(
    inputs: Sequence[Polynomial],
    keep,
    kind: str = "block",
    budget: Optional[int] = None,
) -> list:
    """Generators of the ideal of ``inputs`` intersected with ``k[keep]``.

    ``kind`` is ``"block"`` (grevlex on each block) or ``"lex"``.  The
    eliminated variables keep their declaration order and sit above the kept
    ones.  An empty result means the elimination ideal is zero.
    """
    inputs = list(inputs)
    if not inputs:
        return []
    ring = _same_ring(inputs)
    keep_idx = sorted({ring.index(v) for v in keep})
    gone = [i for i in range(len(ring)) if i not in set(keep_idx)]
    if kind in ("lex", "plex"):
        order = MonomialOrder("lex", gone + keep_idx)
    elif kind == "block":
        order = MonomialOrder("block", gone + keep_idx, block=len(gone))
    else:
        raise ValueError(f"unknown elimination order {kind!r}")
    if all(p.is_zero() for p in inputs):
        return []
    basis = buchberger_extended(inputs, order, budget)
    gone_set = set(gone)
    return [g for g in basis.generators if not (g.variables() & gone_set)]


def radical_membership(
    f: Polynomial,
    inputs: Sequence[Polynomial],
    order: MonomialOrder,
    budget: Optional[int] = None,
    aux_name: str = "t",
) -> Optional[MembershipCertificate]:
    """Certificate that ``1`` lies in ``<inputs, f*t - 1>``, or ``None``.

    The fresh variable ``t`` is appended to the ring and placed above every
    other variable in the order.  The returned certificate lives in the
    extended ring and its ``rabinowitsch`` field points at ``f*t - 1``.
    """
    if f.is_zero():
        raise ZeroPolynomial("radical membership of the zero polynomial")
    inputs = list(inputs)
    ring = _same_ring([f, *inputs])
    _check_order(ring, order)
    big = ring.extend(ring.fresh_name(aux_name))
    t = big.var(len(ring))
    big_order = order.with_leading(len(ring))
    gens = [h.lift(big) for h in inputs] + [f.lift(big) * t - 1]
    cert = ideal_membership(big.one(), gens, big_order, budget)
    if cert is None:
        return None
    cert.rabinowitsch = len(gens) - 1
    return cert
