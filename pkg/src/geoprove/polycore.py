"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Ring` fixes the variable universe of one problem instance.  Monomials
are exponent tuples with one slot per ring variable, and a
:class:`Polynomial` maps monomials to nonzero :class:`~fractions.Fraction`
coefficients.  Term order only matters for output and for Groebner
computations, so it lives in a separate :class:`MonomialOrder` object.

    >>> R = Ring(["x", "y"])
    >>> x, y = R.gens()
    >>> print((x + y) ** 2)
    x^2 + 2*x*y + y^2
"""

from __future__ import annotations

import math
from fractions import Fraction
from operator import itemgetter
from typing import Iterable, Mapping, Union

from .errors import MissingAssignment, RingMismatch, ZeroPolynomial

Monomial = tuple  # exponent tuple, one entry per ring variable
Scalar = Union[int, Fraction]

ORDER_KINDS = ("lex", "grevlex", "block")


class Ring:
    """An ordered, immutable universe of named variables."""

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if any(not n for n in names):
            raise ValueError("variable names must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return self is other or (isinstance(other, Ring) and self.names == other.names)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({list(self.names)!r})"

    def index(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise IndexError(f"variable index {var} out of range")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r}") from None

    def __contains__(self, name):
        return name in self._index

    @property
    def unit(self) -> Monomial:
        return (0,) * len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial._raw(self, {self.unit: c} if c else {})

    def var(self, name: Union[str, int]) -> "Polynomial":
        i = self.index(name)
        exps = [0] * len(self.names)
        exps[i] = 1
        return Polynomial._raw(self, {tuple(exps): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(len(self.names))]

    def monomial(self, exponents: Mapping[Union[str, int], int]) -> Monomial:
        exps = [0] * len(self.names)
        for v, e in exponents.items():
            if e < 0:
                raise ValueError("exponents must be non-negative")
            exps[self.index(v)] += e
        return tuple(exps)

    def extend(self, *names: str) -> "Ring":
        """Return a ring with ``names`` appended after the current variables."""
        return Ring(self.names + tuple(names))

    def fresh_name(self, base: str) -> str:
        name, k = base, 0
        while name in self._index:
            k += 1
            name = f"{base}{k}"
        return name

    def order(self, kind: str = "grevlex", priority=None, block: int = 0) -> "MonomialOrder":
        """Build a monomial order; ``priority`` lists variables from largest down."""
        if priority is None:
            priority = range(len(self.names))
        return MonomialOrder(kind, tuple(self.index(v) for v in priority), block)


class MonomialOrder:
    """A term order given by a kind and a variable priority.

    ``priority[0]`` is the most significant variable.  For ``block`` orders the
    first ``block`` variables of the priority form a grevlex block that
    dominates a second grevlex block made of the remaining variables.
    """

    __slots__ = ("kind", "priority", "block", "_cache", "key")

    def __init__(self, kind: str, priority: tuple, block: int = 0):
        if kind == "plex":
            kind = "lex"
        elif kind == "tdeg":
            kind = "grevlex"
        if kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        priority = tuple(priority)
        if sorted(priority) != list(range(len(priority))):
            raise ValueError("priority must be a permutation of the variable indices")
        if kind == "block" and not 0 <= block <= len(priority):
            raise ValueError("block size out of range")
        self.kind = kind
        self.priority = priority
        self.block = block if kind == "block" else 0
        self._cache = {}
        self.key = self._build_key()

    def _build_key(self):
        raw = _raw_key(self.kind, self.priority, self.block)
        cache = self._cache

        def key(m):
            k = cache.get(m)
            if k is None:
                k = cache[m] = raw(m)
            return k

        return key

    def __reduce__(self):
        return (MonomialOrder, (self.kind, self.priority, self.block))

    @property
    def nvars(self):
        return len(self.priority)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.priority, self.block) == (other.kind, other.priority, other.block)
        )

    def __hash__(self):
        return hash((self.kind, self.priority, self.block))

    def __repr__(self):
        extra = f", block={self.block}" if self.kind == "block" else ""
        return f"MonomialOrder({self.kind!r}, {self.priority}{extra})"

    @property
    def name(self) -> str:
        return {"lex": "plex", "grevlex": "tdeg", "block": "block"}[self.kind]

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def with_leading(self, *indices: int) -> "MonomialOrder":
        """Same order over a larger ring, with ``indices`` placed above everything.

        ``indices`` are given from most to least significant.  A block order
        grows its leading block accordingly.
        """
        priority = tuple(indices) + self.priority
        block = self.block + len(indices) if self.kind == "block" else 0
        return MonomialOrder(self.kind, priority, block)


def _grevlex_key(priority):
    rev = tuple(reversed(priority))
    if not priority:
        return lambda m: (0,)
    if len(rev) == 1:
        i = rev[0]
        return lambda m: (m[i], -m[i])
    get = itemgetter(*rev)

    def key(m):
        return (sum(m[i] for i in rev), tuple(-e for e in get(m)))

    return key


def _raw_key(kind, priority, block):
    if kind == "lex":
        if not priority:
            return lambda m: ()
        if len(priority) == 1:
            i = priority[0]
            return lambda m: (m[i],)
        get = itemgetter(*priority)
        return get
    if kind == "grevlex":
        return _grevlex_key(priority)
    first, second = _grevlex_key(priority[:block]), _grevlex_key(priority[block:])
    return lambda m: (first(m), second(m))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial over the rationals.

    ``terms`` maps exponent tuples to nonzero Fractions and must not be
    mutated after construction.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar] = ()):
        n = len(ring)
        clean = {}
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad monomial {m} for ring of {n} variables")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.ring = ring
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff: Scalar) -> "Polynomial":
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()}
        )

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.unit in self.terms)

    # -- inspection ---------------------------------------------------------

    def total_degree(self) -> int:
        """Maximum total degree of a term; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var) -> int:
        i = self.ring.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def variables(self) -> set:
        """Indices of the variables that occur in some term."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def variable_names(self) -> list:
        return [self.ring.names[i] for i in sorted(self.variables())]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def leading_term(self, order: MonomialOrder) -> tuple:
        if not self.terms:
            raise ZeroPolynomial("leading term of the zero polynomial")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder) -> list:
        """Terms in decreasing order."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- transformations ----------------------------------------------------

    def evaluate(self, point: Mapping) -> Fraction:
        """Exact value at ``point``, a mapping keyed by variable name or index."""
        values = {}
        for k, v in point.items():
            try:
                values[self.ring.index(k)] = Fraction(v)
            except (KeyError, IndexError):
                continue
        for i in sorted(self.variables()):
            if i not in values:
                raise MissingAssignment(self.ring.names[i])
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def substitute(self, mapping: Mapping) -> "Polynomial":
        """Replace variables by polynomials or scalars of the same ring."""
        subs = {}
        for k, v in mapping.items():
            i = self.ring.index(k)
            if isinstance(v, Polynomial):
                self._check(v)
            else:
                v = self.ring.const(v)
            subs[i] = v
        if not subs:
            return self
        powers = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = subs[i] ** e
            return powers[key]

        result = self.ring.zero()
        for m, c in self.terms.items():
            kept = tuple(0 if i in subs else e for i, e in enumerate(m))
            term = Polynomial._raw(self.ring, {kept: c})
            for i, e in enumerate(m):
                if e and i in subs:
                    term = term * power(i, e)
            result = result + term
        return result

    def lift(self, ring: Ring) -> "Polynomial":
        """Embed into ``ring``, whose variable list must extend this one's."""
        n = len(self.ring)
        if ring.names[:n] != self.ring.names:
            raise RingMismatch("target ring does not extend the source ring")
        pad = (0,) * (len(ring) - n)
        return Polynomial._raw(ring, {m + pad: c for m, c in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self.terms:
            raise ZeroPolynomial("content of the zero polynomial")
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(math.gcd(*nums), math.lcm(*dens))

    def normalize(self, order: MonomialOrder = None) -> "Polynomial":
        """Scale to coprime integer coefficients with a positive leading coefficient.

        The sign is fixed by the leading term under ``order`` (lex in
        declaration order when omitted).
        """
        if not self.terms:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        if order is None:
            order = self.ring.order("lex")
        c = self.content()
        if self.leading_coefficient(order) < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self, order: MonomialOrder) -> "Polynomial":
        return self.scale(1 / self.leading_coefficient(order))

    # -- output -------------------------------------------------------------

    def render(self, order: MonomialOrder = None) -> str:
        """Canonical text: decreasing terms, ``^`` powers and explicit ``*``."""
        if not self.terms:
            return "0"
        if order is None:
            order = self.ring.order("grevlex")
        names = self.ring.names
        out = []
        for k, (m, c) in enumerate(self.sorted_terms(order)):
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if k == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def leading_term(p: Polynomial, order: MonomialOrder) -> tuple:
    return p.leading_term(order)


def total_degree(p: Polynomial) -> int:
    return p.total_degree()


def evaluate(p: Polynomial, point: Mapping) -> Fraction:
    return p.evaluate(point)


def normalize(p: Polynomial, order: MonomialOrder = None) -> Polynomial:
    return p.normalize(order)
