"""Sparse multivariate polynomials over the exact scalar fields.

A polynomial is a dict from exponent tuples to nonzero scalars, bound to a
:class:`Ring` (variable names + field tag).  Monomial order is graded lex:
higher total degree first, ties broken lexicographically on the exponent
tuple with earlier-listed variables more significant.  The standard rings
use the variable listing x, y, z, w with parameter blocks a, b, c, d
appended for product rings, so all printed output is byte-reproducible.
"""

from __future__ import annotations

import math
import re

from .exact import (
    FIELDS,
    RATIONAL,
    FieldMismatchError,
    as_scalar,
    format_scalar,
    is_zero,
    parse_scalar,
    zero as field_zero,
    one as field_one,
)


class Ring:
    """A polynomial ring context: ordered variable names and a field tag."""

    __slots__ = ("names", "field", "_index")

    def __init__(self, names, field=RATIONAL):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if not names:
            raise ValueError("need at least one variable")
        if field not in FIELDS:
            raise ValueError(f"unknown field tag {field!r}")
        self.names = names
        self.field = field
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"Ring({self.names!r}, {self.field!r})"

    def index(self, name):
        return self._index[name]

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.constant(field_one(self.field))

    def constant(self, value):
        value = as_scalar(value, self.field)
        if is_zero(value):
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: value})

    def variable(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exps = [0] * self.nvars
        exps[i] = 1
        return MultiPoly(self, {tuple(exps): field_one(self.field)})

    def variables(self):
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, exponents, coeff=1):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise ValueError("bad exponent tuple")
        coeff = as_scalar(coeff, self.field)
        if is_zero(coeff):
            return self.zero()
        return MultiPoly(self, {exponents: coeff})

    def from_terms(self, terms):
        """Polynomial from an iterable of (exponent tuple, coefficient)."""
        acc = {}
        for exps, coeff in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError("bad exponent tuple")
            coeff = as_scalar(coeff, self.field)
            acc[exps] = acc.get(exps, field_zero(self.field)) + coeff
        return MultiPoly(self, {e: c for e, c in acc.items() if not is_zero(c)})

    def linear_form(self, coeffs):
        """c0*v0 + c1*v1 + ... from a coefficient list."""
        if len(coeffs) != self.nvars:
            raise ValueError("coefficient count must match nvars")
        terms = []
        for i, c in enumerate(coeffs):
            exps = [0] * self.nvars
            exps[i] = 1
            terms.append((tuple(exps), c))
        return self.from_terms(terms)

    def parse(self, text):
        return parse_poly(self, text)


def monomial_key(exps):
    """Sort key realizing the graded lex order (use with reverse=True)."""
    return (sum(exps), exps)


def monomial_basis(nvars, degree):
    """All degree-`degree` exponent tuples in graded lex order.

    The list has length C(nvars-1+degree, degree); the first entry is the
    pure power of the first variable.
    """
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if degree < 0:
        raise ValueError("degree must be >= 0")

    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    assert len(out) == math.comb(nvars - 1 + degree, degree)
    return out


class MultiPoly:
    """Immutable sparse polynomial; no zero coefficients are ever stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), field_zero(self.ring.field))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def coefficient_vector(self, basis):
        """Coefficients on an explicit monomial basis (zero-filled)."""
        return [self.coefficient(e) for e in basis]

    def lift(self, ring):
        """Reinterpret in another ring of the same arity, coercing coefficients
        (rational coefficients embed into Q(w); the reverse raises)."""
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count mismatch in lift")
        return ring.from_terms(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic ------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise FieldMismatchError("ring context mismatch")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            s = acc.get(e)
            s = c if s is None else s + c
            if is_zero(s):
                acc.pop(e, None)
            else:
                acc[e] = s
        return MultiPoly(self.ring, acc)

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            acc = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    s = acc.get(e)
                    s = c if s is None else s + c
                    if is_zero(s):
                        acc.pop(e, None)
                    else:
                        acc[e] = s
            return MultiPoly(self.ring, acc)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar):
        scalar = as_scalar(scalar, self.ring.field)
        if is_zero(scalar):
            return self.ring.zero()
        return MultiPoly(self.ring, {e: c * scalar for e, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and evaluation ------------------------------------------

    def evaluate(self, point):
        """Exact value at an affine coordinate tuple."""
        if len(point) != self.ring.nvars:
            raise ValueError(
                f"point length {len(point)} != nvars {self.ring.nvars}"
            )
        point = [as_scalar(p, self.ring.field) for p in point]
        total = field_zero(self.ring.field)
        for exps, coeff in self.terms.items():
            v = coeff
            for p, e in zip(point, exps):
                if e:
                    v = v * p**e
            total = total + v
        return total

    def partial(self, var_index):
        """Formal partial derivative with respect to one variable."""
        if not 0 <= var_index < self.ring.nvars:
            raise ValueError("variable index out of range")
        acc = {}
        for exps, coeff in self.terms.items():
            e = exps[var_index]
            if e == 0:
                continue
            new = list(exps)
            new[var_index] = e - 1
            acc[tuple(new)] = coeff * e
        return MultiPoly(self.ring, acc)

    def gradient(self):
        return [self.partial(i) for i in range(self.ring.nvars)]

    def vanishes_to_order(self, point, m):
        """True iff every partial of order <= m-1 is zero at the point."""
        if m < 1:
            raise ValueError("multiplicity must be >= 1")
        level = {(0,) * self.ring.nvars: self}
        for order in range(m):
            for poly in level.values():
                if not is_zero(poly.evaluate(point)):
                    return False
            if order == m - 1:
                break
            nxt = {}
            for alpha, poly in level.items():
                for i in range(self.ring.nvars):
                    beta = list(alpha)
                    beta[i] += 1
                    beta = tuple(beta)
                    if beta not in nxt:
                        nxt[beta] = poly.partial(i)
            level = nxt
        return True

    def substitute(self, images):
        """Compose with a tuple of homogeneous forms of one common degree.

        The images live in their own ring; the result does too.  Raises on
        inhomogeneous or mixed-degree images.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        degs = set()
        for im in images:
            if im.ring != target:
                raise FieldMismatchError("images must share one ring context")
            if not im.is_homogeneous():
                raise ValueError("images must be homogeneous")
            if not im.is_zero():
                degs.add(im.degree())
        if len(degs) > 1:
            raise ValueError("images must share one degree")

        # cache image powers; exponents in quartic work stay small
        powers = [dict() for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        total = target.zero()
        for exps, coeff in self.terms.items():
            term = target.constant(as_scalar(coeff, target.field))
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    # -- block operations for product rings ---------------------------------

    def coefficients_wrt(self, block):
        """Split p = sum_m m * coeff(m) over the monomials m in `block`.

        `block` is an iterable of variable indices (or names).  Returns a dict
        from exponent tuples on the block to MultiPoly values on the
        complementary ring.
        """
        idx = self._block_indices(block)
        rest = [i for i in range(self.ring.nvars) if i not in idx]
        if not rest:
            raise ValueError("block must be a proper subset of the variables")
        rest_ring = Ring([self.ring.names[i] for i in rest], self.ring.field)
        out = {}
        for exps, coeff in self.terms.items():
            key = tuple(exps[i] for i in idx)
            rexps = tuple(exps[i] for i in rest)
            out.setdefault(key, {})[rexps] = coeff
        return {k: MultiPoly(rest_ring, v) for k, v in out.items()}

    def partial_evaluate(self, block, values):
        """Evaluate the block variables at scalars; polynomial in the rest."""
        idx = self._block_indices(block)
        if len(values) != len(idx):
            raise ValueError("one value per block variable")
        values = [as_scalar(v, self.ring.field) for v in values]
        at = dict(zip(idx, values))
        rest = [i for i in range(self.ring.nvars) if i not in idx]
        if not rest:
            raise ValueError("block must be a proper subset; use evaluate()")
        rest_ring = Ring([self.ring.names[i] for i in rest], self.ring.field)
        acc = {}
        for exps, coeff in self.terms.items():
            v = coeff
            for i in idx:
                if exps[i]:
                    v = v * at[i] ** exps[i]
            if is_zero(v):
                continue
            rexps = tuple(exps[i] for i in rest)
            s = acc.get(rexps)
            s = v if s is None else s + v
            if is_zero(s):
                acc.pop(rexps, None)
            else:
                acc[rexps] = s
        return MultiPoly(rest_ring, acc)

    def _block_indices(self, block):
        idx = []
        for b in block:
            idx.append(b if isinstance(b, int) else self.ring.index(b))
        if len(set(idx)) != len(idx):
            raise ValueError("duplicate block variables")
        return idx


def from_basis_vector(ring, basis, vector):
    """Polynomial from coefficients on an explicit monomial basis."""
    if len(basis) != len(vector):
        raise ValueError("basis/vector length mismatch")
    return ring.from_terms(zip(basis, vector))


# --- text form ----------------------------------------------------------
#
# A polynomial prints as terms in monomial order joined by '+', each term
# "coeff*x^e1*y^e2*..." with unit exponents shortened to the bare name and
# the constant term printed as a bare coefficient.  Coefficients containing
# an interior sign (Q(w) values) are parenthesized.  Negative rational
# coefficients carry their sign, so the join produces "...-3*x*y..." forms.

_FACTOR_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?\Z")


def _format_coeff(coeff):
    s = format_scalar(coeff)
    # parenthesize Q(w) values so 'w' never collides with a variable name
    if "w" in s or "+" in s[1:] or "-" in s[1:]:
        return f"({s})"
    return s


def format_poly(p):
    if p.is_zero():
        return "0"
    parts = []
    for exps, coeff in p.sorted_terms():
        factors = []
        for name, e in zip(p.ring.names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        term = "*".join([_format_coeff(coeff)] + factors) if factors else _format_coeff(coeff)
        if parts and not term.startswith("-"):
            parts.append("+")
        parts.append(term)
    return "".join(parts)


def parse_poly(ring, text):
    """Inverse of format_poly on canonical forms; accepts minor variants."""
    s = text.replace(" ", "")
    if s == "0":
        return ring.zero()
    if not s:
        raise ValueError("empty polynomial text")
    total = ring.zero()
    for piece in _split_terms(s):
        total = total + _parse_term(ring, piece)
    return total


def _split_terms(s):
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            prev = s[i - 1]
            if prev not in "+-(*^/":
                pieces.append(s[start:i])
                start = i
    pieces.append(s[start:])
    return [p.lstrip("+") or p for p in pieces]


def _parse_term(ring, piece):
    if not piece:
        raise ValueError("empty term")
    coeff = field_one(ring.field)
    body = piece
    negate = body.startswith("-")
    if negate:
        body = body[1:]
    exps = [0] * ring.nvars

    saw_factor = False
    for f in _split_factors(body):
        saw_factor = True
        if f.startswith("(") and f.endswith(")"):
            coeff = coeff * parse_scalar(f[1:-1], ring.field)
            continue
        m = _FACTOR_RE.match(f)
        if m and m.group(1) in ring.names:
            e = int(m.group(2)) if m.group(2) else 1
            exps[ring.index(m.group(1))] += e
            continue
        coeff = coeff * parse_scalar(f, ring.field)
    if not saw_factor:
        raise ValueError(f"bad term {piece!r}")
    if negate:
        coeff = -coeff
    return ring.monomial(exps, coeff)


def _split_factors(body):
    out, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            # '*' inside a scalar like 2/3*w is only reachable in parens
            out.append(body[start:i])
            start = i + 1
    out.append(body[start:])
    return [f for f in out if f]
