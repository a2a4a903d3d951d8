"""Exact scalar arithmetic over Q and Q(w), w a primitive cube root of unity.

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator).  Elements of the quadratic extension are :class:`Eisenstein`
values ``a + b*w`` with ``w^2 = -1 - w`` applied eagerly, so every element has
a unique representation on the {1, w} basis and ``==`` is exact equality.

The module also owns the deterministic PRNG used to specialize "general"
points: :class:`Rng` is SplitMix64, so every derived value is reproducible
bit-for-bit from a 64-bit seed on any platform.
"""

from __future__ import annotations

import re
from fractions import Fraction

RATIONAL = "rational"
EISENSTEIN = "eisenstein"

FIELDS = (RATIONAL, EISENSTEIN)


class FieldMismatchError(TypeError):
    """Raised when two scalars or containers of different fields are combined."""


class ScalarParseError(ValueError):
    """Raised on malformed scalar text; carries the offending position."""

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class Eisenstein:
    """An element a + b*w of Q(w) with w^2 + w + 1 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def omega(cls):
        return cls(0, 1)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, Eisenstein):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Eisenstein(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        bd = self.b * other.b
        return Eisenstein(
            self.a * other.a - bd,
            self.a * other.b + self.b * other.a - bd,
        )

    __rmul__ = __mul__

    def conjugate(self):
        """Image under w -> w^2, the nontrivial field automorphism."""
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self):
        """N(a + bw) = a^2 - ab + b^2, a nonnegative rational."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conjugate()
        return Eisenstein(c.a / n, c.b / n)

    def __truediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Eisenstein(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"Eisenstein({self.a!r}, {self.b!r})"

    def __str__(self):
        return format_scalar(self)


def _lift(x):
    if isinstance(x, Eisenstein):
        return x
    if isinstance(x, (int, Fraction)):
        return Eisenstein(x, 0)
    return None


def field_of(x):
    """Field tag of a scalar value."""
    if isinstance(x, Eisenstein):
        return EISENSTEIN
    if isinstance(x, (int, Fraction)):
        return RATIONAL
    raise TypeError(f"not a scalar: {x!r}")


def as_scalar(x, field):
    """Coerce x into the given field; rationals embed into Q(w)."""
    if field == RATIONAL:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FieldMismatchError(f"cannot coerce {x!r} to a rational")
    if field == EISENSTEIN:
        lifted = _lift(x)
        if lifted is None:
            raise FieldMismatchError(f"cannot coerce {x!r} into Q(w)")
        return lifted
    raise ValueError(f"unknown field tag {field!r}")


def zero(field):
    return as_scalar(0, field)


def one(field):
    return as_scalar(1, field)


def is_zero(x):
    return not x


def scalar_arith(lhs, rhs, op):
    """Combine two same-field scalars with op in {add, sub, mul, div}.

    Raises FieldMismatchError on a rational/Q(w) mix and ZeroDivisionError on
    division by zero.  Thin validated front over the native operators.
    """
    if field_of(lhs) != field_of(rhs):
        raise FieldMismatchError(
            f"field mismatch: {field_of(lhs)} vs {field_of(rhs)}"
        )
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if is_zero(rhs):
            raise ZeroDivisionError("scalar division by zero")
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


# --- text form -------------------------------------------------------------
#
# rational   := int | int "/" posint
# eisenstein := rational
#             | rational ("+"|"-") rational "*w"
#             | ["-"] "w"                      (shorthand for +-1*w)
#             | rational "*w"                  (accepted on input)
# Output is canonical and whitespace-free; parse(format(x)) == x.

_RAT_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def format_scalar(x):
    """Canonical whitespace-free text for a scalar."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Eisenstein):
        if x.b == 0:
            return str(x.a)
        if x.a == 0 and x.b == 1:
            return "w"
        if x.a == 0:
            return f"{x.b}*w"
        sign = "-" if x.b < 0 else "+"
        return f"{x.a}{sign}{abs(x.b)}*w"
    raise TypeError(f"not a scalar: {x!r}")


def _parse_rational(text, pos):
    m = _RAT_RE.match(text, pos)
    if not m:
        raise ScalarParseError("expected a rational number", text, pos)
    frac = m.group(0)
    if "/" in frac and int(frac.split("/")[1]) == 0:
        raise ScalarParseError("zero denominator", text, pos)
    return Fraction(frac), m.end()


def parse_scalar(text, field):
    """Parse scalar text for the given field; inverse of format_scalar."""
    if field not in FIELDS:
        raise ValueError(f"unknown field tag {field!r}")
    s = text.strip()
    if field == RATIONAL:
        value, end = _parse_rational(s, 0)
        if end != len(s):
            raise ScalarParseError("trailing characters", s, end)
        return value

    # eisenstein
    if s in ("w", "+w"):
        return Eisenstein(0, 1)
    if s == "-w":
        return Eisenstein(0, -1)
    value, end = _parse_rational(s, 0)
    if end == len(s):
        return Eisenstein(value, 0)
    if s.endswith("*w"):
        body = s[:-2]
        if end == len(body):
            # bare "b*w"
            return Eisenstein(0, value)
        if end < len(body) and s[end] in "+-":
            bpart = body[end:]
            b, bend = _parse_rational(bpart, 0)
            if bend != len(bpart):
                raise ScalarParseError("trailing characters", s, end + bend)
            return Eisenstein(value, b)
        raise ScalarParseError("expected '+' or '-'", s, end)
    if s.endswith("w") and end == len(s) - 2 and s[end] in "+-":
        # "a+w" / "a-w" shorthand
        return Eisenstein(value, 1 if s[end] == "+" else -1)
    raise ScalarParseError("trailing characters", s, end)


# --- deterministic randomness ------------------------------------------------


class Rng:
    """SplitMix64: state advances by the 64-bit golden gamma, output is the
    murmur-style finalizer.  Identical seeds give identical streams everywhere.
    """

    _MASK = (1 << 64) - 1
    _GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed):
        self.seed = seed & self._MASK
        self._state = self.seed

    def next_u64(self):
        self._state = (self._state + self._GAMMA) & self._MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi], rejection-sampled to avoid modulo bias."""
        if lo > hi:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + u % span

    def split(self):
        """Independent child generator; never shares a stream with the parent."""
        return Rng(self.next_u64())

    def spawn(self, n):
        return [self.split() for _ in range(n)]


COORD_BOUND = 97  # random point coordinates are integers in [-97, 97]


def random_point(rng, ambient_dim, field):
    """Random projective point in P^ambient_dim with small integer coordinates.

    Coordinates are integers in [-COORD_BOUND, COORD_BOUND]; the all-zero draw
    is resampled.  For the Q(w) field the point is still drawn with rational
    coordinates (embedded), which is general enough for rank specialization.
    """
    if ambient_dim < 1:
        raise ValueError("ambient_dim must be >= 1")
    while True:
        coords = [rng.randint(-COORD_BOUND, COORD_BOUND) for _ in range(ambient_dim + 1)]
        if any(coords):
            return [as_scalar(c, field) for c in coords]


def random_scalar(rng, field, denom_bound=1):
    """Random nonzero-ish scalar for property tests; deterministic per rng."""
    num = rng.randint(-COORD_BOUND, COORD_BOUND)
    den = rng.randint(1, denom_bound) if denom_bound > 1 else 1
    q = Fraction(num, den)
    if field == RATIONAL:
        return q
    num2 = rng.randint(-COORD_BOUND, COORD_BOUND)
    den2 = rng.randint(1, denom_bound) if denom_bound > 1 else 1
    return Eisenstein(q, Fraction(num2, den2))
