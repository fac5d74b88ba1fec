"""Exact coefficient arithmetic over the four supported scalar domains.

Supported domains: the integers Z, the rationals Q, prime fields F_p and
modular rings Z_q (q >= 2, not necessarily prime).  Elements are kept in
canonical form at all times: fractions in lowest terms with positive
denominator, residues in [0, modulus).  Integer payloads are arbitrary
precision.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import FormatError, RingMismatchError

INTEGERS = "Z"
RATIONALS = "Q"
PRIME_FIELD = "Fp"
MODULAR_RING = "Zq"

_KINDS = (INTEGERS, RATIONALS, PRIME_FIELD, MODULAR_RING)


def _is_prime(n):
    # trial division; every modulus in this toolkit is desk scale
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Ring:
    """A coefficient domain and its arithmetic on raw payloads."""

    __slots__ = ("kind", "modulus")

    def __init__(self, kind, modulus=None):
        if kind not in _KINDS:
            raise FormatError("unknown ring kind %r" % (kind,))
        if kind in (PRIME_FIELD, MODULAR_RING):
            if not isinstance(modulus, int) or modulus < 2:
                raise FormatError("modulus must be an integer >= 2")
            if kind == PRIME_FIELD and not _is_prime(modulus):
                raise FormatError("%d is not prime" % modulus)
        elif modulus is not None:
            raise ValueError("%s takes no modulus" % kind)
        self.kind = kind
        self.modulus = modulus

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.kind == other.kind
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return "Ring(%s)" % self.token()

    @property
    def is_finite(self):
        return self.modulus is not None

    @property
    def is_field(self):
        if self.kind in (RATIONALS, PRIME_FIELD):
            return True
        return self.kind == MODULAR_RING and _is_prime(self.modulus)

    @property
    def is_integral_domain(self):
        if self.kind == MODULAR_RING:
            return _is_prime(self.modulus)
        return True

    def canon(self, v):
        """Reduce a raw payload to canonical form."""
        if self.modulus is not None:
            return v % self.modulus
        if self.kind == RATIONALS:
            return v if isinstance(v, Fraction) else Fraction(v)
        return v

    def el(self, v):
        """Wrap a payload (int, or Fraction over Q) as an element."""
        if self.kind == INTEGERS and not isinstance(v, int):
            raise TypeError("integer payload required, got %r" % (v,))
        if self.kind == RATIONALS and not isinstance(v, (int, Fraction)):
            raise TypeError("rational payload required, got %r" % (v,))
        if self.modulus is not None and not isinstance(v, int):
            raise TypeError("residue payload required, got %r" % (v,))
        return RingElement(self, self.canon(v))

    def from_int(self, k):
        """Canonical image of an integer in this ring."""
        return RingElement(self, self.canon(k))

    @property
    def zero(self):
        return RingElement(self, self.canon(0))

    @property
    def one(self):
        return RingElement(self, self.canon(1))

    def elements(self):
        """All elements, ascending by representative.  Finite rings only."""
        if self.modulus is None:
            raise ValueError("ring is not finite")
        return [RingElement(self, v) for v in range(self.modulus)]

    def token(self):
        if self.kind == PRIME_FIELD:
            return "Fp %d" % self.modulus
        if self.kind == MODULAR_RING:
            return "Zq %d" % self.modulus
        return self.kind

    @staticmethod
    def from_token(parts):
        """Build a ring from the whitespace-split tail of a `ring` line."""
        if isinstance(parts, str):
            parts = parts.split()
        if not parts:
            raise FormatError("empty ring token")
        kind = parts[0]
        try:
            if kind in (INTEGERS, RATIONALS):
                if len(parts) != 1:
                    raise FormatError("ring %s takes no modulus" % kind)
                return Ring(kind)
            if kind in (PRIME_FIELD, MODULAR_RING):
                if len(parts) != 2:
                    raise FormatError("ring %s needs a modulus" % kind)
                return Ring(kind, int(parts[1]))
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        raise FormatError("unknown ring token %r" % " ".join(parts))

    def parse_coeff(self, text):
        """Parse one coefficient in this ring's textual encoding."""
        try:
            if self.kind == RATIONALS:
                return RingElement(self, self.canon(Fraction(text)))
            return RingElement(self, self.canon(int(text)))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError("bad coefficient %r: %s" % (text, exc)) from exc

    def format_coeff(self, el):
        """Canonical text for an element: integers and residues as decimals,
        rationals as `a/b` with the `/b` omitted when the value is integral."""
        v = el.val if isinstance(el, RingElement) else el
        if self.kind == RATIONALS and v.denominator != 1:
            return "%d/%d" % (v.numerator, v.denominator)
        if self.kind == RATIONALS:
            return str(v.numerator)
        return str(v)


class RingElement:
    """An immutable scalar tied to its ring."""

    __slots__ = ("ring", "val")

    def __init__(self, ring, val):
        # val is assumed canonical; go through Ring.el for raw payloads
        self.ring = ring
        self.val = val

    def _check(self, other):
        if not isinstance(other, RingElement):
            raise TypeError("ring element required, got %r" % (other,))
        if self.ring != other.ring:
            raise RingMismatchError(
                "mixed rings %s and %s" % (self.ring.token(), other.ring.token())
            )

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.canon(self.val + other.val))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.canon(self.val - other.val))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.canon(self.val * other.val))

    def __neg__(self):
        return RingElement(self.ring, self.ring.canon(-self.val))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent")
        m = self.ring.modulus
        if m is not None:
            return RingElement(self.ring, pow(self.val, k, m))
        return RingElement(self.ring, self.ring.canon(self.val ** k))

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.ring, self.val))

    def __lt__(self, other):
        # canonical element order: integers and rationals by value,
        # residues by representative in [0, modulus)
        self._check(other)
        return self.val < other.val

    def __le__(self, other):
        self._check(other)
        return self.val <= other.val

    @property
    def is_zero(self):
        return self.val == 0

    @property
    def is_unit(self):
        r = self.ring
        if r.kind == INTEGERS:
            return self.val in (1, -1)
        if r.kind == RATIONALS:
            return self.val != 0
        if r.kind == PRIME_FIELD:
            return self.val != 0
        return gcd(self.val, r.modulus) == 1

    def __repr__(self):
        return "%s(%s)" % (self.ring.token(), self.ring.format_coeff(self))

    def __str__(self):
        return self.ring.format_coeff(self)


ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)


def prime_field(p):
    return Ring(PRIME_FIELD, p)


def modular(q):
    return Ring(MODULAR_RING, q)
