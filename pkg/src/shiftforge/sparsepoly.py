"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent vectors to nonzero coefficients over a
fixed positional variable catalog.  Display names are metadata only; the
arithmetic never consults them.  Every constructor canonicalizes eagerly,
so two equal polynomials have identical term maps.
"""

from __future__ import annotations

import os
from itertools import product
from math import comb

from .errors import ArityError, FormatError, RingMismatchError
from .rings import Ring, RingElement

DEFAULT_TERM_CAP = 10 ** 6


def term_cap():
    """Active term budget for expansions and products of expansions."""
    v = os.environ.get("SHIFTFORGE_TERM_CAP")
    return int(v) if v else DEFAULT_TERM_CAP


def grlex_key(exps):
    return (sum(exps), exps)


def default_names(nvars):
    return tuple("x%d" % (i + 1) for i in range(nvars))


def shifted_term_map(ring, terms, offsets):
    """Term map of P(X + a) from a payload term map and payload offsets.

    Expands each term by the binomial theorem, one moving variable at a
    time, and accumulates with cancellation.
    """
    m = ring.modulus
    if not any(offsets):
        return dict(terms)
    out = {}
    for exps, c in terms.items():
        moving = [i for i, e in enumerate(exps) if e and offsets[i] != 0]
        if not moving:
            out[exps] = out.get(exps, 0) + c
            continue
        choices = []
        for i in moving:
            e = exps[i]
            a = offsets[i]
            opts = []
            for k in range(e + 1):
                s = comb(e, k) * a ** (e - k)
                if m is not None:
                    s %= m
                opts.append((i, k, s))
            choices.append(opts)
        for combo in product(*choices):
            scal = c
            newe = list(exps)
            for i, k, s in combo:
                scal *= s
                newe[i] = k
            key = tuple(newe)
            out[key] = out.get(key, 0) + scal
    if m is not None:
        return {e: v % m for e, v in out.items() if v % m}
    return {e: v for e, v in out.items() if v}


class SparsePoly:
    """A canonical sparse polynomial over a positional variable catalog."""

    __slots__ = ("ring", "nvars", "terms", "var_names")

    def __init__(self, ring, nvars, terms=None, var_names=None):
        if not isinstance(ring, Ring):
            raise TypeError("ring required")
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        self.ring = ring
        self.nvars = nvars
        if var_names is None:
            var_names = default_names(nvars)
        else:
            var_names = tuple(var_names)
            if len(var_names) != nvars:
                raise ArityError(
                    "%d names for %d variables" % (len(var_names), nvars)
                )
        self.var_names = var_names
        canon = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ArityError("exponent vector %r has wrong length" % (exps,))
            if any(e < 0 or not isinstance(e, int) for e in exps):
                raise ValueError("exponents must be nonnegative integers")
            if isinstance(c, RingElement):
                if c.ring != ring:
                    raise RingMismatchError("coefficient from a different ring")
                c = c.val
            v = ring.canon(canon.get(exps, 0) + ring.canon(c))
            if v:
                canon[exps] = v
            elif exps in canon:
                del canon[exps]
        self.terms = canon

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, ring, nvars, var_names=None):
        return cls(ring, nvars, {}, var_names)

    @classmethod
    def constant(cls, ring, nvars, value, var_names=None):
        return cls(ring, nvars, {(0,) * nvars: value}, var_names)

    @classmethod
    def variable(cls, ring, nvars, index, var_names=None):
        if not 0 <= index < nvars:
            raise ArityError("variable index %d out of range" % index)
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(ring, nvars, {exps: 1}, var_names)

    # -- inspection --------------------------------------------------

    def sparsity(self):
        """Number of monomials with nonzero coefficient."""
        return len(self.terms)

    def nonconstant_sparsity(self):
        return sum(1 for e in self.terms if sum(e))

    def degree(self):
        """Total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def coefficient(self, exps):
        return RingElement(self.ring, self.terms.get(tuple(exps), 0))

    def constant_term(self):
        return RingElement(self.ring, self.terms.get((0,) * self.nvars, 0))

    def sorted_exps(self):
        """Exponent vectors in graded-lexicographic descending order."""
        return sorted(self.terms, key=grlex_key, reverse=True)

    # -- arithmetic --------------------------------------------------

    def _align(self, other):
        if not isinstance(other, SparsePoly):
            raise TypeError("polynomial required")
        if self.ring != other.ring:
            raise RingMismatchError("mixed coefficient rings")
        if self.nvars != other.nvars:
            raise ArityError("mixed variable counts %d and %d" % (self.nvars, other.nvars))

    def add(self, other):
        self._align(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.ring, self.nvars, out, self.var_names)

    def sub(self, other):
        self._align(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return SparsePoly(self.ring, self.nvars, out, self.var_names)

    def neg(self):
        return SparsePoly(
            self.ring, self.nvars, {e: -c for e, c in self.terms.items()}, self.var_names
        )

    def scale(self, el):
        if not isinstance(el, RingElement) or el.ring != self.ring:
            raise RingMismatchError("scalar from a different ring")
        out = {e: c * el.val for e, c in self.terms.items()}
        return SparsePoly(self.ring, self.nvars, out, self.var_names)

    def mul(self, other):
        self._align(other)
        m = self.ring.modulus
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
                if m is not None:
                    out[key] %= m
        return SparsePoly(self.ring, self.nvars, out, self.var_names)

    def shift(self, offsets):
        """P(X + a) for a vector a of ring elements, expanded and reduced."""
        vals = self._offset_payloads(offsets)
        out = shifted_term_map(self.ring, self.terms, vals)
        return SparsePoly(self.ring, self.nvars, out, self.var_names)

    def _offset_payloads(self, offsets):
        offsets = list(offsets)
        if len(offsets) != self.nvars:
            raise ArityError(
                "shift vector of length %d for %d variables"
                % (len(offsets), self.nvars)
            )
        vals = []
        for o in offsets:
            if not isinstance(o, RingElement):
                raise TypeError("ring element required in shift vector")
            if o.ring != self.ring:
                raise RingMismatchError("shift entry from a different ring")
            vals.append(o.val)
        return vals

    def eval(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise ArityError(
                "point of length %d for %d variables" % (len(point), self.nvars)
            )
        vals = []
        for p in point:
            if not isinstance(p, RingElement):
                raise TypeError("ring element required in evaluation point")
            if p.ring != self.ring:
                raise RingMismatchError("point entry from a different ring")
            vals.append(p.val)
        return RingElement(self.ring, self.ring.canon(eval_payload(self, vals)))

    def embed(self, nvars, offset, var_names=None):
        """The same polynomial over a wider catalog, variables moved to
        positions offset..offset+nvars(self)-1."""
        if offset < 0 or offset + self.nvars > nvars:
            raise ArityError("embedding block out of range")
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - offset - self.nvars)
        out = {pad_l + e + pad_r: c for e, c in self.terms.items()}
        return SparsePoly(self.ring, nvars, out, var_names)

    def rename(self, var_names):
        return SparsePoly(self.ring, self.nvars, dict(self.terms), var_names)

    # -- comparison and display --------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __repr__(self):
        return "SparsePoly(%s, %d, %s)" % (self.ring.token(), self.nvars, str(self))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in self.sorted_exps():
            c = RingElement(self.ring, self.terms[exps])
            body = "*".join(
                self.var_names[i] + ("^%d" % e if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            )
            txt = self.ring.format_coeff(c)
            if body:
                txt = body if txt == "1" else ("-" + body if txt == "-1" else txt + "*" + body)
            parts.append(txt)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def eval_payload(poly, vals):
    """Evaluate on raw payloads; returns an unreduced payload for Z and Q,
    a reduced residue otherwise."""
    m = poly.ring.modulus
    total = 0
    for exps, c in poly.terms.items():
        t = c
        for i, e in enumerate(exps):
            if e:
                t *= pow(vals[i], e, m) if m is not None else vals[i] ** e
        total += t
        if m is not None:
            total %= m
    return total


# -- file format -----------------------------------------------------
#
#   ring Z | Q | Fp <p> | Zq <q>
#   vars <k> [<name> ...]
#   term <coef> <e1> ... <ek>
#
# '#' starts a comment; duplicate exponent vectors are rejected.


def poly_to_text(poly):
    lines = ["ring " + poly.ring.token()]
    head = "vars %d" % poly.nvars
    if poly.nvars:
        head += " " + " ".join(poly.var_names)
    lines.append(head)
    for exps in poly.sorted_exps():
        c = RingElement(poly.ring, poly.terms[exps])
        lines.append(
            ("term %s " % poly.ring.format_coeff(c) + " ".join(map(str, exps))).rstrip()
        )
    return "\n".join(lines) + "\n"


def content_lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_vars_line(parts):
    """Parse the tail of a `vars` line; returns (nvars, names or None)."""
    if not parts:
        raise FormatError("vars line needs a count")
    try:
        k = int(parts[0])
    except ValueError as exc:
        raise FormatError("bad variable count %r" % parts[0]) from exc
    if k < 0:
        raise FormatError("negative variable count")
    names = parts[1:]
    if names and len(names) != k:
        raise FormatError("vars line lists %d names for %d variables" % (len(names), k))
    return k, (tuple(names) if names else None)


def poly_from_text(text):
    ring = None
    nvars = None
    names = None
    terms = {}
    for line in content_lines(text):
        parts = line.split()
        key = parts[0]
        if key == "ring":
            if ring is not None:
                raise FormatError("duplicate ring line")
            ring = Ring.from_token(parts[1:])
        elif key == "vars":
            if ring is None:
                raise FormatError("vars before ring")
            if nvars is not None:
                raise FormatError("duplicate vars line")
            nvars, names = parse_vars_line(parts[1:])
        elif key == "term":
            if nvars is None:
                raise FormatError("term before vars")
            if len(parts) != 2 + nvars:
                raise FormatError("term line needs %d exponents" % nvars)
            coef = ring.parse_coeff(parts[1])
            try:
                exps = tuple(int(p) for p in parts[2:])
            except ValueError as exc:
                raise FormatError("bad exponent in %r" % line) from exc
            if any(e < 0 for e in exps):
                raise FormatError("negative exponent in %r" % line)
            if exps in terms:
                raise FormatError("duplicate exponent vector %r" % (exps,))
            terms[exps] = coef
        else:
            raise FormatError("unknown statement %r" % key)
    if ring is None or nvars is None:
        raise FormatError("polynomial file needs ring and vars lines")
    return SparsePoly(ring, nvars, terms, names)


def save_poly(path, poly, header_comments=()):
    body = poly_to_text(poly)
    head = "".join("# %s\n" % c for c in header_comments)
    with open(path, "w") as fh:
        fh.write(head + body)


def load_poly(path):
    with open(path) as fh:
        return poly_from_text(fh.read())


def parse_vector(text, ring):
    """Comma-separated coefficients in the ring's textual encoding."""
    items = [t.strip() for t in text.split(",")]
    return tuple(ring.parse_coeff(t) for t in items)


def format_vector(vec):
    return ",".join(el.ring.format_coeff(el) for el in vec)
