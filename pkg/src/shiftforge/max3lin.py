"""Sparse 3-variable linear systems and their quadratic shift encodings.

A system is m rows c1*x_j1 + c2*x_j2 + c3*x_j3 + b = 0 over n variables,
three distinct indices and nonzero coefficients per row.  The encoding
places the coefficient matrix in the top-right block of a w-by-w matrix
C with w = max(2n, 2m), so row i of the system becomes quadratic terms
y_i * y_(w-n+j), plus linear terms from the row constants and one free
constant term:

    sum C[i][j]*y_i*y_j  +  sum e_i*y_i  +  e_0

Under a shift a, the coefficient of y_i becomes
e_i + sum_j a_j*(C[i][j] + C[j][i]); for i <= m that is exactly row i of
the system evaluated at the last n coordinates of a, so unsatisfied rows
show up as surviving linear monomials.
"""

from __future__ import annotations

import random

from .errors import ArityError, FormatError, PreconditionError, RingMismatchError
from .rings import Ring, RingElement
from .sparsepoly import SparsePoly, content_lines, format_vector

_COEFF_RANGE = 3  # nonzero draws from [-3, 3] over the infinite rings


class Max3LinSystem:
    __slots__ = ("ring", "n", "rows", "meta")

    def __init__(self, ring, n, rows, meta=None):
        if n < 0:
            raise PreconditionError("negative variable count")
        self.ring = ring
        self.n = n
        checked = []
        for idx, coeffs, b in rows:
            idx = tuple(idx)
            coeffs = tuple(coeffs)
            if len(idx) != 3 or len(coeffs) != 3:
                raise PreconditionError("rows take exactly three variables")
            if len(set(idx)) != 3:
                raise PreconditionError("row indices must be distinct")
            if any(not 0 <= j < n for j in idx):
                raise ArityError("row index out of range")
            for c in coeffs + (b,):
                if not isinstance(c, RingElement) or c.ring != ring:
                    raise RingMismatchError("row entry from a different ring")
            if any(c.is_zero for c in coeffs):
                raise PreconditionError("row coefficients must be nonzero")
            checked.append((idx, coeffs, b))
        self.rows = tuple(checked)
        self.meta = meta

    @property
    def m(self):
        return len(self.rows)

    @property
    def w(self):
        return max(2 * self.n, 2 * self.m)

    def row_value(self, i, x):
        idx, coeffs, b = self.rows[i]
        acc = b
        for j, c in zip(idx, coeffs):
            acc = acc + c * x[j]
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Max3LinSystem)
            and self.ring == other.ring
            and self.n == other.n
            and self.rows == other.rows
        )


def count_satisfied(system, x):
    x = list(x)
    if len(x) != system.n:
        raise ArityError(
            "assignment of length %d for %d variables" % (len(x), system.n)
        )
    for v in x:
        if not isinstance(v, RingElement) or v.ring != system.ring:
            raise RingMismatchError("assignment entry from a different ring")
    return sum(1 for i in range(system.m) if system.row_value(i, x).is_zero)


class QuadraticEncoding:
    """The encoded polynomial with its matrix/vector bookkeeping."""

    __slots__ = ("polynomial", "w", "cmatrix", "evec", "e0", "source")

    def __init__(self, polynomial, w, cmatrix, evec, e0, source):
        self.polynomial = polynomial
        self.w = w
        self.cmatrix = cmatrix
        self.evec = evec
        self.e0 = e0
        self.source = source


def encode_max3lin(system, e0=None):
    """Build the quadratic shift encoding of a 3-sparse linear system.

    The monomial count is at most 4m + 1: three quadratic and one linear
    term per row, plus the constant e_0 (default 1).
    """
    ring = system.ring
    if e0 is None:
        e0 = ring.one
    if not isinstance(e0, RingElement) or e0.ring != ring:
        raise RingMismatchError("e0 from a different ring")
    n, m, w = system.n, system.m, system.w
    cmatrix = {}
    evec = [ring.zero] * w
    for i, (idx, coeffs, b) in enumerate(system.rows):
        for j, c in zip(idx, coeffs):
            cmatrix[(i, w - n + j)] = c
        evec[i] = b
    terms = {}
    for (i, j), c in cmatrix.items():
        exps = tuple(1 if q in (i, j) else 0 for q in range(w))
        terms[exps] = c.val
    for i, e in enumerate(evec):
        if not e.is_zero:
            exps = tuple(1 if q == i else 0 for q in range(w))
            terms[exps] = e.val
    if not e0.is_zero:
        terms[(0,) * w] = e0.val
    names = ["y%d" % (i + 1) for i in range(w)]
    poly = SparsePoly(ring, w, terms, names)
    return QuadraticEncoding(poly, w, cmatrix, tuple(evec), e0, system)


def shifted_linear_coeff(enc, a, i):
    """Coefficient of y_i (i counted from 1) in the encoded polynomial
    after the shift a, by the closed formula instead of expansion."""
    a = list(a)
    if len(a) != enc.w:
        raise ArityError("shift of length %d for %d variables" % (len(a), enc.w))
    if not 1 <= i <= enc.w:
        raise ArityError("variable index %d out of range" % i)
    for v in a:
        if not isinstance(v, RingElement) or v.ring != enc.polynomial.ring:
            raise RingMismatchError("shift entry from a different ring")
    i0 = i - 1
    acc = enc.evec[i0]
    for (r, c), v in enc.cmatrix.items():
        if r == i0:
            acc = acc + a[c] * v
        if c == i0:
            acc = acc + a[r] * v
    return acc


def embed_assignment(system, x):
    """Place an assignment on the last n of the w encoding coordinates,
    zero elsewhere."""
    x = list(x)
    if len(x) != system.n:
        raise ArityError(
            "assignment of length %d for %d variables" % (len(x), system.n)
        )
    return tuple([system.ring.zero] * (system.w - system.n) + x)


def project_assignment(system, a):
    """The last n coordinates of an encoding-space vector."""
    a = list(a)
    if len(a) != system.w:
        raise ArityError("vector of length %d for %d coordinates" % (len(a), system.w))
    return tuple(a[system.w - system.n:])


def gen_max3lin(n, m, ring, planted=False, noise_count=0, seed=0):
    """Deterministic random system: per row, three distinct indices and
    nonzero coefficients.  With planted=True the recorded assignment
    satisfies all rows except exactly noise_count perturbed ones.  Over
    the infinite rings all draws come from [-3, 3]."""
    if n < 3:
        raise PreconditionError("need at least 3 variables")
    if m < 0 or noise_count < 0 or noise_count > m:
        raise PreconditionError("noise count must lie in [0, m]")
    if not planted and noise_count:
        raise PreconditionError("noise requires a planted assignment")
    rng = random.Random(seed)
    if ring.is_finite:
        nonzero = list(range(1, ring.modulus))
        values = list(range(ring.modulus))
    else:
        nonzero = [v for v in range(-_COEFF_RANGE, _COEFF_RANGE + 1) if v]
        values = list(range(-_COEFF_RANGE, _COEFF_RANGE + 1))
    plant = tuple(ring.el(rng.choice(values)) for _ in range(n)) if planted else None
    rows = []
    for _ in range(m):
        idx = tuple(sorted(rng.sample(range(n), 3)))
        coeffs = tuple(ring.el(rng.choice(nonzero)) for _ in range(3))
        if planted:
            b = ring.zero
            for j, c in zip(idx, coeffs):
                b = b - c * plant[j]
        else:
            b = ring.el(rng.choice(values))
        rows.append((idx, coeffs, b))
    noisy = sorted(rng.sample(range(m), noise_count)) if noise_count else []
    for i in noisy:
        idx, coeffs, b = rows[i]
        rows[i] = (idx, coeffs, b + ring.el(rng.choice(nonzero)))
    meta = {"seed": seed, "planted": plant, "noise": noise_count}
    return Max3LinSystem(ring, n, rows, meta)


# -- file format --------------------------------------------------------
#
#   ring ...
#   vars <n>
#   eq <j1> <c1> <j2> <c2> <j3> <c3> <b>     (variable indices are 1-based)
#
# Generated instances carry their provenance up front:
#   # seed <s>
#   # planted <c,...>
#   # noise <k>


def max3lin_to_text(system):
    lines = []
    meta = system.meta or {}
    if "seed" in meta:
        lines.append("# seed %d" % meta["seed"])
    if meta.get("planted") is not None:
        lines.append("# planted %s" % format_vector(meta["planted"]))
    if "noise" in meta:
        lines.append("# noise %d" % meta["noise"])
    lines.append("ring " + system.ring.token())
    lines.append("vars %d" % system.n)
    fmt = system.ring.format_coeff
    for idx, coeffs, b in system.rows:
        flat = []
        for j, c in zip(idx, coeffs):
            flat.append(str(j + 1))
            flat.append(fmt(c))
        lines.append("eq %s %s" % (" ".join(flat), fmt(b)))
    return "\n".join(lines) + "\n"


def max3lin_from_text(text):
    ring = None
    n = None
    rows = []
    meta = {}
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("#"):
            parts = stripped[1:].split()
            if parts and parts[0] in ("seed", "noise") and len(parts) == 2:
                meta[parts[0]] = int(parts[1])
            elif parts and parts[0] == "planted" and len(parts) == 2:
                meta["planted"] = parts[1]
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "ring":
            ring = Ring.from_token(parts[1:])
        elif parts[0] == "vars":
            if len(parts) != 2:
                raise FormatError("vars line takes one count")
            n = int(parts[1])
        elif parts[0] == "eq":
            if ring is None or n is None:
                raise FormatError("eq before ring/vars")
            if len(parts) != 8:
                raise FormatError("eq lines need 3 index/coefficient pairs and a constant")
            idx = []
            coeffs = []
            for k in range(3):
                j = int(parts[1 + 2 * k])
                if not 1 <= j <= n:
                    raise FormatError("variable index %d out of range" % j)
                idx.append(j - 1)
                coeffs.append(ring.parse_coeff(parts[2 + 2 * k]))
            rows.append((tuple(idx), tuple(coeffs), ring.parse_coeff(parts[7])))
        else:
            raise FormatError("unknown statement %r" % parts[0])
    if ring is None or n is None:
        raise FormatError("system file needs ring and vars lines")
    if "planted" in meta:
        from .sparsepoly import parse_vector

        meta["planted"] = parse_vector(meta["planted"], ring)
    return Max3LinSystem(ring, n, rows, meta or None)


def save_max3lin(path, system):
    with open(path, "w") as fh:
        fh.write(max3lin_to_text(system))


def load_max3lin(path):
    with open(path) as fh:
        return max3lin_from_text(fh.read())
