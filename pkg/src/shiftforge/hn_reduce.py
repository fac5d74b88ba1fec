"""Encoding root-finding as shift-sparsification over the integers.

Given a lowered, constant-normalized system T = {g_1, ..., g_t} over N
variables (g_1 the single constant-bearing, affine-linear equation), the
encoder emits one polynomial over x_0, the N system variables, and fresh
outer variables w_1..w_t:

    w_1*g_1  +  sum over i >= 2 of  w_i*(gamma*g_i + x_0 + x_1 + ... + x_N)

with gamma a fixed nonzero non-unit.  T has a solution exactly when some
shift of the x-block lowers the polynomial's monomial count, and the
wired shift for a solution a is (-sum(a), a), which lowers the count by
exactly one.  Units of the coefficient ring would break both directions,
which is why the construction is restricted to the integers here, the
one supported domain that is neither a field nor has zero divisors.
"""

from __future__ import annotations

from .errors import (
    ArityError,
    FormatError,
    InternalConsistencyError,
    InvalidGammaError,
    NoReductionError,
    NotASolutionError,
    PreconditionError,
    RingMismatchError,
    StructureError,
    UnsupportedDomainError,
)
from .quadratizer import (
    EquationSystem,
    check_solution,
    first_constant_index,
    normalize_constants,
    quadratize_circuit,
    quadratize_sparse,
)
from .rings import INTEGERS, Ring, RingElement
from .sparsepoly import SparsePoly, content_lines


class ReductionWitnessMap:
    """Bookkeeping tying instance variables back to the source system."""

    __slots__ = ("gamma", "x0_index", "xprime_indices", "w_indices", "g1_index")

    def __init__(self, gamma, x0_index, xprime_indices, w_indices, g1_index):
        self.gamma = gamma
        self.x0_index = x0_index
        self.xprime_indices = tuple(xprime_indices)
        self.w_indices = tuple(w_indices)
        self.g1_index = g1_index

    def __eq__(self, other):
        return isinstance(other, ReductionWitnessMap) and (
            self.gamma,
            self.x0_index,
            self.xprime_indices,
            self.w_indices,
            self.g1_index,
        ) == (
            other.gamma,
            other.x0_index,
            other.xprime_indices,
            other.w_indices,
            other.g1_index,
        )


class HNInstance:
    """The encoded polynomial plus everything needed to invert the map."""

    __slots__ = ("polynomial", "gamma", "witness", "system", "recipe", "n_inputs")

    def __init__(self, polynomial, gamma, witness, system, recipe=None, n_inputs=None):
        self.polynomial = polynomial
        self.gamma = gamma
        self.witness = witness
        self.system = system
        self.recipe = recipe
        self.n_inputs = system.n_inputs if n_inputs is None else n_inputs

    @property
    def sigma(self):
        return self.polynomial.sparsity()

    @property
    def nsys(self):
        return self.system.nvars


class TriviallySolvable:
    """Short-circuit result: no equation carries a constant, so the
    all-zero assignment is a certificate."""

    __slots__ = ("certificate", "system", "recipe")

    def __init__(self, certificate, system, recipe=None):
        self.certificate = tuple(certificate)
        self.system = system
        self.recipe = recipe


def _validate_gamma(ring, gamma):
    if not isinstance(gamma, RingElement) or gamma.ring != ring:
        raise InvalidGammaError("gamma must be an element of the system's ring")
    if gamma.is_zero or gamma.is_unit:
        raise InvalidGammaError("gamma must be nonzero and not a unit")


def declared_sparsity_bound(system):
    """(t-1)*(N+1) + sum of equation sparsities; the built instance can
    only merge terms, never split them, so its count is at most this."""
    t = len(system.equations)
    n = system.nvars
    return (t - 1) * (n + 1) + sum(eq.sparsity() for eq in system.equations)


def build_hn_instance(system, gamma, g1_index=0, recipe=None, n_inputs=None):
    """Encode a normalized system over the integers.

    Preconditions: the first equation is affine-linear with a nonzero
    constant term, every other equation is constant-free of degree at
    most 2, and gamma is a nonzero non-unit.
    """
    ring = system.ring
    if ring.kind != INTEGERS:
        raise UnsupportedDomainError(
            "encoding requires the integers, got %s" % ring.token()
        )
    _validate_gamma(ring, gamma)
    eqs = system.equations
    if not eqs:
        raise PreconditionError("empty system")
    if eqs[0].constant_term().is_zero:
        raise PreconditionError("first equation must carry the constant")
    if eqs[0].degree() > 1:
        raise PreconditionError("constant-bearing equation must be affine-linear")
    for i, eq in enumerate(eqs[1:], start=2):
        if not eq.constant_term().is_zero:
            raise PreconditionError("equation %d also carries a constant" % i)
        if eq.degree() > 2:
            raise PreconditionError("equation %d has degree > 2" % i)

    n = system.nvars
    t = len(eqs)
    nvars = n + 1 + t
    names = ["x0"] + list(system.var_names) + ["w%d" % (i + 1) for i in range(t)]

    def lifted(eq, scale):
        # eq's variables occupy positions 1..n of the x-block
        return {(0,) + exps: ring.canon(c * scale) for exps, c in eq.terms.items()}

    terms = {}

    def add_summand(body, w_index):
        wtail = tuple(1 if j == w_index else 0 for j in range(t))
        for exps, c in body.items():
            key = exps + wtail
            terms[key] = terms.get(key, 0) + c

    add_summand(lifted(eqs[0], 1), 0)
    for i in range(1, t):
        body = lifted(eqs[i], gamma.val)
        for k in range(n + 1):
            key = tuple(1 if q == k else 0 for q in range(n + 1))
            body[key] = body.get(key, 0) + 1
        add_summand(body, i)

    poly = SparsePoly(ring, nvars, terms, names)
    witness = ReductionWitnessMap(
        gamma,
        0,
        range(1, n + 1),
        range(n + 1, n + 1 + t),
        g1_index,
    )
    return HNInstance(poly, gamma, witness, system, recipe, n_inputs)


def reduce_hn(source, gamma=None):
    """Full pipeline: lower, normalize constants, encode.

    source is a tier-x sparse system or a list of circuits over the
    integers.  Returns an HNInstance, or TriviallySolvable when the
    lowered system has no constant-bearing equation at all (the all-zero
    assignment on the source variables is then a certificate).
    """
    if isinstance(source, EquationSystem):
        ring = source.ring
        if ring.kind != INTEGERS:
            raise UnsupportedDomainError("encoding requires the integers")
        lowered, recipe = quadratize_sparse(source)
        nx = source.nvars
    else:
        circuits = list(source)
        if not circuits:
            raise PreconditionError("empty circuit list")
        ring = circuits[0].ring
        if ring.kind != INTEGERS:
            raise UnsupportedDomainError("encoding requires the integers")
        lowered, recipe = quadratize_circuit(circuits)
        nx = circuits[0].nvars
    if gamma is None:
        gamma = ring.el(2)
    _validate_gamma(ring, gamma)
    g1 = first_constant_index(lowered)
    normalized, trivial = normalize_constants(lowered)
    if trivial:
        cert = tuple(ring.zero for _ in range(nx))
        return TriviallySolvable(cert, normalized, recipe)
    return build_hn_instance(normalized, gamma, g1, recipe, nx)


def shift_instance(inst, bx):
    """The instance polynomial with the x-block shifted by bx and the
    outer w variables left alone."""
    bx = list(bx)
    n = inst.nsys
    if len(bx) != n + 1:
        raise ArityError("shift vector must cover x0 and the %d system variables" % n)
    t = len(inst.witness.w_indices)
    full = bx + [inst.polynomial.ring.zero] * t
    return inst.polynomial.shift(full)


def solution_to_shift(inst, a):
    """The wired shift (-sum(a), a) for a verified solution a of the
    normalized system; it lowers the monomial count by exactly one."""
    a = list(a)
    if len(a) != inst.nsys:
        raise ArityError(
            "solution of length %d for %d system variables" % (len(a), inst.nsys)
        )
    if not check_solution(inst.system, a):
        raise NotASolutionError("assignment does not satisfy the system")
    total = inst.polynomial.ring.zero
    for v in a:
        total = total + v
    return (-total,) + tuple(a)


def shift_to_solution(inst, b):
    """Invert a sparsifying zero-sum shift to a verified solution.

    b must satisfy b_0 = -(b_1 + ... + b_N) and strictly lower the
    monomial count with the w variables unshifted; the projection
    (b_1, ..., b_N) then satisfies the normalized system.
    """
    b = list(b)
    n = inst.nsys
    if len(b) != n + 1:
        raise ArityError("shift of length %d for %d+1 coordinates" % (len(b), n))
    total = inst.polynomial.ring.zero
    for v in b[1:]:
        total = total + v
    if b[0] != -total:
        raise StructureError("first coordinate must be minus the sum of the rest")
    if shift_instance(inst, b).sparsity() >= inst.sigma:
        raise NoReductionError("shift does not lower the monomial count")
    a = tuple(b[1:])
    if not check_solution(inst.system, a):
        raise InternalConsistencyError(
            "sparsifying zero-sum shift failed to yield a solution"
        )
    return a


# -- witness file format ------------------------------------------------
#
#   # witness
#   ring Z
#   gamma <coef>
#   x0 <index>
#   xprime <indices>
#   wvars <indices>
#   g1 <equation-index>


def witness_to_text(witness, ring):
    return (
        "# witness\n"
        + "ring %s\n" % ring.token()
        + "gamma %s\n" % ring.format_coeff(witness.gamma)
        + "x0 %d\n" % witness.x0_index
        + "xprime %s\n" % " ".join(map(str, witness.xprime_indices))
        + "wvars %s\n" % " ".join(map(str, witness.w_indices))
        + "g1 %d\n" % witness.g1_index
    )


def witness_from_text(text):
    fields = {}
    ring = None
    for line in content_lines(text):
        parts = line.split()
        if parts[0] == "ring":
            ring = Ring.from_token(parts[1:])
        else:
            fields[parts[0]] = parts[1:]
    required = {"gamma", "x0", "xprime", "wvars", "g1"}
    if ring is None or not required <= set(fields):
        raise FormatError("witness file is missing fields")
    witness = ReductionWitnessMap(
        ring.parse_coeff(fields["gamma"][0]),
        int(fields["x0"][0]),
        tuple(int(v) for v in fields["xprime"]),
        tuple(int(v) for v in fields["wvars"]),
        int(fields["g1"][0]),
    )
    return witness, ring


def save_witness(path, witness, ring):
    with open(path, "w") as fh:
        fh.write(witness_to_text(witness, ring))


def load_witness(path):
    with open(path) as fh:
        return witness_from_text(fh.read())
