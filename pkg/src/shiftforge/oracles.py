"""Brute-force search oracles over declared finite domains.

Every oracle enumerates an explicitly finite space: all vectors over a
finite ring, an integer box [-B, B]^k, or a declared rational grid.
Restrictions either force the first coordinate to minus the sum of the
rest (membership in the domain is still required) or pin all but the
last n coordinates to zero.  Spaces are sized up front and refused when
they exceed the cap.  Witnesses are tie-broken to the lexicographically
least vector under the canonical element order, which makes results
independent of how the space is split across workers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import (
    ArityError,
    CapExceededError,
    PreconditionError,
    UnsupportedDomainError,
)
from .hn_reduce import (
    HNInstance,
    TriviallySolvable,
    reduce_hn,
    shift_instance,
    shift_to_solution,
    solution_to_shift,
)
from .max3lin import count_satisfied, encode_max3lin
from .quadratizer import check_solution, extend_solution
from .rings import INTEGERS, RATIONALS, RingElement
from .sparsepoly import eval_payload, format_vector, shifted_term_map

DEFAULT_ENUM_CAP = 10 ** 7

EXHAUSTIVE = "exhaustive"
BOX = "box"
GRID = "grid"

NONE = "none"
ZERO_SUM = "zero-sum"
SUPPORT_LAST = "support-last"


class SearchDomain:
    __slots__ = ("mode", "bound", "numerators", "denominators", "restriction",
                 "support_n", "cap")

    def __init__(self, mode, bound=None, numerators=None, denominators=None,
                 restriction=NONE, support_n=None, cap=DEFAULT_ENUM_CAP):
        self.mode = mode
        self.bound = bound
        self.numerators = tuple(numerators) if numerators else None
        self.denominators = tuple(denominators) if denominators else None
        self.restriction = restriction
        self.support_n = support_n
        self.cap = cap

    @classmethod
    def exhaustive(cls, cap=DEFAULT_ENUM_CAP):
        return cls(EXHAUSTIVE, cap=cap)

    @classmethod
    def integer_box(cls, bound, cap=DEFAULT_ENUM_CAP):
        if bound < 0:
            raise PreconditionError("box bound must be >= 0")
        return cls(BOX, bound=bound, cap=cap)

    @classmethod
    def rational_grid(cls, numerators, denominators, cap=DEFAULT_ENUM_CAP):
        if not numerators or not denominators or any(d == 0 for d in denominators):
            raise PreconditionError("grid needs numerators and nonzero denominators")
        return cls(GRID, numerators=numerators, denominators=denominators, cap=cap)

    def restricted(self, restriction, support_n=None):
        if restriction == SUPPORT_LAST and (support_n is None or support_n < 0):
            raise PreconditionError("support restriction needs a width")
        return SearchDomain(self.mode, self.bound, self.numerators,
                            self.denominators, restriction, support_n, self.cap)

    def values(self, ring):
        """Allowed payload values for one coordinate, ascending."""
        if self.mode == EXHAUSTIVE:
            if not ring.is_finite:
                raise UnsupportedDomainError(
                    "exhaustive search needs a finite ring; declare a box or grid"
                )
            return list(range(ring.modulus))
        if self.mode == BOX:
            if ring.is_finite:
                raise UnsupportedDomainError(
                    "integer boxes apply to Z and Q; use exhaustive search"
                )
            b = self.bound
            if ring.kind == RATIONALS:
                return [Fraction(v) for v in range(-b, b + 1)]
            return list(range(-b, b + 1))
        if ring.kind != RATIONALS:
            raise UnsupportedDomainError("rational grids apply to Q only")
        vals = {Fraction(a, d) for a in self.numerators for d in self.denominators}
        return sorted(vals)


def _plan(dom, ring, k):
    """Free coordinate positions and per-coordinate values; checks cap."""
    values = dom.values(ring)
    if dom.restriction == ZERO_SUM:
        if k < 1:
            raise PreconditionError("zero-sum restriction needs a coordinate")
        free = list(range(1, k))
    elif dom.restriction == SUPPORT_LAST:
        if dom.support_n > k:
            raise ArityError("support width exceeds the coordinate count")
        free = list(range(k - dom.support_n, k))
    else:
        free = list(range(k))
    size = len(values) ** len(free) if free else 1
    if size > dom.cap:
        raise CapExceededError(
            "search space of %d points exceeds the cap of %d" % (size, dom.cap)
        )
    return values, free, size


def _vector_at(rank, values, free, k, restriction, value_set, zero):
    """Decode a rank into a full payload vector, or None when the forced
    coordinate falls outside the domain.  Rank order is lexicographic in
    the free coordinates."""
    vec = [zero] * k
    nv = len(values)
    for pos in reversed(free):
        rank, digit = divmod(rank, nv)
        vec[pos] = values[digit]
    if restriction == ZERO_SUM:
        forced = -sum(vec[1:], zero)
        if forced not in value_set:
            return None
        vec[0] = forced
    return vec


def _chunk_bounds(size, parts):
    parts = max(1, min(parts, size)) if size else 1
    step, extra = divmod(size, parts)
    bounds = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _run_chunks(worker, common, size, jobs):
    bounds = _chunk_bounds(size, jobs if jobs > 1 else 1)
    tasks = [common + (lo, hi) for lo, hi in bounds if lo < hi]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(t) for t in tasks]


class SearchReport:
    __slots__ = ("min_sparsity", "witness", "points", "complete", "violations")

    def __init__(self, min_sparsity, witness, points, complete, violations=0):
        self.min_sparsity = min_sparsity
        self.witness = witness
        self.points = points
        self.complete = complete
        self.violations = violations

    def lines(self):
        return [
            "min_sparsity %d" % self.min_sparsity,
            "witness %s" % format_vector(self.witness),
            "points %d" % self.points,
            "complete %s" % ("true" if self.complete else "false"),
            "violations %d" % self.violations,
        ]


def _normalize_zero(ring):
    return ring.canon(0)


def _min_sparsity_chunk(args):
    poly, values, free, restriction, metric, lo, hi = args
    ring = poly.ring
    zero = _normalize_zero(ring)
    value_set = set(values)
    k = poly.nvars
    best = None
    points = 0
    for rank in range(lo, hi):
        vec = _vector_at(rank, values, free, k, restriction, value_set, zero)
        if vec is None:
            continue
        points += 1
        shifted = shifted_term_map(ring, poly.terms, vec)
        if metric == "nonconstant":
            sp = sum(1 for e in shifted if sum(e))
        else:
            sp = len(shifted)
        key = (sp, tuple(vec))
        if best is None or key < best:
            best = key
    return best, points


def search_min_sparsity(poly, dom, metric="total", jobs=1):
    """Minimum (non)constant monomial count of poly(X + a) over the
    domain, with the lexicographically least witness shift."""
    if metric not in ("total", "nonconstant"):
        raise PreconditionError("metric must be total or nonconstant")
    values, free, size = _plan(dom, poly.ring, poly.nvars)
    common = (poly, values, free, dom.restriction, metric)
    results = _run_chunks(_min_sparsity_chunk, common, size, jobs)
    best = None
    points = 0
    for chunk_best, chunk_points in results:
        points += chunk_points
        if chunk_best is not None and (best is None or chunk_best < best):
            best = chunk_best
    if best is None:
        raise PreconditionError("search domain is empty")
    witness = tuple(RingElement(poly.ring, v) for v in best[1])
    return SearchReport(best[0], witness, points, dom.mode == EXHAUSTIVE)


def _solve_chunk(args):
    system, values, free, restriction, lo, hi = args
    ring = system.ring
    zero = _normalize_zero(ring)
    value_set = set(values)
    k = system.nvars
    m = ring.modulus
    best = None
    points = 0
    for rank in range(lo, hi):
        vec = _vector_at(rank, values, free, k, restriction, value_set, zero)
        if vec is None:
            continue
        points += 1
        ok = True
        for eq in system.equations:
            v = eval_payload(eq, vec)
            if m is not None:
                v %= m
            if v:
                ok = False
                break
        if ok:
            key = tuple(vec)
            if best is None or key < best:
                best = key
    return best, points


def solve_system(system, dom, jobs=1):
    """Lexicographically least solution over the domain, or None."""
    values, free, size = _plan(dom, system.ring, system.nvars)
    common = (system, values, free, dom.restriction)
    results = _run_chunks(_solve_chunk, common, size, jobs)
    best = None
    for chunk_best, _ in results:
        if chunk_best is not None and (best is None or chunk_best < best):
            best = chunk_best
    if best is None:
        return None
    return tuple(RingElement(system.ring, v) for v in best)


def _maxsat_chunk(args):
    system, values, free, restriction, lo, hi = args
    ring = system.ring
    zero = _normalize_zero(ring)
    value_set = set(values)
    best = -1
    for rank in range(lo, hi):
        vec = _vector_at(rank, values, free, system.n, restriction, value_set, zero)
        if vec is None:
            continue
        point = [RingElement(ring, v) for v in vec]
        sat = count_satisfied(system, point)
        if sat > best:
            best = sat
    return best


def maxsat(system, dom, jobs=1):
    """Exact maximum number of simultaneously satisfiable rows over the
    domain of assignments."""
    values, free, size = _plan(dom, system.ring, system.n)
    common = (system, values, free, dom.restriction)
    results = _run_chunks(_maxsat_chunk, common, size, jobs)
    return max(results)


# -- end-to-end verifiers ------------------------------------------------


class RoundtripReport:
    """Both directions of the solvability/sparsifiability correspondence,
    checked exhaustively over a box."""

    __slots__ = (
        "trivial",
        "certificate",
        "certificate_ok",
        "sigma",
        "solutions",
        "sparsifying_shifts",
        "solution_points",
        "shift_points",
        "violations",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw.get(name))

    @property
    def consistent(self):
        return not self.violations

    def lines(self):
        if self.trivial:
            return [
                "trivially_solvable true",
                "certificate %s" % format_vector(self.certificate),
                "certificate_ok %s" % ("true" if self.certificate_ok else "false"),
            ]
        return [
            "trivially_solvable false",
            "sigma %d" % self.sigma,
            "solutions %d" % self.solutions,
            "sparsifying_shifts %d" % self.sparsifying_shifts,
            "solution_points %d" % self.solution_points,
            "shift_points %d" % self.shift_points,
            "violations %d" % len(self.violations),
            "consistent %s" % ("true" if self.consistent else "false"),
        ]


def verify_hn_roundtrip(source, gamma=None, box=2, jobs=1, cap=DEFAULT_ENUM_CAP):
    """Reduce, then check both directions over the box.

    Solutions are enumerated over box-bounded assignments of the source
    variables (each extends uniquely); each must yield a wired shift that
    lowers the count by exactly one.  Shifts are enumerated over all
    zero-sum box-bounded vectors; each one that lowers the count must
    invert to a verified solution.  Box search over the integers is
    sound, not complete.
    """
    result = reduce_hn(source, gamma)
    if isinstance(result, TriviallySolvable):
        full = (
            extend_solution(result.recipe, result.certificate)
            if result.recipe is not None
            else result.certificate
        )
        ok = check_solution(result.system, full)
        return RoundtripReport(
            trivial=True, certificate=result.certificate, certificate_ok=ok
        )

    inst = result
    ring = inst.polynomial.ring
    sigma = inst.sigma
    dom = SearchDomain.integer_box(box, cap=cap)
    values = dom.values(ring)
    value_set = set(values)
    violations = []

    # direction 1: box-bounded source assignments
    nx = inst.n_inputs
    size = len(values) ** nx
    if size > cap:
        raise CapExceededError("solution space of %d points exceeds the cap" % size)
    solutions = 0
    solution_points = 0
    for combo in itertools.product(values, repeat=nx):
        solution_points += 1
        ax = [RingElement(ring, v) for v in combo]
        full = extend_solution(inst.recipe, ax) if inst.recipe else tuple(ax)
        if not check_solution(inst.system, full):
            continue
        solutions += 1
        b = solution_to_shift(inst, full)
        drop = sigma - shift_instance(inst, b).sparsity()
        if drop != 1:
            violations.append("solution %s drops %d" % (format_vector(full), drop))

    # direction 2: zero-sum shifts inside the box
    n = inst.nsys
    size = len(values) ** n
    if size > cap:
        raise CapExceededError("shift space of %d points exceeds the cap" % size)
    sparsifying = 0
    shift_points = 0
    zero = _normalize_zero(ring)
    for combo in itertools.product(values, repeat=n):
        forced = -sum(combo, zero)
        if forced not in value_set:
            continue
        shift_points += 1
        b = tuple(RingElement(ring, v) for v in (forced,) + combo)
        if shift_instance(inst, b).sparsity() >= sigma:
            continue
        sparsifying += 1
        try:
            shift_to_solution(inst, b)
        except Exception as exc:  # noqa: BLE001 - recorded, not raised
            violations.append("shift %s: %s" % (format_vector(b), exc))
    if solutions == 0 and sparsifying > 0:
        violations.append("sparsifying shifts exist without solutions")

    return RoundtripReport(
        trivial=False,
        certificate=None,
        certificate_ok=None,
        sigma=sigma,
        solutions=solutions,
        sparsifying_shifts=sparsifying,
        solution_points=solution_points,
        shift_points=shift_points,
        violations=violations,
    )


class EncodingReport:
    __slots__ = ("w", "sigma", "maxsat", "min_nonconstant", "expected")

    def __init__(self, w, sigma, maxsat, min_nonconstant, expected):
        self.w = w
        self.sigma = sigma
        self.maxsat = maxsat
        self.min_nonconstant = min_nonconstant
        self.expected = expected

    @property
    def match(self):
        return self.min_nonconstant == self.expected

    def lines(self):
        return [
            "w %d" % self.w,
            "sigma %d" % self.sigma,
            "maxsat %d" % self.maxsat,
            "min_nonconstant %d" % self.min_nonconstant,
            "expected %d" % self.expected,
            "match %s" % ("true" if self.match else "false"),
        ]


def verify_max3lin(system, e0=None, jobs=1, cap=DEFAULT_ENUM_CAP):
    """Exhaustively confirm that the least nonconstant monomial count of
    the shifted encoding equals 4m minus the best satisfiable row count."""
    if not system.ring.is_finite:
        raise UnsupportedDomainError("exhaustive verification needs a finite ring")
    enc = encode_max3lin(system, e0)
    dom = SearchDomain.exhaustive(cap=cap)
    report = search_min_sparsity(enc.polynomial, dom, metric="nonconstant", jobs=jobs)
    best = maxsat(system, dom, jobs=jobs)
    expected = 4 * system.m - best
    return EncodingReport(enc.w, enc.polynomial.sparsity(), best,
                          report.min_sparsity, expected)
