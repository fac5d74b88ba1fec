"""Lowering passes from arbitrary polynomial systems to quadratic form.

A lowered system contains only two equation shapes: constant-free
quadratic binomials `u - v*w = 0` whose single-variable head strictly
dominates v and w, and affine-linear equations.  The variable catalog has
three blocks in fixed positional order: the original tier-x variables,
then tier-y product auxiliaries, then tier-z monomial-name auxiliaries.
"Dominates" means "has the larger catalog position", so every z outranks
every y, which outranks every x.

Each lowering also returns an extension recipe: an ordered list of
auxiliary definitions that turns any assignment of the tier-x variables
into the unique full assignment satisfying the defining equations.
"""

from __future__ import annotations

from .circuits import CONST, INPUT, MUL, Circuit, parse_node_line
from .errors import ArityError, FormatError, PreconditionError, RingMismatchError
from .rings import Ring, RingElement
from .sparsepoly import SparsePoly, content_lines, default_names, parse_vars_line

TIER_X = "x"
TIER_Y = "y"
TIER_Z = "z"


class EquationSystem:
    """Equations f_i = 0 over one shared, tiered variable catalog."""

    __slots__ = ("ring", "var_names", "tiers", "equations", "provenance")

    def __init__(self, ring, var_names, equations, tiers=None, provenance=None):
        self.ring = ring
        self.var_names = tuple(var_names)
        n = len(self.var_names)
        if tiers is None:
            tiers = (TIER_X,) * n
        self.tiers = tuple(tiers)
        if len(self.tiers) != n:
            raise ArityError("tier list length mismatch")
        if any(t not in (TIER_X, TIER_Y, TIER_Z) for t in self.tiers):
            raise FormatError("unknown tier in %r" % (self.tiers,))
        # blocks must be contiguous in x, y, z order so that catalog
        # position is a dominance order
        order = {TIER_X: 0, TIER_Y: 1, TIER_Z: 2}
        ranks = [order[t] for t in self.tiers]
        if ranks != sorted(ranks):
            raise FormatError("variable tiers must form contiguous x, y, z blocks")
        eqs = []
        for eq in equations:
            if not isinstance(eq, SparsePoly):
                raise TypeError("equations must be polynomials")
            if eq.ring != ring:
                raise RingMismatchError("equation over a different ring")
            if eq.nvars != n:
                raise ArityError("equation over a different catalog")
            eqs.append(eq)
        self.equations = tuple(eqs)
        self.provenance = provenance

    @property
    def nvars(self):
        return len(self.var_names)

    @property
    def n_inputs(self):
        return sum(1 for t in self.tiers if t == TIER_X)

    @property
    def is_input_only(self):
        return all(t == TIER_X for t in self.tiers)

    def __eq__(self, other):
        return (
            isinstance(other, EquationSystem)
            and self.ring == other.ring
            and self.var_names == other.var_names
            and self.tiers == other.tiers
            and self.equations == other.equations
        )


class ExtensionRecipe:
    """Ordered auxiliary definitions extending tier-x assignments."""

    __slots__ = ("ring", "nvars", "n_inputs", "steps")

    def __init__(self, ring, nvars, n_inputs, steps):
        # steps: (target, op, args) with op in var | const | mul | sum;
        # each auxiliary position is defined exactly once, in an order
        # that only references inputs and earlier targets
        self.ring = ring
        self.nvars = nvars
        self.n_inputs = n_inputs
        self.steps = tuple(steps)
        targets = [t for t, _, _ in self.steps]
        if sorted(targets) != list(range(n_inputs, nvars)):
            raise PreconditionError("recipe must define each auxiliary exactly once")

    def extend(self, ax):
        ax = list(ax)
        if len(ax) != self.n_inputs:
            raise ArityError(
                "assignment of length %d for %d inputs" % (len(ax), self.n_inputs)
            )
        vals = [None] * self.nvars
        for i, a in enumerate(ax):
            if not isinstance(a, RingElement):
                raise TypeError("ring element required")
            if a.ring != self.ring:
                raise RingMismatchError("assignment entry from a different ring")
            vals[i] = a.val
        m = self.ring.modulus
        for target, op, args in self.steps:
            if op == "var":
                v = vals[args[0]]
            elif op == "const":
                v = args
            elif op == "mul":
                v = vals[args[0]] * vals[args[1]]
            else:
                v = sum(vals[a] for a in args)
            if m is not None:
                v %= m
            vals[target] = v
        return tuple(RingElement(self.ring, self.ring.canon(v)) for v in vals)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionRecipe)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.n_inputs == other.n_inputs
            and self.steps == other.steps
        )


def extend_solution(recipe, ax):
    return recipe.extend(ax)


def check_solution(system, assignment):
    assignment = list(assignment)
    if len(assignment) != system.nvars:
        raise ArityError(
            "assignment of length %d for %d variables"
            % (len(assignment), system.nvars)
        )
    return all(eq.eval(assignment).is_zero for eq in system.equations)


# -- lowering of sparse systems ---------------------------------------


def _token_key(tok):
    # x tokens order by catalog position, y tokens come later and order
    # by creation index; only tokens of one monomial are ever compared
    return (0, tok[1], 0, 0) if tok[0] == "x" else (1,) + tok[1:]


def _trailing_pair(mono):
    """The two lowest-ordered entries of a monomial's variable list,
    listed with multiplicity (a square yields a repeated variable)."""
    flat = []
    for tok, mult in mono.items():
        flat.extend([tok] * mult)
    flat.sort(key=_token_key, reverse=True)
    return flat[-2], flat[-1]


def _strip(mono, u, v):
    out = dict(mono)
    for t in (u, v):
        out[t] -= 1
        if not out[t]:
            del out[t]
    return out


def quadratize_sparse(system):
    """Lower a tier-x sparse system to quadratic-binomial-plus-affine form.

    Per equation, monomials are visited in graded-lex descending order.
    A monomial of degree >= 2 is peeled two trailing variables at a time
    into fresh y definitions, then named by a z variable; the equation
    itself becomes affine-linear in its z variables.  Zero equations are
    dropped.  Returns the lowered system and the extension recipe.
    """
    if not system.is_input_only:
        raise PreconditionError("input system must be over tier-x variables only")
    ring = system.ring
    nx = system.nvars
    events = []  # ("y", key, u, v) | ("z", key, mono) | ("f", lterms, const)
    ydefs = []
    zdefs = []
    for i, eq in enumerate((e for e in system.equations if not e.is_zero), start=1):
        lterms = []
        const = 0
        for j, exps in enumerate(eq.sorted_exps(), start=1):
            c = eq.terms[exps]
            if not sum(exps):
                const += c
                continue
            mono = {("x", p): e for p, e in enumerate(exps) if e}
            k = 1
            while sum(mono.values()) >= 2:
                u, v = _trailing_pair(mono)
                key = ("y", i, j, k)
                events.append(("y", key, u, v))
                ydefs.append(key)
                mono = _strip(mono, u, v)
                mono[key] = mono.get(key, 0) + 1
                k += 1
            (head,) = mono
            zkey = ("z", i, j)
            events.append(("z", zkey, head))
            zdefs.append(zkey)
            lterms.append((c, zkey))
        events.append(("f", lterms, ring.canon(const)))

    pos = {("x", p): p for p in range(nx)}
    for idx, key in enumerate(ydefs):
        pos[key] = nx + idx
    for idx, key in enumerate(zdefs):
        pos[key] = nx + len(ydefs) + idx
    nvars = nx + len(ydefs) + len(zdefs)
    names = list(system.var_names)
    names += ["y%d_%d_%d" % key[1:] for key in ydefs]
    names += ["z%d_%d" % key[1:] for key in zdefs]
    tiers = (TIER_X,) * nx + (TIER_Y,) * len(ydefs) + (TIER_Z,) * len(zdefs)

    def unit(p):
        return tuple(1 if q == p else 0 for q in range(nvars))

    equations = []
    steps = []
    for ev in events:
        if ev[0] == "y":
            _, key, u, v = ev
            body = [0] * nvars
            body[pos[u]] += 1
            body[pos[v]] += 1
            equations.append(
                SparsePoly(ring, nvars, {unit(pos[key]): 1, tuple(body): -1}, names)
            )
            steps.append((pos[key], "mul", (pos[u], pos[v])))
        elif ev[0] == "z":
            _, key, head = ev
            equations.append(
                SparsePoly(
                    ring, nvars, {unit(pos[key]): 1, unit(pos[head]): -1}, names
                )
            )
            steps.append((pos[key], "var", (pos[head],)))
        else:
            _, lterms, const = ev
            terms = {unit(pos[zkey]): c for c, zkey in lterms}
            if const:
                terms[(0,) * nvars] = const
            equations.append(SparsePoly(ring, nvars, terms, names))

    lowered = EquationSystem(ring, names, equations, tiers, provenance="quadratized")
    recipe = ExtensionRecipe(ring, nvars, nx, steps)
    return lowered, recipe


# -- lowering of circuit systems --------------------------------------


def quadratize_circuit(circuits):
    """Lower circuits (one equation `circuit = 0` each) over a shared
    catalog.  Every node gets a y variable and a defining equation; each
    circuit additionally contributes the equation `y_output = 0`."""
    circuits = list(circuits)
    if not circuits:
        raise PreconditionError("at least one circuit required")
    ring = circuits[0].ring
    nx = circuits[0].nvars
    names_x = circuits[0].var_names
    for c in circuits[1:]:
        if c.ring != ring:
            raise RingMismatchError("circuits over different rings")
        if c.nvars != nx or c.var_names != names_x:
            raise PreconditionError("circuits must share one variable catalog")

    ny = sum(c.size for c in circuits)
    nvars = nx + ny
    names = list(names_x)
    ypos = {}
    base = nx
    for ci, c in enumerate(circuits, start=1):
        for j, nid in enumerate(c.ids, start=1):
            ypos[(ci, nid)] = base
            names.append("y%d_%d" % (ci, j))
            base += 1

    def unit(p):
        return tuple(1 if q == p else 0 for q in range(nvars))

    equations = []
    steps = []
    for ci, c in enumerate(circuits, start=1):
        for nid in c.ids:
            kind, data = c.nodes[nid]
            head = ypos[(ci, nid)]
            if kind == INPUT:
                terms = {unit(head): 1, unit(data): -1}
                steps.append((head, "var", (data,)))
            elif kind == CONST:
                terms = {unit(head): 1}
                if data:
                    terms[(0,) * nvars] = -data
                steps.append((head, "const", data))
            elif kind == MUL:
                body = [0] * nvars
                body[ypos[(ci, data[0])]] += 1
                body[ypos[(ci, data[1])]] += 1
                terms = {unit(head): 1, tuple(body): -1}
                steps.append(
                    (head, "mul", (ypos[(ci, data[0])], ypos[(ci, data[1])]))
                )
            else:
                terms = {unit(head): 1}
                for child in data:
                    key = unit(ypos[(ci, child)])
                    terms[key] = terms.get(key, 0) - 1
                steps.append((head, "sum", tuple(ypos[(ci, k)] for k in data)))
            equations.append(SparsePoly(ring, nvars, terms, names))
        equations.append(
            SparsePoly(ring, nvars, {unit(ypos[(ci, c.output)]): 1}, names)
        )

    tiers = (TIER_X,) * nx + (TIER_Y,) * ny
    lowered = EquationSystem(ring, names, equations, tiers, provenance="quadratized")
    recipe = ExtensionRecipe(ring, nvars, nx, steps)
    return lowered, recipe


# -- shape checks ------------------------------------------------------


def equation_shape(eq):
    """'affine' (degree <= 1), 'binomial' (constant-free, one linear and
    one quadratic term), or 'other'."""
    if eq.degree() <= 1:
        return "affine"
    degs = sorted(sum(e) for e in eq.terms)
    if degs == [1, 2]:
        return "binomial"
    return "other"


def binomial_head_dominates(eq):
    """For a binomial shape: the linear term's variable has a strictly
    larger catalog position than both variables of the quadratic term."""
    lin = quad = None
    for exps in eq.terms:
        if sum(exps) == 1:
            lin = exps
        else:
            quad = exps
    head = lin.index(1)
    return all(p < head for p, e in enumerate(quad) if e)


def is_quadratized_shape(system):
    for eq in system.equations:
        shape = equation_shape(eq)
        if shape == "other":
            return False
        if shape == "binomial":
            if not eq.constant_term().is_zero:
                return False
            if not binomial_head_dominates(eq):
                return False
    return True


def first_constant_index(system):
    """Index of the first equation with a nonzero constant term, or None."""
    for i, eq in enumerate(system.equations):
        if not eq.constant_term().is_zero:
            return i
    return None


# -- constant normalization --------------------------------------------


def normalize_constants(system):
    """Cross-multiply constants away until exactly one equation carries
    one, and move that pivot equation to the front.

    Every constant-bearing equation must be affine-linear (lowering
    guarantees this).  For the pivot g_1 with constant c_1 and any other
    constant-bearing g_i with constant c_i, g_i is replaced by
    c_1*g_i - c_i*g_1, whose constant term cancels; a replacement that
    collapses to the zero polynomial is dropped.  Returns the new system
    and a flag that is True when no equation carries a constant at all,
    in which case the system is returned unchanged and the all-zero
    assignment satisfies it.
    """
    pivot_idx = first_constant_index(system)
    if pivot_idx is None:
        return system, True
    bearing = set()
    for i, eq in enumerate(system.equations):
        if not eq.constant_term().is_zero:
            if eq.degree() > 1:
                raise PreconditionError(
                    "constant-bearing equation %d is not affine-linear" % i
                )
            bearing.add(i)
    pivot = system.equations[pivot_idx]
    c1 = pivot.constant_term()
    out = [pivot]
    for i, eq in enumerate(system.equations):
        if i == pivot_idx:
            continue
        if i in bearing:
            eq = eq.scale(c1).sub(pivot.scale(eq.constant_term()))
            if eq.is_zero:
                continue
        out.append(eq)
    normalized = EquationSystem(
        system.ring, system.var_names, out, system.tiers, provenance="normalized"
    )
    return normalized, False


# -- file format -------------------------------------------------------
#
#   ring ...
#   vars <k> [<name> | x:<name> | y:<name> | z:<name> ...]
#   eq            (one block per equation; `term` lines, or `node` and
#   ...            `output` lines when the equation is a circuit)
#
# Lowered systems append machine-readable recipe comments:
#   # recipe <target> var <i> | const <coef> | mul <i> <j> | sum <i> ...


def system_to_text(system, recipe=None):
    lines = ["ring " + system.ring.token()]
    tagged = not system.is_input_only
    names = [
        (t + ":" + n) if tagged else n
        for t, n in zip(system.tiers, system.var_names)
    ]
    head = "vars %d" % system.nvars
    if names:
        head += " " + " ".join(names)
    lines.append(head)
    for eq in system.equations:
        lines.append("eq")
        for exps in eq.sorted_exps():
            coef = system.ring.format_coeff(eq.coefficient(exps))
            lines.append(("term %s " % coef + " ".join(map(str, exps))).rstrip())
    if recipe is not None:
        for target, op, args in recipe.steps:
            if op == "const":
                arg = system.ring.format_coeff(RingElement(system.ring, args))
            else:
                arg = " ".join(str(a) for a in args)
            lines.append("# recipe %d %s %s" % (target, op, arg))
    return "\n".join(lines) + "\n"


def _parse_tiered_names(raw_names):
    names = []
    tiers = []
    for raw in raw_names:
        if ":" in raw:
            tier, name = raw.split(":", 1)
            if tier not in (TIER_X, TIER_Y, TIER_Z):
                raise FormatError("unknown tier prefix %r" % tier)
        else:
            tier, name = TIER_X, raw
        tiers.append(tier)
        names.append(name)
    return tuple(names), tuple(tiers)


def system_from_text(text):
    """Parse a system file.  Returns ('sparse', system, recipe_or_None)
    or ('circuits', list_of_circuits)."""
    ring = None
    nvars = None
    names = tiers = None
    blocks = []
    recipe_lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("# recipe "):
            recipe_lines.append(stripped[len("# recipe "):].split())
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "ring":
            ring = Ring.from_token(parts[1:])
        elif key == "vars":
            if ring is None:
                raise FormatError("vars before ring")
            nvars, raw_names = parse_vars_line(parts[1:])
            if raw_names is None:
                names = default_names(nvars)
                tiers = (TIER_X,) * nvars
            else:
                names, tiers = _parse_tiered_names(raw_names)
        elif key == "eq":
            if nvars is None:
                raise FormatError("eq before vars")
            blocks.append([])
        elif key in ("term", "node", "output"):
            if not blocks:
                raise FormatError("%s line outside an eq block" % key)
            blocks[-1].append(parts)
        else:
            raise FormatError("unknown statement %r" % key)
    if ring is None or nvars is None:
        raise FormatError("system file needs ring and vars lines")
    if not blocks:
        raise FormatError("system file has no equations")

    kinds = {parts[0] for block in blocks for parts in block}
    if "term" in kinds and kinds != {"term"}:
        raise FormatError("mixed term and node blocks")

    if kinds <= {"term"}:
        equations = []
        for block in blocks:
            terms = {}
            for parts in block:
                if len(parts) != 2 + nvars:
                    raise FormatError("term line needs %d exponents" % nvars)
                coef = ring.parse_coeff(parts[1])
                exps = tuple(int(p) for p in parts[2:])
                if any(e < 0 for e in exps):
                    raise FormatError("negative exponent")
                if exps in terms:
                    raise FormatError("duplicate exponent vector %r" % (exps,))
                terms[exps] = coef
            equations.append(SparsePoly(ring, nvars, terms, names))
        system = EquationSystem(ring, names, equations, tiers)
        recipe = None
        if recipe_lines:
            recipe = _parse_recipe(ring, nvars, tiers, recipe_lines)
        return "sparse", system, recipe

    circuits = []
    for block in blocks:
        nodes = []
        output = None
        for parts in block:
            if parts[0] == "node":
                nodes.append(parse_node_line(parts[1:], ring))
            else:
                if len(parts) != 2:
                    raise FormatError("output line takes one id")
                output = int(parts[1])
        if output is None:
            raise FormatError("circuit block is missing an output line")
        circuits.append(Circuit(ring, nvars, nodes, output, names))
    return "circuits", circuits


def _parse_recipe(ring, nvars, tiers, recipe_lines):
    n_inputs = sum(1 for t in tiers if t == TIER_X)
    steps = []
    for parts in recipe_lines:
        if len(parts) < 3:
            raise FormatError("truncated recipe line")
        target = int(parts[0])
        op = parts[1]
        if op == "const":
            steps.append((target, op, ring.parse_coeff(parts[2]).val))
        elif op in ("var", "mul", "sum"):
            steps.append((target, op, tuple(int(a) for a in parts[2:])))
        else:
            raise FormatError("unknown recipe op %r" % op)
    return ExtensionRecipe(ring, nvars, n_inputs, steps)


def load_system(path):
    """Load a system file; a leading `manifest` line redirects each
    `circuit <relpath>` entry to its own circuit file."""
    import os.path

    from .circuits import load_circuit

    with open(path) as fh:
        text = fh.read()
    first = next(content_lines(text), None)
    if first == "manifest":
        circuits = []
        for line in content_lines(text):
            parts = line.split()
            if parts[0] == "manifest":
                continue
            if parts[0] != "circuit" or len(parts) != 2:
                raise FormatError("manifest lines must be `circuit <path>`")
            circuits.append(
                load_circuit(os.path.join(os.path.dirname(path), parts[1]))
            )
        if not circuits:
            raise FormatError("empty manifest")
        return "circuits", circuits, None
    kind = system_from_text(text)
    if kind[0] == "sparse":
        return kind
    return kind[0], kind[1], None


def save_system(path, system, recipe=None):
    with open(path, "w") as fh:
        fh.write(system_to_text(system, recipe))
