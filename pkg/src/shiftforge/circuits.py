"""Arithmetic circuits over a shared variable catalog.

Nodes are listed in topological file order with strictly increasing ids.
Product nodes have fan-in exactly two (larger fan-in is rejected, never
auto-split); sum nodes have fan-in at least one and may repeat children.
Dangling nodes are permitted and still count toward the circuit size.
"""

from __future__ import annotations

from .errors import ArityError, CapExceededError, FormatError, RingMismatchError
from .rings import Ring, RingElement
from .sparsepoly import (
    SparsePoly,
    content_lines,
    default_names,
    parse_vars_line,
    term_cap,
)

INPUT = "input"
CONST = "const"
MUL = "mul"
ADD = "add"


class Circuit:
    __slots__ = ("ring", "nvars", "var_names", "ids", "nodes", "output")

    def __init__(self, ring, nvars, nodes, output, var_names=None):
        """nodes: sequence of (id, kind, data) in file order.  data is a
        var index for inputs, a payload for consts, child id tuples
        otherwise."""
        self.ring = ring
        self.nvars = nvars
        self.var_names = tuple(var_names) if var_names else default_names(nvars)
        if len(self.var_names) != nvars:
            raise ArityError("variable name count mismatch")
        seen = {}
        ids = []
        prev = -1
        for nid, kind, data in nodes:
            if nid <= prev:
                raise FormatError("node ids must be strictly increasing")
            prev = nid
            if kind == INPUT:
                if not 0 <= data < nvars:
                    raise FormatError("input node references variable %r" % (data,))
            elif kind == CONST:
                data = ring.canon(data.val if isinstance(data, RingElement) else data)
            elif kind == MUL:
                if len(data) != 2:
                    raise FormatError("product node fan-in must be exactly 2")
                data = tuple(data)
            elif kind == ADD:
                if len(data) < 1:
                    raise FormatError("sum node fan-in must be at least 1")
                data = tuple(data)
            else:
                raise FormatError("unknown node kind %r" % (kind,))
            if kind in (MUL, ADD):
                for ref in data:
                    if ref not in seen:
                        raise FormatError(
                            "node %d references %d before definition" % (nid, ref)
                        )
            seen[nid] = (kind, data)
            ids.append(nid)
        if output not in seen:
            raise FormatError("output id %r is not a node" % (output,))
        self.ids = tuple(ids)
        self.nodes = seen
        self.output = output

    @property
    def size(self):
        return len(self.ids)

    def eval(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise ArityError("point length %d for %d inputs" % (len(point), self.nvars))
        vals = []
        for p in point:
            if not isinstance(p, RingElement):
                raise TypeError("ring element required")
            if p.ring != self.ring:
                raise RingMismatchError("point entry from a different ring")
            vals.append(p.val)
        m = self.ring.modulus
        out = {}
        for nid in self.ids:
            kind, data = self.nodes[nid]
            if kind == INPUT:
                v = vals[data]
            elif kind == CONST:
                v = data
            elif kind == MUL:
                v = out[data[0]] * out[data[1]]
            else:
                v = sum(out[c] for c in data)
            if m is not None:
                v %= m
            out[nid] = v
        return RingElement(self.ring, self.ring.canon(out[self.output]))

    def expand(self, cap=None):
        """The output polynomial, expanded to sparse form.

        Raises CapExceededError as soon as an intermediate (estimated for
        products) would exceed the term budget."""
        if cap is None:
            cap = term_cap()
        out = {}
        for nid in self.ids:
            kind, data = self.nodes[nid]
            if kind == INPUT:
                p = SparsePoly.variable(self.ring, self.nvars, data, self.var_names)
            elif kind == CONST:
                p = SparsePoly.constant(self.ring, self.nvars, data, self.var_names)
            elif kind == MUL:
                a, b = out[data[0]], out[data[1]]
                if a.sparsity() * b.sparsity() > cap:
                    raise CapExceededError(
                        "product at node %d may exceed %d terms" % (nid, cap)
                    )
                p = a.mul(b)
            else:
                p = SparsePoly.zero(self.ring, self.nvars, self.var_names)
                for c in data:
                    p = p.add(out[c])
            if p.sparsity() > cap:
                raise CapExceededError("node %d exceeds %d terms" % (nid, cap))
            out[nid] = p
        return out[self.output]

    def __eq__(self, other):
        return (
            isinstance(other, Circuit)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.ids == other.ids
            and self.nodes == other.nodes
            and self.output == other.output
        )


# -- file format -----------------------------------------------------
#
#   ring ...
#   vars <k> [names]
#   node <id> input <var-index>
#   node <id> const <coef>
#   node <id> mul <id> <id>
#   node <id> add <id> [<id> ...]
#   output <id>


def circuit_to_text(circuit):
    lines = ["ring " + circuit.ring.token()]
    head = "vars %d" % circuit.nvars
    if circuit.nvars:
        head += " " + " ".join(circuit.var_names)
    lines.append(head)
    lines.extend(node_lines(circuit))
    return "\n".join(lines) + "\n"


def node_lines(circuit):
    lines = []
    for nid in circuit.ids:
        kind, data = circuit.nodes[nid]
        if kind == INPUT:
            lines.append("node %d input %d" % (nid, data))
        elif kind == CONST:
            coef = circuit.ring.format_coeff(RingElement(circuit.ring, data))
            lines.append("node %d const %s" % (nid, coef))
        else:
            lines.append(
                "node %d %s %s" % (nid, kind, " ".join(str(c) for c in data))
            )
    lines.append("output %d" % circuit.output)
    return lines


def parse_node_line(parts, ring):
    """Parse tokens after `node`; returns (id, kind, data)."""
    if len(parts) < 2:
        raise FormatError("truncated node line")
    try:
        nid = int(parts[0])
    except ValueError as exc:
        raise FormatError("bad node id %r" % parts[0]) from exc
    if nid < 0:
        raise FormatError("node ids must be nonnegative")
    kind = parts[1]
    args = parts[2:]
    try:
        if kind == INPUT:
            if len(args) != 1:
                raise FormatError("input node takes one variable index")
            return nid, kind, int(args[0])
        if kind == CONST:
            if len(args) != 1:
                raise FormatError("const node takes one coefficient")
            return nid, kind, ring.parse_coeff(args[0]).val
        if kind in (MUL, ADD):
            return nid, kind, tuple(int(a) for a in args)
    except ValueError as exc:
        raise FormatError("bad node line: %s" % exc) from exc
    raise FormatError("unknown node kind %r" % kind)


def circuit_from_text(text):
    ring = None
    nvars = None
    names = None
    nodes = []
    output = None
    for line in content_lines(text):
        parts = line.split()
        key = parts[0]
        if key == "ring":
            ring = Ring.from_token(parts[1:])
        elif key == "vars":
            if ring is None:
                raise FormatError("vars before ring")
            nvars, names = parse_vars_line(parts[1:])
        elif key == "node":
            if nvars is None:
                raise FormatError("node before vars")
            nodes.append(parse_node_line(parts[1:], ring))
        elif key == "output":
            if len(parts) != 2:
                raise FormatError("output line takes one id")
            output = int(parts[1])
        else:
            raise FormatError("unknown statement %r" % key)
    if ring is None or nvars is None or output is None:
        raise FormatError("circuit file needs ring, vars and output lines")
    return Circuit(ring, nvars, nodes, output, names)


def save_circuit(path, circuit):
    with open(path, "w") as fh:
        fh.write(circuit_to_text(circuit))


def load_circuit(path):
    with open(path) as fh:
        return circuit_from_text(fh.read())
