"""The net graph IR: signatures, nets, validation, and the categorical constructions.

A net from m to n is a finite graph of labeled operators wired through ports.
The boundary convention follows the worked example that fixes the orientation:

* boundary input k *enters* the net at port ``tgt[k]``;
* boundary output k *reads* port ``src[k]``.

``src`` also maps operator input slots ``(x, i)`` to the port operator ``x``
reads its i-th argument from, and ``tgt`` maps operator output slots ``(x, j)``
to the port that receives the j-th result.  ``tgt`` is injective over its whole
domain: a port has at most one producer, but may fan out to any number of
readers (including none).

All construction functions return nets whose ports and operators are
renumbered to ``0..k-1`` in a deterministic order, so results are reproducible
bit-for-bit.  Nets are immutable; every operation builds a fresh net.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import ArityMismatch, ArityTooSmall, UnknownKind, UnknownSymbol

#: A slot is either a boundary index (plain int) or an operator slot (op, pos).
Slot = Union[int, tuple[int, int]]


# ---------------------------------------------------------------------------
# Signature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Symbol table mapping each symbol name to its (arity, coarity)."""

    symbols: Mapping[str, tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "symbols", dict(self.symbols))
        for name, (ar, co) in self.symbols.items():
            if ar < 0 or co < 0:
                raise ArityMismatch(f"symbol {name!r} has negative arity/coarity")

    def arity(self, name: str) -> int:
        return self._lookup(name)[0]

    def coarity(self, name: str) -> int:
        return self._lookup(name)[1]

    def _lookup(self, name: str) -> tuple[int, int]:
        try:
            return self.symbols[name]
        except KeyError:
            raise UnknownSymbol(f"symbol {name!r} not in signature") from None

    def __contains__(self, name: str) -> bool:
        return name in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and dict(self.symbols) == dict(other.symbols)


# ---------------------------------------------------------------------------
# Net
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Net:
    """A net from ``m`` to ``n``.  See the module docstring for conventions.

    Structural equality of nets is deliberately not defined; compare nets up
    to isomorphism with :func:`kahnets.iso.find_iso`.
    """

    m: int
    n: int
    ports: frozenset[int]
    labels: Mapping[int, str]  # operator id -> symbol name
    src: Mapping[Slot, int]
    tgt: Mapping[Slot, int]

    def __post_init__(self):
        object.__setattr__(self, "ports", frozenset(self.ports))
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(self, "src", dict(self.src))
        object.__setattr__(self, "tgt", dict(self.tgt))

    # -- queries ------------------------------------------------------------

    @property
    def operators(self) -> tuple[int, ...]:
        return tuple(sorted(self.labels))

    def op_arity(self, x: int) -> int:
        i = 0
        while (x, i) in self.src:
            i += 1
        return i

    def op_coarity(self, x: int) -> int:
        j = 0
        while (x, j) in self.tgt:
            j += 1
        return j

    def op_inputs(self, x: int) -> tuple[int, ...]:
        return tuple(self.src[(x, i)] for i in range(self.op_arity(x)))

    def op_outputs(self, x: int) -> tuple[int, ...]:
        return tuple(self.tgt[(x, j)] for j in range(self.op_coarity(x)))

    def in_port(self, k: int) -> int:
        return self.tgt[k]

    def out_port(self, k: int) -> int:
        return self.src[k]

    def driven_ports(self) -> frozenset[int]:
        """Ports in the image of tgt (those with a producer)."""
        return frozenset(self.tgt.values())

    def read_ports(self) -> frozenset[int]:
        """Ports in the image of src (those with at least one reader)."""
        return frozenset(self.src.values())

    def __repr__(self) -> str:
        return f"Net({self.m}->{self.n}, ports={len(self.ports)}, operators={len(self.labels)})"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Issue:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Issue, ...]
    notes: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok


def validate(net: Net, sig: Signature) -> ValidationReport:
    """Check every definitional invariant; a net is well-formed iff no errors.

    Undriven ports (readable but produced by nothing) are legal and are only
    reported as informational notes, as are ports referenced by no slot at all.
    """
    errors: list[Issue] = []
    notes: list[Issue] = []

    if net.m < 0 or net.n < 0:
        errors.append(Issue("bad-boundary", f"negative boundary arity {net.m}->{net.n}"))

    arities: dict[int, tuple[int, int]] = {}
    for x in net.operators:
        label = net.labels[x]
        if label not in sig:
            errors.append(Issue("unknown-symbol", f"operator {x} labeled with unknown symbol {label!r}"))
            continue
        arities[x] = (sig.arity(label), sig.coarity(label))

    expected_src: set[Slot] = set(range(net.n))
    expected_tgt: set[Slot] = set(range(net.m))
    for x, (ar, co) in arities.items():
        expected_src.update((x, i) for i in range(ar))
        expected_tgt.update((x, j) for j in range(co))

    def check_domain(name: str, mapping: Mapping[Slot, int], expected: set[Slot]) -> None:
        have = set(mapping)
        for slot in sorted(expected - have, key=repr):
            errors.append(Issue("missing-slot", f"{name} undefined on slot {slot!r}"))
        for slot in sorted(have - expected, key=repr):
            # Slots of operators with unknown symbols are reported above already.
            if isinstance(slot, tuple) and slot[0] in net.labels and slot[0] not in arities:
                continue
            errors.append(Issue("extra-slot", f"{name} defined on unexpected slot {slot!r}"))

    check_domain("src", net.src, expected_src)
    check_domain("tgt", net.tgt, expected_tgt)

    for name, mapping in (("src", net.src), ("tgt", net.tgt)):
        for slot in sorted(mapping, key=repr):
            p = mapping[slot]
            if p not in net.ports:
                errors.append(Issue("dangling-port", f"{name}[{slot!r}] = {p} is not a declared port"))

    seen: dict[int, Slot] = {}
    for slot in sorted(net.tgt, key=repr):
        p = net.tgt[slot]
        if p in seen:
            errors.append(Issue(
                "tgt-not-injective",
                f"port {p} produced by both {seen[p]!r} and {slot!r}"))
        else:
            seen[p] = slot

    driven = net.driven_ports()
    referenced = driven | net.read_ports()
    for p in sorted(net.ports):
        if p not in driven:
            if p in referenced:
                notes.append(Issue("undriven-port", f"port {p} has readers but no producer (denotes bottom)"))
            else:
                notes.append(Issue("unreferenced-port", f"port {p} is attached to nothing"))

    return ValidationReport(tuple(errors), tuple(notes))


def _require_valid_shapes(net: Net) -> None:
    """Internal sanity assertion: tgt injectivity must survive every construction."""
    seen: set[int] = set()
    for p in net.tgt.values():
        if p in seen:
            raise RuntimeError(f"internal invariant lost: tgt not injective at port {p} in {net!r}")
        seen.add(p)


# ---------------------------------------------------------------------------
# Canonical renumbering and quotients
# ---------------------------------------------------------------------------

class _DSU:
    """Union-find over port identifiers (realizes the quotient relations)."""

    def __init__(self, items: Iterable[int]):
        self.parent = {i: i for i in items}

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Keep the smaller id as representative for deterministic output.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _rebuild(m: int, n: int, port_of: Mapping[int, int], labels: Mapping[int, str],
             src: Mapping[Slot, int], tgt: Mapping[Slot, int],
             extra_keep: Iterable[int] = ()) -> Net:
    """Map port references through ``port_of`` and renumber everything densely.

    Port classes that no slot of the result references are dropped unless
    listed in ``extra_keep``.  Quotienting operations pass the ports that were
    already unreferenced in their inputs as ``extra_keep``: the rule is that an
    operation removes exactly the wiring it orphaned itself.  Feedback of an
    identity wire would otherwise leave behind a floating port that nothing
    can observe, breaking equations such as ``trace(identity(n1+n), n) = id``.
    """
    new_src = {slot: port_of[p] for slot, p in src.items()}
    new_tgt = {slot: port_of[p] for slot, p in tgt.items()}
    kept = set(new_src.values()) | set(new_tgt.values())
    kept.update(port_of[p] for p in extra_keep)
    port_index = {p: i for i, p in enumerate(sorted(kept))}
    op_index = {x: i for i, x in enumerate(sorted(labels))}

    def reslot(slot: Slot) -> Slot:
        return (op_index[slot[0]], slot[1]) if isinstance(slot, tuple) else slot

    net = Net(
        m=m, n=n,
        ports=frozenset(range(len(kept))),
        labels={op_index[x]: lab for x, lab in labels.items()},
        src={reslot(s): port_index[p] for s, p in new_src.items()},
        tgt={reslot(s): port_index[p] for s, p in new_tgt.items()},
    )
    _require_valid_shapes(net)
    return net


def _unreferenced(net: Net) -> frozenset[int]:
    return net.ports - net.read_ports() - net.driven_ports()


def renumbered(net: Net) -> Net:
    """The same net with ports/operators renamed to dense ranges (kept all)."""
    port_index = {p: i for i, p in enumerate(sorted(net.ports))}
    op_index = {x: i for i, x in enumerate(sorted(net.labels))}

    def reslot(slot: Slot) -> Slot:
        return (op_index[slot[0]], slot[1]) if isinstance(slot, tuple) else slot

    return Net(net.m, net.n, frozenset(range(len(net.ports))),
               {op_index[x]: lab for x, lab in net.labels.items()},
               {reslot(s): port_index[p] for s, p in net.src.items()},
               {reslot(s): port_index[p] for s, p in net.tgt.items()})


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def identity(n: int) -> Net:
    """The identity net: n ports wired straight through."""
    rng = range(n)
    return Net(n, n, frozenset(rng), {}, {k: k for k in rng}, {k: k for k in rng})


def generator(sig: Signature, name: str) -> Net:
    """The one-operator net presenting symbol ``name``.

    Input k feeds port k, the operator reads ports 0..arity-1 in order and
    drives ports arity..arity+coarity-1, which the boundary outputs read.
    """
    ar, co = sig._lookup(name)
    src: dict[Slot, int] = {(0, i): i for i in range(ar)}
    src.update({k: ar + k for k in range(co)})
    tgt: dict[Slot, int] = {(0, j): ar + j for j in range(co)}
    tgt.update({k: k for k in range(ar)})
    return Net(ar, co, frozenset(range(ar + co)), {0: name}, src, tgt)


def symmetry(m: int, n: int) -> Net:
    """The wire crossing m+n -> n+m."""
    ports = range(m + n)
    src: dict[Slot, int] = {k: m + k for k in range(n)}
    src.update({n + j: j for j in range(m)})
    return Net(m + n, n + m, frozenset(ports), {}, src, {k: k for k in ports})


def duplication(n: int) -> Net:
    """The fan-out net n -> 2n: both output groups read the same n ports."""
    ports = range(n)
    src: dict[Slot, int] = {k: k % n for k in range(2 * n)} if n else {}
    return Net(n, 2 * n, frozenset(ports), {}, src, {k: k for k in ports})


def erasure(n: int) -> Net:
    """The discarding net n -> 0: inputs arrive and are read by nothing."""
    ports = range(n)
    return Net(n, 0, frozenset(ports), {}, {}, {k: k for k in ports})


def projection(m: int, n: int) -> Net:
    """The net m+n -> m keeping the first m wires and discarding the last n."""
    ports = range(m + n)
    return Net(m + n, m, frozenset(ports), {}, {k: k for k in range(m)}, {k: k for k in ports})


_STRUCTURAL = {
    "identity": (1, lambda sig, n: identity(n)),
    "symmetry": (2, lambda sig, m, n: symmetry(m, n)),
    "duplication": (1, lambda sig, n: duplication(n)),
    "erasure": (1, lambda sig, n: erasure(n)),
    "projection": (2, lambda sig, m, n: projection(m, n)),
    "generator": (1, lambda sig, name: generator(sig, name)),
}


def structural(sig: Signature, kind: str, *params) -> Net:
    """Dispatching constructor for the structural net families."""
    try:
        nparams, fn = _STRUCTURAL[kind]
    except KeyError:
        raise UnknownKind(f"unknown structural kind {kind!r}") from None
    if len(params) != nparams:
        raise ArityMismatch(f"structural {kind!r} takes {nparams} parameter(s), got {len(params)}")
    return fn(sig, *params)


def compose(a: Net, b: Net) -> Net:
    """Diagrammatic composition: feed a's outputs into b's inputs.

    Ports are the quotient of the disjoint union by gluing a.out(k) ~ b.in(k).
    """
    if a.n != b.m:
        raise ArityMismatch(f"compose: {a.n} outputs cannot feed {b.m} inputs")
    a, b = renumbered(a), renumbered(b)
    po, oo = len(a.ports), len(a.labels)  # offsets for b

    dsu = _DSU(range(po + len(b.ports)))
    for k in range(a.n):
        dsu.union(a.src[k], b.tgt[k] + po)

    labels = dict(a.labels)
    labels.update({x + oo: lab for x, lab in b.labels.items()})

    src: dict[Slot, int] = {}
    tgt: dict[Slot, int] = {}
    for (x, i), p in ((s, p) for s, p in a.src.items() if isinstance(s, tuple)):
        src[(x, i)] = p
    for (x, i), p in ((s, p) for s, p in b.src.items() if isinstance(s, tuple)):
        src[(x + oo, i)] = p + po
    for k in range(b.n):
        src[k] = b.src[k] + po
    for (x, j), p in ((s, p) for s, p in a.tgt.items() if isinstance(s, tuple)):
        tgt[(x, j)] = p
    for (x, j), p in ((s, p) for s, p in b.tgt.items() if isinstance(s, tuple)):
        tgt[(x + oo, j)] = p + po
    for k in range(a.m):
        tgt[k] = a.tgt[k]

    junk = set(_unreferenced(a)) | {p + po for p in _unreferenced(b)}
    port_of = {p: dsu.find(p) for p in range(po + len(b.ports))}
    return _rebuild(a.m, b.n, port_of, labels, src, tgt, extra_keep=junk)


def tensor(a: Net, b: Net) -> Net:
    """Parallel (side-by-side) composition; b's boundary indices are offset."""
    a, b = renumbered(a), renumbered(b)
    po, oo = len(a.ports), len(a.labels)

    labels = dict(a.labels)
    labels.update({x + oo: lab for x, lab in b.labels.items()})

    src: dict[Slot, int] = {}
    tgt: dict[Slot, int] = {}
    for s, p in a.src.items():
        src[s] = p
    for s, p in b.src.items():
        if isinstance(s, tuple):
            src[(s[0] + oo, s[1])] = p + po
        else:
            src[s + a.n] = p + po
    for s, p in a.tgt.items():
        tgt[s] = p
    for s, p in b.tgt.items():
        if isinstance(s, tuple):
            tgt[(s[0] + oo, s[1])] = p + po
        else:
            tgt[s + a.m] = p + po

    ports = frozenset(range(po + len(b.ports)))
    net = Net(a.m + b.m, a.n + b.n, ports, labels, src, tgt)
    _require_valid_shapes(net)
    return net


def trace(net: Net, x: int) -> Net:
    """Close the last ``x`` outputs onto the last ``x`` inputs (feedback).

    Port classes are generated by out(n2+k) ~ in(n1+k); boundary maps restrict
    to the surviving indices and pass through the quotient.
    """
    if net.m < x or net.n < x:
        raise ArityTooSmall(f"trace over {x} needs arities >= {x}, got {net.m}->{net.n}")
    net = renumbered(net)
    n1, n2 = net.m - x, net.n - x

    dsu = _DSU(net.ports)
    for k in range(x):
        dsu.union(net.src[n2 + k], net.tgt[n1 + k])

    src: dict[Slot, int] = {s: p for s, p in net.src.items() if isinstance(s, tuple)}
    src.update({k: net.src[k] for k in range(n2)})
    tgt: dict[Slot, int] = {s: p for s, p in net.tgt.items() if isinstance(s, tuple)}
    tgt.update({k: net.tgt[k] for k in range(n1)})

    port_of = {p: dsu.find(p) for p in net.ports}
    return _rebuild(n1, n2, port_of, net.labels, src, tgt, extra_keep=_unreferenced(net))
