"""Discrete Kahn-domain semantics: least-fixpoint evaluation of nets.

Streams are finite prefixes of real-valued sequences ordered by extension;
the empty prefix is bottom.  A net denotes the least solution of its port
equations: boundary-input ports carry the given streams, each operator-output
port carries the corresponding component of the operator's interpretation
applied to its input ports, and undriven ports stay at bottom.  The solution
is computed by Kleene sweeps from the all-bottom assignment; each sweep may
only extend port prefixes, which is asserted.

Interpretations receive a ``limit`` argument equal to the current sweep
number: functions with unbounded output (sources with no inputs) use it to
produce one more element per demand step, everything else ignores it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

from .errors import ArityMismatch, MissingBinding, MonotonicityViolation
from .nets import Net, compose, tensor, trace

Stream = tuple[float, ...]
BOT: Stream = ()


def as_stream(values: Sequence[float]) -> Stream:
    return tuple(float(v) for v in values)


def is_prefix(a: Stream, b: Stream) -> bool:
    return len(a) <= len(b) and b[:len(a)] == a


def compatible(a: Stream, b: Stream) -> bool:
    """True when one stream is a prefix of the other (same ideal stream)."""
    return is_prefix(a, b) or is_prefix(b, a)


# ---------------------------------------------------------------------------
# Interpretations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StreamFn:
    """A stream function with declared arities.

    ``fn(streams, limit)`` maps a tuple of input streams to a tuple of output
    streams; it must be monotone (extending inputs never retracts outputs).
    """

    ins: int
    outs: int
    fn: Callable[[tuple[Stream, ...], int], tuple[Stream, ...]]
    name: str = ""

    def __call__(self, streams: Sequence[Stream], limit: int = 0) -> tuple[Stream, ...]:
        if len(streams) != self.ins:
            raise ArityMismatch(f"{self.name or 'stream function'} takes {self.ins} streams, got {len(streams)}")
        outs = self.fn(tuple(streams), limit)
        if len(outs) != self.outs:
            raise ArityMismatch(f"{self.name or 'stream function'} returned {len(outs)} streams, declared {self.outs}")
        return tuple(tuple(o) for o in outs)


def pointwise(name: str, ins: int, f: Callable[..., float]) -> StreamFn:
    """Lift a value function to streams; output length is the shortest input."""
    def run(streams: tuple[Stream, ...], limit: int) -> tuple[Stream, ...]:
        return (tuple(f(*vals) for vals in zip(*streams)),)
    return StreamFn(ins, 1, run, name=name)


plus_fn = pointwise("plus", 2, lambda a, b: a + b)
minus_fn = pointwise("minus", 2, lambda a, b: a - b)


def scale_fn(c: float) -> StreamFn:
    return pointwise(f"scale({c})", 1, lambda a: a * c)


def divc_fn(c: float) -> StreamFn:
    return pointwise(f"divc({c})", 1, lambda a: a / c)


iota_fn = StreamFn(1, 1, lambda ss, limit: ((0.0,) + ss[0],), name="iota")
eps_fn = StreamFn(1, 1, lambda ss, limit: (ss[0][1:],), name="eps")


def const_source(k: float) -> StreamFn:
    """A source emitting one more ``k`` per demand step."""
    return StreamFn(0, 1, lambda ss, limit: ((float(k),) * max(limit, 0),), name=f"const({k})")


@dataclass(frozen=True)
class Interpretation:
    """Bindings from symbol names to stream functions."""

    bindings: Mapping[str, StreamFn]

    def __post_init__(self):
        object.__setattr__(self, "bindings", dict(self.bindings))

    def __getitem__(self, name: str) -> StreamFn:
        try:
            return self.bindings[name]
        except KeyError:
            raise MissingBinding(f"no interpretation bound for symbol {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.bindings


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DenoteStats:
    sweeps: int
    reached_fixpoint: bool
    total_lengths: tuple[int, ...]  # summed defined length after each sweep


def denote(net: Net, interp: Interpretation, inputs: Sequence[Sequence[float]],
           budget: int, *, max_len: Optional[int] = None,
           return_stats: bool = False):
    """Evaluate the net on input streams with at most ``budget`` Kleene sweeps.

    ``max_len`` truncates every stream to a fixed window (used by the sampled
    continuous-time backend, where the window is the horizon).  Returns the
    tuple of boundary-output streams, plus sweep statistics when asked.
    """
    if len(inputs) != net.m:
        raise ArityMismatch(f"net takes {net.m} inputs, got {len(inputs)}")
    streams_in = [as_stream(s) for s in inputs]
    if max_len is not None:
        streams_in = [s[:max_len] for s in streams_in]

    ops = net.operators
    fns: dict[int, StreamFn] = {}
    for x in ops:
        f = interp[net.labels[x]]
        if f.ins != net.op_arity(x) or f.outs != net.op_coarity(x):
            raise ArityMismatch(
                f"binding for {net.labels[x]!r} has arity {f.ins}->{f.outs}, "
                f"operator {x} has {net.op_arity(x)}->{net.op_coarity(x)}")
        fns[x] = f

    table: dict[int, Stream] = {p: BOT for p in net.ports}
    for k in range(net.m):
        table[net.tgt[k]] = streams_in[k]

    lengths: list[int] = []
    fixpoint = False
    sweep = 0
    while sweep < budget:
        sweep += 1
        changed = False
        for x in ops:
            args = tuple(table[p] for p in net.op_inputs(x))
            outs = fns[x](args, limit=sweep)
            for j, p in enumerate(net.op_outputs(x)):
                new = outs[j]
                if max_len is not None:
                    new = new[:max_len]
                old = table[p]
                if not is_prefix(old, new):
                    raise MonotonicityViolation(
                        f"binding for {net.labels[x]!r} retracted a prefix at port {p}")
                if new != old:
                    table[p] = new
                    changed = True
        lengths.append(sum(len(s) for s in table.values()))
        if not changed:
            fixpoint = True
            break

    outputs = tuple(table[net.src[k]] for k in range(net.n))
    if return_stats:
        return outputs, DenoteStats(sweep, fixpoint, tuple(lengths))
    return outputs


def as_stream_fn(net: Net, interp: Interpretation, budget: int) -> StreamFn:
    """The net's denotation packaged as an opaque stream function."""
    def run(streams: tuple[Stream, ...], limit: int) -> tuple[Stream, ...]:
        return denote(net, interp, streams, budget)
    return StreamFn(net.m, net.n, run, name=f"denote({net!r})")


def trace_fn(f: StreamFn, x: int, budget: int) -> StreamFn:
    """The semantic feedback operator on stream functions.

    For ``f`` of arity (a+x) -> (b+x), iterates the partial application from
    all-bottom tuples and projects away the ``x`` feedback components.  If the
    budget runs out before the iteration stabilizes, the prefix computed so
    far is returned (a short prefix means no more information within budget).
    """
    if f.ins < x or f.outs < x:
        raise ArityMismatch(f"cannot trace {x} wires of a {f.ins}->{f.outs} stream function")
    a, b = f.ins - x, f.outs - x

    def run(streams: tuple[Stream, ...], limit: int) -> tuple[Stream, ...]:
        cur: tuple[Stream, ...] = (BOT,) * (b + x)
        for sweep in range(1, budget + 1):
            nxt = f(tuple(streams) + cur[b:], limit=sweep)
            for old, new in zip(cur, nxt):
                if not is_prefix(old, new):
                    raise MonotonicityViolation("traced stream function retracted a prefix")
            if nxt == cur:
                break
            cur = nxt
        return cur[:b]

    return StreamFn(a, b, run, name=f"trace({f.name or 'f'},{x})")


# ---------------------------------------------------------------------------
# Functoriality checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctorialityResult:
    ok: bool
    records: tuple[tuple[str, bool, str], ...]


def _draw(pool: Sequence[Stream], count: int) -> list[Stream]:
    return [as_stream(pool[i % len(pool)]) for i in range(count)]


def check_functoriality(M: Net, N: Net, interp: Interpretation,
                        pools: Sequence[Sequence[Sequence[float]]],
                        budget: int) -> FunctorialityResult:
    """Compare evaluation of composed/tensored/traced nets against the
    corresponding operations on their denotations, sample by sample.

    Streams on the two sides are compared up to the common defined length:
    each output of one side must be a prefix of (or equal to) the other's.
    ``pools`` is a sequence of stream pools, one per sample; each check draws
    as many input streams as it needs from the pool, cycling.
    """
    records: list[tuple[str, bool, str]] = []

    def record(law: str, lhs: tuple[Stream, ...], rhs: tuple[Stream, ...]) -> None:
        ok = len(lhs) == len(rhs) and all(compatible(a, b) for a, b in zip(lhs, rhs))
        detail = "" if ok else f"lhs={lhs!r} rhs={rhs!r}"
        records.append((law, ok, detail))

    for pool in pools:
        pool = [as_stream(s) for s in pool] or [BOT]

        if M.n == N.m:
            ins = _draw(pool, M.m)
            lhs = denote(compose(M, N), interp, ins, budget)
            rhs = denote(N, interp, denote(M, interp, ins, budget), budget)
            record("compose", lhs, rhs)

        ins = _draw(pool, M.m + N.m)
        lhs = denote(tensor(M, N), interp, ins, budget)
        mm = denote(M, interp, ins[:M.m], budget)
        nn = denote(N, interp, ins[M.m:], budget)
        record("tensor", lhs, tuple(mm) + tuple(nn))

        x = min(N.m, N.n)
        ins = _draw(pool, N.m - x)
        lhs = denote(trace(N, x), interp, ins, budget)
        rhs = trace_fn(as_stream_fn(N, interp, budget), x, budget)(tuple(ins), limit=budget)
        record("trace", lhs, rhs)

    return FunctorialityResult(all(ok for _, ok, _ in records), tuple(records))
