"""Isomorphism of nets: witness search by partition refinement plus backtracking.

Two nets of the same arity are isomorphic when there are bijections of ports
and operators preserving labels, all wiring, and the boundary attachment.
Boundary attachment pins part of the port bijection outright; the rest is
found by iterated invariant refinement (labels, slot positions, neighborhood
colors) followed by a backtracking search inside the surviving color classes.
The search is deterministic for fixed inputs and complete at the sizes this
package targets (a few hundred ports).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .nets import Net, Slot


@dataclass(frozen=True)
class NetIso:
    """Witness bijections from one net onto another."""

    port_map: Mapping[int, int]
    op_map: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "port_map", dict(self.port_map))
        object.__setattr__(self, "op_map", dict(self.op_map))

    def inverse(self) -> "NetIso":
        return NetIso({v: k for k, v in self.port_map.items()},
                      {v: k for k, v in self.op_map.items()})

    def then(self, other: "NetIso") -> "NetIso":
        return NetIso({p: other.port_map[q] for p, q in self.port_map.items()},
                      {x: other.op_map[y] for x, y in self.op_map.items()})

    def verify(self, a: Net, b: Net) -> bool:
        """Direct check of every defining equation of a net isomorphism."""
        if a.m != b.m or a.n != b.n:
            return False
        if set(self.port_map) != a.ports or set(self.port_map.values()) != b.ports:
            return False
        if len(set(self.port_map.values())) != len(self.port_map):
            return False
        if set(self.op_map) != set(a.labels) or set(self.op_map.values()) != set(b.labels):
            return False
        if len(set(self.op_map.values())) != len(self.op_map):
            return False
        for x, y in self.op_map.items():
            if a.labels[x] != b.labels[y]:
                return False
        mapped_src = {self._slot(s): self.port_map[p] for s, p in a.src.items()}
        mapped_tgt = {self._slot(s): self.port_map[p] for s, p in a.tgt.items()}
        return mapped_src == dict(b.src) and mapped_tgt == dict(b.tgt)

    def _slot(self, slot: Slot) -> Slot:
        return (self.op_map[slot[0]], slot[1]) if isinstance(slot, tuple) else slot


def identity_iso(net: Net) -> NetIso:
    return NetIso({p: p for p in net.ports}, {x: x for x in net.labels})


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def _boundary_attachment(net: Net) -> dict[int, tuple]:
    """For each port, the sorted tuple of boundary slots attached to it."""
    att: dict[int, list] = {p: [] for p in net.ports}
    for s, p in net.tgt.items():
        if not isinstance(s, tuple):
            att[p].append(("in", s))
    for s, p in net.src.items():
        if not isinstance(s, tuple):
            att[p].append(("out", s))
    return {p: tuple(sorted(v)) for p, v in att.items()}


def _driver(net: Net) -> dict[int, Optional[tuple[int, int]]]:
    drv: dict[int, Optional[tuple[int, int]]] = {p: None for p in net.ports}
    for s, p in net.tgt.items():
        if isinstance(s, tuple):
            drv[p] = s
    return drv


def _readers(net: Net) -> dict[int, list[tuple[int, int]]]:
    rdr: dict[int, list[tuple[int, int]]] = {p: [] for p in net.ports}
    for s, p in net.src.items():
        if isinstance(s, tuple):
            rdr[p].append(s)
    return rdr


def _refine(a: Net, b: Net) -> Optional[tuple[dict[int, int], dict[int, int], dict[int, int], dict[int, int]]]:
    """Color ports and operators of both nets by iterated invariants.

    Returns (port colors of a, of b, op colors of a, of b) or None when the
    color histograms already rule out an isomorphism.
    """
    att_a, att_b = _boundary_attachment(a), _boundary_attachment(b)
    drv_a, drv_b = _driver(a), _driver(b)
    rdr_a, rdr_b = _readers(a), _readers(b)

    def canon(values_a: dict, values_b: dict) -> Optional[tuple[dict[int, int], dict[int, int]]]:
        table: dict[str, int] = {}
        for key in sorted({repr(v) for v in values_a.values()} | {repr(v) for v in values_b.values()}):
            table[key] = len(table)
        ca = {k: table[repr(v)] for k, v in values_a.items()}
        cb = {k: table[repr(v)] for k, v in values_b.items()}
        hist_a = sorted(ca.values())
        hist_b = sorted(cb.values())
        if hist_a != hist_b:
            return None
        return ca, cb

    start = canon(att_a, att_b)
    if start is None:
        return None
    pc_a, pc_b = start
    oc_a = {x: 0 for x in a.labels}
    oc_b = {x: 0 for x in b.labels}
    res = canon({x: a.labels[x] for x in a.labels}, {x: b.labels[x] for x in b.labels})
    if res is None:
        return None
    oc_a, oc_b = res

    for _ in range(len(a.ports) + len(a.labels) + 2):
        new_oc_raw_a = {x: (a.labels[x],
                            tuple(pc_a[p] for p in a.op_inputs(x)),
                            tuple(pc_a[p] for p in a.op_outputs(x))) for x in a.labels}
        new_oc_raw_b = {x: (b.labels[x],
                            tuple(pc_b[p] for p in b.op_inputs(x)),
                            tuple(pc_b[p] for p in b.op_outputs(x))) for x in b.labels}
        res = canon(new_oc_raw_a, new_oc_raw_b)
        if res is None:
            return None
        new_oc_a, new_oc_b = res

        def port_sig(net: Net, p: int, att, drv, rdr, pc, oc):
            d = drv[p]
            driver = (oc[d[0]], d[1]) if d is not None else None
            readers = tuple(sorted((oc[r[0]], r[1]) for r in rdr[p]))
            return (att[p], pc[p], driver, readers)

        new_pc_raw_a = {p: port_sig(a, p, att_a, drv_a, rdr_a, pc_a, new_oc_a) for p in a.ports}
        new_pc_raw_b = {p: port_sig(b, p, att_b, drv_b, rdr_b, pc_b, new_oc_b) for p in b.ports}
        res = canon(new_pc_raw_a, new_pc_raw_b)
        if res is None:
            return None
        new_pc_a, new_pc_b = res

        stable = (len(set(new_pc_a.values())) == len(set(pc_a.values()))
                  and len(set(new_oc_a.values())) == len(set(oc_a.values())))
        pc_a, pc_b, oc_a, oc_b = new_pc_a, new_pc_b, new_oc_a, new_oc_b
        if stable:
            break
    return pc_a, pc_b, oc_a, oc_b


def find_iso(a: Net, b: Net) -> Optional[NetIso]:
    """A witness isomorphism from ``a`` onto ``b``, or None when none exists."""
    if a.m != b.m or a.n != b.n:
        return None
    if len(a.ports) != len(b.ports) or len(a.labels) != len(b.labels):
        return None
    if sorted(a.labels.values()) != sorted(b.labels.values()):
        return None

    # Boundary attachment forces part of the port bijection.
    forced: dict[int, int] = {}
    for k in range(a.m):
        forced[a.tgt[k]] = b.tgt[k]
    for k in range(a.n):
        pa, pb = a.src[k], b.src[k]
        if forced.get(pa, pb) != pb:
            return None
        forced[pa] = pb
    if len(set(forced.values())) != len(forced):
        return None

    colors = _refine(a, b)
    if colors is None:
        return None
    pc_a, pc_b, oc_a, oc_b = colors
    for pa, pb in forced.items():
        if pc_a[pa] != pc_b[pb]:
            return None

    candidates = {x: sorted(y for y in b.labels if oc_b[y] == oc_a[x]) for x in a.labels}
    order = sorted(a.labels, key=lambda x: (len(candidates[x]), x))

    pmap: dict[int, int] = dict(forced)
    pused: set[int] = set(forced.values())
    omap: dict[int, int] = {}
    oused: set[int] = set()

    def bind_ports(pairs: list[tuple[int, int]], undo: list) -> bool:
        for pa, pb in pairs:
            cur = pmap.get(pa)
            if cur is not None:
                if cur != pb:
                    return False
                continue
            if pb in pused or pc_a[pa] != pc_b[pb]:
                return False
            pmap[pa] = pb
            pused.add(pb)
            undo.append(pa)
        return True

    def solve(i: int) -> bool:
        if i == len(order):
            return finish()
        x = order[i]
        ain, aout = a.op_inputs(x), a.op_outputs(x)
        for y in candidates[x]:
            if y in oused:
                continue
            pairs = list(zip(ain, b.op_inputs(y))) + list(zip(aout, b.op_outputs(y)))
            undo: list[int] = []
            if bind_ports(pairs, undo):
                omap[x] = y
                oused.add(y)
                if solve(i + 1):
                    return True
                del omap[x]
                oused.discard(y)
            for pa in undo:
                pused.discard(pmap.pop(pa))
        return False

    def finish() -> bool:
        # Ports left over are attached to nothing; pair them up within classes.
        rest_a = sorted(p for p in a.ports if p not in pmap)
        rest_b = sorted(p for p in b.ports if p not in pused)
        by_color: dict[int, list[int]] = {}
        for p in rest_b:
            by_color.setdefault(pc_b[p], []).append(p)
        undo: list[int] = []
        for p in rest_a:
            bucket = by_color.get(pc_a[p])
            if not bucket:
                for q in undo:
                    pused.discard(pmap.pop(q))
                return False
            q = bucket.pop(0)
            pmap[p] = q
            pused.add(q)
            undo.append(p)
        return True

    if not solve(0):
        return None
    iso = NetIso(pmap, omap)
    if not iso.verify(a, b):  # defensive: search invariants should guarantee this
        raise RuntimeError("internal error: candidate isomorphism failed verification")
    return iso
