"""Cycles of a closed resolution and the disk calculus behind the edge action.

A cycle picks one edge at every cup and cap and threads ``n`` disjoint
upward paths through the graph.  Multiplying by the variable of an edge on a
cycle pushes the cycle rightwards across the smallest disk whose left
boundary runs along the cycle through that edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .diagram import CAP, CUP, FOUR, SingularGraph


@dataclass(frozen=True, order=True)
class Cycle:
    edges: tuple[int, ...]

    @classmethod
    def of(cls, edges) -> "Cycle":
        return cls(tuple(sorted(edges)))

    def __contains__(self, e: int) -> bool:
        return e in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_s")
        if s is None:
            s = frozenset(self.edges)
            object.__setattr__(self, "_s", s)
        return s

    def occupancy(self, g: SingularGraph) -> list[tuple[int, ...]]:
        """Occupied strand positions in every band."""
        occ = [[] for _ in range(g.n_levels + 1)]
        for e in self.edges:
            ed = g.edges[e]
            for b in range(ed.lo, ed.hi + 1):
                occ[b].append(ed.pos)
        return [tuple(sorted(x)) for x in occ]


def enumerate_cycles(g: SingularGraph) -> list[Cycle]:
    """All cycles, sorted by their edge tuples."""
    order = sorted(g.vertices, key=lambda v: (v.level, v.pos))
    found = []

    def rec(k: int, chosen: frozenset):
        if k == len(order):
            found.append(Cycle.of(chosen))
            return
        v = order[k]
        if v.kind == CUP:
            for e in v.outs:
                rec(k + 1, chosen | {e})
            return
        used = [e for e in v.ins if e in chosen]
        if v.kind == CAP:
            if len(used) == 1:
                rec(k + 1, chosen)
            return
        if not used:
            rec(k + 1, chosen)
        elif len(used) == 1:
            for e in v.outs:
                rec(k + 1, chosen | {e})

    rec(0, frozenset())
    return sorted(found)


def local_type(g: SingularGraph, Z: Cycle, v: int) -> str:
    """'' for locally empty, otherwise '13', '14', '23' or '24'."""
    i, j, k, l = g.roles(v)
    a = "1" if i in Z else "2" if j in Z else ""
    b = "3" if k in Z else "4" if l in Z else ""
    return a + b


def paths(g: SingularGraph, Z: Cycle) -> list[list[int]]:
    """The edge sequences of the strands of Z, one per cup, bottom to top."""
    out = []
    for c in g.cups:
        e = next(x for x in g.vertices[c].outs if x in Z)
        path = [e]
        while True:
            h = g.vertices[g.edges[e].head]
            if h.kind == CAP:
                break
            e = next(x for x in h.outs if x in Z)
            path.append(e)
        out.append(path)
    return out


def _path_of(g: SingularGraph, Z: Cycle, e: int) -> list[int]:
    for p in paths(g, Z):
        if e in p:
            return p
    raise ValueError(f"edge {e} is not on the cycle")


def cycle_vertices(g: SingularGraph, Z: Cycle) -> set[int]:
    vs = set()
    for e in Z.edges:
        vs.add(g.edges[e].tail)
        vs.add(g.edges[e].head)
    return vs


@dataclass(frozen=True)
class Disk:
    v_b: int
    v_t: int
    left_path: tuple[int, ...]
    right_path: tuple[int, ...]
    cell_set: frozenset
    in_edges: tuple[int, ...]
    out_edges: tuple[int, ...]


def disk_coefficient(d: Disk) -> tuple[int, ...]:
    """The coefficient monomial as a sorted tuple of edge indices."""
    return tuple(sorted(d.in_edges + d.out_edges))


def _disk_cells(g, left, right, lo_level, hi_level):
    pos_l, pos_r = {}, {}
    for e in left:
        ed = g.edges[e]
        for b in range(ed.lo, ed.hi + 1):
            pos_l[b] = ed.pos
    for e in right:
        ed = g.edges[e]
        for b in range(ed.lo, ed.hi + 1):
            pos_r[b] = ed.pos
    cells = set()
    for b in range(lo_level, hi_level):
        assert pos_l[b] < pos_r[b]
        for gap in range(pos_l[b], pos_r[b]):
            cells.add((b, gap))
    return frozenset(cells)


def _disks(g: SingularGraph, path: list[int], s_max: int, t_min: int,
           split: int, inclusive_split: bool) -> Iterator[Disk]:
    """Disks whose left boundary is a segment of ``path``.

    Vertices on the strand are u_0 (cup) .. u_r (cap), u_s = tail(path[s]).
    Admissible bottoms are u_s with s <= s_max, tops u_t with t >= t_min.
    Incoming coefficient edges are collected from u_{s+1}..u_split and
    outgoing ones from u_split'..u_{t-1}, where split' is split for a vertex
    disk and split + 1 for an edge disk.
    """
    us = [g.edges[path[0]].tail] + [g.edges[e].head for e in path]
    where = {u: k for k, u in enumerate(us)}
    o_start = split if inclusive_split else split + 1
    for s in range(0, s_max + 1):
        vb = g.vertices[us[s]]
        if len(vb.outs) != 2 or vb.outs[0] != path[s]:
            continue
        stack = [(vb.outs[1],)]
        while stack:
            right = stack.pop()
            h = g.vertices[g.edges[right[-1]].head]
            t = where.get(h.index)
            if t is not None:
                if (t >= t_min and h.kind in (FOUR, CAP) and h.ins[1] == right[-1]
                        and h.ins[0] == path[t - 1]):
                    left = tuple(path[s:t])
                    ins, outs = [], []
                    for q in range(s + 1, split + 1):
                        u = g.vertices[us[q]]
                        if u.ins[1] == path[q - 1]:
                            ins.append(u.ins[0])
                    for q in range(o_start, t):
                        u = g.vertices[us[q]]
                        if u.outs[1] == path[q]:
                            outs.append(u.outs[0])
                    cells = _disk_cells(g, left, right, vb.level, h.level)
                    yield Disk(vb.index, h.index, left, right, cells,
                               tuple(sorted(ins)), tuple(sorted(outs)))
                continue
            if h.kind == CAP:
                continue
            for e in h.outs:
                stack.append(right + (e,))


def _minimal(found: list[Disk]) -> Disk | None:
    if not found:
        return None
    best = min(found, key=lambda d: (len(d.cell_set), d.v_b, d.v_t, d.right_path))
    for d in found:
        assert best.cell_set <= d.cell_set, "disk family has no smallest member"
    return best


def all_disks(g: SingularGraph, Z: Cycle, e: int) -> list[Disk]:
    path = _path_of(g, Z, e)
    a = path.index(e)
    return list(_disks(g, path, a, a + 1, a, False))


def minimal_disk(g: SingularGraph, Z: Cycle, e: int) -> Disk | None:
    """D(Z, e): the disk contained in every other admissible disk."""
    return _minimal(all_disks(g, Z, e))


def minimal_vertex_disk(g: SingularGraph, Z: Cycle, v: int) -> Disk | None:
    """D(Z, v) for a 4-valent vertex v on Z, with endpoints distinct from v."""
    for path in paths(g, Z):
        us = [g.edges[path[0]].tail] + [g.edges[x].head for x in path]
        if v in us:
            c = us.index(v)
            return _minimal(list(_disks(g, path, c - 1, c + 1, c, True)))
    raise ValueError(f"vertex {v} is not on the cycle")


UNCHANGED, ZERO, PUSHED, DIAGONAL = "unchanged", "zero", "pushed", "diagonal"


@dataclass(frozen=True)
class Action:
    kind: str
    coefficient: tuple[int, ...] = ()
    target: Cycle | None = None


def _push(g: SingularGraph, Z: Cycle, d: Disk | None) -> Action:
    if d is None:
        return Action(ZERO)
    touched = cycle_vertices(g, Z)
    inner = [g.edges[e].head for e in d.right_path[:-1]]
    if any(e in Z for e in d.right_path) or any(u in touched for u in inner):
        return Action(ZERO)
    target = Cycle.of((set(Z.edges) - set(d.left_path)) | set(d.right_path))
    return Action(PUSHED, disk_coefficient(d), target)


def apply_U(g: SingularGraph, Z: Cycle, e: int) -> Action:
    """The action of U_e on the generator x_Z."""
    if e not in Z:
        return Action(UNCHANGED, (e,), Z)
    return _push(g, Z, minimal_disk(g, Z, e))


def apply_fv(g: SingularGraph, Z: Cycle, v: int) -> Action:
    """The vertex operator f_v on x_Z."""
    i, j, _, _ = g.roles(v)
    if v not in cycle_vertices(g, Z):
        return Action(DIAGONAL, tuple(sorted((i, j))), Z)
    return _push(g, Z, minimal_vertex_disk(g, Z, v))
