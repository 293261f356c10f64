"""The sl1 complex of closed singular diagrams with bivalent and 4-valent
vertices, and its two-stage homology H1^pm.

Every vertex contributes Koszul factors R -> R over the edge ring.  A factor
has a state 1 (horizontal -2) and a state 0 (horizontal 0), a forward map
f from state 1 to state 0 (the d0+ part) and a backward map g from 0 to 1 (the
d0- part) with f g equal to the vertex potential share.  A bivalent vertex
gives (U_in - U_out, U_in + U_out); a 4-valent vertex gives (L_v, L'_v) and
(Q_v, -2).  Gradings are (quantum, horizontal).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

from gmpy2 import mpq

from .chain import Cycle, grade_cycle, mono_mul
from .diagram import CAP, CUP, FOUR, SingularGraph
from .homology import GradedDims, WindowError, graded_betti
from .linalg import Vec, apply, homology_piece, rank

Poly = dict  # sorted edge tuple -> int


@dataclass
class Sl1Vertex:
    ins: tuple[int, ...]
    outs: tuple[int, ...]


@dataclass
class Sl1Graph:
    """A closed oriented graph whose vertices are bivalent or 4-valent."""
    n_edges: int
    vertices: list[Sl1Vertex] = field(default_factory=list)

    def validate(self) -> None:
        heads = [0] * self.n_edges
        tails = [0] * self.n_edges
        for v in self.vertices:
            if (len(v.ins), len(v.outs)) not in ((1, 1), (2, 2)):
                raise ValueError("vertices must be bivalent or 4-valent")
            for e in v.ins:
                heads[e] += 1
            for e in v.outs:
                tails[e] += 1
        if any(h != 1 for h in heads) or any(t != 1 for t in tails):
            raise ValueError("every edge needs exactly one head and one tail vertex")

    @property
    def four_valent(self) -> list[Sl1Vertex]:
        return [v for v in self.vertices if len(v.ins) == 2]

    def components(self) -> int:
        parent = list(range(self.n_edges))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for v in self.vertices:
            es = v.ins + v.outs
            for e in es[1:]:
                parent[find(e)] = find(es[0])
        return len({find(e) for e in range(self.n_edges)})

    def is_unlink(self) -> bool:
        return not self.four_valent

    @classmethod
    def unlink(cls, k: int, marks: int = 1) -> "Sl1Graph":
        """k circles, each cut into ``marks`` edges by bivalent vertices."""
        verts = []
        for c in range(k):
            for t in range(marks):
                e_in = c * marks + t
                e_out = c * marks + (t + 1) % marks
                verts.append(Sl1Vertex((e_in,), (e_out,)))
        return cls(k * marks, verts)

    def subdivide(self, e: int) -> "Sl1Graph":
        """Insert a bivalent vertex in the middle of edge e."""
        new = self.n_edges
        verts = []
        for v in self.vertices:
            verts.append(Sl1Vertex(v.ins, tuple(new if x == e else x for x in v.outs)))
        verts.append(Sl1Vertex((new,), (e,)))
        return Sl1Graph(new + 1, verts)

    def disjoint_union(self, other: "Sl1Graph") -> "Sl1Graph":
        s = self.n_edges
        verts = list(self.vertices)
        for v in other.vertices:
            verts.append(Sl1Vertex(tuple(e + s for e in v.ins), tuple(e + s for e in v.outs)))
        return Sl1Graph(s + other.n_edges, verts)


def closure_minus_cycle(g: SingularGraph, Z: Cycle) -> Sl1Graph:
    """b(S - Z): delete the edges of Z and join cap i to cup i by a closing
    vertex; 4-valent vertices on Z become bivalent."""
    keep = [e for e in range(len(g.edges)) if e not in Z]
    idx = {e: k for k, e in enumerate(keep)}
    verts = []
    for v in g.vertices:
        if v.kind != FOUR:
            continue
        ins = tuple(idx[e] for e in v.ins if e in idx)
        outs = tuple(idx[e] for e in v.outs if e in idx)
        verts.append(Sl1Vertex(ins, outs))
    cups = [v for v in g.vertices if v.kind == CUP]
    caps = [v for v in g.vertices if v.kind == CAP]
    for cup, cap in zip(cups, caps):
        e_in = next(idx[e] for e in cap.ins if e in idx)
        e_out = next(idx[e] for e in cup.outs if e in idx)
        verts.append(Sl1Vertex((e_in,), (e_out,)))
    out = Sl1Graph(len(keep), verts)
    out.validate()
    return out


# -- the complex ---------------------------------------------------------------------

def _p(*terms) -> Poly:
    out: Poly = {}
    for c, mono in terms:
        m = tuple(sorted(mono))
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


@dataclass
class Factor:
    forward: Poly        # state 1 -> state 0, horizontal +2
    backward: Poly       # state 0 -> state 1, horizontal -2
    shift1: int          # quantum shift of state 1
    shift0: int


def vertex_factors(v: Sl1Vertex) -> list[Factor]:
    if len(v.ins) == 1:
        i, j = v.ins[0], v.outs[0]
        return [Factor(_p((1, (i,)), (-1, (j,))), _p((1, (i,)), (1, (j,))), 0, 0)]
    i, j = v.ins
    k, l = v.outs
    L = _p((1, (i,)), (1, (j,)), (-1, (k,)), (-1, (l,)))
    Lp = _p((1, (i,)), (1, (j,)), (1, (k,)), (1, (l,)))
    Q = _p((1, (i, j)), (-1, (k, l)))
    return [Factor(L, Lp, 0, 0), Factor(Q, _p((-2, ())), -1, 1)]


class Sl1Complex:
    """C1 of a closed graph, graded piece by graded piece."""

    def __init__(self, graph: Sl1Graph):
        graph.validate()
        comps = graph.components()
        covered = set()
        for v in graph.vertices:
            covered.update(v.ins)
        if len(covered) < graph.n_edges or comps == 0:
            raise ValueError("every component needs at least one vertex")
        self.graph = graph
        self.factors = [f for v in graph.vertices for f in vertex_factors(v)]
        self.states = list(product((0, 1), repeat=len(self.factors)))
        self.n_vars = graph.n_edges
        self._basis: dict = {}

    def potential_zero(self) -> bool:
        total: Poly = {}
        for f in self.factors:
            for m, c in _mul(f.forward, f.backward).items():
                total[m] = total.get(m, 0) + c
        return not any(total.values())

    def state_grading(self, s) -> tuple[int, int]:
        q = sum(f.shift1 if b else f.shift0 for f, b in zip(self.factors, s))
        return q, -2 * sum(s)

    @property
    def top(self) -> int:
        return max(self.state_grading(s)[0] for s in self.states)

    def basis(self, q: int, h: int) -> list[tuple[tuple, tuple]]:
        key = (q, h)
        if key not in self._basis:
            out = []
            for s in self.states:
                sq, sh = self.state_grading(s)
                if sh != h or sq < q or (sq - q) % 2:
                    continue
                d = (sq - q) // 2
                for m in combinations_with_replacement(range(self.n_vars), d):
                    out.append((s, m))
            self._basis[key] = out
        return self._basis[key]

    def matrix(self, q: int, h: int, plus: bool) -> list[Vec]:
        """d0+ (horizontal +2) or d0- (horizontal -2) from (q, h)."""
        src = self.basis(q, h)
        tgt = self.basis(q - 2, h + (2 if plus else -2))
        index = {b: n for n, b in enumerate(tgt)}
        cols = []
        for s, m in src:
            col: Vec = {}
            for i, bit in enumerate(s):
                if bit != (1 if plus else 0):
                    continue
                sign = -1 if sum(s[:i]) % 2 else 1
                f = self.factors[i]
                poly = f.forward if plus else f.backward
                t = s[:i] + (1 - bit,) + s[i + 1:]
                for pm, c in poly.items():
                    key = (t, mono_mul(m, pm))
                    n = index[key]
                    col[n] = col.get(n, 0) + sign * c
            cols.append({n: mpq(c) for n, c in col.items() if c})
        return cols

    def d_squared_zero(self, q: int, h: int) -> bool:
        """(d0+ + d0-)^2 = 0 on the piece (q, h), component by component."""
        pp = _compose(self.matrix(q - 2, h + 2, True), self.matrix(q, h, True))
        mm = _compose(self.matrix(q - 2, h - 2, False), self.matrix(q, h, False))
        pm = _compose(self.matrix(q - 2, h + 2, False), self.matrix(q, h, True))
        mp = _compose(self.matrix(q - 2, h - 2, True), self.matrix(q, h, False))
        mixed = [dict(a) for a in pm]
        for a, b in zip(mixed, mp):
            for k, v in b.items():
                a[k] = a.get(k, 0) + v
        return not any(pp) and not any(mm) and not any(
            any(v for v in a.values()) for a in mixed)


def _mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _compose(a: list[Vec], b: list[Vec]) -> list[Vec]:
    return [apply(a, col) for col in b]


def build_sl1(graph: Sl1Graph) -> Sl1Complex:
    cx = Sl1Complex(graph)
    if not cx.potential_zero():
        raise ValueError("vertex potentials do not cancel")
    return cx


def sl1_pm_homology(cx: Sl1Complex, margin: int = 4) -> GradedDims:
    """H1^pm: homology for d0+, then for the induced d0-; keys (q, h).

    When a 4-valent vertex is present this page need not be finite (the
    forward maps stop being a regular sequence once closing vertices
    identify variables), and a WindowError is raised; the total homology
    :func:`sl1_homology` vanishes in that case.
    """
    top = cx.top
    n = len(cx.factors)
    hs = [-2 * t for t in range(n + 1)]
    lo = -margin
    qs = [q for q in range(top + 2, lo - 1, -1) if (q - top) % 2 == 0]
    first: dict = {}
    for q in qs + [lo - 2]:
        for h in hs:
            size = len(cx.basis(q, h))
            if not size:
                continue
            first[q, h] = homology_piece(cx.matrix(q, h, True), cx.matrix(q + 2, h - 2, True), size)
    out = {}
    for q in qs:
        for h in hs:
            piece = first.get((q, h))
            if piece is None or not piece.dim:
                continue
            d_out = _induced(cx, first, q, h)
            d_in = _induced(cx, first, q + 2, h + 2)
            d = piece.dim - rank(d_out) - rank(d_in)
            if d:
                out[q, h] = d
    dims = GradedDims(out)
    for (q, h) in dims:
        if q in (qs[0], qs[-1]):
            raise WindowError(f"window too small: sl1 homology at q={q}")
    return dims


def total_matrix(cx: Sl1Complex, q: int) -> list[Vec]:
    """d0+ + d0- from the whole quantum grading q to q - 2.

    Blocks are ordered by horizontal grading 0, -2, -4, ...
    """
    hs = [-2 * t for t in range(len(cx.factors) + 1)]

    def offsets(qq):
        off, out = 0, {}
        for h in hs:
            out[h] = off
            off += len(cx.basis(qq, h))
        return out
    tgt = offsets(q - 2)
    cols: list[Vec] = []
    for h in hs:
        plus = cx.matrix(q, h, True) if h + 2 in tgt else None
        minus = cx.matrix(q, h, False) if h - 2 in tgt else None
        for j in range(len(cx.basis(q, h))):
            col: Vec = {}
            if plus is not None:
                col.update({tgt[h + 2] + r: a for r, a in plus[j].items()})
            if minus is not None:
                col.update({tgt[h - 2] + r: a for r, a in minus[j].items()})
            cols.append(col)
    return cols


def total_size(cx: Sl1Complex, q: int) -> int:
    return sum(len(cx.basis(q, -2 * t)) for t in range(len(cx.factors) + 1))


def sl1_homology(cx: Sl1Complex, margin: int = 4) -> GradedDims:
    """H1 = H(C1, d0+ + d0-), graded by the quantum grading only."""
    top = cx.top
    qs = [q for q in range(top + 2, -margin - 1, -1) if (q - top) % 2 == 0]
    return graded_betti(lambda q: total_matrix(cx, q), lambda q: total_size(cx, q), qs)


def _induced(cx: Sl1Complex, first: dict, q: int, h: int) -> list[Vec]:
    src = first.get((q, h))
    if src is None or not src.dim:
        return []
    tgt = first.get((q - 2, h - 2))
    mat = cx.matrix(q, h, False)
    return [tgt.project(apply(mat, rep)) if tgt is not None else {} for rep in src.reps]


def sl1_homology_of_cycle(g: SingularGraph, Z: Cycle, margin: int = 4) -> GradedDims:
    """Quantum-graded sl1 homology of b(S - Z)."""
    return sl1_homology(build_sl1(closure_minus_cycle(g, Z)), margin)


def composition_product(g: SingularGraph, cycles: list[Cycle], margin: int = 4) -> GradedDims:
    """Quantum dims of the sum over Z of H1^pm(b(S - Z)) shifted by
    T1(Z) - T2(Z) + w(Z)."""
    out: dict = {}
    for Z in cycles:
        gr = grade_cycle(g, Z)
        s = gr.t1 - gr.t2 + gr.w
        for q, d in sl1_homology_of_cycle(g, Z, margin).items():
            out[q + s] = out.get(q + s, 0) + d
    return GradedDims(out)
