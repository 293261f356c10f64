"""Graded pieces of the cycle module, its linear quotient, the Koszul closing
factor, the edge maps between adjacent resolutions and the assembled cube.

A basis element of the cycle module is a pair ``(z, mono)`` where ``z`` indexes
a cycle and ``mono`` is a sorted tuple of edge indices (a monomial, repeated
entries for powers) in the canonical form of its congruence class.  Every
variable acts on such a basis element by a single basis element or by zero,
so the module action is a partial map on the basis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement, product

from gmpy2 import mpq

from .cycles import PUSHED, ZERO as ACT_ZERO, Cycle, apply_U, enumerate_cycles, local_type
from .diagram import PlatWord, SingularGraph, resolve
from .linalg import ONE, Echelon, Vec, apply, axpy
from .report import Report

Mono = tuple


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(sorted(a + b))


def mono_remove(a: Mono, e: int) -> Mono:
    k = a.index(e)
    return a[:k] + a[k + 1:]


@dataclass(frozen=True)
class CycleGrading:
    t1: int
    t2: int
    empty: int
    w: int

    @property
    def q(self) -> int:
        return self.t1 - self.t2 + self.empty + self.w


def grade_cycle(g: SingularGraph, Z: Cycle) -> CycleGrading:
    """T1, T2, E and w of a cycle; the generator sits in grading ``q``."""
    t1 = t2 = empty = 0
    for v in g.four_valent:
        t = local_type(g, Z, v)
        t1 += t == "13"
        t2 += t == "24"
        empty += t == ""
    w = 0
    for cup, cap in zip(g.cups, g.caps):
        lo = g.vertices[cup].outs[0] in Z
        hi = g.vertices[cap].ins[0] in Z
        if lo and hi:
            w += 1
        elif not lo and not hi:
            w -= 1
    return CycleGrading(t1, t2, empty, w)


class CycleModule:
    """The cycle module of a closed resolution with its linear quotient."""

    def __init__(self, g: SingularGraph):
        self.g = g
        self.cycles = enumerate_cycles(g)
        self.index = {Z: k for k, Z in enumerate(self.cycles)}
        self.gradings = [grade_cycle(g, Z) for Z in self.cycles]
        self._zsets = [frozenset(Z.edges) for Z in self.cycles]
        self._free = []
        self._rewrites = []
        for Z in self.cycles:
            zs = frozenset(Z.edges)
            self._free.append(tuple(e for e in range(len(g.edges)) if e not in zs))
            rules = []
            for v in g.four_valent:
                i, j, k, l = g.roles(v)
                if not {i, j, k, l} & zs:
                    rules.append((tuple(sorted((i, j))), tuple(sorted((k, l)))))
            self._rewrites.append(rules)
        self._canon: dict = {}
        self._act: dict = {}
        self._push: dict = {}
        self._pieces: dict = {}

    # -- congruence classes -------------------------------------------------

    def canon(self, z: int, mono: Mono) -> Mono | None:
        """Canonical representative in R_Z, or None when the class is zero."""
        zs = self._zsets[z]
        if any(e in zs for e in mono):
            return None
        key = (z, mono)
        hit = self._canon.get(key)
        if hit is not None:
            return hit
        seen = {mono}
        todo = deque([mono])
        rules = self._rewrites[z]
        while todo:
            m = todo.popleft()
            for a, b in rules:
                for src, dst in ((a, b), (b, a)):
                    if _contains(m, src):
                        n = mono_mul(_remove_all(m, src), dst)
                        if n not in seen:
                            seen.add(n)
                            todo.append(n)
        rep = min(seen)
        for m in seen:
            self._canon[z, m] = rep
        return rep

    def classes(self, z: int, degree: int) -> list[Mono]:
        """Canonical representatives of all degree-d classes in R_Z."""
        reps = set()
        for m in combinations_with_replacement(self._free[z], degree):
            reps.add(self.canon(z, m))
        return sorted(reps)

    # -- module action --------------------------------------------------------

    def _push_of(self, z: int, e: int):
        key = (z, e)
        if key not in self._push:
            a = apply_U(self.g, self.cycles[z], e)
            if a.kind == PUSHED:
                self._push[key] = (self.index[a.target], a.coefficient)
            else:
                assert a.kind == ACT_ZERO
                self._push[key] = None
        return self._push[key]

    def normal_form(self, z: int, mono: Mono) -> tuple[int, Mono] | None:
        """The basis element equal to ``mono`` acting on x_Z, or None for zero."""
        while True:
            zs = self._zsets[z]
            on = [e for e in mono if e in zs]
            if not on:
                c = self.canon(z, mono)
                return None if c is None else (z, c)
            e = min(on)
            p = self._push_of(z, e)
            if p is None:
                return None
            z, coeff = p
            mono = mono_mul(mono_remove(mono, e), coeff)

    def act(self, e: int, basis: tuple[int, Mono]) -> tuple[int, Mono] | None:
        key = (e,) + basis
        if key not in self._act:
            z, m = basis
            self._act[key] = self.normal_form(z, mono_mul(m, (e,)))
        return self._act[key]

    def act_mono(self, mono: Mono, basis) -> tuple[int, Mono] | None:
        z, m = basis
        return self.normal_form(z, mono_mul(m, mono))

    def act_linear(self, form: dict[int, int], basis) -> dict:
        out: dict = {}
        for e, c in form.items():
            r = self.act(e, basis)
            if r is not None:
                out[r] = out.get(r, 0) + c
        return {k: v for k, v in out.items() if v}

    # -- gradings -------------------------------------------------------------

    @property
    def top(self) -> int:
        return max(gr.q for gr in self.gradings)

    def basis(self, q: int) -> list[tuple[int, Mono]]:
        """Basis of M_q: pairs (z, class) with q(x_Z) - 2 deg = q."""
        out = []
        for z, gr in enumerate(self.gradings):
            d2 = gr.q - q
            if d2 >= 0 and d2 % 2 == 0:
                out.extend((z, m) for m in self.classes(z, d2 // 2))
        return out

    @cached_property
    def circles(self) -> int:
        from .diagram import smooth
        return smooth(self.g).circle_count

    def l_forms(self) -> list[dict[int, int]]:
        """The linear elements L_v of the 4-valent vertices."""
        out = []
        for v in self.g.four_valent:
            i, j, k, l = self.g.roles(v)
            f: dict[int, int] = {}
            for e, s in ((i, 1), (j, 1), (k, -1), (l, -1)):
                f[e] = f.get(e, 0) + s
            out.append({e: c for e, c in f.items() if c})
        return out

    def closing_forms(self) -> list[tuple[dict[int, int], dict[int, int]]]:
        """(L_w, L'_w) for every cup/cap pair."""
        out = []
        for cup, cap in zip(self.g.cups, self.g.caps):
            a, b = self.g.vertices[cap].ins
            c, d = self.g.vertices[cup].outs
            L: dict[int, int] = {}
            Lp: dict[int, int] = {}
            for e, s in ((a, 1), (b, 1), (c, -1), (d, -1)):
                L[e] = L.get(e, 0) + s
                Lp[e] = Lp.get(e, 0) + 1
            out.append(({e: x for e, x in L.items() if x}, Lp))
        return out

    # -- the linear quotient by direct elimination ----------------------------

    @cached_property
    def _eliminable(self) -> frozenset:
        # right outgoing edges are distinct across vertices; L_v solves for them
        return frozenset(self.g.roles(v)[3] for v in self.g.four_valent)

    def _elim_key(self, b):
        z, m = b
        return (-sum(e in self._eliminable for e in m), z, m)

    def direct_piece(self, q: int) -> "QuotientPiece":
        """The graded piece of M / L M in grading q, by eliminating L M_{q+2}.

        Exponential in the number of edges; used as an independent check on
        the presentation used by :class:`LinearQuotient`.
        """
        hit = self._pieces.get(q)
        if hit is not None:
            return hit
        basis = sorted(self.basis(q), key=self._elim_key)
        index = {b: k for k, b in enumerate(basis)}
        ech = Echelon()
        forms = self.l_forms()
        if forms and basis:
            for b in self.basis(q + 2):
                for f in forms:
                    img = self.act_linear(f, b)
                    if img:
                        ech.add({index[k]: mpq(v) for k, v in img.items()})
        free = [k for k in range(len(basis)) if k not in ech.rows]
        p = QuotientPiece(q, basis, index, ech, free, {c: n for n, c in enumerate(free)})
        self._pieces[q] = p
        return p


@dataclass
class QuotientPiece:
    q: int
    basis: list
    index: dict
    ech: Echelon = field(repr=False)
    free: list[int] = field(default_factory=list)
    free_index: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, elem: dict) -> Vec:
        vec = {self.index[b]: mpq(c) for b, c in elem.items() if c}
        r, _ = self.ech.reduce(vec)
        return {self.free_index[c]: v for c, v in r.items()}

    def lift(self, k: int) -> tuple:
        return self.basis[self.free[k]]


def _contains(m: Mono, sub: Mono) -> bool:
    if sub[0] == sub[1]:
        return m.count(sub[0]) >= 2
    return sub[0] in m and sub[1] in m


def _remove_all(m: Mono, sub: Mono) -> Mono:
    for e in sub:
        m = mono_remove(m, e)
    return m


# -- polynomials over the free variables ---------------------------------------

Poly = dict  # sorted variable tuple -> int


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def poly_add(a: Poly, b: Poly, c: int = 1) -> Poly:
    out = dict(a)
    for m, x in b.items():
        s = out.get(m, 0) + c * x
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


class LinearQuotient:
    """Graded pieces of the linear quotient, built from the top grading down.

    Setting every L_v to zero eliminates the right outgoing edge of each
    4-valent vertex, so the quotient is a module over the polynomial ring in
    the remaining (free) edge variables.  It is presented by the generators
    x_Z and the relations U_e x_Z = U(D) x_{Z'} (or 0) for e on Z and
    Q_v x_Z for v away from Z.  The piece in grading q is spanned by the new
    generators and by the products U_f b with f free and b a basis element one
    grading up; the relations among these symbols are the commutators
    U_f U_g = U_g U_f on the piece two gradings up and the presentation
    relations living in grading q.

    Each basis element remembers how it arose (``('gen', z)`` or
    ``('mul', f, j)``), so a map that is linear over the edge ring can be
    evaluated on the whole piece from its values on the generators.
    """

    def __init__(self, module: CycleModule):
        self.module = module
        g = module.g
        self.g = g
        self.n_edges = len(g.edges)
        elim = {}
        for v in sorted(g.four_valent, key=lambda v: g.vertices[v].level):
            i, j, k, l = g.roles(v)
            elim[l] = (i, j, k)
        self.free = tuple(e for e in range(self.n_edges) if e not in elim)
        self._fpos = {f: n for n, f in enumerate(self.free)}
        # each edge variable as a linear form in the free ones
        self.lin: list[dict[int, int]] = [None] * self.n_edges
        for e in self.free:
            self.lin[e] = {e: 1}
        for v in sorted(g.four_valent, key=lambda v: g.vertices[v].level):
            i, j, k, l = g.roles(v)
            f: dict[int, int] = {}
            for src, s in ((i, 1), (j, 1), (k, -1)):
                for x, c in self.lin[src].items():
                    f[x] = f.get(x, 0) + s * c
            self.lin[l] = {x: c for x, c in f.items() if c}
        self.top = module.top
        self.dims: dict[int, int] = {}
        self.origins: dict[int, list[tuple]] = {}
        self.actions: dict[int, dict[int, list[Vec]]] = {}
        self.gen_vec: dict[int, Vec] = {}
        self._rels = self._relations()
        self._class: dict = {}
        self._lowest = self.top + 2

    # -- presentation ----------------------------------------------------------

    def edge_poly(self, e: int) -> Poly:
        return {(x,): c for x, c in self.lin[e].items()}

    def mono_poly(self, mono: Mono) -> Poly:
        p: Poly = {(): 1}
        for e in mono:
            p = poly_mul(p, self.edge_poly(e))
        return p

    def _relations(self) -> dict[int, list[list[tuple[Poly, int]]]]:
        """Relations by grading, each a list of (polynomial, cycle) terms."""
        m = self.module
        out: dict[int, list] = {}
        for z, Z in enumerate(m.cycles):
            qz = m.gradings[z].q
            for e in Z.edges:
                rel = [(self.edge_poly(e), z)]
                p = m._push_of(z, e)
                if p is not None:
                    y, coeff = p
                    rel.append(({k: -c for k, c in self.mono_poly(coeff).items()}, y))
                out.setdefault(qz - 2, []).append(rel)
            for v in self.g.four_valent:
                i, j, k, l = self.g.roles(v)
                if not {i, j, k, l} & m._zsets[z]:
                    qv = poly_add(self.mono_poly((i, j)), self.mono_poly((k, l)), -1)
                    if qv:
                        out.setdefault(qz - 4, []).append([(qv, z)])
        return out

    # -- construction ------------------------------------------------------------

    def dim(self, q: int) -> int:
        self.ensure(q)
        return self.dims.get(q, 0)

    def ensure(self, q: int) -> None:
        while self._lowest > q:
            self._build(self._lowest - 2)

    def _build(self, q: int) -> None:
        self._lowest = q
        if q > self.top:
            self.dims[q] = 0
            return
        d2 = self.dims.get(q + 2, 0)
        d4 = self.dims.get(q + 4, 0)
        nf = len(self.free)
        gens = [z for z, gr in enumerate(self.module.gradings) if gr.q == q]
        # symbols: generators first, then (f, j) in order
        n_gen = len(gens)
        gen_sym = {z: k for k, z in enumerate(gens)}

        def sym(f_pos: int, j: int) -> int:
            return n_gen + f_pos * d2 + j

        def mul_vec(f_pos: int, vec: Vec, out: Vec, c=ONE) -> None:
            base = n_gen + f_pos * d2
            for j, a in vec.items():
                k = base + j
                s = out.get(k, 0) + c * a
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)

        ech = Echelon()
        for rel in self._rels.get(q, ()):
            row: Vec = {}
            for poly, z in rel:
                for mono, c in poly.items():
                    if not mono:
                        k = gen_sym[z]
                        s = row.get(k, 0) + c
                        if s:
                            row[k] = mpq(s)
                        else:
                            row.pop(k, None)
                    else:
                        mul_vec(self._fpos[mono[0]], self.class_of(z, mono[1:]), row, mpq(c))
            if row:
                ech.add(row)
        if d4:
            above = self.actions[q + 2]
            for a in range(nf):
                fa = self.free[a]
                for b in range(a + 1, nf):
                    fb = self.free[b]
                    for h in range(d4):
                        row: Vec = {}
                        mul_vec(a, above[fb][h], row)
                        mul_vec(b, above[fa][h], row, -ONE)
                        if row:
                            ech.add(row)
        total = n_gen + nf * d2
        basis_syms = [s for s in range(total) if s not in ech.rows]
        where = {s: n for n, s in enumerate(basis_syms)}

        def reduce_sym(s: int) -> Vec:
            r, _ = ech.reduce({s: ONE})
            return {where[k]: v for k, v in r.items()}

        origins = []
        for s in basis_syms:
            if s < n_gen:
                origins.append(("gen", gens[s]))
            else:
                f_pos, j = divmod(s - n_gen, d2)
                origins.append(("mul", self.free[f_pos], j))
        self.dims[q] = len(basis_syms)
        self.origins[q] = origins
        self.actions[q] = {f: [reduce_sym(sym(a, j)) for j in range(d2)]
                           for a, f in enumerate(self.free)}
        for z in gens:
            self.gen_vec[z] = reduce_sym(gen_sym[z])

    # -- evaluation ----------------------------------------------------------------

    def action(self, e: int, q: int) -> list[Vec]:
        """Matrix of U_e from grading q + 2 to grading q (any edge e)."""
        self.ensure(q)
        if q > self.top:
            return [{} for _ in range(self.dims.get(q + 2, 0))]
        cols = [dict() for _ in range(self.dims.get(q + 2, 0))]
        for f, c in self.lin[e].items():
            for j, col in enumerate(self.actions[q][f]):
                axpy(cols[j], mpq(c), col)
        return cols

    def linear(self, form: dict[int, int], q: int) -> list[Vec]:
        """Matrix of a linear form in the edge variables, grading q + 2 -> q."""
        cols = [dict() for _ in range(self.dim(q + 2))]
        for e, c in form.items():
            for j, col in enumerate(self.action(e, q)):
                axpy(cols[j], mpq(c), col)
        return cols

    def class_of(self, z: int, fmono: Mono) -> Vec:
        """Coordinates of (free monomial) x_Z in grading q_Z - 2 deg."""
        key = (z, fmono)
        hit = self._class.get(key)
        if hit is not None:
            return hit
        q = self.module.gradings[z].q - 2 * len(fmono)
        self.ensure(q)
        if not fmono:
            out = self.gen_vec[z]
        else:
            prev = self.class_of(z, fmono[:-1])
            out = apply(self.actions[q][fmono[-1]], prev)
        self._class[key] = out
        return out

    def element(self, z: int, mono: Mono) -> Vec:
        """Coordinates of (any edge monomial) x_Z."""
        out: Vec = {}
        for fm, c in self.mono_poly(mono).items():
            axpy(out, mpq(c), self.class_of(z, fm))
        return out

    def grading_of(self, z: int, mono: Mono) -> int:
        return self.module.gradings[z].q - 2 * len(mono)


# -- the vertex complex -----------------------------------------------------------

class VertexComplex:
    """The linear quotient tensored with the Koszul closing-off complex.

    The chain group in internal grading q is the direct sum over Koszul
    indices eps in {0,1}^n of the quotient piece in grading q; eps_i = 1 marks
    the end of the i-th factor from which multiplication by L_i leaves.
    """

    def __init__(self, quotient: LinearQuotient):
        self.quotient = quotient
        self.module = quotient.module
        self.forms = self.module.closing_forms()
        self.n = len(self.forms)
        self.eps = list(product((0, 1), repeat=self.n))
        self._eps_index = {e: k for k, e in enumerate(self.eps)}
        self._d0: dict[int, list[Vec]] = {}

    def dim(self, q: int) -> int:
        return len(self.eps) * self.quotient.dim(q)

    def offset(self, eps_index: int, q: int) -> int:
        return eps_index * self.quotient.dim(q)

    def d0(self, q: int) -> list[Vec]:
        """Matrix of d0 from grading q to grading q - 2."""
        hit = self._d0.get(q)
        if hit is not None:
            return hit
        Q = self.quotient
        dq, dt = Q.dim(q), Q.dim(q - 2)
        mats = [(Q.linear(L, q - 2), Q.linear(Lp, q - 2)) for L, Lp in self.forms]
        cols: list[Vec] = []
        for eps in self.eps:
            parts = []
            for i, e_i in enumerate(eps):
                sign = -ONE if sum(eps[:i]) % 2 else ONE
                flipped = eps[:i] + (1 - e_i,) + eps[i + 1:]
                off = self._eps_index[flipped] * dt
                parts.append((mats[i][0] if e_i == 1 else mats[i][1], sign, off))
            for j in range(dq):
                col: Vec = {}
                for mat, sign, off in parts:
                    for k, a in mat[j].items():
                        col[off + k] = col.get(off + k, 0) + sign * a
                cols.append({k: a for k, a in col.items() if a})
        self._d0[q] = cols
        return cols


def internal_window(k: int, margin: int = 4) -> tuple[int, int]:
    """Internal gradings needed for vertex homology with k circles."""
    return -k - margin, k + margin


class Resolution:
    """A complete resolution together with its module, quotient and complex."""

    def __init__(self, g: SingularGraph):
        self.g = g
        self.module = CycleModule(g)
        self.quotient = LinearQuotient(self.module)
        self.complex = VertexComplex(self.quotient)

    @property
    def circles(self) -> int:
        return self.module.circles


# -- edge maps -------------------------------------------------------------------------

class EdgeMap:
    """Unzip (singular to smooth) or zip (smooth to singular) map at one level.

    ``src`` and ``tgt`` differ only at ``level``; the map lowers the internal
    grading by one and is linear over the edge ring of the singular side.
    """

    def __init__(self, src: Resolution, tgt: Resolution, level: int):
        self.src, self.tgt, self.level = src, tgt, level
        gs, gt = src.g, tgt.g
        s_sing = gs.levels[level - 1] is not None
        t_sing = gt.levels[level - 1] is not None
        if s_sing == t_sing or any(a != b for t, (a, b) in enumerate(zip(gs.levels, gt.levels))
                                   if t != level - 1):
            raise ValueError("resolutions are not related by one resolution change")
        self.unzip = s_sing
        sing = gs if s_sing else gt
        smooth_g = gt if s_sing else gs
        self.sing, self.smooth = sing, smooth_g
        self.vertex = sing.vertex_at(level, sing.levels[level - 1])
        self.e1, self.e2, self.e3, self.e4 = sing.roles(self.vertex)
        # variable correspondences
        self.down = [smooth_g.seg[e.lo, e.pos] for e in sing.edges]
        self.up = [sing.seg[e.lo, e.pos] for e in smooth_g.edges]
        self.f1, self.f2 = self.down[self.e1], self.down[self.e2]
        self.var = self.down if self.unzip else self.up
        self._cols: dict[int, list[Vec]] = {}

    def _to_smooth(self, Z: Cycle) -> Cycle:
        return Cycle.of({self.down[e] for e in Z.edges})

    def _to_sing(self, Z: Cycle) -> Cycle:
        out = []
        for e in Z.edges:
            if e == self.f1:
                out += [self.e1, self.e3]
            elif e == self.f2:
                out += [self.e2, self.e4]
            else:
                out.append(self.up[e])
        return Cycle.of(out)

    def on_generator(self, z: int) -> list[tuple[int, Mono, int]]:
        """Image of x_Z as terms (target cycle, target monomial, sign)."""
        sm, tm = self.src.module, self.tgt.module
        Z = sm.cycles[z]
        if self.unzip:
            t = local_type(self.sing, Z, self.vertex)
            if t in ("", "13"):
                return [(tm.index[self._to_smooth(Z)], (), 1)]
            if t == "24":
                return [(tm.index[self._to_smooth(Z)], (self.f1,), 1)]
            p = sm._push_of(z, self.e1 if t == "14" else self.e3)
            if p is None:
                return []
            y, coeff = p
            Y = sm.cycles[y]
            return [(tm.index[self._to_smooth(Y)], tuple(sorted(self.down[e] for e in coeff)), 1)]
        on1, on2 = self.f1 in Z, self.f2 in Z
        out = []
        if not on2:
            y = tm.index[self._to_sing(Z)]
            return [(y, (self.e3,), 1), (y, (self.e2,), -1)]
        if not on1:
            out.append((tm.index[self._to_sing(Z)], (), 1))
        p = sm._push_of(z, self.f2)
        if p is not None:
            y, coeff = p
            assert self.f1 not in coeff and self.f2 not in coeff
            Y = sm.cycles[y]
            out.append((tm.index[self._to_sing(Y)], tuple(sorted(self.up[e] for e in coeff)), -1))
        return out

    def matrix(self, q: int) -> list[Vec]:
        """Matrix from the source quotient piece q to the target piece q - 1."""
        hit = self._cols.get(q)
        if hit is not None:
            return hit
        S, T = self.src.quotient, self.tgt.quotient
        cols = []
        for origin in (S.origins.get(q, []) if S.dim(q) else []):
            if origin[0] == "gen":
                col: Vec = {}
                for y, mono, sign in self.on_generator(origin[1]):
                    assert T.grading_of(y, mono) == q - 1
                    axpy(col, mpq(sign), T.element(y, mono))
            else:
                _, f, j = origin
                above = self.matrix(q + 2)[j]
                col = apply(T.action(self.var[f], q - 1), above)
            cols.append(col)
        self._cols[q] = cols
        return cols


# -- the cube ------------------------------------------------------------------------------

class Cube:
    """The oriented cube of resolutions of a plat word and its total complex.

    A generator of vertex v in internal grading q has quantum grading
    q + |v| + n_+ - 2 n_- and delta grading q - |v| + n_+.  The total
    differential d0 + d1 lowers delta by two.  ``twist`` multiplies the edge
    maps by (-1)^|eps| so that they anticommute with d0; without it the
    square of the total differential fails to vanish in general.
    """

    def __init__(self, word: PlatWord, twist: bool = True):
        self.word = word
        self.twist = twist
        self.m = len(word)
        self.vertices = list(product((0, 1), repeat=self.m))
        self._res: dict[tuple, Resolution] = {}
        self._edges: dict[tuple, EdgeMap] = {}
        self._d: dict[int, list[Vec]] = {}

    def resolution(self, bits) -> Resolution:
        bits = tuple(bits)
        r = self._res.get(bits)
        if r is None:
            r = self._res[bits] = Resolution(resolve(self.word, bits))
        return r

    def edge(self, bits, c: int) -> EdgeMap:
        key = (tuple(bits), c)
        e = self._edges.get(key)
        if e is None:
            hi = list(bits)
            hi[c] = 1
            e = self._edges[key] = EdgeMap(self.resolution(bits), self.resolution(hi), c + 1)
        return e

    def internal(self, bits, delta: int) -> int:
        return delta + sum(bits) - self.word.n_plus

    def quantum(self, bits, q_internal: int) -> int:
        return q_internal + sum(bits) + self.word.n_plus - 2 * self.word.n_minus

    def layout(self, delta: int) -> list[tuple[tuple, int, int]]:
        """(bits, offset, size) of each vertex block in the chain group."""
        out, off = [], 0
        for v in self.vertices:
            n = self.resolution(v).complex.dim(self.internal(v, delta))
            out.append((v, off, n))
            off += n
        return out

    def dim(self, delta: int) -> int:
        return sum(n for _, _, n in self.layout(delta))

    def d1_block(self, bits, c: int, delta: int) -> list[Vec]:
        """Signed edge map from vertex ``bits`` into bits + e_c at ``delta``."""
        q = self.internal(bits, delta)
        em = self.edge(bits, c)
        vc = self.resolution(bits).complex
        inner = em.matrix(q)
        dq, dt = vc.quotient.dim(q), em.tgt.quotient.dim(q - 1)
        sign = -1 if sum(bits[:c]) % 2 else 1
        cols = []
        for k, eps in enumerate(vc.eps):
            s = mpq(-sign if self.twist and sum(eps) % 2 else sign)
            for j in range(dq):
                cols.append({k * dt + r: s * a for r, a in inner[j].items()})
        return cols

    def differential(self, delta: int) -> list[Vec]:
        """Matrix of d0 + d1 from delta to delta - 2."""
        hit = self._d.get(delta)
        if hit is not None:
            return hit
        src = self.layout(delta)
        tgt = {v: off for v, off, _ in self.layout(delta - 2)}
        cols: list[Vec] = []
        for v, off, n in src:
            if not n:
                continue
            blocks = [(self.resolution(v).complex.d0(self.internal(v, delta)), tgt[v])]
            for c in range(self.m):
                if v[c] == 0:
                    hi = v[:c] + (1,) + v[c + 1:]
                    blocks.append((self.d1_block(v, c, delta), tgt[hi]))
            for j in range(n):
                col: Vec = {}
                for mat, o in blocks:
                    for r, a in mat[j].items():
                        col[o + r] = a
                cols.append(col)
        self._d[delta] = cols
        return cols

    def delta_window(self, margin: int = 4) -> range:
        """delta gradings covering every vertex's internal window, step -2."""
        lo = hi = None
        for v in self.vertices:
            a, b = internal_window(self.resolution(v).circles, margin)
            a, b = a - sum(v) + self.word.n_plus, b - sum(v) + self.word.n_plus
            lo = a if lo is None else min(lo, a)
            hi = b if hi is None else max(hi, b)
        top = hi if (hi - self.parity()) % 2 == 0 else hi + 1
        return range(top, lo - 3, -2)

    def parity(self) -> int:
        v = self.vertices[0]
        return (self.resolution(v).module.top - sum(v) + self.word.n_plus) % 2


# -- structural checks -------------------------------------------------------------------

def module_relations_check(g: SingularGraph, depth: int = 2) -> Report:
    """Commutativity, the quadratic relation and f_v on the cycle module.

    Runs over basis elements in the top ``depth + 1`` gradings.
    """
    from .cycles import DIAGONAL, apply_fv
    m = CycleModule(g)
    rep = Report(f"module relations [{len(m.cycles)} cycles]")

    def act2(a, b, x):
        y = m.act(a, x)
        return None if y is None else m.act(b, y)

    basis = []
    for q in range(m.top, m.top - 2 * depth - 1, -2):
        basis += m.basis(q)
    n_edges = len(g.edges)
    for b in basis:
        for e in range(n_edges):
            for f in range(e + 1, n_edges):
                rep.check(act2(e, f, b) == act2(f, e, b), ("commute", b, e, f))
        for v in g.four_valent:
            i, j, k, l = g.roles(v)
            rep.check(act2(i, j, b) == act2(k, l, b), ("quadratic", b, v))
    for z, Z in enumerate(m.cycles):
        for v in g.four_valent:
            i, j, _, _ = g.roles(v)
            r = apply_fv(g, Z, v)
            if r.kind == DIAGONAL:
                exp = m.normal_form(z, tuple(sorted((i, j))))
            elif r.kind == PUSHED:
                exp = m.normal_form(m.index[r.target], r.coefficient)
            else:
                exp = None
            rep.check(act2(i, j, (z, ())) == exp, ("f_v", z, v))
    return rep


def edge_identity_check(word: PlatWord, bits, c: int, depth: int = 5) -> Report:
    """d+ d- and d- d+ against the (U1 - U4) action at crossing level c.

    ``c`` is 0-based; ``bits[c]`` is ignored.  Both composites are compared
    with the linear action over ``depth`` gradings below each top.
    """
    b0, b1 = list(bits), list(bits)
    b0[c], b1[c] = 0, 1
    r0, r1 = Resolution(resolve(word, b0)), Resolution(resolve(word, b1))
    sing, sm = (r0, r1) if r0.g.levels[c] is not None else (r1, r0)
    dm, dp = EdgeMap(sing, sm, c + 1), EdgeMap(sm, sing, c + 1)
    rep = Report(f"edge identity {word} {tuple(bits)} level {c}")
    for q in range(sing.module.top, sing.module.top - 2 * depth, -2):
        lhs = [apply(dp.matrix(q - 1), col) for col in dm.matrix(q)]
        rep.check(lhs == sing.quotient.linear({dm.e1: 1, dm.e4: -1}, q - 2), ("d+d-", q))
    for q in range(sm.module.top, sm.module.top - 2 * depth, -2):
        lhs = [apply(dm.matrix(q - 1), col) for col in dp.matrix(q)]
        rep.check(lhs == sm.quotient.linear({dm.f1: 1, dm.f2: -1}, q - 2), ("d-d+", q))
    return rep


def d_squared_check(word: PlatWord, margin: int = 4) -> Report:
    """d0^2 = 0 at every vertex and (d0 + d1)^2 = 0 on the whole window."""
    cube = Cube(word)
    rep = Report(f"d^2 {word}")
    for v in cube.vertices:
        vc = cube.resolution(v).complex
        lo, hi = internal_window(cube.resolution(v).circles, margin)
        top = cube.resolution(v).module.top
        for q in range(hi, lo - 1, -1):
            if (q - top) % 2:
                continue
            sq = [apply(vc.d0(q - 2), col) for col in vc.d0(q)]
            rep.check(not any(sq), ("d0", v, q))
    for delta in cube.delta_window(margin):
        sq = [apply(cube.differential(delta - 2), col) for col in cube.differential(delta)]
        rep.check(not any(sq), ("total", delta))
    return rep
