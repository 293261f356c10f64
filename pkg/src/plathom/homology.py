"""Homology of vertex complexes, the E2 page and total homology of the cube,
and the structural check harnesses built on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from .chain import Cube, Resolution
from .diagram import PlatWord, SingularGraph, build_graph, smooth
from .linalg import Echelon, HomologyPiece, Vec, apply, homology_piece, rank


class WindowError(RuntimeError):
    """Homology did not vanish at the edge of the computed window."""


class GradedDims(dict):
    """Finitely supported grading -> dimension map; absent keys mean zero."""

    def __init__(self, data=()):
        super().__init__()
        for k, v in dict(data).items():
            if v:
                self[k] = v

    @property
    def total(self) -> int:
        return sum(self.values())

    def shifted(self, s: int) -> "GradedDims":
        return GradedDims({k + s: v for k, v in self.items()})

    def convolve(self, other: "GradedDims") -> "GradedDims":
        out: dict = {}
        for a, x in self.items():
            for b, y in other.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return GradedDims(out)

    def collapse(self, fn: Callable) -> "GradedDims":
        out: dict = {}
        for k, v in self.items():
            out[fn(k)] = out.get(fn(k), 0) + v
        return GradedDims(out)

    def as_sorted(self) -> list:
        return sorted(self.items(), reverse=True)


A = GradedDims({1: 1, -1: 1})   # the Frobenius algebra Q[X]/(X^2) with its shift


# -- the generic kernel ------------------------------------------------------------------

def graded_homology(d: Callable[[int], list[Vec]], size: Callable[[int], int],
                    gradings: Iterable[int], step: int = -2,
                    check_edges: bool = True) -> tuple[GradedDims, dict[int, HomologyPiece]]:
    """Homology at each listed grading of a complex whose differential
    ``d(x)`` maps grading x to x + step and has ``size(x)`` columns.

    With ``check_edges`` the first and last listed gradings must carry no
    homology; otherwise the window is too small.
    """
    gradings = sorted(set(gradings), reverse=step < 0)
    dims, pieces = {}, {}
    for x in gradings:
        piece = homology_piece(d(x), d(x - step), size(x))
        pieces[x] = piece
        dims[x] = piece.dim
    if check_edges and gradings:
        for x in (gradings[0], gradings[-1]):
            if dims[x]:
                raise WindowError(f"window too small: homology at grading {x}")
    return GradedDims(dims), pieces


def graded_betti(d: Callable[[int], list[Vec]], size: Callable[[int], int],
                 gradings: Iterable[int], step: int = -2,
                 check_edges: bool = True) -> GradedDims:
    """Dimensions only, by rank-nullity; no representatives are kept."""
    gradings = sorted(set(gradings), reverse=step < 0)
    ranks: dict[int, int] = {}

    def rk(x):
        if x not in ranks:
            ranks[x] = rank(d(x)) if size(x) else 0
        return ranks[x]

    dims = {}
    for x in gradings:
        dims[x] = size(x) - rk(x) - rk(x - step)
    if check_edges and gradings:
        for x in (gradings[0], gradings[-1]):
            if dims[x]:
                raise WindowError(f"window too small: homology at grading {x}")
    return GradedDims(dims)


# -- vertex homology ---------------------------------------------------------------------

@dataclass
class VertexHomology:
    """Homology of one resolution's vertex complex in internal gradings."""
    resolution: Resolution
    dims: GradedDims
    pieces: dict[int, HomologyPiece]

    @property
    def k(self) -> int:
        return self.resolution.circles

    def u_matrix(self, e: int, q: int) -> list[Vec]:
        """Induced action of U_e from grading q to q - 2."""
        return self.linear_matrix({e: 1}, q)

    def linear_matrix(self, form: dict[int, int], q: int) -> list[Vec]:
        src = self.pieces.get(q)
        if src is None or not src.dim:
            return []
        tgt = self.pieces.get(q - 2)
        return [self.project(q - 2, self.act(form, q, rep)) if tgt else {} for rep in src.reps]

    def act(self, form: dict[int, int], q: int, vec: Vec) -> Vec:
        """Multiply a chain in grading q by a linear form (blockwise over eps)."""
        Q = self.resolution.quotient
        mat = Q.linear(form, q - 2)
        dq, dt = Q.dim(q), Q.dim(q - 2)
        out: Vec = {}
        for c, a in vec.items():
            blk, j = divmod(c, dq)
            for r, b in mat[j].items():
                k = blk * dt + r
                s = out.get(k, 0) + a * b
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def project(self, q: int, vec: Vec) -> Vec:
        piece = self.pieces.get(q)
        if piece is None:
            if vec:
                raise WindowError(f"grading {q} outside the vertex window")
            return {}
        return piece.project(vec)


def vertex_homology(res: Resolution, margin: int = 4) -> VertexHomology:
    """Homology of (M (x) K, d0) over internal gradings [-k-margin, k+margin]."""
    k = res.circles
    cx = res.complex
    top = res.module.top
    lo, hi = -k - margin, k + margin
    qs = [q for q in range(hi, lo - 1, -1) if (q - top) % 2 == 0]
    dims, pieces = graded_homology(cx.d0, cx.dim, qs)
    for q, p in pieces.items():
        for rep in p.reps:
            assert not apply(cx.d0(q), rep), "homology representative is not a cycle"
    return VertexHomology(res, dims, pieces)


@dataclass
class ModuleReport:
    k: int
    dims: GradedDims
    total_ok: bool
    binomial_ok: bool
    free_ok: bool
    top: int | None = None

    @property
    def ok(self) -> bool:
        return self.total_ok and self.binomial_ok and self.free_ok


def circle_representatives(res: Resolution) -> list[tuple[int, int]]:
    """(edge, sign) per circle of the smoothing: an edge on it and (-1)^strand."""
    sm = smooth(res.g)
    reps: dict[int, tuple[int, int]] = {}
    for e, c in enumerate(sm.circle_of_edge):
        if c not in reps:
            reps[c] = (e, -1 if sm.strand_of_edge[e] % 2 else 1)
    return [reps[c] for c in range(sm.circle_count)]


def module_report(vh: VertexHomology) -> ModuleReport:
    """Check the free rank-one structure over A^(x)k via X_i = (-1)^l U_e."""
    k = vh.k
    dims = vh.dims
    total_ok = dims.total == 2 ** k
    top = max(dims) if dims else None
    binomial_ok = top is not None and dims == GradedDims(
        {top - 2 * t: comb(k, t) for t in range(k + 1)})
    free_ok = False
    if binomial_ok and dims[top] == 1:
        circles = circle_representatives(vh.resolution)
        gen = vh.pieces[top].reps[0]
        free_ok = True
        for t in range(k + 1):
            ech = Echelon()
            for subset in combinations(range(k), t):
                vec, q = gen, top
                for c in subset:
                    e, s = circles[c]
                    vec = vh.act({e: s}, q, vec)
                    q -= 2
                ok, _ = ech.add(vh.project(q, vec))
                free_ok = free_ok and ok
    return ModuleReport(k, dims, total_ok, binomial_ok, free_ok, top)


def resolution_homology(g: SingularGraph | Resolution, margin: int = 4):
    """Vertex homology of a closed resolution and its module report."""
    res = g if isinstance(g, Resolution) else Resolution(g)
    vh = vertex_homology(res, margin)
    return vh, module_report(vh)


@dataclass
class UActionReport:
    failures: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def u_action_identities(vh: VertexHomology) -> UActionReport:
    """U_i = -U_j for edges meeting at a vertex on the same side, U_i^2 = 0."""
    g = vh.resolution.g
    rep = UActionReport()
    pairs = []
    for v in g.vertices:
        for side in (v.ins, v.outs):
            if len(side) == 2:
                pairs.append(side)
    for q in vh.pieces:
        if not vh.pieces[q].dim:
            continue
        for a, b in pairs:
            rep.checked += 1
            if any(vh.linear_matrix({a: 1, b: 1}, q)):
                rep.failures.append(f"U{a} != -U{b} at q={q}")
        for e in range(len(g.edges)):
            rep.checked += 1
            sq = [vh.project(q - 4, vh.act({e: 1}, q - 2, vh.act({e: 1}, q, r)))
                  for r in vh.pieces[q].reps]
            if any(sq):
                rep.failures.append(f"U{e}^2 != 0 at q={q}")
    return rep


# -- the cube: E2 page and total homology -------------------------------------------------

class CubeHomology:
    """Vertex homologies of a cube and the induced E1 differential."""

    def __init__(self, word: PlatWord, margin: int = 4):
        self.word = word
        self.cube = Cube(word)
        self.margin = margin
        self._vh: dict[tuple, VertexHomology] = {}

    def vertex(self, bits) -> VertexHomology:
        bits = tuple(bits)
        if bits not in self._vh:
            self._vh[bits] = vertex_homology(self.cube.resolution(bits), self.margin)
        return self._vh[bits]

    def e1(self) -> GradedDims:
        """E1 dims keyed by (h, quantum grading)."""
        out: dict = {}
        for v in self.cube.vertices:
            h = sum(v) - self.word.n_minus
            for q, d in self.vertex(v).dims.items():
                key = (h, self.cube.quantum(v, q))
                out[key] = out.get(key, 0) + d
        return GradedDims(out)

    def e1_delta_support(self) -> set[int]:
        return {q - 2 * h for h, q in self.e1()}

    def _e1_group(self, h: int, qt: int) -> list[tuple[tuple, int, int, int]]:
        """Blocks (bits, internal grading, offset, dim) of E1 at (h, qt)."""
        out, off = [], 0
        for v in self.cube.vertices:
            if sum(v) - self.word.n_minus != h:
                continue
            q = qt - sum(v) - self.word.n_plus + 2 * self.word.n_minus
            d = self.vertex(v).dims.get(q, 0)
            if d:
                out.append((v, q, off, d))
                off += d
        return out

    def d1_star(self, h: int, qt: int) -> list[Vec]:
        """Induced differential on E1 from (h, qt) to (h + 1, qt)."""
        src = self._e1_group(h, qt)
        tgt = {v: off for v, _, off, _ in self._e1_group(h + 1, qt)}
        cols: list[Vec] = []
        for v, q, _, d in src:
            vh = self.vertex(v)
            for rep in vh.pieces[q].reps:
                col: Vec = {}
                for c in range(len(v)):
                    if v[c]:
                        continue
                    hi = v[:c] + (1,) + v[c + 1:]
                    img = apply(self.cube.d1_block(v, c, self._delta(v, q)), rep)
                    if not img:
                        continue
                    coords = self.vertex(hi).project(q - 1, img)
                    for r, a in coords.items():
                        col[tgt[hi] + r] = a
                cols.append(col)
        return cols

    def _delta(self, v, q: int) -> int:
        return q - sum(v) + self.word.n_plus

    def e2(self) -> GradedDims:
        e1 = self.e1()
        out: dict = {}
        for qt in {q for _, q in e1}:
            hs = sorted({h for h, q in e1 if q == qt})
            for h in hs:
                size = sum(d for *_, d in self._e1_group(h, qt))
                if not size:
                    continue
                out[(h, qt)] = size - rank(self.d1_star(h, qt)) - rank(self.d1_star(h - 1, qt))
        return GradedDims(out)

    def d1_star_square_zero(self) -> bool:
        e1 = self.e1()
        for h, qt in e1:
            a = self.d1_star(h, qt)
            b = self.d1_star(h + 1, qt)
            if any(apply(b, col) for col in a):
                return False
        return True

    def total(self) -> GradedDims:
        """delta-graded total homology over the padded E1 support."""
        sup = self.e1_delta_support()
        if not sup:
            return GradedDims()
        lo, hi = min(sup) - self.margin, max(sup) + self.margin
        return graded_betti(self.cube.differential, self.cube.dim, range(hi, lo - 1, -2))


def e2_page(word: PlatWord, margin: int = 4) -> GradedDims:
    return CubeHomology(word, margin).e2()


def total_homology(word: PlatWord, margin: int = 4) -> GradedDims:
    return CubeHomology(word, margin).total()


# -- MOY relations on complete resolutions -----------------------------------------------

MOY_KINDS = ("0", "I", "II", "IIIa", "IIIb")


class MoveError(ValueError):
    """A move was requested at a site that does not match its pattern."""


def moy_pair(kind: str, n_pairs: int, levels: Sequence, site=None) -> tuple[int, tuple]:
    """The resolution S' obtained from (n_pairs, levels) by a MOY move.

    ``levels`` lists, bottom to top, the position of the singular vertex at
    each level or None.  ``site`` is a level index for II and III, and
    "top" or "bottom" for I; MOY 0 adds an unknotted pair on the right.
    """
    levels = tuple(levels)
    if kind == "0":
        return n_pairs + 1, levels
    if kind == "I":
        if site not in ("top", "bottom"):
            raise MoveError("MOY I site must be 'top' or 'bottom'")
        new = (2 * n_pairs,)
        return n_pairs + 1, levels + new if site == "top" else new + levels
    if kind not in ("II", "IIIa", "IIIb"):
        raise MoveError(f"unknown MOY kind {kind!r}")
    if not isinstance(site, int) or not 0 <= site < len(levels) or levels[site] is None:
        raise MoveError(f"site {site!r} is not a singular vertex")
    c = levels[site]
    if kind == "II":
        mid = (c, c)
    elif kind == "IIIa":
        if c + 1 > 2 * n_pairs - 1:
            raise MoveError(f"no strand to the right of vertex {c}")
        mid = (c, c + 1, c)
    else:
        if c - 1 < 1:
            raise MoveError(f"no strand to the left of vertex {c}")
        mid = (c, c - 1, c)
    return n_pairs, levels[:site] + mid + levels[site + 1:]


@dataclass
class MoyReport:
    kind: str
    before: GradedDims
    after: GradedDims
    expected: GradedDims

    @property
    def ok(self) -> bool:
        return self.after == self.expected


def moy_check(kind: str, n_pairs: int, levels: Sequence, site=None,
              margin: int = 4) -> MoyReport:
    """Compare vertex homology of S and S' against the MOY prediction.

    In the symmetric internal grading MOY 0 and MOY II tensor with A{1}
    (dims {1: 1, -1: 1}); MOY I and III leave the dims unchanged.
    """
    n2, lv2 = moy_pair(kind, n_pairs, levels, site)
    before = resolution_homology(build_graph(n_pairs, tuple(levels)), margin)[0].dims
    after = resolution_homology(build_graph(n2, lv2), margin)[0].dims
    expected = before.convolve(A) if kind in ("0", "II") else GradedDims(before)
    return MoyReport(kind, GradedDims(before), GradedDims(after), expected)


# -- invariance of the total homology ----------------------------------------------------

MOVES = ("RI", "RII", "RIII", "twist_top", "twist_bottom", "cap_swap", "cup_swap")


def apply_move(move: str, w: PlatWord, site=None, sign: int = 1) -> PlatWord:
    """The partner word of ``w`` under an isotopy of the plat closure.

    * RI: stabilize with a new pair on the right joined by a crossing of
      the given sign at the top (site "top", default) or bottom.
    * RII: insert s_c^sign s_c^-sign at level ``site = (level, c)``.
    * RIII: rewrite s_c s_c+1 s_c <-> s_c+1 s_c s_c+1 starting at level ``site``.
    * twist_top / twist_bottom: a crossing under cap / above cup ``site`` (1-based).
    * cap_swap / cup_swap: exchange caps (cups) ``site`` and ``site + 1`` by
      the four-crossing braid s_2i s_2i-1 s_2i+1 s_2i.
    """
    if sign not in (1, -1):
        raise MoveError("sign must be +1 or -1")
    cr, n = list(w.crossings), w.n_pairs
    if move == "RI":
        site = site or "top"
        if site not in ("top", "bottom"):
            raise MoveError("RI site must be 'top' or 'bottom'")
        new = [(2 * n, sign)]
        return PlatWord(n + 1, tuple(cr + new if site == "top" else new + cr))
    if move == "RII":
        level, c = site
        if not 0 <= level <= len(cr) or not 1 <= c <= 2 * n - 1:
            raise MoveError(f"bad RII site {site!r}")
        return PlatWord(n, tuple(cr[:level] + [(c, sign), (c, -sign)] + cr[level:]))
    if move == "RIII":
        t = site
        if not isinstance(t, int) or not 0 <= t <= len(cr) - 3:
            raise MoveError(f"bad RIII site {site!r}")
        (a, s1), (b, s2), (c, s3) = cr[t:t + 3]
        if not (a == c and abs(a - b) == 1 and s1 == s2 == s3):
            raise MoveError(f"levels {t}..{t + 2} are not an RIII pattern")
        return PlatWord(n, tuple(cr[:t] + [(b, s1), (a, s1), (b, s1)] + cr[t + 3:]))
    if move in ("twist_top", "twist_bottom"):
        i = site or 1
        if not 1 <= i <= n:
            raise MoveError(f"no cap/cup {i}")
        new = [(2 * i - 1, sign)]
        return PlatWord(n, tuple(cr + new if move == "twist_top" else new + cr))
    if move in ("cap_swap", "cup_swap"):
        i = site or 1
        if not 1 <= i <= n - 1:
            raise MoveError(f"cannot swap {i} and {i + 1} with {n} pairs")
        seq = [(2 * i, sign), (2 * i - 1, sign), (2 * i + 1, sign), (2 * i, sign)]
        return PlatWord(n, tuple(cr + seq if move == "cap_swap" else seq + cr))
    raise MoveError(f"unknown move {move!r}")


@dataclass
class InvarianceReport:
    move: str
    word: PlatWord
    partner: PlatWord
    dims: GradedDims
    partner_dims: GradedDims

    @property
    def ok(self) -> bool:
        return self.dims == self.partner_dims


def invariance_check(move: str, w: PlatWord, site=None, sign: int = 1,
                     margin: int = 4) -> InvarianceReport:
    """delta-graded total homology of w and of its partner under ``move``."""
    w2 = apply_move(move, w, site, sign)
    return InvarianceReport(move, w, w2, total_homology(w, margin),
                            total_homology(w2, margin))


# -- composition product -----------------------------------------------------------------

@dataclass
class CompositionReport:
    resolution: GradedDims
    product: GradedDims
    contributions: int

    @property
    def ok(self) -> bool:
        return self.resolution == self.product


def composition_product_check(g: SingularGraph, margin: int = 4) -> CompositionReport:
    """Vertex homology against the sum over cycles of shifted sl1 homology."""
    from .cycles import enumerate_cycles
    from .sl1 import composition_product
    vh, _ = resolution_homology(g, margin)
    cycles = enumerate_cycles(g)
    prod_ = composition_product(g, cycles, margin)
    return CompositionReport(GradedDims(vh.dims), prod_, len(cycles))
