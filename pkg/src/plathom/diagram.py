"""Plat braid words, their complete resolutions and the derived planar data.

A plat word on ``2n`` strands is a sequence of braid generators read from
bottom to top.  The closure puts ``n`` cups below the braid (cup ``i`` joins
strands ``2i-1`` and ``2i``) and ``n`` caps above it.

A complete resolution replaces every crossing by either the oriented
smoothing (two vertical strands) or a singular 4-valent vertex.  The result is
stored as a leveled planar graph: level 0 holds the cups, level ``t`` (for
``1 <= t <= m``) holds crossing ``t`` and level ``m + 1`` holds the caps.  The
horizontal strip between level ``t`` and ``t + 1`` is band ``t``.  Every edge is
a vertical run of segments at a fixed strand position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

CUP, CAP, FOUR = "cup", "cap", "four"


class DiagramError(ValueError):
    """Raised for malformed diagram input."""


@dataclass(frozen=True)
class PlatWord:
    n_pairs: int
    crossings: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_pairs < 1:
            raise DiagramError("a plat word needs at least one pair of strands")
        for pos, sign in self.crossings:
            if sign not in (1, -1):
                raise DiagramError(f"bad crossing sign {sign}")
            if not 1 <= pos <= 2 * self.n_pairs - 1:
                raise DiagramError(
                    f"crossing position {pos} out of range for {2 * self.n_pairs} strands")

    @property
    def strands(self) -> int:
        return 2 * self.n_pairs

    @property
    def n_plus(self) -> int:
        """Positive crossings of the oriented plat closure."""
        return sum(1 for s in link_signs(self) if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in link_signs(self) if s < 0)

    def __len__(self):
        return len(self.crossings)

    def __str__(self):
        return format_plat(self)

    @classmethod
    def from_ints(cls, n_pairs: int, word: Iterable[int]) -> "PlatWord":
        word = list(word)
        if any(x == 0 for x in word):
            raise DiagramError("zero is not a braid generator")
        return cls(n_pairs, tuple((abs(x), 1 if x > 0 else -1) for x in word))

    def as_ints(self) -> list[int]:
        return [p * s for p, s in self.crossings]


def strand_directions(w: PlatWord) -> list[tuple[int, int]]:
    """Per crossing, the vertical directions (+1 up, -1 down) of the strands
    entering it from bottom positions p and p + 1.

    Each component of the plat closure is oriented so that it leaves its
    lowest-numbered cup upwards along the cup's left strand.
    """
    m = len(w.crossings)
    where = [dict() for _ in range(m)]
    seen_cups = set()
    for start in range(1, w.n_pairs + 1):
        if start in seen_cups:
            continue
        pos, band, d = 2 * start - 1, 0, 1
        while True:
            if d > 0:
                if band == m:
                    pos, d = (pos + 1 if pos % 2 else pos - 1), -1
                    continue
                c, _ = w.crossings[band]
                enter = pos
                if pos in (c, c + 1):
                    pos = 2 * c + 1 - pos
                where[band][enter] = 1
                band += 1
            else:
                if band == 0:
                    cup = (pos + 1) // 2
                    if cup == start:
                        break
                    seen_cups.add(cup)
                    pos, d = (pos + 1 if pos % 2 else pos - 1), 1
                    continue
                c, _ = w.crossings[band - 1]
                if pos in (c, c + 1):
                    pos = 2 * c + 1 - pos
                where[band - 1][pos] = -1
                band -= 1
    return [(where[t].get(c, 0), where[t].get(c + 1, 0))
            for t, (c, _) in enumerate(w.crossings)]


def link_signs(w: PlatWord) -> tuple[int, ...]:
    """Crossing signs of the oriented link: the braid sign, flipped where the
    two strands run in opposite vertical directions."""
    out = []
    for (_, s), (a, b) in zip(w.crossings, strand_directions(w)):
        out.append(s if a == b else -s)
    return tuple(out)


_PLAT_RE = re.compile(r"^\s*n\s*=\s*(-?\d+)\s*;\s*word\s*=\s*\[(.*)\]\s*$", re.S)
_TOKEN_RE = re.compile(r"^[+-]?\d+$")


def parse_plat(text: str) -> PlatWord:
    """Parse ``n=<int>; word=[<+-p>,...]``."""
    m = _PLAT_RE.match(text)
    if not m:
        raise DiagramError(f"cannot parse diagram {text!r}")
    n = int(m.group(1))
    if n < 1:
        raise DiagramError("zero strands")
    body = m.group(2).strip()
    tokens = [t.strip() for t in body.split(",")] if body else []
    for t in tokens:
        if not _TOKEN_RE.match(t):
            raise DiagramError(f"malformed token {t!r}")
    return PlatWord.from_ints(n, (int(t) for t in tokens))


def format_plat(w: PlatWord) -> str:
    return "n=%d; word=[%s]" % (w.n_pairs, ",".join("%+d" % x for x in w.as_ints()))


def singular_positions(w: PlatWord, bits: Sequence[int]) -> tuple[int | None, ...]:
    """Per crossing level, the position of the singular vertex or None.

    A positive crossing is singular on bit 1, a negative one on bit 0.
    """
    if len(bits) != len(w.crossings):
        raise DiagramError("resolution vector length does not match the word")
    out = []
    for (pos, sign), b in zip(w.crossings, bits):
        if b not in (0, 1):
            raise DiagramError(f"bad resolution bit {b}")
        singular = (b == 1) if sign > 0 else (b == 0)
        out.append(pos if singular else None)
    return tuple(out)


@dataclass(frozen=True)
class Vertex:
    index: int
    kind: str
    level: int
    pos: int            # left strand position; the vertex sits in gap pos
    ins: tuple[int, ...]
    outs: tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    index: int
    pos: int
    lo: int             # first band
    hi: int             # last band
    tail: int
    head: int


@dataclass
class SingularGraph:
    n_pairs: int
    levels: tuple[int | None, ...]
    vertices: list[Vertex]
    edges: list[Edge]
    seg: dict[tuple[int, int], int]
    _four: list[int] = field(default_factory=list)

    @property
    def n_levels(self) -> int:
        return len(self.levels)

    @property
    def strands(self) -> int:
        return 2 * self.n_pairs

    @property
    def four_valent(self) -> list[int]:
        return self._four

    @property
    def cups(self) -> list[int]:
        return [v.index for v in self.vertices if v.kind == CUP]

    @property
    def caps(self) -> list[int]:
        return [v.index for v in self.vertices if v.kind == CAP]

    def roles(self, v: int) -> tuple[int, int, int, int]:
        """Edges (i, j, k, l): left in, right in, left out, right out."""
        vx = self.vertices[v]
        if vx.kind != FOUR:
            raise ValueError("roles are defined for 4-valent vertices only")
        return vx.ins + vx.outs

    def vertex_at(self, level: int, pos: int) -> int | None:
        return self._at.get((level, pos))

    def __post_init__(self):
        self._at = {(v.level, v.pos): v.index for v in self.vertices}

    def key(self) -> tuple:
        return (self.n_pairs, self.levels)


def build_graph(n_pairs: int, levels: Sequence[int | None]) -> SingularGraph:
    """Build the closed leveled graph from singular vertex positions per level."""
    levels = tuple(levels)
    m = len(levels)
    strands = 2 * n_pairs
    for p in levels:
        if p is not None and not 1 <= p <= strands - 1:
            raise DiagramError(f"vertex position {p} out of range")

    # raw vertices keyed by (level, pos)
    raw = [(0, 2 * i - 1, CUP) for i in range(1, n_pairs + 1)]
    raw += [(t, p, FOUR) for t, p in enumerate(levels, start=1) if p is not None]
    raw += [(m + 1, 2 * i - 1, CAP) for i in range(1, n_pairs + 1)]
    raw.sort()
    vid = {(lv, p): k for k, (lv, p, _) in enumerate(raw)}

    def vertex_touching(level: int, pos: int):
        for q in (pos, pos - 1):
            if (level, q) in vid:
                return vid[level, q]
        return None

    runs = []
    for p in range(1, strands + 1):
        start = 0
        for t in range(1, m + 1):
            if vertex_touching(t, p) is not None:
                runs.append((start, p, t - 1))
                start = t
        runs.append((start, p, m))
    runs.sort()

    edges = []
    seg = {}
    for idx, (lo, p, hi) in enumerate(runs):
        tail = vertex_touching(lo, p)
        head = vertex_touching(hi + 1, p)
        edges.append(Edge(idx, p, lo, hi, tail, head))
        for b in range(lo, hi + 1):
            seg[b, p] = idx

    vertices = []
    for k, (lv, p, kind) in enumerate(raw):
        ins = () if kind == CUP else (seg[lv - 1, p], seg[lv - 1, p + 1])
        outs = () if kind == CAP else (seg[lv, p], seg[lv, p + 1])
        vertices.append(Vertex(k, kind, lv, p, ins, outs))
    four = [v.index for v in vertices if v.kind == FOUR]
    return SingularGraph(n_pairs, levels, vertices, edges, seg, four)


def resolve(w: PlatWord, bits: Sequence[int]) -> SingularGraph:
    """Complete resolution of the plat closure at the cube vertex ``bits``."""
    return build_graph(w.n_pairs, singular_positions(w, bits))


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


@dataclass(frozen=True)
class SmoothedDiagram:
    circle_count: int
    circle_of_edge: tuple[int, ...]
    strand_of_edge: tuple[int, ...]

    def circles(self) -> list[list[int]]:
        out = [[] for _ in range(self.circle_count)]
        for e, c in enumerate(self.circle_of_edge):
            out[c].append(e)
        return out


def smooth(g: SingularGraph) -> SmoothedDiagram:
    """Replace every singular vertex by the turnback smoothing and trace circles."""
    dsu = _DSU(len(g.edges))
    for v in g.vertices:
        if v.ins and len(v.ins) == 2:
            dsu.union(*v.ins)
        if v.outs and len(v.outs) == 2:
            dsu.union(*v.outs)
    roots = {}
    circle = []
    for e in range(len(g.edges)):
        r = dsu.find(e)
        circle.append(roots.setdefault(r, len(roots)))
    return SmoothedDiagram(len(roots), tuple(circle), tuple(e.pos for e in g.edges))


@dataclass(frozen=True)
class Face:
    gap: int
    lo: int
    hi: int
    bounded: bool
    left_edges: tuple[int, ...]
    right_edges: tuple[int, ...]

    def unit_cells(self) -> list[tuple[int, int]]:
        return [(b, self.gap) for b in range(self.lo, self.hi + 1)]


@dataclass(frozen=True)
class CellComplex:
    faces: tuple[Face, ...]

    @property
    def cells(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.bounded)

    def face_of(self, band: int, gap: int) -> int:
        for k, f in enumerate(self.faces):
            if f.gap == gap and f.lo <= band <= f.hi:
                return k
        raise KeyError((band, gap))


def cells(g: SingularGraph) -> CellComplex:
    """Faces of the complement between adjacent strand tracks.

    A gap is cut at every level carrying a vertex in that gap; the lowest run
    of an even gap opens downwards (no cup closes it) and likewise at the top.
    """
    m = g.n_levels
    faces = []
    for gap in range(1, g.strands):
        cuts = [t for t in range(1, m + 1) if g.vertex_at(t, gap) is not None]
        bounds = [0] + cuts + [m + 1]
        for a, b in zip(bounds, bounds[1:]):
            lo, hi = a, b - 1
            closed_below = a > 0 or gap % 2 == 1
            closed_above = b < m + 1 or gap % 2 == 1
            left = tuple(sorted({g.seg[t, gap] for t in range(lo, hi + 1)}))
            right = tuple(sorted({g.seg[t, gap + 1] for t in range(lo, hi + 1)}))
            faces.append(Face(gap, lo, hi, closed_below and closed_above, left, right))
    return CellComplex(tuple(faces))


def components(g: SingularGraph) -> int:
    dsu = _DSU(len(g.edges))
    for v in g.vertices:
        es = v.ins + v.outs
        for e in es[1:]:
            dsu.union(es[0], e)
    return len({dsu.find(e) for e in range(len(g.edges))})


def euler_defect(g: SingularGraph) -> int:
    """V - E + F - (1 + components); zero for a correct face count."""
    f = len(cells(g).cells) + 1
    return len(g.vertices) - len(g.edges) + f - 1 - components(g)
