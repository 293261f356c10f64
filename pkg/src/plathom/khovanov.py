"""Independent Khovanov homology of plat closures over the rationals.

Nothing here is shared with the cube-of-singular-resolutions pipeline except
the ``PlatWord`` input: circles, orientations and ranks are all computed from
scratch on a grid of segment endpoints, so agreement is real evidence.

A segment is the piece of strand ``p`` in band ``t`` (between crossing levels
``t`` and ``t + 1``); bands run from 0 (above the cups) to m (below the caps).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .diagram import PlatWord


def _find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _join(parent: dict, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)


def kh_circles(w: PlatWord, u) -> list[frozenset]:
    """Circles of the resolution D_u as sets of (band, position) segments.

    The 0-resolution of a positive generator keeps the strands vertical and
    the 0-resolution of a negative generator turns them back; 1 is the other.
    """
    m, strands = len(w.crossings), w.strands
    parent = {(t, p): (t, p) for t in range(m + 1) for p in range(1, strands + 1)}
    for i in range(1, w.n_pairs + 1):
        _join(parent, (0, 2 * i - 1), (0, 2 * i))
        _join(parent, (m, 2 * i - 1), (m, 2 * i))
    for t, ((c, sign), bit) in enumerate(zip(w.crossings, u), start=1):
        vertical = (bit == 0) == (sign > 0)
        for p in range(1, strands + 1):
            if p not in (c, c + 1):
                _join(parent, (t - 1, p), (t, p))
        if vertical:
            _join(parent, (t - 1, c), (t, c))
            _join(parent, (t - 1, c + 1), (t, c + 1))
        else:
            _join(parent, (t - 1, c), (t - 1, c + 1))
            _join(parent, (t, c), (t, c + 1))
    groups: dict = {}
    for x in parent:
        groups.setdefault(_find(parent, x), set()).add(x)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def kh_signs(w: PlatWord) -> list[int]:
    """Crossing signs of the oriented closure.

    Every component is walked starting upwards from the left end of its
    lowest cup; a crossing is positive when the over/under data of the
    generator and the two traversal directions give a right-handed crossing.
    """
    m = len(w.crossings)
    dirs: dict = {}
    done = set()
    for i in range(1, w.n_pairs + 1):
        if (0, 2 * i - 1) in done:
            continue
        t, p, up = 0, 2 * i - 1, True
        while (t, p, up) not in dirs:
            dirs[(t, p, up)] = True
            done.add((t, p))
            if up:
                if t == m:
                    p, up = (p + 1 if p % 2 else p - 1), False
                    continue
                c, _ = w.crossings[t]
                if p == c:
                    p = c + 1
                elif p == c + 1:
                    p = c
                t += 1
            else:
                if t == 0:
                    p, up = (p + 1 if p % 2 else p - 1), True
                    continue
                c, _ = w.crossings[t - 1]
                t -= 1
                if p == c:
                    p = c + 1
                elif p == c + 1:
                    p = c
    signs = []
    for t, (c, sign) in enumerate(w.crossings):
        # directions of the strands leaving the crossing at the top
        a = (t + 1, c + 1, True) in dirs      # the strand from bottom-left
        b = (t + 1, c, True) in dirs          # the strand from bottom-right
        signs.append(sign if a == b else -sign)
    return signs


def _rank(rows: list[dict]) -> int:
    """Rank of a sparse matrix given by rows, by Gaussian elimination."""
    pivots: dict = {}
    r = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            c = min(row)
            if c not in pivots:
                a = row[c]
                pivots[c] = {k: v / a for k, v in row.items()}
                r += 1
                break
            piv = pivots[c]
            a = row[c]
            for k, v in piv.items():
                s = row.get(k, 0) - a * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return r


@dataclass
class KhComplex:
    word: PlatWord
    n_plus: int
    n_minus: int
    circles: dict
    gens: dict          # (h, q) -> list of (u, X-set)
    diff: dict          # (h, q) -> list of dict rows over the next group

    def d_squared_zero(self) -> bool:
        for (h, q), rows in self.diff.items():
            nxt = self.diff.get((h + 1, q))
            if not nxt:
                continue
            for row in rows:
                out: dict = {}
                for j, a in row.items():
                    for k, b in nxt[j].items():
                        out[k] = out.get(k, 0) + a * b
                if any(out.values()):
                    return False
        return True


def _edge(circ_u, circ_v, xs: frozenset) -> list[tuple[frozenset, int]]:
    """Merge or split image of the generator with X on circles ``xs``."""
    into = {}
    for a, ca in enumerate(circ_u):
        into[a] = {b for b, cb in enumerate(circ_v) if ca & cb}
    merged = [b for b, cb in enumerate(circ_v)
              if sum(1 for ca in circ_u if ca & cb) == 2]
    if merged:
        b = merged[0]
        parts = [a for a in into if b in into[a]]
        if all(a in xs for a in parts):
            return []
        out = {next(iter(into[a])) for a in xs}
        return [(frozenset(out), 1)]
    split = [a for a in into if len(into[a]) == 2]
    a = split[0]
    b1, b2 = sorted(into[a])
    rest = {next(iter(into[x])) for x in xs if x != a}
    if a in xs:
        return [(frozenset(rest | {b1, b2}), 1)]
    return [(frozenset(rest | {b1}), 1), (frozenset(rest | {b2}), 1)]


def kh_complex(w: PlatWord) -> KhComplex:
    m = len(w.crossings)
    signs = kh_signs(w)
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = m - n_plus
    circles = {u: kh_circles(w, u) for u in product((0, 1), repeat=m)}
    gens: dict = {}
    index: dict = {}
    for u, circ in circles.items():
        k = len(circ)
        h = sum(u) - n_minus
        for mask in range(2 ** k):
            xs = frozenset(i for i in range(k) if mask >> i & 1)
            q = n_plus - 2 * n_minus + sum(u) + k - 2 * len(xs)
            lst = gens.setdefault((h, q), [])
            index[(u, xs)] = ((h, q), len(lst))
            lst.append((u, xs))
    diff: dict = {}
    for key, lst in gens.items():
        rows = []
        for u, xs in lst:
            row: dict = {}
            for c in range(m):
                if u[c]:
                    continue
                v = u[:c] + (1,) + u[c + 1:]
                sign = -1 if sum(u[:c]) % 2 else 1
                for ys, coeff in _edge(circles[u], circles[v], xs):
                    tk, j = index[(v, ys)]
                    assert tk == (key[0] + 1, key[1])
                    row[j] = row.get(j, 0) + sign * coeff
            rows.append({j: a for j, a in row.items() if a})
        diff[key] = rows
    return KhComplex(w, n_plus, n_minus, circles, gens, diff)


def kh_homology(w: PlatWord) -> dict[tuple[int, int], int]:
    """Bigraded dims {(h, q): dim} of the Khovanov homology."""
    cx = kh_complex(w)
    out = {}
    for (h, q), lst in cx.gens.items():
        r_out = _rank(cx.diff[(h, q)])
        r_in = _rank(cx.diff.get((h - 1, q), []))
        d = len(lst) - r_out - r_in
        if d:
            out[(h, q)] = d
    return out


def kh_delta(w: PlatWord) -> dict[int, int]:
    """Dims collapsed to the delta grading q - 2h."""
    out: dict = {}
    for (h, q), d in kh_homology(w).items():
        out[q - 2 * h] = out.get(q - 2 * h, 0) + d
    return out
