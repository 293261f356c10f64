"""Weighted strands algebras: A_n, its quotient, and the interval-state algebra.

Both algebras share one machinery.  A basis element is a triple
``(mono, src, tgt)`` where ``src`` and ``tgt`` are equal-size subsets of a row
of slots, the underlying bijection is the unique order-preserving one, and
``mono`` is an exponent vector over the u variables.  The u variables sit at
points between slots; concatenating two bijections picks up ``u_p`` once for
every strand that crosses point ``p`` and comes back.

* kind ``"A"``: slots 1..2n at coordinate 2j, points u_1..u_2n at 2i+1.
  A point is dead on a state that occupies both neighbouring slots.
* kind ``"B"``: interval states for m = 2n+1 points.  Slot ``a`` is the
  interval [a, a+1] (midpoint a+1/2, coordinate 2a+1); u_1..u_m sit at 2i.
  A point is dead on a state that occupies neither neighbouring interval.

A u_p times an idempotent on a state where p is dead is zero.  The ``rule``
switch says how far this propagates: ``"endpoint"`` kills a term only when
a dead point divides its monomial at its own source or target,
``"middle"`` and ``"alpha-middle"`` also look at the middle state of each
product, and ``"ideal"`` (the default) divides out the two-sided ideal the
dead idempotents generate, so a term also dies when it factors through a
state where its monomial is dead.  Only ``"ideal"`` is associative; see
``rule_comparison``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from gmpy2 import mpq

from .linalg import ONE
from .report import Report

RULES = ("endpoint", "alpha-middle", "middle", "ideal")


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class MonotoneBijection:
    """The order-preserving bijection between two equal-size slot sets."""
    source: tuple
    target: tuple

    def __post_init__(self):
        if len(self.source) != len(self.target):
            raise AlgebraError("source and target differ in size")

    def __call__(self, j: int) -> int:
        return self.target[self.source.index(j)]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class LocalState:
    """k intervals [i, i+1] among m points, stored by left endpoints."""
    m: int
    left: tuple

    def __post_init__(self):
        if any(not 1 <= a <= self.m - 1 for a in self.left):
            raise AlgebraError(f"interval outside 1..{self.m}")
        if len(set(self.left)) != len(self.left):
            raise AlgebraError("repeated interval")

    @property
    def midpoints(self) -> tuple:
        return tuple(Fraction(2 * a + 1, 2) for a in self.left)

    @classmethod
    def from_midpoints(cls, m: int, mids) -> "LocalState":
        return cls(m, tuple(sorted(int(Fraction(x) - Fraction(1, 2)) for x in mids)))


def state_map(x: LocalState, n: int | None = None) -> tuple:
    """S_x = {i in [2n] : i + 1/2 not in x} for m = 2n + 1."""
    if x.m % 2 == 0:
        raise AlgebraError("state_map needs an odd number of points")
    n = (x.m - 1) // 2 if n is None else n
    if x.m != 2 * n + 1 or len(x.left) != n:
        raise AlgebraError(f"local state must have {n} intervals among {2 * n + 1} points")
    return tuple(i for i in range(1, 2 * n + 1) if i not in x.left)


class StrandsAlgebra:
    """One of A_n, its quotient, B'(2n+1, n) or its quotient by u_1."""

    def __init__(self, n: int, kind: str = "A", quotient: bool = False,
                 rule: str = "ideal"):
        if n < 1:
            raise AlgebraError("n must be positive")
        if kind not in ("A", "B"):
            raise AlgebraError(f"unknown kind {kind!r}")
        if rule not in RULES:
            raise AlgebraError(f"unknown rule {rule!r}")
        self.n, self.kind, self.quotient, self.rule = n, kind, quotient, rule
        self.slots = tuple(range(1, 2 * n + 1))
        if kind == "A":
            self.n_points = 2 * n
            self._slot_coord = {j: 2 * j for j in self.slots}
            self._point_coord = [2 * i + 1 for i in range(1, self.n_points + 1)]
            self._nbrs = [(i, i + 1) for i in range(1, self.n_points + 1)]
        else:
            self.n_points = 2 * n + 1
            self._slot_coord = {a: 2 * a + 1 for a in self.slots}
            self._point_coord = [2 * i for i in range(1, self.n_points + 1)]
            self._nbrs = [(i - 1, i) for i in range(1, self.n_points + 1)]
        self.states = [tuple(c) for c in combinations(self.slots, n)]
        self._dead: dict = {}
        self._ideal_cache: dict = {}
        self._igens: list | None = None

    @property
    def tag(self) -> str:
        return {("A", False): "A", ("A", True): "Aq",
                ("B", False): "B", ("B", True): "Bq"}[(self.kind, self.quotient)]

    def __repr__(self):
        return f"StrandsAlgebra(n={self.n}, tag={self.tag}, rule={self.rule})"

    # -- basis level -----------------------------------------------------

    def dead_points(self, state: tuple) -> frozenset:
        """Indices (0-based) of u variables that vanish on this state.

        Only points with two neighbouring slots can die: u_2n in A_n and
        u_1, u_m in B' have a single neighbour and are never killed here.
        """
        got = self._dead.get(state)
        if got is None:
            s = set(state)
            inner = [(p, a, b) for p, (a, b) in enumerate(self._nbrs)
                     if a in self.slots and b in self.slots]
            if self.kind == "A":
                got = frozenset(p for p, a, b in inner if a in s and b in s)
            else:
                got = frozenset(p for p, a, b in inner if a not in s and b not in s)
            self._dead[state] = got
        return got

    def _vanishes(self, mono, *states) -> bool:
        for st in states:
            dead = self.dead_points(st)
            if any(mono[p] for p in dead):
                return True
        return False

    def alpha(self, s1: tuple, s2: tuple, s3: tuple) -> tuple:
        """Weights of the concatenation s1 -> s2 -> s3 at every point."""
        out = [0] * self.n_points
        c = self._slot_coord
        for j, k, l in zip(s1, s2, s3):
            a, b, d = c[j], c[k], c[l]
            lo, hi = min(a, d), max(a, d)
            if b > hi:
                for p, x in enumerate(self._point_coord):
                    if hi < x < b:
                        out[p] += 1
            elif b < lo:
                for p, x in enumerate(self._point_coord):
                    if b < x < lo:
                        out[p] += 1
        return tuple(out)

    def raw_mul(self, k1: tuple, k2: tuple):
        """Weighted concatenation with no vanishing at all."""
        m1, s1, s2 = k1
        m2, s3, s4 = k2
        if s2 != s3:
            return None
        al = self.alpha(s1, s2, s4)
        return tuple(x + y + z for x, y, z in zip(m1, m2, al)), s1, s4

    def mul_basis(self, k1: tuple, k2: tuple):
        """Product of two basis keys: a key or None (coefficient is 1)."""
        key = self.raw_mul(k1, k2)
        if key is None:
            return None
        if self.rule == "ideal":
            return None if self.in_ideal(key) else key
        s2 = k1[2]
        al = self.alpha(k1[1], s2, k2[2])
        if self._vanishes(key[0], key[1], key[2]):
            return None
        if self.rule == "middle" and self._vanishes(key[0], s2):
            return None
        if self.rule == "alpha-middle" and self._vanishes(al, s2):
            return None
        if self.quotient and self.in_ideal(key):
            return None
        return key

    def valid(self, key: tuple) -> bool:
        if self.rule == "ideal":
            return not self.in_ideal(key)
        mono, s, t = key
        if self._vanishes(mono, s, t):
            return False
        return not (self.quotient and self.in_ideal(key))

    def ideal_generators(self) -> list[tuple]:
        """Basis keys generating the ideal that is divided out.

        Under the ``"ideal"`` rule this contains u_p * iota_T for every
        state T on which p is dead.  Quotients add R_i R_{i-1} and
        L_{i-1} L_i (kind A), R'_i R'_{i+1} and L'_{i+1} L'_i and u_1
        (kind B).
        """
        zero = (0,) * self.n_points
        out = []
        if self.rule == "ideal":
            for t in self.states:
                for p in sorted(self.dead_points(t)):
                    out.append((_unit(self.n_points, p), t, t))
        if not self.quotient:
            return out
        if self.kind == "A":
            pairs = [(("R", i), ("R", i - 1)) for i in range(2, 2 * self.n)]
            pairs += [(("L", i - 1), ("L", i)) for i in range(2, 2 * self.n)]
        else:
            pairs = [(("R", i), ("R", i + 1)) for i in range(2, self.n_points - 1)]
            pairs += [(("L", i + 1), ("L", i)) for i in range(2, self.n_points - 1)]
            out += [(_unit(self.n_points, 0), t, t) for t in self.states]
        for (d1, i1), (d2, i2) in pairs:
            for s in self.states:
                t = self._move(s, d1, i1)
                u = self._move(t, d2, i2) if t is not None else None
                if u is not None:
                    out.append(self.raw_mul((zero, s, t), (zero, t, u)))
        return out

    def in_ideal(self, key: tuple) -> bool:
        """Membership of a basis key in the monomial ideal.

        Products of basis elements are single basis elements, so the ideal
        is spanned by keys; a key lies in it iff it is a u-multiple of
        b1 * g * b2 for bare b1, b2 and a generator g.  This is a finite
        search, so the answer is exact with no degree bound.
        """
        hit = self._ideal_cache.get(key)
        if hit is not None:
            return hit
        if self._igens is None:
            self._igens = self.ideal_generators()
        mono, s, t = key
        zero = (0,) * self.n_points
        found = False
        for g in self._igens:
            full = self.raw_mul(self.raw_mul((zero, s, g[1]), g), (zero, g[2], t))
            if all(a <= b for a, b in zip(full[0], mono)):
                found = True
                break
        self._ideal_cache[key] = found
        return found

    def _move(self, state: tuple, d: str, i: int):
        """Target of the elementary move, or None if undefined."""
        if self.kind == "A":
            a, b = (i, i + 1) if d == "R" else (i + 1, i)
        else:
            a, b = (i - 1, i) if d == "R" else (i, i - 1)
        if a not in state or b in state or b not in self.slots:
            return None
        return tuple(sorted((set(state) - {a}) | {b}))

    # -- elements --------------------------------------------------------

    def element(self, terms: dict | None = None) -> "StrandsElement":
        out: dict = {}
        for key, c in (terms or {}).items():
            if c and self.valid(key):
                out[key] = out.get(key, 0) + mpq(c)
                if not out[key]:
                    del out[key]
        return StrandsElement(self, out)

    def zero(self) -> "StrandsElement":
        return StrandsElement(self, {})

    def basis(self, mono, src, tgt) -> "StrandsElement":
        return self.element({(tuple(mono), tuple(src), tuple(tgt)): ONE})

    def _zero_mono(self):
        return (0,) * self.n_points

    def iota(self, state) -> "StrandsElement":
        state = tuple(sorted(state))
        if state not in self.states:
            raise AlgebraError(f"{state} is not a state")
        return self.basis(self._zero_mono(), state, state)

    def one(self) -> "StrandsElement":
        z = self._zero_mono()
        return self.element({(z, s, s): ONE for s in self.states})

    def u(self, i: int) -> "StrandsElement":
        if not 1 <= i <= self.n_points:
            raise AlgebraError(f"u_{i} out of range")
        mono = tuple(1 if p == i - 1 else 0 for p in range(self.n_points))
        return self.element({(mono, s, s): ONE for s in self.states})

    def monomial(self, mono) -> "StrandsElement":
        mono = tuple(mono)
        return self.element({(mono, s, s): ONE for s in self.states})

    def move(self, d: str, i: int, state=None) -> "StrandsElement":
        """R_i or L_i summed over states (or the single term at ``state``)."""
        z = self._zero_mono()
        terms = {}
        for s in ([tuple(sorted(state))] if state is not None else self.states):
            t = self._move(s, d, i)
            if t is not None:
                terms[(z, s, t)] = ONE
        return self.element(terms)

    def R(self, i: int, state=None) -> "StrandsElement":
        return self.move("R", i, state)

    def L(self, i: int, state=None) -> "StrandsElement":
        return self.move("L", i, state)

    def move_range(self) -> range:
        if self.kind == "A":
            return range(1, 2 * self.n)
        return range(2, self.n_points)

    def iota_i(self, i: int) -> "StrandsElement":
        """Sum of the idempotents whose state contains slot i."""
        z = self._zero_mono()
        return self.element({(z, s, s): ONE for s in self.states if i in s})

    def rho(self, i: int, j: int) -> "StrandsElement":
        """R_i R_{i+1} ... R_{j-1}."""
        if not j > i:
            raise AlgebraError("rho needs j > i")
        out = self.R(i)
        for k in range(i + 1, j):
            out = out * self.R(k)
        return out

    def delta(self, j: int, i: int) -> "StrandsElement":
        """L_{j-1} L_{j-2} ... L_i."""
        if not j > i:
            raise AlgebraError("delta needs j > i")
        out = self.L(j - 1)
        for k in range(j - 2, i - 1, -1):
            out = out * self.L(k)
        return out

    def generators(self) -> dict:
        """Named generators: idempotents, moves, u's, rho and delta."""
        g: dict = {}
        for s in self.states:
            g[("iota", s)] = self.iota(s)
        for i in self.move_range():
            g[("R", i)] = self.R(i)
            g[("L", i)] = self.L(i)
        for i in range(1, self.n_points + 1):
            g[("u", i)] = self.u(i)
        if self.kind == "A":
            for i in range(1, 2 * self.n):
                for j in range(i + 1, 2 * self.n + 1):
                    g[("rho", i, j)] = self.rho(i, j)
                    g[("delta", j, i)] = self.delta(j, i)
        return g

    def monomials(self, degree_bound: int):
        for d in range(degree_bound + 1):
            for combo in _compositions(d, self.n_points):
                yield combo

    def basis_keys(self, degree_bound: int, src=None, tgt=None):
        """Nonzero basis keys with u-degree at most the bound."""
        for mono in self.monomials(degree_bound):
            for s in ([src] if src is not None else self.states):
                for t in ([tgt] if tgt is not None else self.states):
                    key = (mono, s, t)
                    if self.valid(key):
                        yield key


def _unit(k: int, p: int) -> tuple:
    return tuple(1 if q == p else 0 for q in range(k))


def _compositions(d: int, k: int):
    if k == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, k - 1):
            yield (first,) + rest


@dataclass
class StrandsElement:
    """A rational combination of basis keys of one algebra."""
    algebra: StrandsAlgebra
    terms: dict = field(default_factory=dict)

    @property
    def tag(self) -> str:
        return self.algebra.tag

    def _check(self, other: "StrandsElement"):
        if other.algebra is not self.algebra:
            raise AlgebraError(f"tag mismatch: {self.tag} vs {other.tag}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return StrandsElement(self.algebra, out)

    def __neg__(self):
        return StrandsElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = mpq(c)
        if not c:
            return StrandsElement(self.algebra, {})
        return StrandsElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, StrandsElement):
            return self.__rmul__(other)
        return multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, StrandsElement) and other.algebra is self.algebra
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> list:
        return sorted(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"0[{self.tag}]"
        parts = []
        for (mono, s, t), c in sorted(self.terms.items()):
            u = "".join(f"u{p + 1}" + (f"^{e}" if e > 1 else "")
                        for p, e in enumerate(mono) if e)
            parts.append(f"{c}*{u}{list(s)}->{list(t)}")
        return " + ".join(parts)


def multiply(a: StrandsElement, b: StrandsElement) -> StrandsElement:
    """Bilinear extension of the weighted concatenation product."""
    a._check(b)
    alg = a.algebra
    by_src: dict = {}
    for k, v in b.terms.items():
        by_src.setdefault(k[1], []).append((k, v))
    out: dict = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in by_src.get(k1[2], ()):
            k = alg.mul_basis(k1, k2)
            if k is None:
                continue
            s = out.get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return StrandsElement(alg, out)


def quotient_An_normal_form(a: StrandsElement, rule: str | None = None) -> StrandsElement:
    """Image of an A_n element in the quotient by R_i R_{i-1} and L_{i-1} L_i."""
    alg = a.algebra
    if alg.kind != "A":
        raise AlgebraError(f"expected an A_n element, got tag {alg.tag}")
    q = _quotient_of(alg) if rule is None else StrandsAlgebra(alg.n, "A", True, rule)
    return q.element(a.terms)


_QUOTIENTS: dict = {}


def _quotient_of(alg: StrandsAlgebra) -> StrandsAlgebra:
    if alg.quotient:
        return alg
    key = (alg.n, alg.kind, alg.rule)
    if key not in _QUOTIENTS:
        _QUOTIENTS[key] = StrandsAlgebra(alg.n, alg.kind, True, alg.rule)
    return _QUOTIENTS[key]


# -- checks ----------------------------------------------------------------


def relation_suite(n: int, degree_bound: int = 3, rule: str = "ideal") -> dict:
    """Check R1-R5 (and the vanishing consequence) in A_n exhaustively."""
    alg = StrandsAlgebra(n, "A", False, rule)
    reports = {name: Report(name) for name in ("R1", "R2", "R3", "R4", "R5", "vanishing")}
    gens = [alg.iota(s) for s in alg.states]
    gens += [alg.R(i) for i in alg.move_range()] + [alg.L(i) for i in alg.move_range()]
    for mono in alg.monomials(degree_bound):
        um = alg.monomial(mono)
        for g in gens:
            reports["R1"].check(um * g == g * um, ("u", mono, g))
    # u's commute with basis elements and act by shifting the monomial
    for key in alg.basis_keys(max(degree_bound - 1, 0)):
        e = alg.element({key: ONE})
        for i in range(1, alg.n_points + 1):
            ui = alg.u(i)
            shifted = tuple(x + (1 if p == i - 1 else 0) for p, x in enumerate(key[0]))
            expect = alg.element({(shifted, key[1], key[2]): ONE})
            reports["R1"].check(ui * e == e * ui == expect, ("u", i, key))
    for s in alg.states:
        for t in alg.states:
            prod_ = alg.iota(s) * alg.iota(t)
            if s == t:
                reports["R2"].check(prod_ == alg.iota(s), s)
            else:
                reports["R3"].check(not prod_, (s, t))
    for s in alg.states:
        for i in alg.move_range():
            for d in "RL":
                g = alg.move(d, i)
                left = alg.iota(s) * g
                t = alg._move(s, d, i)
                if t is None:
                    reports["R4"].check(not left, (s, d, i))
                else:
                    mid = g * alg.iota(t)
                    both = alg.iota(s) * g * alg.iota(t)
                    reports["R4"].check(bool(left) and left == both and
                                        alg.iota(s) * mid == left, (s, d, i))
    for i in alg.move_range():
        r, l, u = alg.R(i), alg.L(i), alg.u(i)
        reports["R5"].check(r * l == alg.iota_i(i) * u, ("RL", i))
        reports["R5"].check(l * r == alg.iota_i(i + 1) * u, ("LR", i))
        for s in alg.states:
            if i in s and i + 1 in s:
                reports["vanishing"].check(not (u * alg.iota(s)), (i, s))
    return reports


def associativity_check(alg: StrandsAlgebra, degree_bound: int = 3,
                        factor_degree: int = 1) -> Report:
    """(ab)c == a(bc) on composable basis triples of bounded degree."""
    rep = Report(f"associativity[{alg.tag},{alg.rule}]")
    keys = list(alg.basis_keys(factor_degree))
    by_src: dict = {}
    for k in keys:
        by_src.setdefault(k[1], []).append(k)
    for k1 in keys:
        for k2 in by_src.get(k1[2], ()):
            if sum(k1[0]) + sum(k2[0]) > degree_bound:
                continue
            ab = alg.mul_basis(k1, k2)
            for k3 in by_src.get(k2[2], ()):
                if sum(k1[0]) + sum(k2[0]) + sum(k3[0]) > degree_bound:
                    continue
                left = alg.mul_basis(ab, k3) if ab is not None else None
                bc = alg.mul_basis(k2, k3)
                right = alg.mul_basis(k1, bc) if bc is not None else None
                rep.check(left == right, (k1, k2, k3))
    return rep


def rule_comparison(n: int, degree_bound: int = 3) -> dict:
    """Run relations and associativity under each middle-state rule."""
    out = {}
    for rule in RULES:
        rels = relation_suite(n, degree_bound, rule)
        assoc = associativity_check(StrandsAlgebra(n, "A", False, rule),
                                    degree_bound)
        out[rule] = {"relations": all(r.ok for r in rels.values()),
                     "associativity": assoc.ok,
                     "witness": (assoc.failures[:1] or
                                 [v for r in rels.values() for v in r.failures][:1])}
    return out


def h_key(key: tuple, n: int):
    """The basis-level map h on an interval-state key; None if u_1 divides."""
    mono, x, y = key
    if mono[0]:
        return None
    sx = tuple(i for i in range(1, 2 * n + 1) if i not in x)
    sy = tuple(i for i in range(1, 2 * n + 1) if i not in y)
    return (mono[1:], sx, sy)


def h_map(e: StrandsElement, target: StrandsAlgebra) -> StrandsElement:
    terms: dict = {}
    for k, c in e.terms.items():
        hk = h_key(k, e.algebra.n)
        if hk is not None:
            terms[hk] = terms.get(hk, 0) + c
    return target.element(terms)


def iso_check(n: int, degree_bound: int = 3, rule: str = "ideal") -> dict:
    """Verify that h identifies the u_1-quotient of B'(2n+1, n) with A_n's quotient.

    Checks the images of B1-B4, multiplicativity of h on bounded-degree
    basis pairs, and equal dimension counts in every (source, target, degree)
    block up to the bound.
    """
    aq = StrandsAlgebra(n, "A", True, rule)
    b = StrandsAlgebra(n, "B", False, rule)
    bq = StrandsAlgebra(n, "B", True, rule)
    reps = {name: Report(name) for name in
            ("B1", "B2", "B3", "B4", "u1", "homomorphism", "dimensions", "state_map")}
    m = 2 * n + 1
    for x in b.states:
        sx = state_map(LocalState(m, x), n)
        reps["state_map"].check(len(sx) == n and h_key(((0,) * m, x, x), n)[1] == sx, x)
        ix, isx = bq.iota(x), aq.iota(sx)
        reps["B1"].check(h_map(ix, aq) == isx, ("I", x))
        for i in b.move_range():
            for d, dual in (("R", "L"), ("L", "R")):
                g = bq.move(d, i)
                hg = aq.move(dual, i - 1)
                reps["B1"].check(h_map(g, aq) == hg, (d, i))
                t = b._move(x, d, i)
                left = isx * hg
                if t is None:
                    reps["B1"].check(not left, (x, d, i))
                    continue
                ist = aq.iota(state_map(LocalState(m, t), n))
                reps["B1"].check(left == hg * ist == isx * hg * ist, (x, d, i))
                # B2: I_x R' L' = u_i I_x when r_i(x) defined, and mirrored
                back = aq.move(d, i - 1)
                reps["B2"].check(isx * hg * back == aq.u(i - 1) * isx, (x, d, i))
        for i in range(2, m):
            if i - 1 not in x and i not in x:
                reps["B4"].check(not (aq.u(i - 1) * isx), (x, i))
                reps["B4"].check(not (bq.u(i) * bq.iota(x)), ("B-side", x, i))
    for i in range(2, m - 1):
        reps["B3"].check(not (aq.L(i - 1) * aq.L(i)), ("LL", i))
        reps["B3"].check(not (aq.R(i) * aq.R(i - 1)), ("RR", i))
        reps["B3"].check(not (bq.R(i) * bq.R(i + 1)), ("B-RR", i))
        reps["B3"].check(not (bq.L(i + 1) * bq.L(i)), ("B-LL", i))
    reps["u1"].check(not bq.u(1), "u1")
    # multiplicativity on basis pairs
    keys = list(bq.basis_keys(degree_bound))
    by_src: dict = {}
    for k in keys:
        by_src.setdefault(k[1], []).append(k)
    for k1 in keys:
        for k2 in by_src.get(k1[2], ()):
            if sum(k1[0]) + sum(k2[0]) > degree_bound:
                continue
            kb = bq.mul_basis(k1, k2)
            ka = aq.mul_basis(h_key(k1, n), h_key(k2, n))
            reps["homomorphism"].check(
                (h_key(kb, n) if kb is not None else None) == ka, (k1, k2))
    # block dimensions
    count_a: dict = {}
    for mono, s, t in aq.basis_keys(degree_bound):
        blk = (s, t, sum(mono))
        count_a[blk] = count_a.get(blk, 0) + 1
    count_b: dict = {}
    image = set()
    for k in keys:
        hk = h_key(k, n)
        blk = (hk[1], hk[2], sum(hk[0]))
        count_b[blk] = count_b.get(blk, 0) + 1
        image.add(hk)
    reps["dimensions"].check(count_a == count_b, "block counts")
    reps["dimensions"].check(len(image) == len(keys), "h injective on basis")
    return reps
