"""Finite irreducible Coxeter groups acting on their root systems.

Atoms are numbered 0..rank-1 with the following fixed diagram labelling
(Bourbaki order, shifted to start at 0):

    A_n   0 - 1 - ... - n-1
    B_n   0 - 1 - ... - n-2 =4= n-1
    D_n   0 - 1 - ... - n-3, with n-3 joined to both n-2 and n-1
    E_n   0 - 2 - 3 - ... - n-1, with 1 joined to 3
    F4    0 - 1 =4= 2 - 3
    H_n   0 =5= 1 - 2 (- 3)
    I2(m) 0 =m= 1

Roots are indexed 0..2N-1: indices below N are the positive roots (simple
roots first, so the simple root of atom s has index s) and index i + N is the
negative of root i. A group element is stored as the permutation of root
indices it induces; composition and descent tests become array lookups.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .field import GOLDEN, RATIONALS, SQRT2, QuadraticField


class CoxeterError(ValueError):
    pass


class InvalidMatrix(CoxeterError):
    pass


class Reducible(CoxeterError):
    pass


class NotSpherical(CoxeterError):
    pass


class TypeMismatch(CoxeterError):
    pass


class UnknownAtom(CoxeterError):
    pass


FAMILIES = ("A", "B", "D", "E", "F", "H", "I2")
INF = 0  # encoding of m_ij = infinity in Coxeter matrices


@dataclass(frozen=True)
class CoxeterType:
    family: str
    rank: int
    m: int | None = None  # dihedral label, I2 only

    def __post_init__(self) -> None:
        f, n, m = self.family, self.rank, self.m
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "H": n in (3, 4),
            "I2": n == 2 and m is not None and m >= 5,
        }.get(f, False)
        if not ok or (f != "I2" and m is not None):
            raise CoxeterError(f"not an irreducible spherical type: {f} rank={n} m={m}")

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2_{self.m}"
        return f"{self.family}{self.rank}"

    @property
    def field(self) -> QuadraticField | None:
        if self.family in ("B", "F"):
            return SQRT2
        if self.family == "H":
            return GOLDEN
        if self.family == "I2":
            return None
        return RATIONALS

    @property
    def order(self) -> int:
        """Order of the Coxeter group."""
        n = self.rank
        return {
            "A": math.factorial(n + 1),
            "B": 2**n * math.factorial(n),
            "D": 2 ** (n - 1) * math.factorial(n) if self.family == "D" else 0,
            "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
            "F": 1152,
            "H": {3: 120, 4: 14400}.get(n, 0),
            "I2": 2 * (self.m or 0),
        }[self.family]

    @property
    def n_positive_roots(self) -> int:
        n = self.rank
        return {
            "A": n * (n + 1) // 2,
            "B": n * n,
            "D": n * (n - 1),
            "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
            "F": 24,
            "H": {3: 15, 4: 60}.get(n, 0),
            "I2": self.m or 0,
        }[self.family]

    @property
    def tau_order(self) -> int:
        """o(G): 2 for A_n (n>=2), D_odd, E6, I2(odd), else 1."""
        f, n = self.family, self.rank
        if (f == "A" and n >= 2) or (f == "D" and n % 2) or (f == "E" and n == 6):
            return 2
        if f == "I2" and (self.m or 0) % 2:
            return 2
        return 1

    def atom_names(self) -> list[str]:
        if self.rank == 2:
            return ["a", "b"]
        return [f"s{i}" for i in range(self.rank)]

    def edges(self) -> list[tuple[int, int, int]]:
        f, n = self.family, self.rank
        if f == "I2":
            return [(0, 1, self.m)]
        if f == "A":
            return [(i, i + 1, 3) for i in range(n - 1)]
        if f == "B":
            return [(i, i + 1, 3) for i in range(n - 2)] + [(n - 2, n - 1, 4)]
        if f == "D":
            return [(i, i + 1, 3) for i in range(n - 3)] + [(n - 3, n - 2, 3), (n - 3, n - 1, 3)]
        if f == "E":
            return [(0, 2, 3), (1, 3, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)]
        if f == "F":
            return [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
        if f == "H":
            return [(0, 1, 5)] + [(i, i + 1, 3) for i in range(1, n - 1)]
        raise AssertionError(f)

    def coxeter_matrix(self) -> list[list[int]]:
        n = self.rank
        mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i, j, m in self.edges():
            mat[i][j] = mat[j][i] = m
        return mat


_TYPE_RE = re.compile(r"^\s*(I2|[ABDEFGH])\s*(?:_|\()?\s*(\d+)\s*\)?\s*$", re.I)


def parse_type(text: str) -> CoxeterType:
    """Parse "A3", "E8", "I2_7", "I2(7)"; G2, I2_3, I2_4 map to I2_6, A2, B2."""
    mt = _TYPE_RE.match(text)
    if not mt:
        raise CoxeterError(f"cannot parse Coxeter type {text!r}")
    fam, num = mt.group(1).upper(), int(mt.group(2))
    if fam == "G":
        if num != 2:
            raise CoxeterError(f"unknown type {text!r}")
        return CoxeterType("I2", 2, 6)
    if fam == "I2":
        if num == 3:
            return CoxeterType("A", 2)
        if num == 4:
            return CoxeterType("B", 2)
        return CoxeterType("I2", 2, num)
    return CoxeterType(fam, num)


def _as_label(v) -> int:
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "oo", "∞", "infinity"):
            return INF
        v = s
    if isinstance(v, float) and math.isinf(v):
        return INF
    try:
        iv = int(v)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"bad Coxeter matrix entry {v!r}") from exc
    if not isinstance(v, str) and iv != v:
        raise InvalidMatrix(f"non-integer entry {v!r}")
    return iv


def parse_matrix(text: str) -> list[list[int]]:
    """Parse a text grid such as "1 3;3 1" (rows split by ';' or newlines)."""
    rows = [r for r in re.split(r"[;\n]", text) if r.strip()]
    return [[_as_label(tok) for tok in re.split(r"[\s,]+", r.strip())] for r in rows]


def classify(matrix: Sequence[Sequence]) -> CoxeterType:
    """Identify the irreducible spherical type of a Coxeter matrix."""
    mat = [[_as_label(v) for v in row] for row in matrix]
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise InvalidMatrix("Coxeter matrix must be square and non-empty")
    for i in range(n):
        if mat[i][i] != 1:
            raise InvalidMatrix("diagonal entries must be 1")
        for j in range(n):
            if i != j:
                if mat[i][j] != mat[j][i]:
                    raise InvalidMatrix("Coxeter matrix must be symmetric")
                if mat[i][j] != INF and mat[i][j] < 2:
                    raise InvalidMatrix(f"off-diagonal entry {mat[i][j]} not in {{2,3,...,inf}}")
    adj = {i: {} for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j] != 2:
                adj[i][j] = adj[j][i] = mat[i][j]
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        raise Reducible("Coxeter diagram is disconnected")
    if n == 1:
        raise InvalidMatrix("need at least one entry >= 3")
    labels = [m for i in adj for j, m in adj[i].items() if i < j]
    if INF in labels:
        raise NotSpherical("infinite label")
    if n == 2:
        m = labels[0]
        return CoxeterType("A", 2) if m == 3 else CoxeterType("B", 2) if m == 4 else CoxeterType("I2", 2, m)
    if len(labels) != n - 1 or any(m > 5 for m in labels):
        raise NotSpherical("diagram has a cycle or a label >= 6 in rank >= 3")
    degrees = [len(adj[i]) for i in range(n)]
    branch = [i for i in range(n) if degrees[i] >= 3]
    special = [m for m in labels if m > 3]
    if not special:
        if not branch:
            return CoxeterType("A", n)
        if len(branch) > 1 or degrees[branch[0]] > 3:
            raise NotSpherical("simply laced diagram with several branch points")
        c = branch[0]
        arms = []
        for start in adj[c]:
            length, prev, cur = 1, c, start
            while True:
                nxt = [j for j in adj[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return CoxeterType("D", n)
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return CoxeterType("E", n)
        raise NotSpherical(f"simply laced tree with arms {arms}")
    if branch or len(special) > 1:
        raise NotSpherical("diagram outside the classification")
    m = special[0]
    ends = [i for i in range(n) if degrees[i] == 1]
    at_end = any(m == lab for e in ends for lab in adj[e].values())
    if m == 4 and at_end:
        return CoxeterType("B", n)
    if m == 4 and n == 4:
        return CoxeterType("F", 4)
    if m == 5 and at_end and n in (3, 4):
        return CoxeterType("H", n)
    raise NotSpherical("diagram outside the classification")


# ---------------------------------------------------------------- root systems


@dataclass(frozen=True)
class RootSystem:
    type: CoxeterType
    n_pos: int
    refl: np.ndarray  # refl[s, i] = index of s(root_i)
    coords: tuple | None  # simple-root coordinates of positive roots (None for I2)

    @property
    def rank(self) -> int:
        return self.type.rank


def _edge_factor(m: int, field: QuadraticField):
    # 2 cos(pi/m) in the type's field
    if m == 3:
        return field(1)
    if m == 4:
        return field(0, 1)  # sqrt 2
    if m == 5:
        return field(0, 1)  # golden ratio
    raise AssertionError(m)


def build_root_system(t: CoxeterType) -> RootSystem:
    """Positive roots by orbit closure from the simple roots, exact arithmetic."""
    n = t.rank
    if t.family == "I2":
        return _dihedral_root_system(t)
    field = t.field
    nbrs: list[list[tuple[int, object]]] = [[] for _ in range(n)]
    for i, j, m in t.edges():
        k = _edge_factor(m, field)
        nbrs[i].append((j, k))
        nbrs[j].append((i, k))
    zero, one = field(0), field(1)
    simple = [tuple(one if j == i else zero for j in range(n)) for i in range(n)]
    index = {r: i for i, r in enumerate(simple)}
    roots = list(simple)
    images: list[list[int]] = []  # images[idx][s], with -1 meaning -alpha_s
    k = 0
    while k < len(roots):
        r = roots[k]
        row = []
        for s in range(n):
            if k == s:
                row.append(-1)
                continue
            # s(v) only changes coordinate s: c_s -> -c_s + sum_j 2cos(pi/m_sj) c_j
            c = -r[s]
            for j, f in nbrs[s]:
                if not r[j].is_zero():
                    c = c + f * r[j]
            img = r[:s] + (c,) + r[s + 1:]
            idx = index.get(img)
            if idx is None:
                if c.sign() < 0:
                    raise AssertionError("reflection produced a negative root")
                idx = index[img] = len(roots)
                roots.append(img)
            row.append(idx)
        images.append(row)
        k += 1
    N = len(roots)
    refl = np.empty((n, 2 * N), dtype=np.int32)
    for i, row in enumerate(images):
        for s, idx in enumerate(row):
            img = s + N if idx == -1 else idx
            refl[s, i] = img
            refl[s, i + N] = img - N if img >= N else img + N
    return RootSystem(t, N, refl, tuple(roots))


def _dihedral_root_system(t: CoxeterType) -> RootSystem:
    # Roots of I2(m) as unit vectors at angles k*pi/m, k in Z/2m; positives are
    # k = 0..m-1, with simple roots at angles 0 and (m-1)pi/m. The reflection in
    # the root at angle k*pi/m sends angle j to 2k + m - j (mod 2m).
    m = t.m
    order = [0, m - 1] + list(range(1, m - 1))
    pos_of_angle = {ang: i for i, ang in enumerate(order)}

    def index(angle: int) -> int:
        angle %= 2 * m
        return pos_of_angle[angle] if angle < m else pos_of_angle[angle - m] + m

    angle_of = order + [a + m for a in order]
    refl = np.empty((2, 2 * m), dtype=np.int32)
    for s, k in enumerate((0, m - 1)):
        for i in range(2 * m):
            refl[s, i] = index(2 * k + m - angle_of[i])
    return RootSystem(t, m, refl, None)


# ------------------------------------------------------------ group elements


class WElem:
    """Element of W, stored as the signed-root permutation it induces."""

    __slots__ = ("group", "perm", "idx", "length", "rdes", "ldes", "_inv", "_word")

    def __init__(self, group: CoxeterGroup, perm: np.ndarray, idx: int) -> None:
        self.group = group
        self.perm = perm
        self.idx = idx
        N = group.N
        self.length = int(np.count_nonzero(perm[:N] >= N))
        inv = np.empty_like(perm)
        inv[perm] = group._arange
        self.rdes = int(np.dot(perm[: group.rank] >= N, group._pow2))
        self.ldes = int(np.dot(inv[: group.rank] >= N, group._pow2))
        self._inv = inv
        self._word = None

    def __repr__(self) -> str:
        names = self.group.type.atom_names()
        return f"W<{' '.join(names[s] for s in self.word()) or '1'}>"

    def word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        if self._word is None:
            self._word = self.group.w_to_word(self)
        return self._word

    def __mul__(self, other: WElem) -> WElem:
        return self.group.mul(self, other)

    def __lt__(self, other: WElem) -> bool:
        return (self.length, self.word()) < (other.length, other.word())

    # equality is identity: elements are interned per group
    __hash__ = object.__hash__


MAX_ENUMERABLE = 60000


class CoxeterGroup:
    """A finite irreducible Coxeter group W with interned, cached elements."""

    def __init__(self, t: CoxeterType) -> None:
        self.type = t
        self.roots = build_root_system(t)
        self.rank = t.rank
        self.N = self.roots.n_pos
        self._arange = np.arange(2 * self.N, dtype=np.int32)
        self._pow2 = np.array([1 << i for i in range(self.rank)], dtype=np.int64)
        self._by_key: dict[bytes, WElem] = {}
        self._elems: list[WElem] = []
        self._mul: dict[tuple[int, int], WElem] = {}
        self.identity = self._intern(self._arange.copy())
        self.atoms = [self._intern(self.roots.refl[s].copy()) for s in range(self.rank)]
        self.w0 = self._longest()
        self._all: list[WElem] | None = None

    def _intern(self, perm: np.ndarray) -> WElem:
        key = perm[: self.rank].tobytes()
        e = self._by_key.get(key)
        if e is None:
            e = WElem(self, perm, len(self._elems))
            self._by_key[key] = e
            self._elems.append(e)
        return e

    def check(self, *elems: WElem) -> None:
        for e in elems:
            if e.group is not self:
                raise TypeMismatch(f"element of {e.group.type} used in {self.type}")

    def mul(self, u: WElem, v: WElem) -> WElem:
        if u.group is not self or v.group is not self:
            self.check(u, v)
        key = (u.idx, v.idx)
        r = self._mul.get(key)
        if r is None:
            if len(self._mul) > 4_000_000:
                self._mul.clear()
            r = self._mul[key] = self._intern(u.perm[v.perm])
        return r

    def inverse(self, u: WElem) -> WElem:
        return self._intern(u._inv.copy())

    def _longest(self) -> WElem:
        w = self.identity
        full = (1 << self.rank) - 1
        while w.rdes != full:
            s = (~w.rdes & full).bit_length() - 1
            w = self.mul(w, self.atoms[s])
        return w

    def atom_index(self, s: WElem) -> int | None:
        for i, a in enumerate(self.atoms):
            if a is s:
                return i
        return None

    def descents(self, u: WElem, side: str = "left") -> frozenset[int]:
        mask = u.ldes if side == "left" else u.rdes
        return frozenset(i for i in range(self.rank) if mask >> i & 1)

    def word_to_w(self, word: Iterable[int]) -> WElem:
        w = self.identity
        for s in word:
            if not 0 <= s < self.rank:
                raise UnknownAtom(f"atom index {s} out of range for {self.type}")
            w = self.mul(w, self.atoms[s])
        return w

    def w_to_word(self, u: WElem) -> tuple[int, ...]:
        out = []
        while u.length:
            m = u.ldes
            s = (m & -m).bit_length() - 1
            out.append(s)
            u = self.mul(self.atoms[s], u)
        return tuple(out)

    def elements(self) -> list[WElem]:
        """All of W sorted by (length, lex-min reduced word); small groups only."""
        if self._all is None:
            if self.type.order > MAX_ENUMERABLE:
                raise CoxeterError(f"{self.type} has {self.type.order} elements; too many to enumerate")
            layer, seen, out = [self.identity], {self.identity}, [self.identity]
            while layer:
                nxt = []
                for w in layer:
                    for a in self.atoms:
                        v = self.mul(w, a)
                        if v.length > w.length and v not in seen:
                            seen.add(v)
                            nxt.append(v)
                nxt.sort()
                out.extend(nxt)
                layer = nxt
            self._all = out
        return self._all


@lru_cache(maxsize=None)
def _group(t: CoxeterType) -> CoxeterGroup:
    return CoxeterGroup(t)


def coxeter_group(t: CoxeterType | str) -> CoxeterGroup:
    """The (cached, shared) group of a type."""
    if isinstance(t, str):
        t = parse_type(t)
    return _group(t)


def w_multiply(u: WElem, v: WElem) -> WElem:
    return u.group.mul(u, v)


def w_inverse(u: WElem) -> WElem:
    return u.group.inverse(u)


def w_longest(t: CoxeterType | str) -> WElem:
    return coxeter_group(t).w0


def descents(u: WElem, side: str = "left") -> frozenset[int]:
    return u.group.descents(u, side)
