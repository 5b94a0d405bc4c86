"""Classical Garside structure of an irreducible spherical Artin-Tits group.

Simple elements are identified with elements of the Coxeter group W (a
positive word is simple iff its image in W is reduced), so starting and
finishing sets are left and right descent sets. A general element is kept in
left normal form Delta^p s_1 ... s_r with every s_i a proper simple and every
adjacent pair left-weighted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .coxeter import CoxeterGroup, CoxeterType, WElem, coxeter_group, parse_type


class GarsideError(ValueError):
    pass


class PreconditionViolated(GarsideError):
    pass


class ContextMismatch(GarsideError):
    pass


class ZeroLength(GarsideError):
    pass


def _lowbit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class GarsideContext:
    """Simples, their lattice operations, and normalisation for one type."""

    def __init__(self, t: CoxeterType) -> None:
        self.type = t
        self.W: CoxeterGroup = coxeter_group(t)
        self.one = self.W.identity
        self.delta = self.W.w0
        self.atoms = self.W.atoms
        self.rank = t.rank
        self.N = self.W.N
        self._w0J: dict[int, WElem] = {}
        self._tau: dict[int, WElem] = {}
        self._rc: dict[int, WElem] = {}
        self._lc: dict[int, WElem] = {}
        self._renorm: dict[tuple[int, int], tuple[WElem, WElem]] = {}
        self.o = 1 if all(self.tau(a) is a for a in self.atoms) else 2
        self.identity = GarsideElement(self, 0, ())

    def __repr__(self) -> str:
        return f"GarsideContext({self.type})"

    # ---------------------------------------------------------------- simples

    def S(self, s: WElem) -> int:
        """Starting set as an atom bitmask."""
        return s.ldes

    def F(self, s: WElem) -> int:
        """Finishing set as an atom bitmask."""
        return s.rdes

    def right_complement(self, s: WElem) -> WElem:
        """s^-1 Delta."""
        r = self._rc.get(s.idx)
        if r is None:
            r = self._rc[s.idx] = self.W.mul(self.W.inverse(s), self.delta)
        return r

    def left_complement(self, s: WElem) -> WElem:
        """Delta s^-1."""
        r = self._lc.get(s.idx)
        if r is None:
            r = self._lc[s.idx] = self.W.mul(self.delta, self.W.inverse(s))
        return r

    def complement(self, s: WElem, side: str = "right") -> WElem:
        return self.right_complement(s) if side == "right" else self.left_complement(s)

    def tau(self, s: WElem, k: int = 1) -> WElem:
        if k % 2 == 0:
            return s
        r = self._tau.get(s.idx)
        if r is None:
            r = self._tau[s.idx] = self.W.mul(self.W.mul(self.delta, s), self.delta)
        return r

    def rev_simple(self, s: WElem) -> WElem:
        return self.W.inverse(s)

    def is_left_weighted(self, s: WElem, t: WElem) -> bool:
        return not (t.ldes & ~s.rdes)

    def is_right_weighted(self, s: WElem, t: WElem) -> bool:
        return not (s.rdes & ~t.ldes)

    def parabolic_longest(self, mask: int) -> WElem:
        """Longest element of the standard parabolic subgroup on an atom mask."""
        w = self._w0J.get(mask)
        if w is None:
            w = self.one
            while mask & ~w.rdes:
                w = self.W.mul(w, self.atoms[_lowbit(mask & ~w.rdes)])
            self._w0J[mask] = w
        return w

    def _mask(self, perm: np.ndarray) -> int:
        return int(np.dot(perm[: self.rank] >= self.N, self.W._pow2))

    def meet_prefix(self, a: WElem, b: WElem) -> WElem:
        # If every atom of J is a left descent of a then w0(J) is a prefix of a,
        # so common descents are peeled a parabolic block at a time. Work on the
        # permutation of a^-1: a -> w a sends a^-1 to a^-1 w^-1.
        c = a.ldes & b.ldes
        if not c:
            return self.one
        W = self.W
        A, B = a._inv, b._inv
        while c:
            w = self.parabolic_longest(c).perm
            A, B = A[w], B[w]
            c = self._mask(A) & self._mask(B)
        # a = g a' with a'^-1 = A
        return W.mul(a, W._intern(A))

    def meet_suffix(self, a: WElem, b: WElem) -> WElem:
        c = a.rdes & b.rdes
        if not c:
            return self.one
        W = self.W
        A, B = a.perm, b.perm
        while c:
            w = self.parabolic_longest(c).perm
            A, B = A[w], B[w]
            c = self._mask(A) & self._mask(B)
        # a = a' g
        return W.mul(W.inverse(W._intern(A)), a)

    def join_prefix(self, a: WElem, b: WElem) -> WElem:
        # complement of the join is the suffix-meet of the complements
        c = self.meet_suffix(self.right_complement(a), self.right_complement(b))
        return self.W.mul(self.delta, self.W.inverse(c))

    def join_suffix(self, a: WElem, b: WElem) -> WElem:
        c = self.meet_prefix(self.left_complement(a), self.left_complement(b))
        return self.W.mul(self.W.inverse(c), self.delta)

    def simple_lattice(self, s: WElem, t: WElem, op: str) -> WElem:
        ops = {
            "meet_prefix": self.meet_prefix,
            "join_prefix": self.join_prefix,
            "meet_suffix": self.meet_suffix,
            "join_suffix": self.join_suffix,
        }
        if op not in ops:
            raise ValueError(f"unknown lattice operation {op!r}")
        return ops[op](s, t)

    def is_simple_prefix(self, a: WElem, b: WElem) -> bool:
        """a <= b in the prefix order on simples."""
        return self.W.mul(self.W.inverse(a), b).length == b.length - a.length

    def proper_simples(self) -> list[WElem]:
        return [w for w in self.W.elements() if w is not self.one and w is not self.delta]

    # ---------------------------------------------------------- normalisation

    def renorm(self, s: WElem, t: WElem) -> tuple[WElem, WElem]:
        """Make the pair (s, t) left-weighted by sliding ∂s ∧ t from t into s."""
        if not (t.ldes & ~s.rdes):
            return s, t
        key = (s.idx, t.idx)
        r = self._renorm.get(key)
        if r is None:
            u = self.meet_prefix(self.right_complement(s), t)
            W = self.W
            r = (W.mul(s, u), W.mul(W.inverse(u), t))
            if len(self._renorm) > 2_000_000:
                self._renorm.clear()
            self._renorm[key] = r
        return r

    def _twist(self, fs: Sequence[WElem], k: int) -> list[WElem]:
        if k % 2 == 0 or self.o == 1:
            return list(fs)
        return [self.tau(f) for f in fs]

    def _valid(self, fs: Sequence[WElem], start: int = 0) -> bool:
        one, delta = self.one, self.delta
        for i in range(max(start, 0), len(fs)):
            f = fs[i]
            if f is one or f is delta:
                return False
            if i + 1 < len(fs) and fs[i + 1].ldes & ~f.rdes:
                return False
        return True

    def _rmul_simple(self, delta: int, fs: list[WElem], t: WElem) -> int:
        """Right-multiply Delta^delta fs (in normal form) by simple t, in place."""
        if t is self.one:
            return delta
        if t is self.delta:
            if self.o == 2:
                fs[:] = [self.tau(f) for f in fs]
            return delta + 1
        fs.append(t)
        i = len(fs) - 2
        while i >= 0:
            s, u = fs[i], fs[i + 1]
            s2, u2 = self.renorm(s, u)
            if s2 is s:
                break
            fs[i], fs[i + 1] = s2, u2
            i -= 1
        k = 0
        while k < len(fs) and fs[k] is self.delta:
            k += 1
        if k:
            del fs[:k]
        while fs and fs[-1] is self.one:
            fs.pop()
        if not self._valid(fs, i - k):
            delta, new = self._normalize(delta + k, fs)
            fs[:] = new
            return delta
        return delta + k

    def _normalize(self, delta: int, seq: Iterable[WElem]) -> tuple[int, list[WElem]]:
        """Local sliding until every pair is left-weighted; Delta moves to the front."""
        fs = list(seq)
        while True:
            out: list[WElem] = []
            for f in fs:
                if f is self.delta:
                    delta += 1
                    out = self._twist(out, 1)
                elif f is not self.one:
                    out.append(f)
            fs = out
            changed = False
            for i in range(len(fs) - 1):
                a, b = self.renorm(fs[i], fs[i + 1])
                if a is not fs[i]:
                    fs[i], fs[i + 1] = a, b
                    changed = True
            if not changed:
                return delta, fs

    # ---------------------------------------------------------------- elements

    def element(self, delta: int = 0, factors: Iterable[WElem] = ()) -> GarsideElement:
        """Delta^delta times the product of the given simples, normalised."""
        fs: list[WElem] = []
        for f in factors:
            self.W.check(f)
            delta = self._rmul_simple(delta, fs, f)
        return GarsideElement(self, delta, tuple(fs))

    def delta_power(self, k: int) -> GarsideElement:
        return GarsideElement(self, k, ())

    def simple(self, s: WElem) -> GarsideElement:
        return self.element(0, (s,))

    def atom(self, i: int) -> GarsideElement:
        return self.simple(self.atoms[i])

    def from_atom_word(self, word: Iterable[tuple[int, int]]) -> GarsideElement:
        """Element of a word given as (atom index, exponent) pairs."""
        # a^-1 = ∂a . Delta^-1; every Delta^-1 is pushed to the right end,
        # twisting the letters it passes
        delta, fs, neg = 0, [], 0
        for a, e in word:
            if not 0 <= a < self.rank:
                from .coxeter import UnknownAtom

                raise UnknownAtom(f"atom index {a} out of range for {self.type}")
            s = self.atoms[a]
            for _ in range(abs(e)):
                if e > 0:
                    delta = self._rmul_simple(delta, fs, self.tau(s, neg))
                else:
                    delta = self._rmul_simple(delta, fs, self.tau(self.right_complement(s), neg))
                    neg += 1
        return GarsideElement(self, delta, tuple(fs)).times_delta(-neg)


@lru_cache(maxsize=None)
def _context(t: CoxeterType) -> GarsideContext:
    return GarsideContext(t)


def context(t: CoxeterType | str) -> GarsideContext:
    if isinstance(t, str):
        t = parse_type(t)
    return _context(t)


@dataclass(frozen=True, eq=False)
class GarsideElement:
    """Delta^delta s_1 ... s_r in left normal form."""

    ctx: GarsideContext
    delta: int
    factors: tuple[WElem, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GarsideElement):
            return NotImplemented
        return self.ctx is other.ctx and self.delta == other.delta and self.factors == other.factors

    def __hash__(self) -> int:
        return hash((self.delta, tuple(f.idx for f in self.factors)))

    def __repr__(self) -> str:
        from .words import format_element

        return f"<{self.ctx.type}: {format_element(self)}>"

    @property
    def inf(self) -> int:
        return self.delta

    @property
    def sup(self) -> int:
        return self.delta + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_positive(self) -> bool:
        return self.delta >= 0

    def is_identity(self) -> bool:
        return self.delta == 0 and not self.factors

    def _same(self, other: GarsideElement) -> None:
        if other.ctx is not self.ctx:
            raise ContextMismatch(f"{self.ctx.type} vs {other.ctx.type}")

    def __mul__(self, other: GarsideElement) -> GarsideElement:
        self._same(other)
        ctx = self.ctx
        delta = self.delta + other.delta
        fs = ctx._twist(self.factors, other.delta)
        for f in other.factors:
            delta = ctx._rmul_simple(delta, fs, f)
        return GarsideElement(ctx, delta, tuple(fs))

    def inverse(self) -> GarsideElement:
        # (Delta^p s_1..s_r)^-1 = Delta^(-p-r) prod_{i=r..1} tau^(-p-i)(∂ s_i)
        ctx, p, r = self.ctx, self.delta, len(self.factors)
        fs = tuple(
            ctx.tau(ctx.right_complement(self.factors[i - 1]), p + i) for i in range(r, 0, -1)
        )
        return GarsideElement(ctx, -p - r, fs)

    def __pow__(self, n: int) -> GarsideElement:
        base = self if n >= 0 else self.inverse()
        out = self.ctx.identity
        for _ in range(abs(n)):
            out = out * base
        return out

    def times_delta(self, k: int) -> GarsideElement:
        """self * Delta^k."""
        return GarsideElement(self.ctx, self.delta + k, tuple(self.ctx._twist(self.factors, k)))

    def lmul_simple(self, t: WElem) -> GarsideElement:
        """t * self, for a simple t."""
        ctx = self.ctx
        if t is ctx.one:
            return self
        # t x = (x^-1 t^-1)^-1 and t^-1 = ∂t Delta^-1
        inv = self.inverse()
        fs = list(inv.factors)
        delta = ctx._rmul_simple(inv.delta, fs, ctx.right_complement(t))
        return GarsideElement(ctx, delta, tuple(fs)).times_delta(-1).inverse()

    # ---------------------------------------------------- normal-form queries

    def initial_factor(self) -> WElem:
        if not self.factors:
            raise ZeroLength("powers of Delta have no initial factor")
        return self.ctx.tau(self.factors[0], -self.delta)

    def final_factor(self) -> WElem:
        if not self.factors:
            raise ZeroLength("powers of Delta have no final factor")
        return self.factors[-1]

    def is_rigid(self) -> bool:
        return self.ctx.is_left_weighted(self.final_factor(), self.initial_factor())

    def shift_front(self, k: int) -> GarsideElement:
        """Delta^k * self."""
        return GarsideElement(self.ctx, self.delta + k, self.factors)

    def reverse(self) -> GarsideElement:
        ctx = self.ctx
        rev = ctx.element(0, (ctx.rev_simple(f) for f in reversed(self.factors)))
        return rev.times_delta(self.delta)

    def right_normal_form(self) -> tuple[tuple[WElem, ...], int]:
        """(f_1, ..., f_r), p with self = f_1 ... f_r Delta^p, pairs right-weighted."""
        ctx = self.ctx
        rev = self.reverse()
        return tuple(ctx.rev_simple(f) for f in reversed(rev.factors)), rev.delta

    def head(self) -> WElem:
        """Delta ∧ self for positive self."""
        if self.delta >= 1:
            return self.ctx.delta
        if self.delta < 0:
            raise PreconditionViolated("head of a non-positive element")
        return self.factors[0] if self.factors else self.ctx.one


# ------------------------------------------------------------ free functions


def multiply(x: GarsideElement, y: GarsideElement) -> GarsideElement:
    return x * y


def invert(x: GarsideElement) -> GarsideElement:
    return x.inverse()


def reverse(x: GarsideElement) -> GarsideElement:
    return x.reverse()


def truncate(z: GarsideElement, k: int) -> GarsideElement:
    """z ∧ Delta^k for positive z: the first k - inf(z) normal-form factors."""
    if z.delta < 0:
        raise PreconditionViolated("truncation needs a positive element")
    if z.delta >= k:
        return GarsideElement(z.ctx, k, ())
    return GarsideElement(z.ctx, z.delta, z.factors[: k - z.delta])


def is_prefix(u: GarsideElement, v: GarsideElement) -> bool:
    """u ≼ v, i.e. u^-1 v is positive."""
    if u.delta >= 0 and v.delta >= 0:
        # u ≼ Delta^sup(u), so u ≼ v iff u ≼ v ∧ Delta^sup(u)
        v = truncate(v, u.sup)
    return (u.inverse() * v).delta >= 0


def is_suffix(u: GarsideElement, v: GarsideElement) -> bool:
    """v ≽ u, i.e. v u^-1 is positive (u is a suffix of v)."""
    return (v * u.inverse()).delta >= 0


def left_divide_simple(s: WElem, x: GarsideElement) -> GarsideElement:
    """s^-1 x, using s^-1 = Delta^-1 (Delta s^-1)."""
    return x.lmul_simple(x.ctx.left_complement(s)).shift_front(-1)


def _gcd_positive(x: GarsideElement, y: GarsideElement) -> GarsideElement:
    ctx = x.ctx
    g = ctx.identity
    while True:
        h = ctx.meet_prefix(x.head(), y.head())
        if h is ctx.one:
            return g
        g = g * ctx.simple(h)
        x, y = left_divide_simple(h, x), left_divide_simple(h, y)


def gcd(x: GarsideElement, y: GarsideElement) -> GarsideElement:
    """Prefix-order meet x ∧ y."""
    x._same(y)
    m = min(x.delta, y.delta)
    return _gcd_positive(x.shift_front(-m), y.shift_front(-m)).shift_front(m)


def lcm(x: GarsideElement, y: GarsideElement) -> GarsideElement:
    """Prefix-order join x ∨ y."""
    x._same(y)
    m = min(x.delta, y.delta)
    a, b = x.shift_front(-m), y.shift_front(-m)
    k = max(a.sup, b.sup)
    # z -> z^-1 Delta^k reverses the prefix order on [1, Delta^k]
    c = gcd_suffix(a.inverse().times_delta(k), b.inverse().times_delta(k))
    return c.inverse().shift_front(k).shift_front(m)


def gcd_suffix(x: GarsideElement, y: GarsideElement) -> GarsideElement:
    return gcd(x.reverse(), y.reverse()).reverse()


def lcm_suffix(x: GarsideElement, y: GarsideElement) -> GarsideElement:
    return lcm(x.reverse(), y.reverse()).reverse()


def mixed_canonical_form(x: GarsideElement) -> tuple[GarsideElement, GarsideElement]:
    """(n, p) positive with x = n^-1 p and n ∧ p = 1."""
    p = lcm_suffix(x, x.ctx.identity)
    return p * x.inverse(), p


def right_complement(x: GarsideElement) -> GarsideElement:
    """∂x = x^-1 Delta^sup(x) for x in G^0."""
    if x.delta != 0:
        raise PreconditionViolated("complement is defined on G^0 (inf = 0)")
    return x.inverse().times_delta(x.sup)


def left_complement(x: GarsideElement) -> GarsideElement:
    """∂^-1 x = Delta^sup(x) x^-1 for x in G^0."""
    if x.delta != 0:
        raise PreconditionViolated("complement is defined on G^0 (inf = 0)")
    return x.inverse().shift_front(x.sup)


def inf_of_product(u: GarsideElement, v: GarsideElement) -> tuple[int, GarsideElement]:
    """inf(uv) for u, v in G^0 from the right normal form of u.

    Returns k = max{k : ∂φ_k ≼ v} where φ_k is the product of the last k
    right-normal factors of u, together with ι_{r-k}, the product of the
    first r - k of them, which is a prefix of u v Delta^-k.
    """
    u._same(v)
    if u.delta != 0 or v.delta != 0 or u.sup < 1:
        raise PreconditionViolated("need inf(u) = inf(v) = 0 and sup(u) >= 1")
    ctx = u.ctx
    rfs, _ = u.right_normal_form()
    r = len(rfs)
    best = 0
    for k in range(r, 0, -1):
        phi = ctx.element(0, rfs[r - k:])
        if is_prefix(phi.inverse().times_delta(k), v):
            best = k
            break
    return best, ctx.element(0, rfs[: r - best])
