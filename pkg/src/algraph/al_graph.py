"""The additional length graph C_AL.

Vertices are cosets g Delta^Z, each stored by its representative with inf = 0.
Two vertices are adjacent when the connecting coset contains a proper simple
or an absorbable element. Absorbability has no known decision procedure, so
it is answered three-valued with a bounded witness search.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Protocol

from .garside import (
    GarsideContext,
    GarsideElement,
    PreconditionViolated,
    gcd,
    is_prefix,
    truncate,
)


@dataclass(frozen=True)
class ALConstants:
    """Hyperbolicity constant and quasi-geodesic bound of C_AL (taken as given)."""

    delta_hyp: int = 60
    M: int = 39

    @property
    def slack(self) -> int:
        """2M + 1, the additive slack of the Lipschitz estimate for λ."""
        return 2 * self.M + 1

    def xi(self, kappa: int) -> int:
        return kappa + self.slack

    def wpd_min_N(self, kappa: int) -> int:
        return 4 * kappa + 319

    def wpd_cap(self, kappa: int) -> int:
        return 8 * kappa + 638

    @property
    def subword_power(self) -> int:
        return 2 * 5 * self.M


CONSTANTS = ALConstants()

DEFAULT_BOUND = 4
DEFAULT_BFS_BUDGET = 10_000
BFS_MAX_SIMPLES = 1000


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------------ vertices


@dataclass(frozen=True)
class ALVertex:
    """A vertex of C_AL, i.e. the coset rep Delta^Z with inf(rep) = 0."""

    rep: GarsideElement

    def __post_init__(self) -> None:
        if self.rep.delta != 0:
            raise PreconditionViolated("vertex representatives have inf = 0")

    @property
    def ctx(self) -> GarsideContext:
        return self.rep.ctx

    def __repr__(self) -> str:
        from .words import format_element

        return f"ALVertex({format_element(self.rep)})"


def vertex_of(g: GarsideElement) -> ALVertex:
    return ALVertex(g.times_delta(-g.delta))


def base_vertex(ctx: GarsideContext) -> ALVertex:
    return ALVertex(ctx.identity)


def complement(z: GarsideElement) -> GarsideElement:
    """∂z = z^-1 Delta^sup(z) for z with inf 0."""
    return z.inverse().times_delta(z.sup)


def vertex_inverse(v: ALVertex, g: GarsideElement) -> ALVertex:
    """Vertex of g^-1 from the vertex of g: rep is tau^inf(g)(∂ rep(v))."""
    if vertex_of(g) != v:
        raise PreconditionViolated("g does not represent v")
    d = complement(v.rep)
    return ALVertex(d.ctx.element(0, d.ctx._twist(d.factors, g.delta)))


def act(g: GarsideElement, v: ALVertex) -> ALVertex:
    return vertex_of(g * v.rep)


# ------------------------------------------------------------- absorbability


class Verdict(enum.Enum):
    CERTIFIED = "certified"
    CERTIFIED_NOT = "certified-not"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Absorbability:
    verdict: Verdict
    witness: GarsideElement | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


def _witnesses(x: GarsideElement, y: GarsideElement) -> bool:
    """x absorbs y (inf(x) = 0 assumed): inf(xy) = 0 and sup(xy) = sup(x)."""
    xy = x * y
    return xy.delta == 0 and xy.sup == x.sup


def structural_non_absorbable(y: GarsideElement) -> str | None:
    """Reason y is certainly not absorbable, or None.

    Atom complements a^-1 Delta and Delta a^-1 are simples of length N - 1 and
    are not absorbable; neither is any positive element containing one of them
    as a subword, and normal-form factors are such subwords.
    """
    ctx = y.ctx
    if y.delta != 0 and y.sup != 0:
        return "inf and sup both nonzero"
    z = y if y.delta == 0 else y.inverse()
    full = ctx.N - 1
    for f in z.factors:
        if f.length == full:
            return "left normal form contains an atom complement"
    rfs, _ = z.right_normal_form()
    for f in rfs:
        if f.length == full:
            return "right normal form contains an atom complement"
    return None


_ABSORB_CACHE: dict[tuple[int, int, tuple[int, ...], int], Absorbability] = {}


def is_absorbable(y: GarsideElement, bound: int = DEFAULT_BOUND, node_budget: int = 200_000) -> Absorbability:
    """Bounded witness search for absorbability of y.

    Certified comes with a witness x (inf 0, ℓ(x) <= bound). CertifiedNot only
    comes from structural criteria. Everything else is Unknown.
    """
    if bound < 0:
        raise PreconditionViolated("search bound must be >= 0")
    ctx = y.ctx
    if y.is_identity():
        return Absorbability(Verdict.CERTIFIED, ctx.identity, "trivial")
    reason = structural_non_absorbable(y)
    if reason:
        return Absorbability(Verdict.CERTIFIED_NOT, None, reason)
    key = (id(ctx), y.delta, tuple(f.idx for f in y.factors), bound)
    hit = _ABSORB_CACHE.get(key)
    if hit is not None:
        return hit
    if y.delta == 0:
        res = _search(y, bound, node_budget)
    else:
        # sup(y) = 0: y is absorbable iff y^-1 is; a witness x' for y^-1
        # turns into the witness x' y^-1 for y
        res = _search(y.inverse(), bound, node_budget)
        if res.witness is not None:
            res = Absorbability(res.verdict, res.witness * y.inverse(), res.reason + " (via inverse)")
    if len(_ABSORB_CACHE) > 100_000:
        _ABSORB_CACHE.clear()
    _ABSORB_CACHE[key] = res
    return res


def _predecessors(ctx: GarsideContext) -> dict[int, list]:
    cache = getattr(ctx, "_al_pred", None)
    if cache is None:
        simples = ctx.proper_simples()
        cache = {t.idx: [s for s in simples if ctx.is_left_weighted(s, t)] for t in simples}
        ctx._al_pred = cache  # type: ignore[attr-defined]
    return cache


def _search(y: GarsideElement, bound: int, node_budget: int) -> Absorbability:
    ctx = y.ctx
    if ctx.W.type.order > 60000:
        return Absorbability(Verdict.UNKNOWN, None, "group too large for witness search")
    # y ≼ ∂x forces sup(y) <= sup(x) = ℓ(x)
    if y.sup > bound:
        return Absorbability(Verdict.UNKNOWN, None, f"sup(y) = {y.sup} exceeds bound {bound}")
    pred = _predecessors(ctx)
    y1 = y.factors[0]
    # y_1 ≼ ∂x_last, so x_last y_1 is simple; normal forms grow to the left
    lasts = [s for s in ctx.proper_simples() if ctx.W.mul(s, y1).length == s.length + y1.length]
    nodes = 0
    stack: list[tuple] = [(s,) for s in reversed(lasts)]
    while stack:
        fs = stack.pop()
        nodes += 1
        if nodes > node_budget:
            return Absorbability(Verdict.UNKNOWN, None, f"node budget {node_budget} exhausted")
        x = GarsideElement(ctx, 0, fs)
        if _witnesses(x, y):
            return Absorbability(Verdict.CERTIFIED, x, f"witness of length {len(fs)}")
        if len(fs) < bound:
            stack.extend((s,) + fs for s in reversed(pred[fs[0].idx]))
    return Absorbability(Verdict.UNKNOWN, None, f"no witness with length <= {bound}")


# ---------------------------------------------------------------------- edges


class EdgeKind(enum.Enum):
    SIMPLE = "simple"
    ABSORBABLE = "absorbable"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EdgeResult:
    kind: EdgeKind
    witness: GarsideElement | None = None

    def __bool__(self) -> bool:
        return self.kind in (EdgeKind.SIMPLE, EdgeKind.ABSORBABLE)


def coset_absorbability(g: GarsideElement, bound: int = DEFAULT_BOUND) -> Absorbability:
    """Absorbability of the coset g Delta^Z through its inf-0 and sup-0 members."""
    lo = g.times_delta(-g.delta)
    hi = g.times_delta(-g.sup)
    a = is_absorbable(lo, bound)
    if a.verdict is Verdict.CERTIFIED:
        return a
    b = is_absorbable(hi, bound)
    if b.verdict is Verdict.CERTIFIED:
        return b
    if a.verdict is Verdict.CERTIFIED_NOT and b.verdict is Verdict.CERTIFIED_NOT:
        return Absorbability(Verdict.CERTIFIED_NOT, None, a.reason)
    return Absorbability(Verdict.UNKNOWN, None, a.reason or b.reason)


def is_edge(u: ALVertex, w: ALVertex, bound: int = DEFAULT_BOUND) -> EdgeResult:
    if u == w:
        return EdgeResult(EdgeKind.NO)
    g = u.rep.inverse() * w.rep
    if g.canonical_length == 1:
        return EdgeResult(EdgeKind.SIMPLE, g.times_delta(-g.delta))
    a = coset_absorbability(g, bound)
    if a.verdict is Verdict.CERTIFIED:
        return EdgeResult(EdgeKind.ABSORBABLE, a.witness)
    if a.verdict is Verdict.CERTIFIED_NOT:
        return EdgeResult(EdgeKind.NO)
    return EdgeResult(EdgeKind.UNKNOWN)


# ------------------------------------------------------------ preferred paths


@dataclass(frozen=True)
class PreferredPath:
    start: ALVertex
    labels: tuple
    vertices: tuple[ALVertex, ...] = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.labels)

    @property
    def end(self) -> ALVertex:
        return self.vertices[-1]


def preferred_path(u: ALVertex, v: ALVertex) -> PreferredPath:
    """Path spelled by the left normal form of the rep of ū^-1 v̄ from u."""
    g = vertex_of(u.rep.inverse() * v.rep).rep
    verts = [u]
    cur = u.rep
    for s in g.factors:
        cur = cur * cur.ctx.simple(s)
        verts.append(vertex_of(cur))
    return PreferredPath(u, g.factors, tuple(verts))


def gcd_vertex(u: ALVertex, v: ALVertex) -> ALVertex:
    return vertex_of(gcd(u.rep, v.rep))


# ------------------------------------------------------------------ projection


class AxisElement(Protocol):
    @property
    def xG(self) -> GarsideElement: ...


def _leading_copies(z: GarsideElement, block: tuple) -> int:
    r = len(block)
    k = 0
    while z.factors[k * r:(k + 1) * r] == block:
        k += 1
    return k


def max_power_prefix(z: GarsideElement, x: GarsideElement, keep: int | None = None) -> tuple[int, GarsideElement]:
    """(n, A) with n = max{n >= 0 : x^n ≼ z} and A = x^-n z, for rigid x with inf 0.

    x^n ≼ z makes the normal form of z start with n - 1 copies of x's
    factors, so one prefix test follows the copy count. With ``keep`` set,
    only A ∧ Delta^keep is returned, which avoids touching the whole of z.
    """
    if z.delta != 0:
        raise PreconditionViolated("need inf(z) = 0")
    r = len(x.factors)
    c = _leading_copies(z, x.factors)
    rest = GarsideElement(z.ctx, 0, z.factors[c * r:])
    if not (rest.factors and is_prefix(x, rest)):
        return c, rest if keep is None else truncate(rest, keep)
    if keep is None:
        return c + 1, x.inverse() * rest
    # x^-1 w ∧ Delta^j = (x^-1 (w ∧ Delta^(r+j))) ∧ Delta^j
    return c + 1, truncate(x.inverse() * truncate(rest, r + keep), keep)


def _rep_head(g: GarsideElement, k: int) -> GarsideElement:
    """rep(g) ∧ Delta^k."""
    return truncate(g.times_delta(-g.delta), k)


def lambda_projection(v: ALVertex, c: AxisElement) -> int:
    """λ(v) = -max{k : x ⋠ rep(x^k v̄)} for the axis element x = c.xG.

    With n = max{n : x^n ≼ v̄} >= 1, λ = n: every x^j A (A = x^-n v̄) has
    inf 0, since otherwise ∂a ≼ A for the final atom a of x and then
    inf(v̄) > 0. With n = 0 let m = max{m : (∂x)^m ≼ v̄} and A = (∂x)^-m v̄.
    The reps of x^k v̄ for k = m+1, m, m-1 are rep(x A), A and ∂x A, and the
    last never starts with x (its first factor is ∂a). For k >= m+2, x is
    a prefix of rep(x^k v̄) (see lambda_projection_scan). Only A ∧ Delta^2r
    is needed, because (x A) ∧ Delta^2r = (x (A ∧ Delta^2r)) ∧ Delta^2r and
    inf(x A) <= r.
    """
    x = c.xG
    z = v.rep
    r = x.sup
    n, _ = max_power_prefix(z, x, keep=0)
    if n >= 1:
        return n
    dx = complement(x)
    m, A = max_power_prefix(z, dx, keep=2 * r)
    xa = truncate(x * A, 2 * r)
    if not is_prefix(x, _rep_head(xa, r)):
        return -(m + 1)
    if not is_prefix(x, A):
        return -m
    return -(m - 1)


def lambda_projection_scan(v: ALVertex, c: AxisElement) -> int:
    """Literal λ from the definition, scanning k downward from m + 2.

    If (∂x)^(m+1) ⋠ v̄, then inf(x^k v̄) < r(m+1) for all k, so rep(x^k v̄)
    keeps x^(k-1) as a prefix once k >= m + 2; the scan therefore starts
    there and stops at the first k where x is not a prefix.
    """
    x = c.xG
    z = v.rep
    r = x.sup
    dx = complement(x)
    m = 0
    cur = z
    while m * r < z.sup and is_prefix(dx, cur):
        cur = dx.inverse() * cur
        m += 1
    k = m + 2
    floor = -(z.sup // r) - 2
    while k >= floor:
        if not is_prefix(x, vertex_of((x ** k) * z).rep):
            return -k
        k -= 1
    raise AssertionError("λ scan did not terminate")


# ---------------------------------------------------------------- distances


@dataclass(frozen=True)
class DistanceBounds:
    lower: int
    upper: int | None
    lower_method: str
    upper_method: str
    bfs_distance: int | None = None
    budget_exceeded: bool = False

    def to_json(self) -> dict:
        return {
            "lower": {"value": self.lower, "method": self.lower_method},
            "upper": {"value": self.upper, "method": self.upper_method},
            "bfs_distance": {"value": self.bfs_distance, "method": "certified-search:bfs"},
            "budget_exceeded": self.budget_exceeded,
        }


def lipschitz_lower_bound(lam_u: int, lam_v: int, constants: ALConstants = CONSTANTS) -> int:
    return max(0, math.ceil(abs(lam_u - lam_v) / 2) - constants.slack)


def absorbable_pool(ctx: GarsideContext, bound: int = DEFAULT_BOUND, pool_len: int = 2) -> list[GarsideElement]:
    """Inf-0 elements of canonical length 2..pool_len whose coset is certified absorbable."""
    key = (bound, pool_len)
    pools = ctx.__dict__.setdefault("_al_pool", {})
    if key in pools:
        return pools[key]
    simples = ctx.proper_simples()
    out: list[GarsideElement] = []
    layer: list[tuple] = [(s,) for s in simples]
    for _ in range(2, pool_len + 1):
        layer = [fs + (t,) for fs in layer for t in simples if ctx.is_left_weighted(fs[-1], t)]
        for fs in layer:
            y = GarsideElement(ctx, 0, fs)
            if coset_absorbability(y, bound).verdict is Verdict.CERTIFIED:
                out.append(y)
    pools[key] = out
    return out


def bfs_supported(ctx: GarsideContext) -> bool:
    return ctx.W.type.order <= BFS_MAX_SIMPLES


def neighbours(v: ALVertex, bound: int = DEFAULT_BOUND, pool_len: int = 2) -> Iterator[ALVertex]:
    """Certified neighbours: proper simples plus the certified absorbable pool."""
    ctx = v.ctx
    for s in ctx.proper_simples():
        yield vertex_of(v.rep * ctx.simple(s))
    for y in absorbable_pool(ctx, bound, pool_len):
        yield vertex_of(v.rep * y)


def bfs_distance(
    u: ALVertex,
    v: ALVertex,
    bound: int = DEFAULT_BOUND,
    budget: int = DEFAULT_BFS_BUDGET,
    pool_len: int = 2,
) -> int:
    """Distance over certified edges only (an upper bound for d_AL).

    Raises BudgetExceeded after expanding ``budget`` vertices.
    """
    if u == v:
        return 0
    if not bfs_supported(u.ctx):
        raise BudgetExceeded(f"BFS is limited to types with <= {BFS_MAX_SIMPLES} simples")
    seen = {u}
    frontier = deque([(u, 0)])
    expanded = 0
    while frontier:
        w, d = frontier.popleft()
        expanded += 1
        if expanded > budget:
            raise BudgetExceeded(f"expanded {budget} vertices")
        for n in neighbours(w, bound, pool_len):
            if n == v:
                return d + 1
            if n not in seen:
                seen.add(n)
                frontier.append((n, d + 1))
    raise AssertionError("C_AL is connected; BFS exhausted without reaching target")


def bfs_ball(center: ALVertex, radius: int, bound: int = DEFAULT_BOUND, pool_len: int = 2) -> dict[ALVertex, int]:
    """All vertices at certified distance <= radius, with those distances."""
    dist = {center: 0}
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for n in neighbours(w, bound, pool_len):
                if n not in dist:
                    dist[n] = d
                    nxt.append(n)
        frontier = nxt
    return dist


def distance_bounds(
    u: ALVertex,
    v: ALVertex,
    c: AxisElement | None = None,
    bound: int = DEFAULT_BOUND,
    bfs_budget: int = DEFAULT_BFS_BUDGET,
    constants: ALConstants = CONSTANTS,
) -> DistanceBounds:
    if u == v:
        return DistanceBounds(0, 0, "exact:trivial", "exact:trivial", 0)
    lower, lower_method = 1, "exact:distinct-vertices"
    if c is not None:
        lu, lv = lambda_projection(u, c), lambda_projection(v, c)
        lb = lipschitz_lower_bound(lu, lv, constants)
        if lb > lower:
            lower, lower_method = lb, "theorem-bound:lambda-lipschitz"
        # both on the axis: d(X^a, X^b) = d(1, X^(b-a)) >= |b-a|/2
        if u == vertex_of(c.xG ** lu) and v == vertex_of(c.xG ** lv):
            ab = -(-abs(lv - lu) // 2)
            if ab > lower:
                lower, lower_method = ab, "theorem-bound:axis-displacement"
    upper = preferred_path(u, v).length
    upper_method = "certified-search:preferred-path"
    bfs, exceeded = None, False
    if bfs_supported(u.ctx) and bfs_budget > 0:
        try:
            bfs = bfs_distance(u, v, bound, bfs_budget)
        except BudgetExceeded:
            exceeded = True
        else:
            if bfs <= upper:
                upper, upper_method = bfs, "certified-search:bfs"
    else:
        exceeded = True
    return DistanceBounds(lower, upper, lower_method, upper_method, bfs, exceeded)
