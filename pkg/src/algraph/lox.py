"""The loxodromic element x_G: search, certification, axis bounds and WPD.

x_G = x rev(x) where x = s_1 ... s_k runs from an atom a to the complement
∂b = b^-1 Delta of an atom, every pair (s_i, s_{i+1}) is both left- and
right-weighted (S(s_{i+1}) = F(s_i)) and lengths strictly increase. Then the
left and right normal forms of x_G coincide, it starts and ends with a, and
contains the pair (b^-1 Delta, Delta b^-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .al_graph import (
    CONSTANTS,
    DEFAULT_BOUND,
    ALConstants,
    ALVertex,
    DistanceBounds,
    Verdict,
    base_vertex,
    bfs_ball,
    bfs_supported,
    complement,
    is_absorbable,
    vertex_of,
)
from .coxeter import MAX_ENUMERABLE, WElem
from .garside import GarsideContext, GarsideElement, PreconditionViolated, is_prefix


class NotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class LoxCandidate:
    xG: GarsideElement
    atom_a: int
    atom_b: int

    @property
    def r(self) -> int:
        return self.xG.canonical_length

    @property
    def ctx(self) -> GarsideContext:
        return self.xG.ctx

    @property
    def dxG(self) -> GarsideElement:
        return complement(self.xG)

    def to_json(self) -> dict:
        from .words import element_to_json, format_element

        names = self.ctx.type.atom_names()
        return {
            "type": str(self.ctx.type),
            "xG": format_element(self.xG),
            "element": element_to_json(self.xG),
            "atom_a": names[self.atom_a],
            "atom_b": names[self.atom_b],
            "r": {"value": self.r, "method": "exact"},
            "labeling": names,
        }


def _succ_table(ctx: GarsideContext) -> dict[int, list[WElem]]:
    by_ldes: dict[int, list[WElem]] = {}
    for w in ctx.W.elements():
        by_ldes.setdefault(w.ldes, []).append(w)
    return by_ldes


def search_xG(ctx: GarsideContext, length_cap: int = 12) -> LoxCandidate:
    """Shortest x_G with r <= length_cap; ties broken by lexicographic factor words."""
    if length_cap < 2 or length_cap % 2:
        raise PreconditionViolated("length_cap must be an even integer >= 2")
    if ctx.W.type.order > MAX_ENUMERABLE:
        raise NotFound(f"{ctx.type}: |W| = {ctx.W.type.order} is beyond the enumerable limit")
    target = ctx.N - 1
    by_ldes = _succ_table(ctx)
    # level-wise DP keeping the lexicographically least path into each simple
    level: dict[int, tuple[tuple, tuple[WElem, ...]]] = {
        a.idx: ((a.word(),), (a,)) for a in ctx.atoms
    }
    for depth in range(1, length_cap // 2 + 1):
        hits = [(key, path) for key, path in level.values() if path[-1].length == target]
        if hits:
            _, path = min(hits, key=lambda kp: kp[0])
            return _assemble(ctx, path)
        if depth == length_cap // 2:
            break
        nxt: dict[int, tuple[tuple, tuple[WElem, ...]]] = {}
        for key, path in level.values():
            s = path[-1]
            for t in by_ldes.get(s.rdes, ()):
                if t.length <= s.length or t is ctx.delta:
                    continue
                cand = (key + (t.word(),), path + (t,))
                old = nxt.get(t.idx)
                if old is None or cand[0] < old[0]:
                    nxt[t.idx] = cand
        level = nxt
        if not level:
            break
    raise NotFound(f"{ctx.type}: no x_G with canonical length <= {length_cap}")


def _assemble(ctx: GarsideContext, path: tuple[WElem, ...]) -> LoxCandidate:
    a = ctx.W.atom_index(path[0])
    # path[-1] = b^-1 Delta = b w0
    b_elem = ctx.W.mul(path[-1], ctx.delta)
    b = ctx.W.atom_index(b_elem)
    tail = tuple(ctx.rev_simple(f) for f in reversed(path))
    x = GarsideElement(ctx, 0, path + tail)
    return LoxCandidate(x, a, b)


# ---------------------------------------------------------------- certificate


@dataclass
class CertificateReport:
    items: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.items.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.items if not ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "items": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.items],
        }


def _check(report: CertificateReport, name: str, fn) -> None:
    try:
        ok, detail = fn()
    except Exception as exc:  # itemised, never raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    report.add(name, ok, detail)


def _lnf_is_rnf(z: GarsideElement) -> bool:
    rfs, p = z.right_normal_form()
    return p == z.delta and rfs == z.factors


def verify_xG(c: LoxCandidate, bound: int = DEFAULT_BOUND, max_power: int = 4) -> CertificateReport:
    ctx, x = c.ctx, c.xG
    rep = CertificateReport()
    atom_len = lambda f: f.length == 1  # noqa: E731

    _check(rep, "inf-zero", lambda: (x.delta == 0, f"inf = {x.delta}"))
    _check(rep, "(i) left-nf-equals-right-nf", lambda: (_lnf_is_rnf(x), ""))

    def item_ii():
        a = ctx.atoms[c.atom_a]
        fs = x.factors
        ok = (
            len(fs) >= 2
            and x.initial_factor() is a
            and x.final_factor() is a
            and not any(atom_len(f) for f in fs[1:-1])
        )
        return ok, f"first/final factors {fs[0].word()} / {fs[-1].word()}"

    _check(rep, "(ii) initial-final-atom", item_ii)

    def item_iii():
        rb = ctx.right_complement(ctx.atoms[c.atom_b])
        lb = ctx.left_complement(ctx.atoms[c.atom_b])
        fs = x.factors
        ok = any(fs[i] is rb and fs[i + 1] is lb for i in range(len(fs) - 1))
        return ok, "pair (b^-1 Delta, tau(b^-1) Delta)"

    _check(rep, "(iii) complement-pair", item_iii)
    _check(rep, "(iv) r-multiple-of-o", lambda: (c.r % ctx.o == 0, f"r = {c.r}, o = {ctx.o}"))
    _check(rep, "r-even-at-most-12", lambda: (c.r % 2 == 0 and c.r <= 12, f"r = {c.r}"))
    _check(rep, "rigid-xG", lambda: (x.is_rigid(), ""))
    dx = c.dxG
    _check(rep, "rigid-dxG", lambda: (dx.delta == 0 and dx.is_rigid(), ""))
    _check(rep, "dxG-left-nf-equals-right-nf", lambda: (_lnf_is_rnf(dx), ""))

    def not_absorbable(z):
        a = is_absorbable(z, bound)
        return a.verdict is Verdict.CERTIFIED_NOT, a.reason

    _check(rep, "xG-not-absorbable", lambda: not_absorbable(x))
    _check(rep, "dxG-not-absorbable", lambda: not_absorbable(dx))

    def powers():
        for m in range(1, max_power + 1):
            if complement(x ** m) != dx ** m:
                return False, f"fails at m = {m}"
            if (x ** m).factors != x.factors * m:
                return False, f"x^{m} is not {m} copies"
        return True, f"m <= {max_power}"

    _check(rep, "complement-of-powers", powers)
    return rep


def certified_xG(ctx: GarsideContext, length_cap: int = 12) -> LoxCandidate:
    c = search_xG(ctx, length_cap)
    rep = verify_xG(c)
    if not rep.ok:
        raise NotFound(f"{ctx.type}: candidate failed {rep.failures}")
    return c


def normal_form_prefix_lemma_check(z: GarsideElement, c: LoxCandidate, k: int) -> bool:
    """x^k ≼ z (k >= 2) forces z to start with x^(k-1); (∂x)^k ≼ z forces k copies of ∂x."""
    if z.delta != 0:
        raise PreconditionViolated("need inf(z) = 0")
    x, dx = c.xG, c.dxG
    ok = True
    if k >= 2 and is_prefix(x ** k, z):
        ok &= z.factors[: c.r * (k - 1)] == x.factors * (k - 1)
    if k >= 1 and is_prefix(dx ** k, z):
        ok &= z.factors[: dx.canonical_length * k] == dx.factors * k
    return ok


def axis_displacement(c: LoxCandidate, N: int) -> DistanceBounds:
    """Bounds on d_AL(1, X^N): theorem lower bound |N|/2, path upper bound r|N|."""
    if N == 0:
        return DistanceBounds(0, 0, "exact:trivial", "exact:trivial", 0)
    return DistanceBounds(
        math.ceil(abs(N) / 2),
        c.r * abs(N),
        "theorem-bound:axis-displacement",
        "certified-search:preferred-path",
    )


# ------------------------------------------------------------------------ WPD


def centre_key(g: GarsideElement) -> tuple[int, tuple[int, ...]]:
    """Key identifying g modulo the centre <Delta^o>."""
    o = g.ctx.o
    return g.delta % o, tuple(f.idx for f in g.ctx._twist(g.factors, g.delta - g.delta % o))


@dataclass
class WPDReport:
    kappa: int
    N: int
    xi: int
    cap: int
    found_set: list[GarsideElement]
    family_checked: int
    pruned: int
    brute_bound: int
    brute_checked: int
    brute_outside_family: list[GarsideElement]
    unknown_exclusions: int
    beyond_radius: int
    ball_size: int
    ball_max_length: int
    theorem_regime: bool = True

    @property
    def bound_ok(self) -> bool:
        return len(self.found_set) <= self.cap

    def to_json(self) -> dict:
        from .words import format_element

        return {
            "schema": "algraph.wpd/1",
            "kappa": self.kappa,
            "N": self.N,
            "xi": self.xi,
            "cap": {"value": self.cap, "method": "theorem-bound"},
            "found": {"count": len(self.found_set), "method": "certified-search"},
            "found_set": [format_element(g) for g in self.found_set],
            "bound_ok": self.bound_ok,
            "family_checked": self.family_checked,
            "family_pruned": self.pruned,
            "ball": {"size": self.ball_size, "max_length": self.ball_max_length, "method": "certified-search:bfs"},
            "brute": {
                "bound": self.brute_bound,
                "checked": self.brute_checked,
                "outside_family": [format_element(g) for g in self.brute_outside_family],
                "unknown_exclusions": self.unknown_exclusions,
                "beyond_radius": self.beyond_radius,
            },
            "theorem_regime": self.theorem_regime,
        }


def _conjugates(x: GarsideElement, d: GarsideElement, lo: int, hi: int) -> dict[int, GarsideElement]:
    """c_k = x^k d x^-k for lo <= k <= hi (lo <= 0 <= hi), incrementally."""
    xi = x.inverse()
    out = {0: d}
    cur = d
    for k in range(1, hi + 1):
        cur = x * cur * xi
        out[k] = cur
    cur = d
    for k in range(-1, lo - 1, -1):
        cur = xi * cur * x
        out[k] = cur
    return out


def _enumerate_nf(ctx: GarsideContext, max_len: int):
    """All inf-0 left normal forms with 0 <= ℓ <= max_len."""
    simples = ctx.proper_simples()
    succ = {s.idx: [t for t in simples if ctx.is_left_weighted(s, t)] for s in simples}
    yield ()
    layer = [(s,) for s in simples]
    for _ in range(max_len):
        yield from layer
        layer = [fs + (t,) for fs in layer for t in succ[fs[-1].idx]]


def wpd_enumerate(
    c: LoxCandidate,
    kappa: int,
    N: int | None = None,
    brute_bound: int = 6,
    bound: int = DEFAULT_BOUND,
    constants: ALConstants = CONSTANTS,
    allow_small_N: bool = False,
) -> WPDReport:
    """Elements γ (mod centre) moving both 1 and X^N by at most kappa.

    Distances are certified upper bounds (BFS over certified edges), so every
    reported element truly qualifies. The structured family
    x^n1 Delta^j x^-m (|n1| <= 2ξ+1, 0 <= m <= 4ξ+2, 0 <= j < o) is pruned
    by ℓ(γ) >= r ||n1| - m|, a lower bound from subadditivity of ℓ.
    """
    ctx, x, r, o = c.ctx, c.xG, c.r, c.ctx.o
    if N is None:
        N = constants.wpd_min_N(kappa)
    regime = N >= constants.wpd_min_N(kappa)
    if not regime and not allow_small_N:
        raise PreconditionViolated(f"N must be >= 4κ+319 = {constants.wpd_min_N(kappa)}")
    if not bfs_supported(ctx):
        raise PreconditionViolated(f"{ctx.type}: certified balls need BFS support")
    ball = bfs_ball(base_vertex(ctx), kappa, bound)
    maxlen = max(v.rep.canonical_length for v in ball)
    xi = constants.xi(kappa)
    mmax, nmax = 4 * xi + 2, 2 * xi + 1

    def reach(length_lb: int) -> bool:
        return length_lb <= maxlen

    found: dict[tuple, GarsideElement] = {}
    checked = pruned = 0
    xpow_cache: dict[int, GarsideElement] = {}

    def xpow(n: int) -> GarsideElement:
        if n not in xpow_cache:
            xpow_cache[n] = x ** n
        return xpow_cache[n]

    for j in range(o):
        conj = None
        for m in range(mmax + 1):
            for n1 in range(-nmax, nmax + 1):
                d = n1 - m
                # lower bounds for ℓ of γ and of x^-N γ x^N
                if not (reach(r * abs(abs(n1) - m)) and reach(r * abs(abs(n1 - N) - abs(m - N)))):
                    pruned += 1
                    continue
                if conj is None:
                    conj = _conjugates(x, ctx.delta_power(j), -N, mmax)
                checked += 1
                # γ = x^d c_m and x^-N γ x^N = x^d c_(m-N)
                g = xpow(d) * conj[m]
                if vertex_of(g) not in ball:
                    continue
                if vertex_of(xpow(d) * conj[m - N]) not in ball:
                    continue
                found.setdefault(centre_key(g), g)

    # brute force over normal forms short enough to lie in the certified ball
    brute_len = min(brute_bound, maxlen)
    xN, xmN = xpow(N), xpow(-N)
    outside: list[GarsideElement] = []
    brute_checked = qualifying = 0
    for fs in _enumerate_nf(ctx, brute_len):
        for p in range(o):
            g = GarsideElement(ctx, p, fs)
            brute_checked += 1
            if vertex_of(g) in ball and vertex_of(xmN * g * xN) in ball:
                qualifying += 1
                if centre_key(g) not in found:
                    outside.append(g)
    beyond = 0
    if brute_bound > brute_len:
        from .generic import TransferMatrix

        tm = TransferMatrix(ctx)
        beyond = o * sum(tm.count(l) for l in range(brute_len + 1, brute_bound + 1))
    return WPDReport(
        kappa=kappa,
        N=N,
        xi=xi,
        cap=constants.wpd_cap(kappa),
        found_set=sorted(found.values(), key=lambda g: (g.canonical_length, centre_key(g))),
        family_checked=checked,
        pruned=pruned,
        brute_bound=brute_bound,
        brute_checked=brute_checked,
        brute_outside_family=outside,
        unknown_exclusions=brute_checked - qualifying + beyond,
        beyond_radius=beyond,
        ball_size=len(ball),
        ball_max_length=maxlen,
        theorem_regime=regime,
    )
