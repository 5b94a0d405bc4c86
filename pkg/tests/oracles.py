"""Brute-force reference implementations used only by the tests."""

from __future__ import annotations

import random
from collections import deque
from functools import lru_cache

from algraph.garside import GarsideContext, GarsideElement


def weak_prefix(ctx: GarsideContext, u, v) -> bool:
    W = ctx.W
    return W.mul(W.inverse(u), v).length == v.length - u.length


def weak_suffix(ctx: GarsideContext, u, v) -> bool:
    W = ctx.W
    return W.mul(v, W.inverse(u)).length == v.length - u.length


def brute_meet(ctx: GarsideContext, a, b, order=weak_prefix):
    common = [w for w in ctx.W.elements() if order(ctx, w, a) and order(ctx, w, b)]
    best = max(common, key=lambda w: w.length)
    assert all(order(ctx, w, best) for w in common)
    return best


def brute_join(ctx: GarsideContext, a, b, order=weak_prefix):
    common = [w for w in ctx.W.elements() if order(ctx, a, w) and order(ctx, b, w)]
    best = min(common, key=lambda w: w.length)
    assert all(order(ctx, best, w) for w in common)
    return best


def braid_relations(ctx: GarsideContext) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (⟨st⟩^m, ⟨ts⟩^m) for s < t."""
    M = ctx.type.coxeter_matrix()
    rels = []
    for s in range(ctx.rank):
        for t in range(s + 1, ctx.rank):
            m = M[s][t]
            lhs = tuple(s if i % 2 == 0 else t for i in range(m))
            rhs = tuple(t if i % 2 == 0 else s for i in range(m))
            rels.append((lhs, rhs))
    return rels


def monoid_class(ctx: GarsideContext, word: tuple[int, ...]) -> set[tuple[int, ...]]:
    """All positive words equal to ``word`` in the Artin monoid (BFS over braid relations)."""
    rels = braid_relations(ctx)
    seen = {word}
    todo = deque([word])
    while todo:
        w = todo.popleft()
        for lhs, rhs in rels:
            for a, b in ((lhs, rhs), (rhs, lhs)):
                k = len(a)
                for i in range(len(w) - k + 1):
                    if w[i:i + k] == a:
                        n = w[:i] + b + w[i + k:]
                        if n not in seen:
                            seen.add(n)
                            todo.append(n)
    return seen


def monoid_left_normal_form(ctx: GarsideContext, word: tuple[int, ...]):
    """Greedy normal form of a positive word by exhaustive rewriting.

    The first factor is the longest simple prefix over all equivalent words;
    Delta factors come out first because they are the longest simples.
    """

    @lru_cache(maxsize=None)
    def is_simple(w: tuple[int, ...]) -> bool:
        return ctx.W.word_to_w(w).length == len(w)

    out = []
    cur = tuple(word)
    while cur:
        cls = monoid_class(ctx, cur)
        best_len, best = 0, None
        for w in cls:
            for k in range(len(w), 0, -1):
                if k > best_len and is_simple(w[:k]):
                    best_len, best = k, w
                    break
        s = ctx.W.word_to_w(best[:best_len])
        out.append(s)
        cur = best[best_len:]
    delta = 0
    while out and out[0] is ctx.delta:
        out.pop(0)
        delta += 1
    return delta, tuple(out)


def random_rewrite(ctx: GarsideContext, word: list[tuple[int, int]], rng: random.Random) -> list[tuple[int, int]]:
    """Apply one random defining-relation move to a word of (atom, ±1) letters.

    Moves: insert or delete a cancelling pair, or swap an occurrence of one
    side of a braid relation (all letters positive, or all negative and
    reversed) for the other side.
    """
    w = list(word)
    rels = braid_relations(ctx)
    moves = []
    for lhs, rhs in rels:
        for a, b in ((lhs, rhs), (rhs, lhs)):
            k = len(a)
            pa = [(s, 1) for s in a]
            na = [(s, -1) for s in reversed(a)]
            for i in range(len(w) - k + 1):
                if w[i:i + k] == pa:
                    moves.append((i, k, [(s, 1) for s in b]))
                if w[i:i + k] == na:
                    moves.append((i, k, [(s, -1) for s in reversed(b)]))
    for i in range(len(w) - 1):
        if w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]:
            moves.append((i, 2, []))
    if moves and rng.random() < 0.7:
        i, k, rep = rng.choice(moves)
        return w[:i] + rep + w[i + k:]
    i = rng.randrange(len(w) + 1)
    s, e = rng.randrange(ctx.rank), rng.choice((1, -1))
    return w[:i] + [(s, e), (s, -e)] + w[i:]


def random_word(ctx: GarsideContext, length: int, rng: random.Random, positive: bool = False) -> list[tuple[int, int]]:
    return [(rng.randrange(ctx.rank), 1 if positive else rng.choice((1, -1))) for _ in range(length)]


def random_element(ctx: GarsideContext, rng: random.Random, max_len: int = 20) -> GarsideElement:
    return ctx.from_atom_word(random_word(ctx, rng.randrange(max_len + 1), rng))


def random_g0(ctx: GarsideContext, rng: random.Random, max_factors: int = 5, min_factors: int = 0) -> GarsideElement:
    """Random element with inf 0 built from random proper simples."""
    simples = ctx.proper_simples()
    while True:
        fs = [rng.choice(simples) for _ in range(rng.randint(min_factors, max_factors))]
        x = ctx.element(0, fs)
        x = x.times_delta(-x.delta)
        if x.canonical_length >= min_factors:
            return x


def exhaustive_absorbable(y: GarsideElement, bound: int):
    """Some inf-0 x with ℓ(x) <= bound absorbing y, by enumerating all normal forms."""
    ctx = y.ctx
    simples = ctx.proper_simples()
    layer = [()]
    for _ in range(bound + 1):
        for fs in layer:
            x = GarsideElement(ctx, 0, fs)
            xy = x * y
            if xy.delta == 0 and xy.sup == x.sup:
                return x
        layer = [fs + (t,) for fs in layer for t in simples if not fs or ctx.is_left_weighted(fs[-1], t)]
    return None
