"""Counting, sampling and loxodromy experiments at desk scale.

Left normal forms are a regular language: a sequence of proper simples is a
normal form iff S(s_{i+1}) ⊆ F(s_i). Counts therefore only depend on the
finishing set of the last factor, and the dynamic programme runs over atom
masks with exact Python integers.
"""

from __future__ import annotations

import csv
import json
import math
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .al_graph import CONSTANTS, ALConstants, lambda_projection, vertex_of
from .coxeter import MAX_ENUMERABLE, WElem
from .garside import GarsideContext, GarsideElement, context
from .lox import LoxCandidate, NotFound, certified_xG, search_xG

MAX_STATES = 10_000


class TooManySimples(ValueError):
    pass


class TransferMatrix:
    """Left-weighted adjacency on proper simples, aggregated by descent masks."""

    def __init__(self, ctx: GarsideContext) -> None:
        if ctx.W.type.order - 2 > MAX_STATES:
            raise TooManySimples(f"{ctx.type} has {ctx.W.type.order - 2} proper simples (> {MAX_STATES})")
        self.ctx = ctx
        self.states: list[WElem] = ctx.proper_simples()
        self.full = (1 << ctx.rank) - 1
        classes: dict[tuple[int, int], list[WElem]] = {}
        for s in self.states:
            classes.setdefault((s.ldes, s.rdes), []).append(s)
        self.classes = classes
        self.keys = sorted(classes)
        self._cont: list[dict[int, int]] = [{}]
        self._masks = sorted({R for _, R in self.keys} | {self.full})

    def entry(self, s: WElem, t: WElem) -> int:
        return int(not (t.ldes & ~s.rdes))

    def matrix(self) -> np.ndarray:
        n = len(self.states)
        out = np.zeros((n, n), dtype=np.int64)
        for i, s in enumerate(self.states):
            for j, t in enumerate(self.states):
                out[i, j] = self.entry(s, t)
        return out

    def continuations(self, l: int, F: int) -> int:
        """Number of length-l normal-form sequences allowed after a factor with finishing set F."""
        while len(self._cont) <= l:
            prev = self._cont[-1] if len(self._cont) > 1 else None
            cur: dict[int, int] = {}
            for mask in self._masks:
                total = 0
                for L, R in self.keys:
                    if L & ~mask:
                        continue
                    nxt = 1 if prev is None else prev[R]
                    total += len(self.classes[(L, R)]) * nxt
                cur[mask] = total
            self._cont.append(cur)
        if l == 0:
            return 1
        return self._cont[l][F] if F in self._cont[l] else self._direct(l, F)

    def _direct(self, l: int, F: int) -> int:
        total = 0
        for L, R in self.keys:
            if not L & ~F:
                total += len(self.classes[(L, R)]) * self.continuations(l - 1, R)
        return total

    def count(self, l: int) -> int:
        """|G^{0,l}|: normal forms with exactly l proper factors."""
        if l < 0:
            raise ValueError("l must be >= 0")
        return self.continuations(l, self.full)

    def sample(self, l: int, rng: random.Random) -> tuple[WElem, ...]:
        out: list[WElem] = []
        F = self.full
        for i in range(l, 0, -1):
            weights = []
            for L, R in self.keys:
                if not L & ~F:
                    weights.append(((L, R), len(self.classes[(L, R)]) * self.continuations(i - 1, R)))
            total = sum(w for _, w in weights)
            pick = rng.randrange(total)
            for key, w in weights:
                if pick < w:
                    break
                pick -= w
            s = rng.choice(self.classes[key])
            out.append(s)
            F = s.rdes
        return tuple(out)


def _transfer(ctx: GarsideContext) -> TransferMatrix:
    tm = ctx.__dict__.get("_transfer")
    if tm is None:
        tm = ctx.__dict__["_transfer"] = TransferMatrix(ctx)
    return tm


def count_normal_forms(ctx: GarsideContext, l: int) -> int:
    return _transfer(ctx).count(l)


def enumerate_normal_forms(ctx: GarsideContext, l: int) -> list[tuple[WElem, ...]]:
    """Exhaustive list of inf-0 normal forms with l factors (oracle for small cases)."""
    simples = ctx.proper_simples()
    layer: list[tuple[WElem, ...]] = [()]
    for _ in range(l):
        layer = [fs + (t,) for fs in layer for t in simples if not fs or ctx.is_left_weighted(fs[-1], t)]
    return layer


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def sample_uniform(ctx: GarsideContext, eta: int, l: int, seed=None) -> GarsideElement:
    """Uniform element of G^{eta,l}: Delta^eta times a uniform normal form of length l."""
    fs = _transfer(ctx).sample(l, _rng(seed))
    return GarsideElement(ctx, eta, fs)


def word_length(g: GarsideElement) -> int:
    """Length with respect to simples: max(sup, 0) - min(inf, 0)."""
    return max(g.sup, 0) - min(g.delta, 0)


def sample_ball(ctx: GarsideContext, radius: int, seed=None) -> GarsideElement:
    """Uniform element of the ball of given radius for the simple-element word metric."""
    rng = _rng(seed)
    tm = _transfer(ctx)
    strata = []
    for l in range(radius + 1):
        for eta in range(-radius, radius + 1):
            if max(eta + l, 0) - min(eta, 0) <= radius:
                strata.append(((eta, l), tm.count(l)))
    pick = rng.randrange(sum(w for _, w in strata))
    for (eta, l), w in strata:
        if pick < w:
            break
        pick -= w
    return sample_uniform(ctx, eta, l, rng)


def random_walk(ctx: GarsideContext, N: int, seed=None, generators: str = "simples") -> GarsideElement:
    """Product of N uniform draws from the nontrivial simples and their inverses.

    ``generators="atoms"`` walks on atoms and their inverses instead, which
    avoids enumerating W for large types.
    """
    rng = _rng(seed)
    if generators == "simples":
        if ctx.W.type.order > MAX_ENUMERABLE:
            raise TooManySimples(f"{ctx.type}: use generators='atoms'")
        gens = [w for w in ctx.W.elements() if w is not ctx.one]
    elif generators == "atoms":
        gens = list(ctx.atoms)
    else:
        raise ValueError(f"unknown generator set {generators!r}")
    delta, fs, neg = 0, [], 0
    for _ in range(N):
        s = rng.choice(gens)
        if rng.random() < 0.5:
            delta = ctx._rmul_simple(delta, fs, ctx.tau(s, neg))
        else:
            # s^-1 = ∂s Delta^-1, with the Delta^-1 moved to the end
            delta = ctx._rmul_simple(delta, fs, ctx.tau(ctx.right_complement(s), neg))
            neg += 1
    return GarsideElement(ctx, delta, tuple(fs)).times_delta(-neg)


# ----------------------------------------------------------- blocking elements


@dataclass(frozen=True)
class BlockingElement:
    element: GarsideElement
    atom: int

    def check(self) -> bool:
        e, ctx = self.element, self.element.ctx
        rfs, p = e.right_normal_form()
        return (
            e.delta == 0
            and rfs == e.factors
            and p == 0
            and e.factors[-1].length == 1
            and ctx.W.mul(ctx.delta, e.factors[0]).length == 1
            and e.canonical_length <= 6
        )


def build_blocking_element(ctx: GarsideContext, max_length: int = 6) -> BlockingElement:
    """A chain from an atom complement down to an atom, both-weighted at each step.

    This is the second half of an x_G candidate: reversing a chain from the
    atom a up to ∂b gives (Delta b^-1, ..., a) with Delta b^-1 = c^-1 Delta,
    c = tau(b).
    """
    try:
        c = search_xG(ctx, 2 * max_length)
    except NotFound as exc:
        raise NotFound(f"{ctx.type}: no blocking element with ℓ <= {max_length}") from exc
    k = c.r // 2
    e = GarsideElement(ctx, 0, c.xG.factors[k:])
    first = e.factors[0]
    atom = ctx.W.atom_index(ctx.W.mul(first, ctx.delta))
    return BlockingElement(e, atom)


def contains_xG_power_middle(
    g: GarsideElement, c: LoxCandidate, power: int = CONSTANTS.subword_power, window: Fraction | float = Fraction(1, 5)
) -> bool:
    """Whether x_G^power occurs as a factor block inside the central window of g."""
    window = Fraction(window).limit_denominator(10**6)
    block = c.xG.factors * power
    fs = g.factors
    l, b = len(fs), len(block)
    if b > l * window or b == 0:
        return b == 0
    lo = (1 - window) / 2 * l
    hi = (1 + window) / 2 * l
    first = block[0]
    start = math.ceil(lo)
    while start + b <= hi:
        if fs[start] is first and fs[start:start + b] == block:
            return True
        start += 1
    return False


# --------------------------------------------------------------- classifying


@dataclass
class Classification:
    kind: str  # "loxodromic-certified" or "unclassified"
    method: str
    slope: float | None = None
    trajectory: list[int] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.kind == "loxodromic-certified"


def lambda_trajectory(g: GarsideElement, c: LoxCandidate, m_max: int) -> list[int]:
    out = []
    z = g.ctx.identity
    for _ in range(m_max):
        z = z * g
        out.append(lambda_projection(vertex_of(z), c))
    return out


def classify_action(
    g: GarsideElement,
    c: LoxCandidate,
    m_max: int = 400,
    power: int = CONSTANTS.subword_power,
    constants: ALConstants = CONSTANTS,
) -> Classification:
    """Certify loxodromy of g on C_AL, or report it unclassified.

    Certificates: (1) g rigid with x_G^power as a subword of its normal form;
    (2) the lower bound ceil(|λ(g^m)|/2) - (2M+1) on d_AL(1, g^m) is positive
    at m_max and larger than at m_max/2, giving slope lower bound bound/m_max.
    Bounded λ never certifies anything.
    """
    if g.canonical_length and g.is_rigid():
        block = c.xG.factors * power
        fs = g.factors
        if any(fs[i:i + len(block)] == block for i in range(len(fs) - len(block) + 1)):
            return Classification("loxodromic-certified", "theorem-bound:rigid-subword", None, [])
    if g.canonical_length == 0 or m_max < 2:
        return Classification("unclassified", "heuristic:lambda-growth", None, [0] * max(m_max, 0))
    traj = lambda_trajectory(g, c, m_max)
    lb = [max(0, math.ceil(abs(t) / 2) - constants.slack) for t in traj]
    end, mid = lb[-1], lb[m_max // 2 - 1]
    if end > 0 and end > mid:
        return Classification("loxodromic-certified", "theorem-bound:lambda-lipschitz", end / m_max, traj)
    return Classification("unclassified", "heuristic:lambda-growth", None, traj)


# --------------------------------------------------------------- experiments


@dataclass
class ExperimentConfig:
    type: str = "A2"
    sampler: str = "ball"  # ball (stratum eta, l) | ball-radius | walk
    eta: int = 0
    l: int = 10
    radius: int = 10
    N: int = 20
    samples: int = 100
    seed: int = 0
    m_max: int = 40
    power: int = CONSTANTS.subword_power
    window: float = 0.2
    workers: int = 1
    generators: str = "simples"


@dataclass
class SampleRecord:
    index: int
    inf: int
    length: int
    classification: str
    slope: float | None
    subword: bool


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    xG: str
    records: list[SampleRecord]

    def proportion(self, pred) -> dict:
        n = len(self.records)
        k = sum(1 for r in self.records if pred(r))
        if n == 0:
            return {"k": 0, "n": 0, "p": None, "ci95": None, "method": "heuristic:empirical"}
        ci = stats.binomtest(k, n).proportion_ci(0.95, method="wilson")
        return {"k": k, "n": n, "p": k / n, "ci95": [ci.low, ci.high], "method": "heuristic:empirical"}

    @property
    def proportions(self) -> dict:
        return {
            "loxodromic_certified": self.proportion(lambda r: r.classification == "loxodromic-certified"),
            "unclassified": self.proportion(lambda r: r.classification == "unclassified"),
            "subword": self.proportion(lambda r: r.subword),
        }

    def to_json(self) -> dict:
        return {
            "schema": "algraph.experiment/1",
            "config": asdict(self.config),
            "xG": self.xG,
            "subword_power_exploratory": self.config.power != CONSTANTS.subword_power,
            "empty": not self.records,
            "proportions": self.proportions,
            "records": [asdict(r) for r in self.records],
        }

    def write(self, path: str | os.PathLike) -> tuple[Path, Path]:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(json.dumps(self.to_json(), indent=2), encoding="utf-8")
        cp = p.with_suffix(".csv")
        with cp.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "length", "inf", "classification", "lambda_slope", "subword"])
            for r in self.records:
                w.writerow([r.index, r.length, r.inf, r.classification, "" if r.slope is None else r.slope, int(r.subword)])
        return p, cp


def sub_seeds(seed: int, n: int) -> list[int]:
    return [int(s.generate_state(1, np.uint64)[0]) for s in np.random.SeedSequence(seed).spawn(n)]


def _draw(cfg: ExperimentConfig, ctx: GarsideContext, seed: int) -> GarsideElement:
    rng = random.Random(seed)
    if cfg.sampler == "ball":
        return sample_uniform(ctx, cfg.eta, cfg.l, rng)
    if cfg.sampler == "ball-radius":
        return sample_ball(ctx, cfg.radius, rng)
    if cfg.sampler == "walk":
        return random_walk(ctx, cfg.N, rng, cfg.generators)
    raise ValueError(f"unknown sampler {cfg.sampler!r}")


def _run_batch(cfg: ExperimentConfig, items: Sequence[tuple[int, int]]) -> list[SampleRecord]:
    ctx = context(cfg.type)
    c = certified_xG(ctx)
    out = []
    for index, seed in items:
        g = _draw(cfg, ctx, seed)
        cl = classify_action(g, c, cfg.m_max, cfg.power)
        sub = contains_xG_power_middle(g, c, cfg.power, cfg.window)
        out.append(SampleRecord(index, g.delta, g.canonical_length, cl.kind, cl.slope, sub))
    return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    ctx = context(cfg.type)
    c = certified_xG(ctx)
    from .words import format_element

    items = list(enumerate(sub_seeds(cfg.seed, cfg.samples))) if cfg.samples > 0 else []
    if cfg.workers > 1 and len(items) > 1:
        chunks = [items[i::cfg.workers] for i in range(cfg.workers)]
        with ProcessPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(_run_batch, [cfg] * len(chunks), chunks))
        records = sorted((r for p in parts for r in p), key=lambda r: r.index)
    else:
        records = _run_batch(cfg, items)
    return ExperimentReport(cfg, format_element(c.xG), records)


def chi_square_uniformity(ctx: GarsideContext, l: int, draws: int, seed: int) -> tuple[float, float, int]:
    """(statistic, p-value, cells) of sample_uniform against the exact uniform law."""
    rng = random.Random(seed)
    keys = {tuple(f.idx for f in fs): i for i, fs in enumerate(enumerate_normal_forms(ctx, l))}
    counts = Counter()
    for _ in range(draws):
        g = sample_uniform(ctx, 0, l, rng)
        counts[keys[tuple(f.idx for f in g.factors)]] += 1
    obs = [counts[i] for i in range(len(keys))]
    res = stats.chisquare(obs)
    return float(res.statistic), float(res.pvalue), len(keys)
