from __future__ import annotations

import random

import pytest

from algraph.al_graph import (
    Verdict,
    base_vertex,
    complement,
    is_absorbable,
    lambda_projection,
    lipschitz_lower_bound,
    vertex_of,
)
from algraph.garside import PreconditionViolated, context
from algraph.lox import (
    LoxCandidate,
    NotFound,
    axis_displacement,
    centre_key,
    certified_xG,
    normal_form_prefix_lemma_check,
    search_xG,
    verify_xG,
    wpd_enumerate,
)
from algraph.words import format_element
from conftest import CERT_TYPES
from oracles import random_element


@pytest.mark.parametrize("name", CERT_TYPES + ["B2", "A5", "D5", "H4", "I2_12"])
def test_search_and_certify(name):
    ctx = context(name)
    c = search_xG(ctx)
    rep = verify_xG(c)
    assert rep.ok, rep.failures
    assert c.r % 2 == 0 and c.r <= 12
    assert not c.xG.is_identity() and c.xG != ctx.delta_power(1)
    for bound in (0, 2, 4, 8):
        assert is_absorbable(c.xG, bound).verdict is Verdict.CERTIFIED_NOT
        assert is_absorbable(c.dxG, bound).verdict is Verdict.CERTIFIED_NOT
    assert complement(c.xG ** 2) == c.dxG ** 2


def test_pinned_candidates():
    assert format_element(search_xG(context("A2")).xG) == "D^0 . a . a b . b a . a"
    assert format_element(search_xG(context("I2_5")).xG) == "D^0 . a . a b a b . b a b a . a"
    # the search is deterministic
    assert search_xG(context("H3")).xG == search_xG(context("H3")).xG
    assert [search_xG(context(t)).r for t in ("A3", "A4", "B3", "D4", "F4", "H3", "I2_6")] == [6, 8, 6, 6, 6, 6, 4]


def test_not_found():
    with pytest.raises(NotFound):
        search_xG(context("E8"))
    with pytest.raises(NotFound):
        search_xG(context("A4"), 6)
    with pytest.raises(PreconditionViolated):
        search_xG(context("A2"), 5)


def test_verify_reports_failures(A2):
    c = certified_xG(A2)
    broken = LoxCandidate(A2.atom(0) * A2.atom(1), c.atom_a, c.atom_b)
    rep = verify_xG(broken)
    assert not rep.ok
    assert "(ii) initial-final-atom" in rep.failures
    bad = LoxCandidate(A2.delta_power(-1) * c.xG, c.atom_a, c.atom_b)
    assert "inf-zero" in verify_xG(bad).failures


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "H3", "I2_5"])
def test_powers_are_copies(name):
    c = certified_xG(context(name))
    for m in range(1, 7):
        assert (c.xG ** m).factors == c.xG.factors * m
        assert (c.xG ** -m).canonical_length == c.r * m


@pytest.mark.parametrize("name", ["A2", "A3", "B3"])
def test_prefix_lemma(name):
    ctx = context(name)
    c = certified_xG(ctx)
    rng = random.Random(name)
    for k in range(1, 5):
        assert normal_form_prefix_lemma_check(c.xG ** k, c, k)
        assert normal_form_prefix_lemma_check(c.dxG ** k, c, k)
    for _ in range(100):
        s = rng.choice(ctx.proper_simples())
        z = (c.xG ** 3) * ctx.simple(s)
        if z.inf != 0:
            continue
        assert z.factors[: 2 * c.r] == c.xG.factors * 2
        z2 = z * random_element(ctx, rng, 6)
        if z2.inf == 0:
            for k in range(1, 4):
                assert normal_form_prefix_lemma_check(z2, c, k)
    with pytest.raises(PreconditionViolated):
        normal_form_prefix_lemma_check(ctx.delta_power(1), c, 2)


def test_axis_displacement(A2):
    c = certified_xG(A2)
    assert (axis_displacement(c, 0).lower, axis_displacement(c, 0).upper) == (0, 0)
    assert axis_displacement(c, 10).lower == 5
    assert axis_displacement(c, -10).lower == 5
    assert axis_displacement(c, 7).upper == 7 * c.r
    for N in range(0, 21):
        lam = lambda_projection(vertex_of(c.xG ** N), c)
        assert lipschitz_lower_bound(0, lam) >= 0
        assert lipschitz_lower_bound(0, lam) == max(0, -(-N // 2) - 79)


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_wpd_kappa_one(name):
    c = certified_xG(context(name))
    r1 = wpd_enumerate(c, 1)
    assert r1.bound_ok and r1.N == 323 and r1.cap == 646
    keys = [centre_key(g) for g in r1.found_set]
    assert centre_key(c.ctx.identity) in keys
    assert not r1.brute_outside_family
    r2 = wpd_enumerate(c, 1)
    assert keys == [centre_key(g) for g in r2.found_set]


def test_wpd_radius_r_contains_axis_steps(A2):
    c = certified_xG(A2)
    rep = wpd_enumerate(c, c.r, brute_bound=2)
    keys = {centre_key(g) for g in rep.found_set}
    assert centre_key(c.xG) in keys and centre_key(c.xG.inverse()) in keys
    assert rep.bound_ok


def test_wpd_precondition(A2):
    c = certified_xG(A2)
    with pytest.raises(PreconditionViolated):
        wpd_enumerate(c, 1, N=10)
    rep = wpd_enumerate(c, 1, N=10, allow_small_N=True)
    assert not rep.theorem_regime
