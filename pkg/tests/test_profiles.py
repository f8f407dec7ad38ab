"""Profile actions and orbits, checked against exhaustive enumeration."""

from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from gprops.errors import PermutationError
from gprops.profiles import (
    Orbit,
    ProfilePair,
    act,
    orbit_of,
    pair_act,
    pair_connector,
    pair_inv,
    pair_mul,
    pair_stabilizer,
    pair_transporters,
    perm_compose,
    perm_from_json,
    perm_identity,
    perm_inverse,
    perm_to_json,
)


def test_act_identity():
    assert act((0, 1, 2), ("a", "b", "c"), "left") == ("a", "b", "c")
    assert act((0, 1, 2), ("a", "b", "c"), "right") == ("a", "b", "c")


def test_act_transposition():
    assert act((1, 0), ("a", "b"), "left") == ("b", "a")
    assert act((1, 0), ("a", "b"), "right") == ("b", "a")


def test_act_definition_formulas():
    # left: result_i = p_{sigma^{-1}(i)}; right: result_i = p_{sigma(i)}
    p = ("a", "b", "c", "d")
    sigma = (2, 0, 3, 1)
    inv = perm_inverse(sigma)
    assert act(sigma, p, "left") == tuple(p[inv[i]] for i in range(4))
    assert act(sigma, p, "right") == tuple(p[sigma[i]] for i in range(4))


def test_composition_law_exhaustive_sigma3():
    # all 36 cases of act(tau, act(sigma, p, left), left) = act(tau*sigma, p, left)
    p = ("a", "b", "c")
    cases = 0
    for sigma in permutations(range(3)):
        for tau in permutations(range(3)):
            left = act(tau, act(sigma, p, "left"), "left")
            assert left == act(perm_compose(tau, sigma), p, "left")
            # right action composes contravariantly
            right = act(tau, act(sigma, p, "right"), "right")
            assert right == act(perm_compose(sigma, tau), p, "right")
            cases += 1
    assert cases == 36


def test_act_size_mismatch():
    with pytest.raises(PermutationError):
        act((0, 1), ("a", "b", "c"), "left")
    with pytest.raises(PermutationError):
        act((0, 0, 1), ("a", "b", "c"), "left")


def brute_orbit(p):
    return sorted(set(tuple(p[i] for i in s) for s in permutations(range(len(p)))))


def test_orbit_of_examples():
    # enumerate all 6 permutations of (a,b,a) and dedupe: 3 distinct
    members = brute_orbit(("a", "b", "a"))
    assert orbit_of(("a", "b", "a")) == Orbit(members[0], len(members))
    assert orbit_of(("a", "b", "a")) == Orbit(("a", "a", "b"), 3)
    assert orbit_of(()) == Orbit((), 1)
    assert orbit_of(("a", "a")) == Orbit(("a", "a"), 1)


@given(st.lists(st.sampled_from("abc"), max_size=5))
def test_orbit_matches_enumeration(colors):
    p = tuple(colors)
    members = brute_orbit(p)
    orb = orbit_of(p)
    assert orb.canonical_rep == members[0]
    assert orb.size == len(members)
    assert factorial(len(p)) % orb.size == 0


@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=4), st.integers(0, 23))
def test_orbit_invariant_under_action(colors, pick):
    p = tuple(colors)
    perms = list(permutations(range(len(p))))
    sigma = perms[pick % len(perms)]
    assert orbit_of(act(sigma, p, "left")) == orbit_of(p)
    assert orbit_of(act(sigma, p, "right")) == orbit_of(p)


def test_group_action_exhaustive_up_to_4():
    for m in range(5):
        p = tuple("abcd"[i % 2] for i in range(m))
        e = perm_identity(m)
        for side in ("left", "right"):
            assert act(e, p, side) == p
            for sigma in permutations(range(m)):
                for tau in permutations(range(m)):
                    one = act(tau, act(sigma, p, side), side)
                    comp = perm_compose(tau, sigma) if side == "left" else perm_compose(sigma, tau)
                    assert one == act(comp, p, side)


def test_pair_action_composition():
    pp = ProfilePair(("a", "b"), ("c", "c", "d"))
    stab_pairs = []
    for s in permutations(range(2)):
        for t in permutations(range(3)):
            g = (s, t)
            stab_pairs.append(g)
    for g1 in stab_pairs:
        for g2 in stab_pairs:
            assert pair_act(pair_act(pp, g1), g2) == pair_act(pp, pair_mul(g1, g2))
    for g in stab_pairs:
        assert pair_act(pair_act(pp, g), pair_inv(g)) == pp


def test_pair_stabilizer_and_transporters():
    pp = ProfilePair(("a", "a"), ("b",))
    stab = pair_stabilizer(pp)
    assert len(stab) == 2  # swap the two equal inputs
    other = ProfilePair(("a", "a"), ("b",))
    assert len(pair_transporters(pp, other)) == 2
    g = pair_connector(pp, other)
    assert pair_act(pp, g) == other
    assert pair_transporters(pp, ProfilePair(("a", "b"), ("b",))) == ()


def test_perm_json_round_trip():
    sigma = (2, 0, 1)
    assert perm_to_json(sigma) == [3, 1, 2]
    assert perm_from_json([3, 1, 2]) == sigma


def test_profile_pair_json():
    pp = ProfilePair(("a", "b"), ())
    assert pp.to_json() == {"in": ["a", "b"], "out": []}
    assert ProfilePair.from_json(pp.to_json()) == pp
