"""Colored profiles, permutation actions, and orbits.

A profile is a finite (possibly empty) sequence of colors.  The groupoid of
profiles has left permutations acting on output profiles and right
permutations acting on input profiles; a profile pair (inputs; outputs) is an
object of the product groupoid.  Orbits of this action index the components
of a colored symmetric sequence, so we fix lexicographically least orbit
representatives once and for all to get deterministic keys.

Permutations are one-line tuples, 0-indexed: ``sigma[i]`` is the image of
``i``.  (Serialization to JSON is 1-indexed; see :func:`perm_to_json`.)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

from .errors import PermutationError

Color = str
Profile = tuple[Color, ...]
Perm = tuple[int, ...]


def check_perm(sigma: Perm, m: int) -> None:
    if len(sigma) != m or sorted(sigma) != list(range(m)):
        raise PermutationError(f"not a permutation of {m} letters: {sigma!r}")


def perm_identity(m: int) -> Perm:
    return tuple(range(m))


def perm_compose(f: Perm, g: Perm) -> Perm:
    """(f . g)(i) = f(g(i)); apply g first."""
    if len(f) != len(g):
        raise PermutationError("composing permutations of different sizes")
    return tuple(f[g[i]] for i in range(len(g)))


def perm_inverse(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, j in enumerate(sigma):
        inv[j] = i
    return tuple(inv)


def perm_to_json(sigma: Perm) -> list[int]:
    """One-line notation, 1-indexed, for the wire format."""
    return [i + 1 for i in sigma]


def perm_from_json(data: list[int]) -> Perm:
    sigma = tuple(i - 1 for i in data)
    check_perm(sigma, len(sigma))
    return sigma


def act(sigma: Perm, p: Profile, side: str) -> Profile:
    """Left or right permutation action on a profile.

    left:  result_i = p_{sigma^{-1}(i)}   (morphism p -> sigma.p)
    right: result_i = p_{sigma(i)}        (morphism p -> p.sigma)

    Both satisfy act(tau, act(sigma, p, side), side) = act(tau*sigma, p, side)
    with ``*`` = perm_compose for the left action and the opposite
    composition for the right one.
    """
    check_perm(sigma, len(p))
    if side == "left":
        inv = perm_inverse(sigma)
        return tuple(p[inv[i]] for i in range(len(p)))
    if side == "right":
        return tuple(p[sigma[i]] for i in range(len(p)))
    raise PermutationError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class Orbit:
    """Orbit of a profile under permutation: canonical rep and size."""

    canonical_rep: Profile
    size: int


def orbit_of(p: Profile) -> Orbit:
    """Canonical representative (sorted = lexicographic minimum) and orbit size.

    The size is the multinomial |p|! / prod(multiplicities!).
    """
    rep = tuple(sorted(p))
    size = factorial(len(p))
    for c in set(p):
        size //= factorial(p.count(c))
    return Orbit(rep, size)


@dataclass(frozen=True)
class ProfilePair:
    """An (inputs; outputs) pair of profiles, an object of the groupoid S."""

    inputs: Profile
    outputs: Profile

    def to_json(self) -> dict:
        return {"in": list(self.inputs), "out": list(self.outputs)}

    @staticmethod
    def from_json(data: dict) -> "ProfilePair":
        return ProfilePair(tuple(data["in"]), tuple(data["out"]))


def profile_to_json(p: Profile) -> list[str]:
    return list(p)


def pair_act(pp: ProfilePair, g: tuple[Perm, Perm]) -> ProfilePair:
    """Right action of a (sigma, tau) pair: (c.sigma ; tau.d)."""
    sigma, tau = g
    return ProfilePair(act(sigma, pp.inputs, "right"), act(tau, pp.outputs, "left"))


def pair_mul(g1: tuple[Perm, Perm], g2: tuple[Perm, Perm]) -> tuple[Perm, Perm]:
    """Composition law so that pair_act(pair_act(pp, g1), g2) = pair_act(pp, g1*g2)."""
    s1, t1 = g1
    s2, t2 = g2
    return (perm_compose(s1, s2), perm_compose(t2, t1))


def pair_inv(g: tuple[Perm, Perm]) -> tuple[Perm, Perm]:
    return (perm_inverse(g[0]), perm_inverse(g[1]))


def orbit_pair_of(pp: ProfilePair) -> ProfilePair:
    """Canonical representative of the orbit of a profile pair."""
    return ProfilePair(orbit_of(pp.inputs).canonical_rep, orbit_of(pp.outputs).canonical_rep)


@lru_cache(maxsize=None)
def _perms(m: int) -> tuple[Perm, ...]:
    return tuple(permutations(range(m)))


def pair_stabilizer(pp: ProfilePair) -> tuple[tuple[Perm, Perm], ...]:
    """All (sigma, tau) with pp.(sigma, tau) = pp, i.e. the vertex group at pp."""
    sig = tuple(s for s in _perms(len(pp.inputs)) if act(s, pp.inputs, "right") == pp.inputs)
    tau = tuple(t for t in _perms(len(pp.outputs)) if act(t, pp.outputs, "left") == pp.outputs)
    return tuple((s, t) for s in sig for t in tau)


def pair_transporters(src: ProfilePair, dst: ProfilePair) -> tuple[tuple[Perm, Perm], ...]:
    """All (sigma, tau) with src.(sigma, tau) = dst; empty unless same orbit."""
    if len(src.inputs) != len(dst.inputs) or len(src.outputs) != len(dst.outputs):
        return ()
    sig = tuple(s for s in _perms(len(src.inputs)) if act(s, src.inputs, "right") == dst.inputs)
    tau = tuple(t for t in _perms(len(src.outputs)) if act(t, src.outputs, "left") == dst.outputs)
    return tuple((s, t) for s in sig for t in tau)


def pair_connector(src: ProfilePair, dst: ProfilePair) -> tuple[Perm, Perm]:
    """Deterministic transporter src -> dst (lexicographically least)."""
    ts = pair_transporters(src, dst)
    if not ts:
        raise PermutationError(f"{dst} is not in the orbit of {src}")
    return min(ts)
