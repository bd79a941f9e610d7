"""Exact arithmetic in the infinite dihedral group.

Two computational models of the same group, with the conversions between
them:

* pairs (shift, flip) with flip in {0, 1}: the semidirect product of the
  integers by the order-two group, multiplying by
  (k, a)(n, b) = (k + (-1)^a n, a + b mod 2);
* affine maps i -> slope*i + offset with slope +1 or -1: exactly the
  distance-preserving bijections of the integers.

Integers are Python ints, so there is no overflow to reason about.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .machine import UsageError


def sign_action(flip: int, n: int) -> int:
    """Action of the order-two group on the integers: identity or negation.

    A homomorphism into the automorphisms of the integers:
    sign_action(a + b mod 2, n) == sign_action(a, sign_action(b, n)).
    """
    return -n if flip & 1 else n


@dataclass(frozen=True)
class SemidirectElement:
    """Group element (shift, flip): translate by shift, then flip orientation flip times."""

    shift: int
    flip: int

    def __post_init__(self):
        if self.flip not in (0, 1):
            raise UsageError(f"flip must be 0 or 1, got {self.flip!r}")


SD_IDENTITY = SemidirectElement(0, 0)

# the standard generating pair: X is an involution, A a translation step
SD_X = SemidirectElement(-1, 1)
SD_A = SemidirectElement(1, 0)


def sd_mul(u: SemidirectElement, v: SemidirectElement) -> SemidirectElement:
    return SemidirectElement(u.shift + sign_action(u.flip, v.shift),
                             (u.flip + v.flip) % 2)


def sd_inv(u: SemidirectElement) -> SemidirectElement:
    return SemidirectElement(-sign_action(u.flip, u.shift), u.flip)


def sd_pow(u: SemidirectElement, m: int) -> SemidirectElement:
    if m < 0:
        return sd_pow(sd_inv(u), -m)
    result = SD_IDENTITY
    for _ in range(m):
        result = sd_mul(result, u)
    return result


@dataclass(frozen=True)
class AffineMap:
    """The bijection i -> slope*i + offset of the integers, slope +1 or -1.

    These are exactly the maps s with |s(i) - s(j)| = |i - j| for all i, j;
    composition and inverse stay in this form.
    """

    slope: int
    offset: int

    def __post_init__(self):
        if self.slope not in (1, -1):
            raise UsageError(f"slope must be +1 or -1, got {self.slope!r}")

    def __call__(self, i: int) -> int:
        return self.slope * i + self.offset


AFFINE_IDENTITY = AffineMap(1, 0)


def affine_apply(s: AffineMap, i: int) -> int:
    return s(i)


def affine_compose(s: AffineMap, t: AffineMap) -> AffineMap:
    """The map i -> s(t(i)) (t is applied first)."""
    return AffineMap(s.slope * t.slope, s.slope * t.offset + s.offset)


def affine_inverse(s: AffineMap) -> AffineMap:
    return AffineMap(s.slope, -s.slope * s.offset)


def isometry_check(mapping: Callable[[int], int], pairs: Iterable) -> bool:
    """Does the map preserve |i - j| on every sampled pair?

    Accepts an AffineMap (always an isometry) or any raw integer function,
    which is how non-isometries can be probed.
    """
    return all(abs(mapping(i) - mapping(j)) == abs(i - j) for i, j in pairs)


def semidirect_to_affine(u: SemidirectElement) -> AffineMap:
    """(k, 0) becomes i -> i + k; (k, 1) becomes i -> -i + k.

    A group isomorphism onto the affine model:
    semidirect_to_affine(sd_mul(u, v)) == affine_compose of the images.
    """
    return AffineMap(-1 if u.flip else 1, u.shift)


def affine_to_semidirect(s: AffineMap) -> SemidirectElement:
    return SemidirectElement(s.offset, 1 if s.slope < 0 else 0)


def xa_normal_form(word: Iterable[str]) -> SemidirectElement:
    """Reduce a word over {x, a, a'} to pair coordinates.

    Uses only the defining identities x*x = e and x*a*x = a^-1 to rewrite the
    word into the normal form a^k or a^k*x, then reads off the coordinates:
    a^k -> (k, 0) and a^k*x -> (k-1, 1).  Agrees with multiplying out the
    letters as SD_A and SD_X.
    """
    shift = 0
    flipped = 0  # current normal form is a^shift x^flipped
    for token in word:
        if token in ("x", "x'"):
            flipped ^= 1
        elif token == "a":
            shift += -1 if flipped else 1
        elif token == "a'":
            shift += 1 if flipped else -1
        else:
            raise UsageError(f"unknown letter {token!r}; expected x, a, or a'")
    if flipped:
        return SemidirectElement(shift - 1, 1)
    return SemidirectElement(shift, 0)


def internal_decomposition_check(bound: int = 100) -> bool:
    """Witness, over a finite window, that the group splits as translations
    extended by the two-element flip subgroup.

    Checks on shifts in [-bound, bound]: the translations are closed under
    conjugation by every window element, {(0,0), (0,1)} is a subgroup, the
    two subgroups meet only at the identity, and every window element factors
    as translation times flip.
    """
    window = range(-bound, bound + 1)
    translations = {SemidirectElement(n, 0) for n in window}
    flips = {SemidirectElement(0, 0), SemidirectElement(0, 1)}

    # normality of the translations under conjugation from the window
    for k in window:
        for alpha in (0, 1):
            g = SemidirectElement(k, alpha)
            g_inv = sd_inv(g)
            for n in window:
                conjugate = sd_mul(sd_mul(g, SemidirectElement(n, 0)), g_inv)
                if conjugate.flip != 0:
                    return False
    # the flip pair is a subgroup
    for u in flips:
        if sd_inv(u) not in flips:
            return False
        for v in flips:
            if sd_mul(u, v) not in flips:
                return False
    if translations & flips != {SD_IDENTITY}:
        return False
    # every element factors as translation * flip
    for k in window:
        for alpha in (0, 1):
            if sd_mul(SemidirectElement(k, 0), SemidirectElement(0, alpha)) \
                    != SemidirectElement(k, alpha):
                return False
    return True


def format_semidirect(u: SemidirectElement) -> str:
    return f"({u.shift}, {u.flip})"


def format_affine(s: AffineMap) -> str:
    body = "i" if s.slope == 1 else "-i"
    if s.offset > 0:
        return f"i -> {body}+{s.offset}"
    if s.offset < 0:
        return f"i -> {body}{s.offset}"
    return f"i -> {body}"
