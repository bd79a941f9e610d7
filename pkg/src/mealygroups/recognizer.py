"""Recognize the infinite dihedral group inside a machine group.

The recognition pattern: two distinct non-identity involutions whose product
has infinite order generate a copy of the infinite dihedral group.  The
involution checks are exact (canonical machines); infinite order is witnessed
by a finite certificate, the pairwise-distinct images of an all-zero prefix
under the powers of the product.  Distinct images of one input are distinct
maps, so a certificate of depth J proves at least J+1 elements exist -- the
certificate is sound unconditionally.  The converse direction is never
claimed: an exhausted or collapsing orbit yields an inconclusive verdict,
not a finiteness claim.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Union

from .dihedral import SemidirectElement, xa_normal_form
from .elements import CanonicalElement
from .machine import MealyMachine, UsageError, coerce_word


@dataclass(frozen=True)
class InfinitenessCertificate:
    """Orbit evidence that an element's order exceeds `depth`.

    prefixes[j] is the image of the all-zero prefix of length 2*depth+2 under
    the j-th power, j = 0..depth, all pairwise distinct.  flip_witnesses are
    supporting (position, steps) pairs: the least s whose s-th power changes
    the all-zero prefix at that position.
    """

    depth: int
    prefixes: tuple
    flip_witnesses: tuple = ()


class OrbitCollisionError(Exception):
    """Two powers produced the same orbit prefix; certification failed."""

    def __init__(self, first: int, second: int, prefix):
        super().__init__(
            f"orbit prefixes for powers {first} and {second} coincide; "
            f"the orbit is periodic at this depth")
        self.first = first
        self.second = second
        self.prefix = prefix


@dataclass(frozen=True)
class CertifiedDihedral:
    """Both generators are distinct non-identity involutions and their product
    carries a valid infiniteness certificate; coordinate_map sends each
    generator to its pair coordinates."""

    machine_name: str
    generators: tuple
    certificate: InfinitenessCertificate
    coordinate_map: dict


@dataclass(frozen=True)
class NotInvolutions:
    """Some generator squared is not the identity."""

    failing: tuple


@dataclass(frozen=True)
class DegenerateGenerators:
    """Generators equal each other or the identity."""

    reason: str


@dataclass(frozen=True)
class Inconclusive:
    """Certificate depth exhausted by an orbit collision; NOT a finiteness proof."""

    depth: int
    collision: tuple


DihedralVerdict = Union[CertifiedDihedral, NotInvolutions, DegenerateGenerators, Inconclusive]


def _zero_prefix(alphabet, length: int) -> tuple:
    return (alphabet.letters[0],) * length


def flip_witness(element: CanonicalElement, prefix, position: int,
                 step_bound: int | None = None):
    """Least s >= 1 whose s-th power of `element` changes `prefix` at `position`.

    Returns None when no power up to the bound flips that position.  Only the
    prefix itself is ever acted on: causality makes positions <= `position`
    of the output depend only on the prefix.  The default bound is
    |alphabet| ** len(prefix), the size of the set the orbit lives in.
    """
    prefix = coerce_word(prefix)
    if not 0 <= position < len(prefix):
        raise UsageError(f"position {position} outside prefix of length {len(prefix)}")
    machine = element.machine
    if step_bound is None:
        step_bound = len(machine.alphabet) ** len(prefix)
    trans, out = machine.tables()
    aindex = machine.alphabet.index
    start = machine.state_index(element.pointed.initial)
    word = [aindex(a) for a in prefix]
    original = word[position]
    for s in range(1, step_bound + 1):
        state = start
        image = []
        append = image.append
        for j in word:
            append(out[state][j])
            state = trans[state][j]
        word = image
        if word[position] != original:
            return s
    return None


def _product_element(machine: MealyMachine, generators=None) -> CanonicalElement:
    if generators is None:
        if len(machine.states) < 2:
            raise UsageError("machine has fewer than two states; name generators explicitly")
        generators = (machine.states[0], machine.states[1])
    g1, g2 = generators
    return CanonicalElement(machine.pointed(g1)).compose(
        CanonicalElement(machine.pointed(g2)))


def zero_tail_bound_check(machine: MealyMachine, step_bound: int,
                          generators=None) -> bool:
    """Do all powers up to the bound keep the all-zero stream zero past twice
    the exponent?

    For each s <= step_bound the s-th power of the generator product is
    applied to the all-zero prefix of length 2s+4 and every position >= 2s of
    the image must hold the zero letter (the alphabet's first letter).
    `generators` defaults to the machine's first two states.
    """
    if step_bound < 1:
        raise UsageError("step bound must be >= 1")
    element = _product_element(machine, generators)
    zero = element.machine.alphabet.letters[0]
    for s in range(step_bound + 1):
        word = _zero_prefix(element.machine.alphabet, 2 * s + 4)
        for _ in range(s):
            word = element.act_prefix(word)
        if any(letter != zero for letter in word[2 * s:]):
            return False
    return True


def _flip_task(args):
    element, prefix, position = args
    return position, flip_witness(element, prefix, position)


def _collect_flip_witnesses(element: CanonicalElement, flip_depth: int,
                            jobs: int = 1) -> tuple:
    alphabet = element.machine.alphabet
    tasks = [(element, _zero_prefix(alphabet, n + 1), n) for n in range(flip_depth + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = dict(pool.map(_flip_task, tasks))
    else:
        found = dict(map(_flip_task, tasks))
    return tuple((n, found[n]) for n in sorted(found) if found[n] is not None)


def certify_infinite(element: CanonicalElement, depth: int,
                     flip_depth: int = 8, jobs: int = 1) -> InfinitenessCertificate:
    """Certificate that `element` has order greater than `depth`.

    Computes the images of the all-zero prefix of length 2*depth+2 under
    powers 0..depth; raises OrbitCollisionError naming the colliding pair if
    any two coincide.  Distinct images are distinct maps, so the certificate
    is sound without any assumption on the machine.
    """
    if depth < 1:
        raise UsageError("certificate depth must be >= 1")
    word = _zero_prefix(element.machine.alphabet, 2 * depth + 2)
    prefixes = [word]
    seen = {word: 0}
    for j in range(1, depth + 1):
        word = element.act_prefix(word)
        if word in seen:
            raise OrbitCollisionError(seen[word], j, word)
        seen[word] = j
        prefixes.append(word)
    witnesses = _collect_flip_witnesses(element, flip_depth, jobs) if flip_depth >= 0 else ()
    return InfinitenessCertificate(depth, tuple(prefixes), witnesses)


def recognize_dihedral(machine: MealyMachine, gen1, gen2, depth: int = 16,
                       flip_depth: int = 8, jobs: int = 1) -> DihedralVerdict:
    """Check the two-involution recognition pattern on a pair of states.

    Exact checks via canonical machines: both generators differ from the
    identity and from each other, and both square to the identity.  Then the
    product generator1*generator2 must certify infinite order up to `depth`.
    All failure modes are verdict values, never exceptions.
    """
    e1 = CanonicalElement(machine.pointed(gen1))
    e2 = CanonicalElement(machine.pointed(gen2))
    if e1.is_identity or e2.is_identity:
        names = [str(g) for g, e in ((gen1, e1), (gen2, e2)) if e.is_identity]
        return DegenerateGenerators(
            "generator(s) " + ", ".join(names) + " act as the identity")
    if gen1 == gen2 or e1 == e2:
        return DegenerateGenerators(
            f"generators {gen1} and {gen2} define the same transformation")
    failing = tuple(str(g) for g, e in ((gen1, e1), (gen2, e2))
                    if not e.compose(e).is_identity)
    if failing:
        return NotInvolutions(failing)
    product = e1.compose(e2)
    try:
        certificate = certify_infinite(product, depth, flip_depth, jobs)
    except OrbitCollisionError as collision:
        return Inconclusive(depth, (collision.first, collision.second))
    # generator1 = product * gen2 and gen2 map to (0, 1) and (-1, 1)
    coordinate_map = {gen1: SemidirectElement(0, 1), gen2: SemidirectElement(-1, 1)}
    return CertifiedDihedral(machine.name, (gen1, gen2), certificate, coordinate_map)


def coordinates(certified: DihedralVerdict, word) -> SemidirectElement:
    """Pair coordinates of a word over a certified generator pair.

    Freely reduces the word (certified generators are involutions, so inverse
    letters equal the letters and doubled letters cancel), rewrites the
    alternating remainder over the product/involution pair, and reads off the
    normal form.  A homomorphism: coordinates(u + v) is the product of
    coordinates(u) and coordinates(v).
    """
    if not isinstance(certified, CertifiedDihedral):
        raise UsageError(
            "coordinates requires a CertifiedDihedral verdict; got "
            f"{type(certified).__name__}")
    gen1, gen2 = certified.generators
    stack = []
    for name, exp in word:
        if name not in (gen1, gen2):
            raise UsageError(f"letter {name!r} is not one of the certified generators")
        if exp not in (1, -1):
            raise UsageError(f"generator exponent must be +1 or -1, got {exp!r}")
        if stack and stack[-1] == name:
            stack.pop()  # involution: doubled letter cancels
        else:
            stack.append(name)
    tokens = []
    for name in stack:
        tokens.extend(("a", "x") if name == gen1 else ("x",))
    return xa_normal_form(tokens)


def format_word(word) -> str:
    letters = [str(a) for a in word]
    if all(len(a) == 1 for a in letters):
        return "".join(letters)
    return " ".join(letters)


def certificate_report(machine_name: str, generators, certificate) -> str:
    """Line-oriented text report of a certificate; stable field order."""
    lines = [
        f"machine {machine_name}",
        "generators " + " ".join(str(g) for g in generators),
        f"depth {certificate.depth}",
    ]
    for j, prefix in enumerate(certificate.prefixes):
        lines.append(f"prefix {j} {format_word(prefix)}")
    for position, steps in certificate.flip_witnesses:
        lines.append(f"flip {position} {steps}")
    return "\n".join(lines) + "\n"
