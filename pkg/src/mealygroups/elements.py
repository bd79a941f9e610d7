"""Arithmetic in the group generated by the states of an invertible machine.

Each state of an invertible machine acts bijectively on words; the group
those actions generate is represented here by canonical elements: minimized,
canonically ordered pointed machines.  Canonical-form equality is exact, so
identity checks, order bounds, enumeration, and relation discovery all reduce
to finite machine computations.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .machine import (
    DomainError,
    MealyMachine,
    PointedMachine,
    UsageError,
    WordAction,
    compose,
    identity_machine,
    minimize,
)

# a generator word is a sequence of (state name, exponent) with exponent +1 or -1
GeneratorWord = "tuple[tuple[str, int], ...]"


def parse_generator_word(text: str) -> tuple:
    """Read a word like "p q p'" (trailing apostrophe marks an inverse letter)."""
    word = []
    for token in text.split():
        if token.endswith("'"):
            name, exp = token[:-1], -1
        else:
            name, exp = token, 1
        if not name:
            raise UsageError(f"malformed generator letter {token!r}")
        word.append((name, exp))
    return tuple(word)


def format_generator_word(word) -> str:
    return " ".join(name if exp > 0 else f"{name}'" for name, exp in word)


class CanonicalElement:
    """One group element in normal form: a minimized, canonically ordered machine.

    Two elements are equal iff they are the same map on all words; the
    canonical form makes that structural equality, so elements are hashable
    and usable in sets.
    """

    __slots__ = ("pointed", "is_identity", "_key", "_hash")

    def __init__(self, pointed: PointedMachine, _canonical: bool = False):
        if not _canonical:
            pointed, _ = minimize(pointed)
        machine = pointed.machine
        letters = machine.alphabet.letters
        trans, out = machine.tables()
        self.pointed = pointed
        self.is_identity = (
            len(machine.states) == 1
            and all(out[0][j] == j for j in range(len(letters))))
        self._key = (letters,
                     tuple(tuple(row) for row in trans),
                     tuple(tuple(row) for row in out))
        self._hash = hash(self._key)

    @classmethod
    def identity(cls, alphabet) -> "CanonicalElement":
        return cls(identity_machine(alphabet).pointed("I"))

    @property
    def machine(self) -> MealyMachine:
        return self.pointed.machine

    @property
    def n_states(self) -> int:
        return len(self.pointed.machine.states)

    def act(self, word) -> WordAction:
        return self.pointed.act(word)

    def act_prefix(self, word) -> tuple:
        return self.pointed.act_prefix(word)

    def compose(self, other: "CanonicalElement") -> "CanonicalElement":
        """Group product: self acts first, then other."""
        return CanonicalElement(compose(self.pointed, other.pointed))

    def inverse(self) -> "CanonicalElement":
        return CanonicalElement(self.machine.inverse().pointed(self.pointed.initial))

    def __eq__(self, other) -> bool:
        return isinstance(other, CanonicalElement) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_identity:
            return "<CanonicalElement identity>"
        return f"<CanonicalElement {self.n_states} states over {list(self._key[0])}>"


def element_from_word(machine: MealyMachine, word) -> CanonicalElement:
    """Evaluate a generator word: compose the named state actions left to right.

    An inverse letter uses the inverse machine pointed at the same state name.
    The empty word is the identity element.
    """
    if isinstance(word, str):
        word = parse_generator_word(word)
    if not machine.is_invertible():
        raise DomainError(
            f"machine {machine.name!r} is not invertible; its states do not generate a group")
    inverse = None
    element = CanonicalElement.identity(machine.alphabet)
    for name, exp in word:
        if exp not in (1, -1):
            raise UsageError(f"generator exponent must be +1 or -1, got {exp!r}")
        if exp == 1:
            source = machine
        else:
            if inverse is None:
                inverse = machine.inverse()
            source = inverse
        element = element.compose(CanonicalElement(source.pointed(name)))
    return element


def elements_equal(e1: CanonicalElement, e2: CanonicalElement) -> bool:
    """Exact equality of group elements (agrees with equality of the maps)."""
    if e1._key[0] != e2._key[0]:
        raise DomainError("cannot compare elements over different alphabets")
    return e1 == e2


def order(element: CanonicalElement, max_n: int):
    """Smallest n <= max_n with element**n equal to the identity, else None.

    None means the bound was exhausted; it is NOT a proof of infinite order.
    """
    if max_n < 1:
        raise UsageError("order bound must be a positive integer")
    power = element
    for n in range(1, max_n + 1):
        if power.is_identity:
            return n
        power = power.compose(element)
    return None


@dataclass(frozen=True)
class GrowthTable:
    """counts[L] = number of distinct elements among generator words of length <= L."""

    counts: tuple

    def __getitem__(self, length: int) -> int:
        return self.counts[length]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


def _compose_pair(pair):
    left, right = pair
    return left.compose(right)


def enumerate_elements(machine: MealyMachine, max_len: int, inverses: bool = True,
                       jobs: int = 1):
    """All distinct elements of generator words up to a length, plus growth counts.

    Breadth-first over words in {state, state^-1}* (positive words only when
    inverses=False), deduplicating by canonical form.  With jobs > 1 each
    length's products are canonicalized in a process pool; the merge consumes
    results in submission order, so the outcome is schedule-independent.
    Returns (set of CanonicalElement, GrowthTable).
    """
    if max_len < 0:
        raise UsageError("max_len must be >= 0")
    if not machine.is_invertible():
        raise DomainError(f"machine {machine.name!r} is not invertible")
    generators = [CanonicalElement(machine.pointed(q)) for q in machine.states]
    if inverses:
        generators += [g.inverse() for g in generators]

    identity = CanonicalElement.identity(machine.alphabet)
    elements = {identity}
    counts = [1]
    frontier = [identity]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for _ in range(max_len):
            tasks = [(e, g) for e in frontier for g in generators]
            products = pool.map(_compose_pair, tasks) if pool else map(_compose_pair, tasks)
            next_frontier = []
            for new in products:
                if new not in elements:
                    elements.add(new)
                    next_frontier.append(new)
            counts.append(len(elements))
            frontier = next_frontier
    finally:
        if pool:
            pool.shutdown()
    return elements, GrowthTable(tuple(counts))


def _contains_subword(word, sub) -> bool:
    k = len(sub)
    return any(word[i:i + k] == sub for i in range(len(word) - k + 1))


def find_relations(machine: MealyMachine, max_len: int) -> list:
    """Positive identity words up to a length, skipping ones that contain a
    shorter identity subword (only "new" relators are reported).

    Words are tuples of state names, listed by length then by state order.
    """
    if not machine.is_invertible():
        raise DomainError(f"machine {machine.name!r} is not invertible")
    pointed = {q: CanonicalElement(machine.pointed(q)) for q in machine.states}
    relators: list = []
    level = {(): CanonicalElement.identity(machine.alphabet)}
    for _ in range(max_len):
        next_level = {}
        for w, value in level.items():
            for q in machine.states:
                next_level[w + (q,)] = value.compose(pointed[q])
        for w, value in next_level.items():
            if value.is_identity and not any(
                    _contains_subword(w, r) for r in relators):
                relators.append(w)
        level = next_level
    return relators
