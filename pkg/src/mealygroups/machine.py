"""Mealy machines and their word actions.

A Mealy machine is a finite letter-to-letter transducer: a finite state set,
a finite alphabet, and total transition/output tables.  Pointing a machine at
a state turns it into a length-preserving map on words; this module supplies
the algebra of those maps (stepping, word action, inversion, composition,
minimization, decidable equality).

Everything here is immutable after construction and every operation is a
pure function, so values are safe to share between threads or processes.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

State = Hashable
Letter = str
Word = "tuple[Letter, ...]"


class UsageError(ValueError):
    """A caller referenced something that does not exist (state, letter, bound)."""


class DomainError(ValueError):
    """The operation is undefined for this input (non-invertible machine, alphabet mismatch)."""


def coerce_word(word) -> tuple:
    """Accept a string (one letter per character) or any sequence of letters."""
    if isinstance(word, str):
        return tuple(word)
    return tuple(word)


class Alphabet:
    """Ordered finite alphabet.  Letter order fixes table layout and BFS order."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[Letter]):
        self.letters = tuple(letters)
        self._index = {a: i for i, a in enumerate(self.letters)}

    def index(self, letter) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise UsageError(f"unknown letter {letter!r}") from None

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.letters)!r})"


class WordAction(NamedTuple):
    """Result of acting on a finite word: the image word and the state reached."""

    output: tuple
    state: State


class MealyMachine:
    """A Mealy machine: states, alphabet, and (state, letter)-indexed tables.

    The constructor stores what it is given without checking invariants;
    `validate` reports violations as data.  Operations other than `validate`
    assume a valid machine.
    """

    def __init__(self, alphabet, states: Sequence[State], transition: dict,
                 output: dict, name: str = "M"):
        self.alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        self.states = tuple(states)
        self.transition = dict(transition)
        self.output = dict(output)
        self.name = name
        self._sindex = {q: i for i, q in enumerate(self.states)}
        self._compiled = None

    # name is cosmetic metadata and deliberately not part of equality
    def __eq__(self, other) -> bool:
        return (isinstance(other, MealyMachine)
                and self.alphabet == other.alphabet
                and self.states == other.states
                and self.transition == other.transition
                and self.output == other.output)

    __hash__ = None  # mutable-looking dict fields; use CanonicalElement for hashing

    def __repr__(self) -> str:
        return f"<MealyMachine {self.name!r}: {len(self.states)} states over {list(self.alphabet.letters)}>"

    def state_index(self, state) -> int:
        try:
            return self._sindex[state]
        except KeyError:
            raise UsageError(f"unknown state {state!r} in machine {self.name!r}") from None

    def step(self, state, letter):
        """One transition: return (next state, output letter) for (state, letter)."""
        self.state_index(state)
        self.alphabet.index(letter)
        try:
            return self.transition[(state, letter)], self.output[(state, letter)]
        except KeyError:
            raise UsageError(
                f"machine {self.name!r} has no table entry for ({state!r}, {letter!r})") from None

    def is_invertible(self) -> bool:
        """True iff every state's output row is a permutation of the alphabet."""
        letters = set(self.alphabet.letters)
        for q in self.states:
            row = [self.output.get((q, a)) for a in self.alphabet.letters]
            if set(row) != letters or len(row) != len(letters):
                return False
        return True

    def inverse(self) -> "MealyMachine":
        """Swap input and output on every arrow; undoes this machine state-for-state."""
        if not self.is_invertible():
            raise DomainError(f"machine {self.name!r} is not invertible")
        transition = {}
        output = {}
        for q in self.states:
            for a in self.alphabet.letters:
                b = self.output[(q, a)]
                transition[(q, b)] = self.transition[(q, a)]
                output[(q, b)] = a
        return MealyMachine(self.alphabet, self.states, transition, output,
                            name=f"{self.name}'")

    def pointed(self, state) -> "PointedMachine":
        return PointedMachine(self, state)

    def tables(self):
        """Integer-indexed (transition, output) tables; cached, rows in state order."""
        if self._compiled is None:
            sindex, aindex = self._sindex, self.alphabet._index
            try:
                trans = [[sindex[self.transition[(q, a)]] for a in self.alphabet.letters]
                         for q in self.states]
                out = [[aindex[self.output[(q, a)]] for a in self.alphabet.letters]
                       for q in self.states]
            except KeyError as exc:
                raise UsageError(
                    f"machine {self.name!r} has a missing or dangling table entry: {exc}") from None
            self._compiled = (trans, out)
        return self._compiled


class PointedMachine:
    """A machine with a distinguished initial state: a single word transformation."""

    __slots__ = ("machine", "initial")

    def __init__(self, machine: MealyMachine, initial):
        machine.state_index(initial)
        self.machine = machine
        self.initial = initial

    def __eq__(self, other) -> bool:
        return (isinstance(other, PointedMachine)
                and self.machine == other.machine and self.initial == other.initial)

    __hash__ = None

    def __repr__(self) -> str:
        return f"<PointedMachine {self.machine.name!r} @ {self.initial!r}>"

    def act(self, word) -> WordAction:
        """Transform a finite word letter by letter; the empty word maps to itself.

        Implements the step recursion directly, so |output| = |input| always.
        """
        word = coerce_word(word)
        trans, out = self.machine.tables()
        aindex = self.machine.alphabet.index
        letters = self.machine.alphabet.letters
        s = self.machine.state_index(self.initial)
        produced = []
        for a in word:
            j = aindex(a)
            produced.append(letters[out[s][j]])
            s = trans[s][j]
        return WordAction(tuple(produced), self.machine.states[s])

    def act_prefix(self, word) -> tuple:
        """Image of a stream prefix.

        The transformation is causal: output position n depends only on input
        positions <= n, so the image of any length-n prefix is the length-n
        prefix of the image of every extension.  This is the whole finite
        interface to the action on infinite words.
        """
        return self.act(word).output


def validate(machine: MealyMachine) -> list:
    """Check every machine invariant; return a list of defect descriptions.

    Defects are data, not failures: an empty list means the machine is valid.
    """
    defects = []
    letters = machine.alphabet.letters
    if not letters:
        defects.append("empty alphabet")
    seen = set()
    for a in letters:
        if a in seen:
            defects.append(f"duplicate letter {a!r}")
        seen.add(a)
    if not machine.states:
        defects.append("empty state set")
    seen = set()
    for q in machine.states:
        if q in seen:
            defects.append(f"duplicate state {q!r}")
        seen.add(q)
    state_set = set(machine.states)
    letter_set = set(letters)
    for q in machine.states:
        for a in letters:
            if (q, a) not in machine.transition:
                defects.append(f"missing transition for ({q!r}, {a!r})")
            elif machine.transition[(q, a)] not in state_set:
                defects.append(
                    f"dangling state: transition ({q!r}, {a!r}) targets unknown "
                    f"{machine.transition[(q, a)]!r}")
            if (q, a) not in machine.output:
                defects.append(f"missing output for ({q!r}, {a!r})")
            elif machine.output[(q, a)] not in letter_set:
                defects.append(
                    f"dangling letter: output ({q!r}, {a!r}) emits unknown "
                    f"{machine.output[(q, a)]!r}")
    for table, kind in ((machine.transition, "transition"), (machine.output, "output")):
        for (q, a) in table:
            if q not in state_set or a not in letter_set:
                defects.append(f"stray {kind} entry for ({q!r}, {a!r})")
    return defects


def identity_machine(alphabet, state="I", name="I") -> MealyMachine:
    """One-state machine that outputs every letter unchanged."""
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    transition = {(state, a): state for a in alphabet.letters}
    output = {(state, a): a for a in alphabet.letters}
    return MealyMachine(alphabet, [state], transition, output, name=name)


def _pair_name(a, b) -> str:
    return f"({a},{b})"


def compose(first: PointedMachine, second: PointedMachine) -> PointedMachine:
    """Run `first` and feed its output into `second` (left factor acts first).

    The result's states are the pairs of states reachable from the pair of
    initial states; unreachable pairs never influence the action and are not
    constructed.
    """
    m1, m2 = first.machine, second.machine
    if m1.alphabet != m2.alphabet:
        raise DomainError(
            f"cannot compose machines over different alphabets "
            f"({m1.alphabet!r} vs {m2.alphabet!r})")
    letters = m1.alphabet.letters
    start = (first.initial, second.initial)
    order = [start]
    index = {start: 0}
    transition = {}
    output = {}
    i = 0
    while i < len(order):
        q1, q2 = order[i]
        for a in letters:
            r1, b = m1.step(q1, a)
            r2, c = m2.step(q2, b)
            target = (r1, r2)
            if target not in index:
                index[target] = len(order)
                order.append(target)
            transition[((q1, q2), a)] = target
            output[((q1, q2), a)] = c
        i += 1
    names = {pair: _pair_name(*pair) for pair in order}
    if len(set(names.values())) != len(order):
        # pathological name overlap between pair components; fall back to positions
        names = {pair: f"s{index[pair]}" for pair in order}
    machine = MealyMachine(
        m1.alphabet,
        [names[pair] for pair in order],
        {(names[q], a): names[t] for (q, a), t in transition.items()},
        {(names[q], a): b for (q, a), b in output.items()},
        name=_pair_name(m1.name, m2.name),
    )
    return machine.pointed(names[start])


def minimize(pointed: PointedMachine):
    """Canonical form of a pointed machine, plus the state-class map.

    Restricts to states reachable from the initial state, refines the
    partition that starts from identical output rows until transitions
    respect classes, then renames classes 0, 1, ... in breadth-first order
    from the initial class (letters explored in alphabet order).  Two pointed
    machines act identically on all words iff their canonical forms are
    identical structures.

    Returns (canonical pointed machine, {reachable original state: class name}).
    """
    machine = pointed.machine
    letters = machine.alphabet.letters
    trans_all, out_all = machine.tables()
    start = machine.state_index(pointed.initial)

    reachable = [start]
    seen = {start}
    for s in reachable:
        for t in trans_all[s]:
            if t not in seen:
                seen.add(t)
                reachable.append(t)
    local = {s: i for i, s in enumerate(reachable)}
    trans = [[local[t] for t in trans_all[s]] for s in reachable]
    out = [out_all[s] for s in reachable]
    n = len(reachable)

    # initial partition: identical output rows
    block_of_row = {}
    block = [0] * n
    for i in range(n):
        block[i] = block_of_row.setdefault(tuple(out[i]), len(block_of_row))
    nblocks = len(block_of_row)

    # refine until transitions respect classes
    while True:
        sig_ids = {}
        new_block = [0] * n
        for i in range(n):
            sig = (block[i], *[block[t] for t in trans[i]])
            new_block[i] = sig_ids.setdefault(sig, len(sig_ids))
        if len(sig_ids) == nblocks:
            block = new_block
            break
        block = new_block
        nblocks = len(sig_ids)

    # representative per block, then BFS over the quotient from the initial block
    rep = {}
    for i in range(n):
        rep.setdefault(block[i], i)
    bfs = [block[0]]
    pos = {block[0]: 0}
    i = 0
    while i < len(bfs):
        r = rep[bfs[i]]
        for j in range(len(letters)):
            b = block[trans[r][j]]
            if b not in pos:
                pos[b] = len(bfs)
                bfs.append(b)
        i += 1

    names = [str(i) for i in range(len(bfs))]
    transition = {}
    output = {}
    for b in bfs:
        r = rep[b]
        src = names[pos[b]]
        for j, a in enumerate(letters):
            transition[(src, a)] = names[pos[block[trans[r][j]]]]
            output[(src, a)] = letters[out[r][j]]
    canonical = MealyMachine(machine.alphabet, names, transition, output,
                             name=machine.name)
    class_map = {machine.states[s]: names[pos[block[local[s]]]] for s in reachable}
    return canonical.pointed(names[0]), class_map


def machines_equal(e1: PointedMachine, e2: PointedMachine) -> bool:
    """Decide whether two pointed machines define the same map on all words."""
    if e1.machine.alphabet != e2.machine.alphabet:
        raise DomainError("cannot compare machines over different alphabets")
    c1, _ = minimize(e1)
    c2, _ = minimize(e2)
    return c1 == c2
