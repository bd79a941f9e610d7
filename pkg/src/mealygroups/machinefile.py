"""Machine text format, DOT export, and the builtin machine catalog.

Format, one declaration per line, `#` starts a comment, whitespace around
tokens is ignored:

    machine <name>
    alphabet <letter> <letter> ...
    state <name>: <letter> -> <state> / <letter> ; ...

Every alphabet letter must appear exactly once on each state line
(input -> next-state / output).
"""

from __future__ import annotations

from .machine import Alphabet, MealyMachine, PointedMachine, validate

# Reconstructed two-state binary machine whose states p, q act as involutions
# and whose composite pq has infinite order; shipped as the builtin `V26`.
V26_SOURCE = """\
machine V26
alphabet 0 1
state p: 0 -> q / 0 ; 1 -> p / 1
state q: 0 -> p / 1 ; 1 -> p / 0
"""

BUILTIN_MACHINES = {"V26": V26_SOURCE}

_RESERVED = ("#", ";", ":", "/", "->")


class MachineParseError(ValueError):
    """Machine text that does not follow the format; carries line (and column)."""

    def __init__(self, message: str, line: int, column: int | None = None):
        at = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{at}: {message}")
        self.line = line
        self.column = column


def _column(text_line: str, token: str) -> int:
    found = text_line.find(token)
    return found + 1 if found >= 0 else 1


def parse_machine_text(text: str, strict: bool = True) -> MealyMachine:
    """Parse machine source text.

    With strict=True (the default) the parsed machine must also satisfy
    `validate`; the first defect is reported as a parse error at the line of
    the rule that caused it.  strict=False returns the structure as written
    so callers can run the validator themselves.
    """
    name = None
    letters = None
    states: list = []
    transition: dict = {}
    output: dict = {}
    target_lines: dict = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        if keyword == "machine":
            if name is not None:
                raise MachineParseError("second machine declaration", lineno)
            parts = line.split()
            if len(parts) != 2:
                raise MachineParseError("expected: machine <name>", lineno)
            name = parts[1]
        elif keyword == "alphabet":
            if name is None:
                raise MachineParseError("alphabet before machine declaration", lineno)
            if letters is not None:
                raise MachineParseError("second alphabet declaration", lineno)
            letters = line.split()[1:]
            if not letters:
                raise MachineParseError("alphabet needs at least one letter", lineno)
            dup = _first_duplicate(letters)
            if dup is not None:
                raise MachineParseError(f"duplicate letter {dup!r}",
                                        lineno, _column(raw, dup))
        elif keyword == "state":
            if letters is None:
                raise MachineParseError("state before alphabet declaration", lineno)
            head, sep, rules_text = line.partition(":")
            if not sep:
                raise MachineParseError("expected ':' after state name", lineno)
            head_parts = head.split()
            if len(head_parts) != 2:
                raise MachineParseError("expected: state <name>: <rules>", lineno)
            state = head_parts[1]
            if state in states:
                raise MachineParseError(f"duplicate state {state!r}",
                                        lineno, _column(raw, state))
            states.append(state)
            seen_letters = set()
            for rule in rules_text.split(";"):
                if not rule.strip():
                    continue
                left, arrow, right = rule.partition("->")
                if not arrow:
                    raise MachineParseError(f"rule {rule.strip()!r} is missing '->'", lineno)
                target, slash, emitted = right.partition("/")
                if not slash:
                    raise MachineParseError(f"rule {rule.strip()!r} is missing '/'", lineno)
                a, t, b = left.strip(), target.strip(), emitted.strip()
                for token in (a, t, b):
                    if not token or any(ch.isspace() for ch in token):
                        raise MachineParseError(f"malformed rule {rule.strip()!r}", lineno)
                if a not in letters:
                    raise MachineParseError(f"letter {a!r} is not in the alphabet",
                                            lineno, _column(raw, a))
                if b not in letters:
                    raise MachineParseError(f"output letter {b!r} is not in the alphabet",
                                            lineno, _column(raw, b))
                if a in seen_letters:
                    raise MachineParseError(f"duplicate rule for letter {a!r} in state {state!r}",
                                            lineno)
                seen_letters.add(a)
                transition[(state, a)] = t
                output[(state, a)] = b
                target_lines[(state, a)] = lineno
            missing = [a for a in letters if a not in seen_letters]
            if missing:
                raise MachineParseError(
                    f"incomplete state {state!r}: no rule for letter(s) "
                    + ", ".join(repr(a) for a in missing), lineno)
        else:
            raise MachineParseError(f"unknown declaration {keyword!r}",
                                    lineno, _column(raw, keyword))

    if name is None:
        raise MachineParseError("no machine declaration", 1)
    if letters is None:
        raise MachineParseError("no alphabet declaration", 1)
    if not states:
        raise MachineParseError("machine has no states", 1)

    machine = MealyMachine(Alphabet(letters), states, transition, output, name=name)
    if strict:
        defects = validate(machine)
        if defects:
            line = 1
            for (q, a), t in machine.transition.items():
                if t not in machine._sindex:
                    line = target_lines.get((q, a), 1)
                    break
            raise MachineParseError("; ".join(defects), line)
    return machine


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None


def parse_machine_file(path) -> MealyMachine:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_machine_text(handle.read())


def _checked_token(token) -> str:
    token = str(token)
    if not token or any(ch.isspace() for ch in token):
        raise ValueError(f"name {token!r} cannot be written in the machine format")
    for sep in _RESERVED:
        if sep in token:
            raise ValueError(f"name {token!r} contains reserved text {sep!r}")
    return token


def render_machine_text(machine: MealyMachine, initial=None) -> str:
    """Render a machine back into the text format; parse(render(m)) == m.

    If an initial state is given it is recorded as a comment (the format
    itself has no initial-state declaration).
    """
    lines = [f"machine {_checked_token(machine.name)}"]
    if initial is not None:
        machine.state_index(initial)
        lines.append(f"# initial state: {initial}")
    lines.append("alphabet " + " ".join(_checked_token(a) for a in machine.alphabet.letters))
    for q in machine.states:
        rules = " ; ".join(
            f"{a} -> {_checked_token(machine.transition[(q, a)])} / {machine.output[(q, a)]}"
            for a in machine.alphabet.letters)
        lines.append(f"state {_checked_token(q)}: {rules}")
    return "\n".join(lines) + "\n"


def to_dot(machine: MealyMachine, initial=None) -> str:
    """Graphviz DOT text: one node per state, one `a/b` edge per table cell.

    The initial state (default: the first declared state) gets a double circle.
    """
    if initial is None:
        initial = machine.states[0]
    machine.state_index(initial)

    def quote(x) -> str:
        return '"' + str(x).replace('"', r'\"') + '"'

    lines = [f"digraph {quote(machine.name)} {{", "  rankdir=LR;"]
    for q in machine.states:
        shape = "doublecircle" if q == initial else "circle"
        lines.append(f"  {quote(q)} [shape={shape}];")
    for q in machine.states:
        for a in machine.alphabet.letters:
            label = f"{a}/{machine.output[(q, a)]}"
            lines.append(f"  {quote(q)} -> {quote(machine.transition[(q, a)])} "
                         f"[label={quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def builtin_machine(name: str) -> MealyMachine:
    """Load a builtin machine by name through the public parser."""
    try:
        source = BUILTIN_MACHINES[name]
    except KeyError:
        raise KeyError(f"no builtin machine named {name!r}; "
                       f"available: {sorted(BUILTIN_MACHINES)}") from None
    return parse_machine_text(source)
