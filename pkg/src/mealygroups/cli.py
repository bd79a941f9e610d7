"""Command-line front end.

Every command is a thin adapter over one library call.  Output is
deterministic: no timestamps, stable field order, sets in canonical order.

Exit codes: 0 success, 1 usage or parse error, 2 certification inconclusive,
3 recognition refuted (degenerate generators or failed involution checks).
"""

from __future__ import annotations

import argparse
import os
import sys

from .dihedral import format_affine, format_semidirect, semidirect_to_affine
from .elements import (
    element_from_word,
    elements_equal,
    enumerate_elements,
    find_relations,
    format_generator_word,
    order,
    parse_generator_word,
)
from .machine import DomainError, MealyMachine, UsageError, compose, minimize, validate
from .machinefile import (
    BUILTIN_MACHINES,
    MachineParseError,
    builtin_machine,
    parse_machine_text,
    render_machine_text,
    to_dot,
)
from .recognizer import (
    CertifiedDihedral,
    DegenerateGenerators,
    Inconclusive,
    NotInvolutions,
    OrbitCollisionError,
    certificate_report,
    certify_infinite,
    coordinates,
    format_word,
    recognize_dihedral,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_REFUTED = 3


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so we control exit codes."""

    def error(self, message):
        raise UsageError(message)


def load_machine(source: str, strict: bool = True) -> MealyMachine:
    """A machine source is a builtin name or a path to a machine file."""
    if source in BUILTIN_MACHINES:
        return builtin_machine(source) if strict else parse_machine_text(
            BUILTIN_MACHINES[source], strict=False)
    if not os.path.exists(source):
        raise UsageError(f"{source!r} is neither a builtin machine nor a file")
    with open(source, "r", encoding="utf-8") as handle:
        return parse_machine_text(handle.read(), strict=strict)


def _pointed_from_word(machine: MealyMachine, text: str | None):
    """Compose the word's state actions without canonicalizing (raw product)."""
    if not text:
        return machine.pointed(machine.states[0])
    inverse = None
    result = None
    for name, exp in parse_generator_word(text):
        if exp == -1:
            if inverse is None:
                inverse = machine.inverse()
            step = inverse.pointed(name)
        else:
            step = machine.pointed(name)
        result = step if result is None else compose(result, step)
    return result


def _emit_machine(machine: MealyMachine, initial, fmt: str) -> None:
    if fmt == "dot":
        sys.stdout.write(to_dot(machine, initial))
    else:
        sys.stdout.write(render_machine_text(machine, initial))


def cmd_validate(args) -> int:
    machine = load_machine(args.machine, strict=False)
    defects = validate(machine)
    if not defects:
        print("ok")
        return EXIT_OK
    for defect in defects:
        print(defect)
    return EXIT_USAGE


def cmd_act(args) -> int:
    machine = load_machine(args.machine)
    element = element_from_word(machine, args.word)
    action = element.act(args.input)
    print(format_word(action.output))
    print(f"final state: {action.state}")
    return EXIT_OK


def cmd_invert(args) -> int:
    machine = load_machine(args.machine)
    _emit_machine(machine.inverse(), None, args.format)
    return EXIT_OK


def cmd_compose(args) -> int:
    machine = load_machine(args.machine)
    pointed = _pointed_from_word(machine, args.word)
    _emit_machine(pointed.machine, pointed.initial, args.format)
    return EXIT_OK


def cmd_minimize(args) -> int:
    machine = load_machine(args.machine)
    pointed = _pointed_from_word(machine, args.word)
    canonical, classes = minimize(pointed)
    _emit_machine(canonical.machine, canonical.initial, args.format)
    if args.format == "text":
        for state in pointed.machine.states:
            if state in classes:
                print(f"# class {state} -> {classes[state]}")
    return EXIT_OK


def cmd_equal(args) -> int:
    machine = load_machine(args.machine)
    e1 = element_from_word(machine, args.word1)
    e2 = element_from_word(machine, args.word2)
    print("equal" if elements_equal(e1, e2) else "distinct")
    return EXIT_OK


def cmd_order(args) -> int:
    machine = load_machine(args.machine)
    element = element_from_word(machine, args.word)
    found = order(element, args.max)
    print(found if found is not None else f"exceeds {args.max}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    machine = load_machine(args.machine)
    _, growth = enumerate_elements(machine, args.max, jobs=args.jobs)
    for length, count in enumerate(growth):
        print(f"{length} {count}")
    return EXIT_OK


def cmd_relations(args) -> int:
    machine = load_machine(args.machine)
    for relator in find_relations(machine, args.max):
        print(format_generator_word((name, 1) for name in relator))
    return EXIT_OK


def cmd_certify(args) -> int:
    machine = load_machine(args.machine)
    element = element_from_word(machine, args.word)
    try:
        certificate = certify_infinite(element, args.depth, args.flips, args.jobs)
    except OrbitCollisionError as collision:
        print(f"inconclusive: {collision}")
        return EXIT_INCONCLUSIVE
    generators = [name for name, _ in parse_generator_word(args.word)]
    sys.stdout.write(certificate_report(machine.name, generators, certificate))
    return EXIT_OK


def _print_verdict(verdict) -> int:
    if isinstance(verdict, CertifiedDihedral):
        print("CertifiedDihedral")
        for generator, coordinate in verdict.coordinate_map.items():
            affine = format_affine(semidirect_to_affine(coordinate))
            print(f"{generator} -> {format_semidirect(coordinate)}  [{affine}]")
        return EXIT_OK
    if isinstance(verdict, Inconclusive):
        j1, j2 = verdict.collision
        print(f"Inconclusive: orbit prefixes {j1} and {j2} coincide at depth {verdict.depth}")
        return EXIT_INCONCLUSIVE
    if isinstance(verdict, NotInvolutions):
        print("NotInvolutions: " + ", ".join(verdict.failing))
        return EXIT_REFUTED
    print(f"DegenerateGenerators: {verdict.reason}")
    return EXIT_REFUTED


def cmd_recognize(args) -> int:
    machine = load_machine(args.machine)
    verdict = recognize_dihedral(machine, args.gen1, args.gen2,
                                 depth=args.depth, flip_depth=args.flips,
                                 jobs=args.jobs)
    code = _print_verdict(verdict)
    if isinstance(verdict, CertifiedDihedral):
        sys.stdout.write(certificate_report(
            verdict.machine_name, verdict.generators, verdict.certificate))
    return code


def cmd_coords(args) -> int:
    machine = load_machine(args.machine)
    verdict = recognize_dihedral(machine, args.gen1, args.gen2,
                                 depth=args.depth, flip_depth=-1, jobs=args.jobs)
    if not isinstance(verdict, CertifiedDihedral):
        return _print_verdict(verdict)
    value = coordinates(verdict, parse_generator_word(args.word))
    print(format_semidirect(value))
    return EXIT_OK


def cmd_dot(args) -> int:
    machine = load_machine(args.machine)
    pointed = _pointed_from_word(machine, args.word)
    sys.stdout.write(to_dot(pointed.machine, pointed.initial))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mealygroups",
                     description="Mealy machine algebra and machine-group tools")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("machine", help="machine file path or builtin name (e.g. V26)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check machine invariants; print ok or defects")

    p = add("act", cmd_act, "apply a generator word to an input word")
    p.add_argument("--word", required=True, help="generator word, e.g. \"p q p'\"")
    p.add_argument("--input", required=True, help="input word, e.g. 0010")

    p = add("invert", cmd_invert, "print the inverse machine")
    p.add_argument("--format", choices=("text", "dot"), default="text")

    p = add("compose", cmd_compose, "print the raw composite machine of a word")
    p.add_argument("--word", default="", help="generator word (empty: first state)")
    p.add_argument("--format", choices=("text", "dot"), default="text")

    p = add("minimize", cmd_minimize, "print the canonical minimized machine")
    p.add_argument("--word", default="", help="generator word (empty: first state)")
    p.add_argument("--format", choices=("text", "dot"), default="text")

    p = add("equal", cmd_equal, "decide whether two generator words are the same element")
    p.add_argument("word1")
    p.add_argument("word2")

    p = add("order", cmd_order, "order of an element up to a bound")
    p.add_argument("--word", required=True)
    p.add_argument("--max", type=int, required=True)

    p = add("enumerate", cmd_enumerate, "growth table of distinct elements by word length")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = add("relations", cmd_relations, "positive identity words without identity subwords")
    p.add_argument("--max", type=int, required=True)

    p = add("certify", cmd_certify, "orbit certificate that an element's order exceeds a depth")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--flips", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)

    p = add("recognize", cmd_recognize, "two-involution infinite dihedral recognition")
    p.add_argument("gen1")
    p.add_argument("gen2")
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--flips", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)

    p = add("coords", cmd_coords, "pair coordinates of a word over certified generators")
    p.add_argument("gen1")
    p.add_argument("gen2")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)

    p = add("dot", cmd_dot, "Graphviz DOT export")
    p.add_argument("--word", default="", help="generator word (empty: first state)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, DomainError, MachineParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
