"""Brute-force stable-model semantics for small ground programs.

This module deliberately works on the raw parsed statements rather than the
reconstructed rule view, so its verdicts are independent of the folding and
support machinery it is used to cross-check.  Choice bounds need no special
treatment here: the grounder encodes them as ordinary weight bodies and
integrity constraints, which are checked directly.
"""

from __future__ import annotations

import itertools
import random

from .aspif import (
    HEAD_CHOICE,
    HEAD_DISJUNCTIVE,
    AspifProgram,
    RuleStatement,
    WeightBody,
    parse_aspif,
)
from .errors import ReconstructionError, TooLarge, UnknownLiteral

MAX_NAMED_ATOMS = 20
MAX_FREE_AUX = 12

Interpretation = frozenset  # of atom names


def _aspif_of(g) -> AspifProgram:
    return g.aspif if hasattr(g, "aspif") else g


def _name_map(program: AspifProgram) -> dict[str, int]:
    names: dict[str, int] = {}
    for stmt in program.outputs:
        if len(stmt.condition) == 1 and stmt.condition[0] > 0:
            names[stmt.symbol] = stmt.condition[0]
    return names


def _body_true(body, holds) -> bool:
    if isinstance(body, WeightBody):
        return sum(w for lit, w in body.elements if holds(lit)) >= body.lower
    return all(holds(lit) for lit in body.literals)


class _Checker:
    def __init__(self, program: AspifProgram):
        self.program = program
        for stmt in program.rules:
            if stmt.head_type == HEAD_DISJUNCTIVE and len(stmt.head) > 1:
                raise ReconstructionError(
                    "disjunctive heads are outside the supported fragment")
        self.names = _name_map(program)
        self.named_ids = set(self.names.values())
        self.externals = {s.atom for s in program.externals}
        self.all_ids = program.atom_ids()
        self.aux_ids = sorted(self.all_ids - self.named_ids - self.externals)

    def complete(self, named_true: frozenset[int]) -> list[frozenset[int]]:
        """All total interpretations extending a guess over named atoms.

        Auxiliary atoms are fixed by a clamped alternating pass; the rare
        leftovers (cyclic auxiliary definitions) are enumerated.
        """
        true: set[int] = {a for a in self.externals
                          if a not in self.named_ids}
        false: set[int] = set()
        open_aux = set(self.aux_ids)

        def value(atom: int) -> bool | None:
            if atom in self.named_ids:
                return atom in named_true
            if atom in self.externals:
                return True
            if atom in true:
                return True
            if atom in false:
                return False
            return None

        def lit_value(lit: int) -> bool | None:
            v = value(abs(lit))
            if v is None:
                return None
            return v if lit > 0 else not v

        def body_value(body) -> bool | None:
            if isinstance(body, WeightBody):
                floor = sum(w for lit, w in body.elements
                            if lit_value(lit) is True)
                ceiling = sum(w for lit, w in body.elements
                              if lit_value(lit) is not False)
                if floor >= body.lower:
                    return True
                if ceiling < body.lower:
                    return False
                return None
            values = [lit_value(lit) for lit in body.literals]
            if any(v is False for v in values):
                return False
            if all(v is True for v in values):
                return True
            return None

        defs: dict[int, list[RuleStatement]] = {}
        for stmt in self.program.rules:
            for head in stmt.head:
                if head in open_aux:
                    defs.setdefault(head, []).append(stmt)

        changed = True
        while changed:
            changed = False
            for aux in sorted(open_aux):
                statements = defs.get(aux, [])
                body_values = [body_value(s.body) for s in statements]
                derivable = any(
                    v is True and s.head_type != HEAD_CHOICE
                    for s, v in zip(statements, body_values))
                refutable = all(v is False for v in body_values) \
                    if statements else True
                if derivable:
                    true.add(aux)
                elif refutable:
                    false.add(aux)
                else:
                    continue
                open_aux.discard(aux)
                changed = True

        free = sorted(open_aux)
        if len(free) > MAX_FREE_AUX:
            raise TooLarge(
                f"{len(free)} auxiliary atoms undetermined; enumeration cap "
                f"is {MAX_FREE_AUX}")
        base = frozenset(true) | named_true
        completions = []
        for mask in range(1 << len(free)):
            extra = {free[i] for i in range(len(free)) if mask >> i & 1}
            completions.append(base | extra)
        return completions

    def classically_satisfied(self, total: frozenset[int]) -> bool:
        def holds(lit: int) -> bool:
            return (abs(lit) in total) == (lit > 0)

        for atom in self.externals:
            if atom not in total:
                return False
        for stmt in self.program.rules:
            if not _body_true(stmt.body, holds):
                continue
            if stmt.is_constraint:
                return False
            if stmt.head_type == HEAD_DISJUNCTIVE \
                    and not any(h in total for h in stmt.head):
                return False
        return True

    def reduct_least_model(self, total: frozenset[int]) -> frozenset[int]:
        derived: set[int] = set(self.externals)

        def reached(lit: int) -> bool:
            # Positive literals must already be derived; negative literals
            # are fixed by the candidate (Gelfond-Lifschitz reduct).
            if lit > 0:
                return lit in derived
            return -lit not in total

        changed = True
        while changed:
            changed = False
            for stmt in self.program.rules:
                if stmt.is_constraint:
                    continue
                if stmt.head_type == HEAD_CHOICE:
                    targets = [h for h in stmt.head
                               if h in total and h not in derived]
                else:
                    targets = [h for h in stmt.head if h not in derived]
                if not targets or not _body_true(stmt.body, reached):
                    continue
                derived.update(targets)
                changed = True
        return frozenset(derived)

    def is_stable(self, total: frozenset[int]) -> bool:
        return self.classically_satisfied(total) \
            and self.reduct_least_model(total) == total


def check_answer_set(g, answer_names) -> bool:
    """True iff the named atoms form an answer set of the program."""
    program = _aspif_of(g)
    checker = _Checker(program)
    named_true = set()
    for name in answer_names:
        if name not in checker.names:
            raise UnknownLiteral(f"unknown atom {name!r} in answer set")
        named_true.add(checker.names[name])
    # Every named atom not listed is false; the guess must also cover facts.
    for total in checker.complete(frozenset(named_true)):
        if checker.is_stable(total):
            return True
    return False


def enumerate_answer_sets(g, max_named: int = MAX_NAMED_ATOMS) -> list[Interpretation]:
    """All answer sets, projected to named atoms, in deterministic order."""
    program = _aspif_of(g)
    checker = _Checker(program)
    named_facts = sorted(n for n, i in checker.names.items()
                         if i in checker.externals)
    candidates = sorted(n for n, i in checker.names.items()
                        if i not in checker.externals)
    if len(candidates) > max_named:
        raise TooLarge(
            f"{len(candidates)} named atoms exceed the enumeration cap "
            f"of {max_named}")
    found: list[Interpretation] = []
    for subset in _subsets_by_size(candidates):
        names = frozenset(named_facts) | frozenset(subset)
        ids = frozenset(checker.names[n] for n in names)
        if any(checker.is_stable(total) for total in checker.complete(ids)):
            found.append(names)
    return found


def _subsets_by_size(items: list[str]):
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


def random_program(seed: int, n_atoms: int = 8, n_rules: int = 10,
                   p_choice: float = 0.3):
    """Deterministic random ground program in the supported fragment.

    Returns a reconstructed program whose ``aspif`` text was produced by the
    same compilation scheme grounders use for choice bounds, so every call
    exercises the parse/reconstruct round trip.
    """
    from .ground import reconstruct

    rng = random.Random(seed)
    names = [chr(ord("a") + i) for i in range(n_atoms)]
    ids = {name: i + 1 for i, name in enumerate(names)}
    next_id = n_atoms + 1

    def fresh() -> int:
        nonlocal next_id
        next_id += 1
        return next_id - 1

    facts = [name for name in names if rng.random() < 0.15]
    statements: list[str] = []

    def lit(name: str, positive: bool) -> int:
        return ids[name] if positive else -ids[name]

    def rule(head: list[int], body: list[int], choice: bool = False) -> None:
        head_type = 1 if choice else 0
        parts = [1, head_type, len(head), *head, 0, len(body), *body]
        statements.append(" ".join(str(p) for p in parts))

    def weight_rule(head: int, lower: int, elems: list[tuple[int, int]]) -> None:
        parts = [1, 0, 1, head, 1, lower, len(elems)]
        for l, w in elems:
            parts += [l, w]
        statements.append(" ".join(str(p) for p in parts))

    def random_body(max_len: int, min_len: int = 0) -> list[int]:
        k = rng.randint(min_len, max_len)
        chosen = rng.sample(names, min(k, len(names)))
        return [lit(n, rng.random() >= 0.4) for n in chosen]

    for _ in range(n_rules):
        if not names:
            break
        roll = rng.random()
        if roll < p_choice:
            _compile_choice(rng, names, ids, rule, weight_rule, fresh,
                            random_body)
        elif roll < p_choice + 0.15:
            rule([], random_body(3, min_len=1))
        elif roll < p_choice + 0.25:
            head = rng.choice(names)
            k = rng.randint(1, min(3, len(names)))
            chosen = rng.sample(names, k)
            weight = rng.choice((1, 1, 2))
            lower = weight * rng.randint(1, k)
            weight_rule(ids[head], lower,
                        [(ids[n], weight) for n in chosen])
        else:
            head = rng.choice(names)
            rule([ids[head]], random_body(3))

    text_lines = ["asp 1 0 0"]
    text_lines.extend(statements)
    for name in facts:
        text_lines.append(f"5 {ids[name]} 2")
    for name in names:
        text_lines.append(f"4 {len(name)} {name} 1 {ids[name]}")
    text_lines.append("0")
    return reconstruct(parse_aspif("\n".join(text_lines) + "\n"))


def _compile_choice(rng, names, ids, rule, weight_rule, fresh, random_body):
    k = rng.randint(1, min(3, len(names)))
    elements = rng.sample(names, k)
    conditions = {}
    pool = [n for n in names if n not in elements]
    for element in elements:
        if pool and rng.random() < 0.3:
            conditions[element] = rng.choice(pool)
    body = random_body(2)

    body_aux = None
    if body:
        body_aux = fresh()
        rule([body_aux], body)

    for element in elements:
        stmt_body = [body_aux] if body_aux else []
        if element in conditions:
            stmt_body = stmt_body + [ids[conditions[element]]]
        rule([ids[element]], stmt_body, choice=True)

    tuple_ids = []
    for element in elements:
        taux = fresh()
        tuple_body = [ids[conditions[element]]] if element in conditions else []
        tuple_body = tuple_body + [ids[element]]
        rule([taux], tuple_body)
        tuple_ids.append(taux)

    bound_kind = rng.random()
    constraint_body = [body_aux] if body_aux else []
    elems = [(t, 1) for t in tuple_ids]
    if bound_kind < 0.6:
        lower = rng.randint(0, k)
        upper = rng.randint(lower, k)
        lo = fresh()
        weight_rule(lo, lower, elems)
        hi = fresh()
        weight_rule(hi, upper + 1, elems)
        ok = fresh()
        rule([ok], [lo, -hi])
        rule([], constraint_body + [-ok])
    elif bound_kind < 0.8:
        lo = fresh()
        weight_rule(lo, rng.randint(1, k), elems)
        rule([], constraint_body + [-lo])
    else:
        hi = fresh()
        weight_rule(hi, rng.randint(1, k), elems)
        rule([], constraint_body + [hi])
