"""Rebuild a ground rule view from parsed aspif statements.

Grounders compile choice rules into auxiliary machinery: per-element choice
statements, tuple-defining rules, a pair of weight-body atoms testing the
lower bound and the upper bound + 1, a combiner atom, and an integrity
constraint.  This module folds that machinery back into
:class:`ChoiceAtomSpec` occurrences so the engines can reason at the level
of the source program.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import nodes
from .aspif import (
    HEAD_CHOICE,
    HEAD_DISJUNCTIVE,
    AspifProgram,
    NormalBody,
    RuleStatement,
    WeightBody,
)
from .errors import (
    AuxCycle,
    DuplicateSymbol,
    MultiLiteralOutputCondition,
    ReconstructionError,
    UnknownLiteral,
    UnsupportedWeightBody,
)

NORMAL = "normal"
CHOICE = "choice"
CONSTRAINT = "constraint"


@dataclass
class GroundAtom:
    aid: int
    name: str | None = None
    is_fact: bool = False

    @property
    def is_aux(self) -> bool:
        return self.name is None

    @property
    def display(self) -> str:
        return self.name if self.name is not None else f"l({self.aid})"


@dataclass(frozen=True)
class ChoiceElement:
    """One element of a choice atom: its literals with the element first."""

    lits: tuple[int, ...]
    element: int | None = None

    @property
    def conditions(self) -> tuple[int, ...]:
        if self.element is None:
            return ()
        skipped = False
        out = []
        for lit in self.lits:
            if not skipped and lit == self.element:
                skipped = True
                continue
            out.append(lit)
        return tuple(out)


@dataclass(frozen=True)
class ChoiceAtomSpec:
    lower: int
    upper: int | None
    elements: tuple[ChoiceElement, ...]


@dataclass
class GroundRule:
    kind: str
    heads: tuple[int, ...]
    pos_body: tuple = ()
    neg_body: tuple = ()
    statement_index: int = -1
    # For choice rules: head atom id -> condition literals (q for each element).
    element_conditions: dict[int, tuple[int, ...]] = field(default_factory=dict)
    # Set when the statement's weight body could not be interpreted.
    raw_weight: WeightBody | None = None


class GroundProgram:
    def __init__(self, aspif_program: AspifProgram):
        self.aspif = aspif_program
        self.atoms: dict[int, GroundAtom] = {}
        self.rules: list[GroundRule] = []
        self.choice_specs: list[ChoiceAtomSpec] = []
        self.warnings: list[str] = []
        self.nant: frozenset[int] = frozenset()
        self.index: dict[tuple[int, int | None], list[GroundRule]] = {}
        self.fact_order: list[int] = []
        self.symbol_order: list[int] = []
        self._by_name: dict[str, int] = {}
        self._aux_defs: dict[int, list[RuleStatement]] = {}
        self._resolve_memo: dict[int, list[frozenset[int]]] = {}

    # --- naming -----------------------------------------------------------

    def display_atom(self, aid: int) -> str:
        atom = self.atoms.get(aid)
        return atom.display if atom is not None else f"l({aid})"

    def display_lit(self, lit: int) -> str:
        name = self.display_atom(abs(lit))
        return name if lit > 0 else "not " + name

    def atom_id(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownLiteral(f"unknown atom {name!r}") from None

    def is_named(self, aid: int) -> bool:
        atom = self.atoms.get(aid)
        return atom is not None and atom.name is not None

    def named_ids(self) -> list[int]:
        return list(self.symbol_order)

    def answer_from_names(self, names) -> frozenset[int]:
        return frozenset(self.atom_id(n) for n in names)

    def nant_names(self) -> list[str]:
        return sorted(self.display_atom(a) for a in self.nant)

    # --- node construction ------------------------------------------------

    def lit_node(self, lit: int) -> nodes.ENode:
        return nodes.literal_node(self.display_atom(abs(lit)), lit > 0)

    def element_payload(self, element: ChoiceElement) -> tuple:
        return tuple((self.display_atom(abs(lit)), lit > 0) for lit in element.lits)

    def tuple_node(self, element: ChoiceElement) -> nodes.ENode:
        return nodes.tuple_node(self.element_payload(element))

    def spec_node(self, spec: ChoiceAtomSpec, positive: bool = True) -> nodes.ENode:
        payload = tuple(self.element_payload(e) for e in spec.elements)
        return nodes.choice_node(spec.lower, spec.upper, payload, positive)

    # --- rule access ------------------------------------------------------

    def rules_for_head(self, aid: int) -> list[GroundRule]:
        found = []
        found.extend(self.index.get((0, aid), ()))
        found.extend(self.index.get((1, aid), ()))
        found.sort(key=lambda r: r.statement_index)
        return found

    def constraints(self) -> list[GroundRule]:
        return list(self.index.get((0, None), ()))

    # --- evaluation -------------------------------------------------------

    def lit_holds(self, lit: int, answer: frozenset[int],
                  _stack: frozenset[int] = frozenset()) -> bool:
        aid = abs(lit)
        atom = self.atoms.get(aid)
        if atom is not None and (atom.name is not None or atom.is_fact):
            value = aid in answer
            return value if lit > 0 else not value
        if aid in _stack:
            # Positive recursion through an auxiliary is unfounded.
            return lit < 0
        defs = self._aux_defs.get(aid, [])
        stack = _stack | {aid}
        value = False
        for stmt in defs:
            if stmt.head_type == HEAD_CHOICE:
                raise ReconstructionError(
                    f"auxiliary atom {aid} occurs in a choice head")
            if isinstance(stmt.body, WeightBody):
                total = sum(w for l, w in stmt.body.elements
                            if self.lit_holds(l, answer, stack))
                value = total >= stmt.body.lower
            else:
                value = all(self.lit_holds(l, answer, stack)
                            for l in stmt.body.literals)
            if value:
                break
        return value if lit > 0 else not value

    def element_holds(self, element: ChoiceElement, answer: frozenset[int]) -> bool:
        return all(self.lit_holds(lit, answer) for lit in element.lits)

    def satisfied_elements(self, spec: ChoiceAtomSpec,
                           answer: frozenset[int]) -> tuple[ChoiceElement, ...]:
        return tuple(e for e in spec.elements if self.element_holds(e, answer))

    def spec_holds(self, spec: ChoiceAtomSpec, answer: frozenset[int]) -> bool:
        count = len(self.satisfied_elements(spec, answer))
        if count < spec.lower:
            return False
        return spec.upper is None or count <= spec.upper

    def term_holds(self, term, positive: bool, answer: frozenset[int]) -> bool:
        if isinstance(term, ChoiceAtomSpec):
            value = self.spec_holds(term, answer)
        else:
            value = self.lit_holds(term, answer)
        return value if positive else not value

    def body_holds(self, rule: GroundRule, answer: frozenset[int]) -> bool:
        if rule.raw_weight is not None:
            raise UnsupportedWeightBody(
                f"rule from statement {rule.statement_index} kept opaque: "
                "heterogeneous weight body")
        return (all(self.term_holds(t, True, answer) for t in rule.pos_body)
                and all(self.term_holds(t, False, answer) for t in rule.neg_body))

    # --- auxiliary resolution --------------------------------------------

    def resolve_aux(self, lit: int) -> list[frozenset[int]]:
        """Resolve a literal to alternative conjunctions of named literals.

        Each frozenset is one alternative; its members are signed named
        atom ids.  Named literals resolve to themselves.
        """
        return self._resolve(lit, frozenset())

    def _resolve(self, lit: int, stack: frozenset[int]) -> list[frozenset[int]]:
        aid = abs(lit)
        atom = self.atoms.get(aid)
        if atom is not None and atom.name is not None:
            return [frozenset({lit})]
        if lit in self._resolve_memo:
            return self._resolve_memo[lit]
        if aid in stack:
            raise AuxCycle(f"auxiliary atom {aid} is defined through itself")
        defs = self._aux_defs.get(aid, [])
        for stmt in defs:
            if isinstance(stmt.body, WeightBody):
                raise UnsupportedWeightBody(
                    f"auxiliary atom {aid} is defined by a weight body")
            if stmt.head_type == HEAD_CHOICE:
                raise ReconstructionError(
                    f"auxiliary atom {aid} occurs in a choice head")
        inner = stack | {aid}
        if lit > 0:
            # aux holds if some definition body holds.
            alts: list[frozenset[int]] = []
            for stmt in defs:
                alts.extend(self._conjoin(stmt.body.literals, inner))
        else:
            # not aux: every definition body must fail.
            alts = [frozenset()]
            for stmt in defs:
                failures: list[frozenset[int]] = []
                for body_lit in stmt.body.literals:
                    failures.extend(self._resolve(-body_lit, inner))
                alts = [a | f for a in alts for f in failures]
        alts = _dedupe_sets(alts)
        self._resolve_memo[lit] = alts
        return alts

    def _conjoin(self, literals, stack) -> list[frozenset[int]]:
        alts = [frozenset()]
        for lit in literals:
            resolved = self._resolve(lit, stack)
            alts = [a | r for a in alts for r in resolved]
        return alts

    # --- rendering --------------------------------------------------------

    def term_text(self, term, positive: bool) -> str:
        if isinstance(term, ChoiceAtomSpec):
            text = self.spec_node(term).render()
        else:
            text = self.display_atom(abs(term))
        return text if positive else "not " + text

    def rule_text(self, rule: GroundRule) -> str:
        pos = sorted(self.term_text(t, True) for t in rule.pos_body)
        neg = sorted(self.term_text(t, False) for t in rule.neg_body)
        if rule.raw_weight is not None:
            pairs = ", ".join(
                f"{self.display_lit(l)}={w}" for l, w in rule.raw_weight.elements)
            pos = [f"{rule.raw_weight.lower}<={{{pairs}}}"]
        body = ", ".join(pos + neg)
        if rule.kind == CONSTRAINT:
            return f":- {body}."
        head = ", ".join(self.display_atom(h) for h in rule.heads)
        if rule.kind == CHOICE:
            head = "{" + head + "}"
        return f"{head} :- {body}." if body else f"{head}."


def _dedupe_sets(sets: list[frozenset]) -> list[frozenset]:
    seen = set()
    out = []
    for s in sets:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def _minimize_sets(sets: list[frozenset]) -> list[frozenset]:
    """Drop duplicates and strict supersets, preserving first-seen order."""
    sets = _dedupe_sets(sets)
    return [s for s in sets
            if not any(other < s for other in sets)]


def reconstruct(aspif_program: AspifProgram) -> GroundProgram:
    gp = GroundProgram(aspif_program)
    _read_symbols(gp)
    _read_externals(gp)
    _collect_atoms(gp)
    _collect_aux_defs(gp)
    folder = _ChoiceFolder(gp)
    _build_rules(gp, folder)
    _attach_element_conditions(gp, folder)
    _build_index(gp)
    gp.nant = frozenset(_compute_nant(gp))
    return gp


def compute_nant(gp: GroundProgram) -> frozenset[int]:
    """Named atoms under default negation, through auxiliary chains."""
    return frozenset(_compute_nant(gp))


def _read_symbols(gp: GroundProgram) -> None:
    for stmt in gp.aspif.outputs:
        if len(stmt.condition) != 1 or stmt.condition[0] <= 0:
            raise MultiLiteralOutputCondition(
                f"output {stmt.symbol!r} needs a single positive condition "
                f"literal, got {stmt.condition!r}")
        aid = stmt.condition[0]
        if stmt.symbol in gp._by_name:
            raise DuplicateSymbol(f"symbol {stmt.symbol!r} named twice")
        if aid in gp.atoms:
            raise DuplicateSymbol(
                f"atom {aid} named twice ({gp.atoms[aid].name!r} and "
                f"{stmt.symbol!r})")
        gp.atoms[aid] = GroundAtom(aid, stmt.symbol)
        gp._by_name[stmt.symbol] = aid
        gp.symbol_order.append(aid)


def _read_externals(gp: GroundProgram) -> None:
    for stmt in gp.aspif.externals:
        atom = gp.atoms.setdefault(stmt.atom, GroundAtom(stmt.atom))
        atom.is_fact = True
        gp.fact_order.append(stmt.atom)


def _collect_atoms(gp: GroundProgram) -> None:
    for aid in sorted(gp.aspif.atom_ids()):
        gp.atoms.setdefault(aid, GroundAtom(aid))


def _collect_aux_defs(gp: GroundProgram) -> None:
    for stmt in gp.aspif.rules:
        for head in stmt.head:
            if not gp.is_named(head):
                gp._aux_defs.setdefault(head, []).append(stmt)


class _ChoiceFolder:
    """Recognizes the compiled bound-test patterns around choice rules."""

    def __init__(self, gp: GroundProgram):
        self.gp = gp
        self.choice_heads = {
            h for stmt in gp.aspif.rules if stmt.head_type == HEAD_CHOICE
            for h in stmt.head}
        self._spec_memo: dict[int, ChoiceAtomSpec | None] = {}
        # aux id -> statements consumed when its fold is used
        self.clusters: dict[int, list[RuleStatement]] = {}
        self.used: set[int] = set()

    def spec_for(self, aid: int) -> ChoiceAtomSpec | None:
        if aid in self._spec_memo:
            return self._spec_memo[aid]
        spec = self._fold(aid)
        self._spec_memo[aid] = spec
        return spec

    def direct_spec(self, stmt: RuleStatement) -> ChoiceAtomSpec | None:
        """Fold a rule whose own body is a weight body (lower bound only)."""
        return self._fold_weight(stmt.head[0], stmt.body, upper_arm=None)

    def _single_def(self, aid: int) -> RuleStatement | None:
        if self.gp.is_named(aid) or aid in self.choice_heads:
            return None
        defs = self.gp._aux_defs.get(aid, [])
        if len(defs) != 1 or len(defs[0].head) != 1:
            return None
        return defs[0]

    def _weight_def(self, aid: int) -> WeightBody | None:
        stmt = self._single_def(aid)
        if stmt is None or not isinstance(stmt.body, WeightBody):
            return None
        return stmt.body

    def _fold(self, aid: int) -> ChoiceAtomSpec | None:
        stmt = self._single_def(aid)
        if stmt is None:
            return None
        if isinstance(stmt.body, WeightBody):
            return self._fold_weight(aid, stmt.body, upper_arm=None)
        lits = stmt.body.literals
        if len(lits) == 2 and lits[0] > 0 and lits[1] < 0:
            lo = self._weight_def(lits[0])
            hi = self._weight_def(-lits[1])
            if lo is not None and hi is not None \
                    and sorted(lo.elements) == sorted(hi.elements) \
                    and hi.lower > lo.lower:
                spec = self._fold_weight(lits[0], lo, upper_arm=hi.lower)
                if spec is not None:
                    self.clusters[aid] = [stmt] + self.clusters.pop(lits[0], [])
                    return spec
        return None

    def _fold_weight(self, aid: int, body: WeightBody,
                     upper_arm: int | None) -> ChoiceAtomSpec | None:
        weights = {w for _, w in body.elements}
        if len(weights) != 1:
            self.gp.warnings.append(
                f"weight body for atom {aid} mixes weights {sorted(weights)}; "
                "kept opaque")
            return None
        weight = weights.pop()
        if weight < 1:
            return None
        elements = []
        consumed = [self.gp._aux_defs[aid][0]] if not self.gp.is_named(aid) else []
        for lit, _ in body.elements:
            if lit <= 0:
                return None
            element = self._element_for(lit)
            if element is None:
                return None
            element, tuple_stmt = element
            elements.append(element)
            if tuple_stmt is not None:
                consumed.append(tuple_stmt)
        lower = math.ceil(body.lower / weight)
        upper = None if upper_arm is None else math.ceil(upper_arm / weight) - 1
        self.clusters[aid] = consumed
        return ChoiceAtomSpec(lower, upper, tuple(elements))

    def _element_for(self, aid: int):
        if self.gp.is_named(aid):
            return ChoiceElement((aid,), aid), None
        stmt = self._single_def(aid)
        if stmt is None or not isinstance(stmt.body, NormalBody):
            return None
        lits = stmt.body.literals
        if not lits:
            return None
        element = None
        for lit in reversed(lits):
            if lit > 0 and lit in self.choice_heads:
                element = lit
                break
        if element is None:
            positives = [l for l in lits if l > 0]
            if len(positives) == 1:
                element = positives[0]
        if element is None:
            return ChoiceElement(tuple(lits), None), stmt
        ordered = (element,) + tuple(l for l in lits if l != element)
        return ChoiceElement(ordered, element), stmt

    def mark_used(self, aid: int) -> None:
        self.used.add(aid)
        spec = self._spec_memo.get(aid)
        if spec is None:
            return
        # Pull in the lo/hi arms behind a combiner.
        stmt = self._single_def(aid)
        if stmt is not None and isinstance(stmt.body, NormalBody) \
                and len(stmt.body.literals) == 2:
            lo_aid = stmt.body.literals[0]
            hi_aid = -stmt.body.literals[1]
            for arm in (lo_aid, hi_aid):
                arm_stmt = self._single_def(arm)
                if arm_stmt is not None and isinstance(arm_stmt.body, WeightBody):
                    self.clusters.setdefault(aid, []).append(arm_stmt)
                    for lit, _ in arm_stmt.body.elements:
                        t = self._single_def(lit) if lit > 0 else None
                        if t is not None:
                            self.clusters[aid].append(t)


def _build_rules(gp: GroundProgram, folder: _ChoiceFolder) -> None:
    rules: list[GroundRule] = []
    for idx, stmt in enumerate(gp.aspif.rules):
        if stmt.head_type == HEAD_DISJUNCTIVE and len(stmt.head) > 1:
            raise ReconstructionError(
                f"statement {idx}: disjunctive heads are not supported")
        kind = CHOICE if stmt.head_type == HEAD_CHOICE else (
            CONSTRAINT if not stmt.head else NORMAL)
        if isinstance(stmt.body, WeightBody):
            # A named atom defined directly by a weight body becomes a
            # lower-bound-only choice occurrence; aux heads of the same
            # shape stay as-is and fold at their use sites instead.
            spec = None
            if len(stmt.head) == 1 and gp.is_named(stmt.head[0]):
                spec = folder.direct_spec(stmt)
            if spec is not None:
                rules.append(GroundRule(kind, stmt.head, (spec,), (), idx))
                folder.mark_used(stmt.head[0])
            else:
                rules.append(GroundRule(kind, stmt.head, statement_index=idx,
                                        raw_weight=stmt.body))
            continue
        pos: list = []
        neg: list = []
        for lit in stmt.body.literals:
            aid = abs(lit)
            spec = None
            if not gp.is_named(aid):
                spec = folder.spec_for(aid)
            if spec is not None:
                folder.mark_used(aid)
                (pos if lit > 0 else neg).append(spec)
            else:
                (pos if lit > 0 else neg).append(lit if lit > 0 else aid)
        rules.append(GroundRule(kind, stmt.head, tuple(pos), tuple(neg), idx))
    _drop_consumed(gp, folder, rules)


def _drop_consumed(gp: GroundProgram, folder: _ChoiceFolder,
                   rules: list[GroundRule]) -> None:
    consumed_stmts: set[int] = set()
    for aid in folder.used:
        for stmt in folder.clusters.get(aid, ()):
            consumed_stmts.add(id(stmt))
    if not consumed_stmts:
        gp.rules = rules
        return
    # A consumed definition must stay if its head is still referenced by a
    # surviving rule body.
    referenced: set[int] = set()
    for rule in rules:
        stmt = gp.aspif.rules[rule.statement_index]
        if id(stmt) in consumed_stmts:
            continue
        for term in rule.pos_body + rule.neg_body:
            if isinstance(term, int):
                referenced.add(abs(term))
        if rule.raw_weight is not None:
            referenced.update(abs(l) for l in rule.raw_weight.literals)
    kept = []
    for rule in rules:
        stmt = gp.aspif.rules[rule.statement_index]
        if id(stmt) in consumed_stmts and not (set(stmt.head) & referenced):
            continue
        kept.append(rule)
    gp.rules = kept


def _attach_element_conditions(gp: GroundProgram, folder: _ChoiceFolder) -> None:
    specs: list[ChoiceAtomSpec] = []
    for rule in gp.rules:
        for term in rule.pos_body + rule.neg_body:
            if isinstance(term, ChoiceAtomSpec) and term not in specs:
                specs.append(term)
    gp.choice_specs = specs

    by_element: dict[int, list[ChoiceElement]] = {}
    for spec in specs:
        for element in spec.elements:
            if element.element is not None:
                by_element.setdefault(element.element, []).append(element)

    sibling_shared = _sibling_shared_bodies(gp)
    for rule in gp.rules:
        if rule.kind != CHOICE:
            continue
        body_lits = {t for t in rule.pos_body if isinstance(t, int)} \
            | {-t for t in rule.neg_body if isinstance(t, int)}
        for head in rule.heads:
            conditions: tuple[int, ...] | None = None
            for element in by_element.get(head, ()):
                if set(element.conditions) <= body_lits:
                    conditions = element.conditions
                    break
            if conditions is None:
                conditions = _sibling_conditions(gp, rule, sibling_shared)
            rule.element_conditions[head] = conditions


def _aux_signature(gp: GroundProgram, rule: GroundRule) -> tuple:
    sig = []
    for term in rule.pos_body:
        if isinstance(term, int) and not gp.is_named(abs(term)):
            sig.append(term)
    for term in rule.neg_body:
        if isinstance(term, int) and not gp.is_named(abs(term)):
            sig.append(-term)
    return tuple(sorted(sig))


def _named_body_lits(gp: GroundProgram, rule: GroundRule) -> set[int]:
    out = set()
    for term in rule.pos_body:
        if isinstance(term, int) and gp.is_named(abs(term)):
            out.add(term)
    for term in rule.neg_body:
        if isinstance(term, int) and gp.is_named(abs(term)):
            out.add(-term)
    return out


def _sibling_shared_bodies(gp: GroundProgram) -> dict[tuple, set[int]]:
    groups: dict[tuple, list[set[int]]] = {}
    for rule in gp.rules:
        if rule.kind != CHOICE:
            continue
        groups.setdefault(_aux_signature(gp, rule), []).append(
            _named_body_lits(gp, rule))
    shared = {}
    for sig, bodies in groups.items():
        if len(bodies) > 1:
            common = set.intersection(*bodies)
        else:
            common = bodies[0]
        shared[sig] = common
    return shared


def _sibling_conditions(gp: GroundProgram, rule: GroundRule,
                        shared: dict[tuple, set[int]]) -> tuple[int, ...]:
    common = shared.get(_aux_signature(gp, rule), set())
    extras = _named_body_lits(gp, rule) - common
    return tuple(sorted(extras))


def _build_index(gp: GroundProgram) -> None:
    index: dict[tuple[int, int | None], list[GroundRule]] = {}
    for rule in gp.rules:
        if rule.kind == CONSTRAINT:
            index.setdefault((0, None), []).append(rule)
        elif rule.kind == CHOICE:
            for head in rule.heads:
                index.setdefault((1, head), []).append(rule)
        else:
            index.setdefault((0, rule.heads[0]), []).append(rule)
    gp.index = index


def _compute_nant(gp: GroundProgram) -> set[int]:
    nant: set[int] = set()
    visited: set[tuple[int, bool]] = set()

    def walk(lit: int, negated: bool) -> None:
        aid = abs(lit)
        here = negated != (lit < 0)
        if gp.is_named(aid):
            if here:
                nant.add(aid)
            return
        if (lit, negated) in visited:
            return
        visited.add((lit, negated))
        for stmt in gp._aux_defs.get(aid, ()):
            if isinstance(stmt.body, WeightBody):
                for inner, _ in stmt.body.elements:
                    walk(inner, here)
            else:
                for inner in stmt.body.literals:
                    walk(inner, here)

    for rule in gp.rules:
        if rule.raw_weight is not None:
            for lit, _ in rule.raw_weight.elements:
                walk(lit, False)
            continue
        for term in rule.pos_body:
            if isinstance(term, int):
                walk(term, False)
        for term in rule.neg_body:
            if isinstance(term, int):
                walk(term, True)
    return nant
