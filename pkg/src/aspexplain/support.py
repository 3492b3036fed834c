"""Supported sets for true and false atoms under a given answer set.

The table maps literal nodes to lists of supported sets.  A true atom gets
one set per rule that derives it; a false atom gets the cross-product of
per-rule falsifiers, since its falsity must defeat every rule at once.
Choice-atom occurrences contribute marker nodes (+choice/-choice, bound
nodes, tuples, *True/*Empty) alongside the plain literals.
"""

from __future__ import annotations

import itertools

from . import nodes
from .errors import NoSupport
from .ground import (
    CHOICE,
    ChoiceAtomSpec,
    GroundProgram,
    GroundRule,
    _dedupe_sets,
    _minimize_sets,
)

_CROSS_CAP = 4096


def _cross_union(option_lists) -> list[frozenset]:
    """Cross product of choices, unioned; deterministic order, capped."""
    out = [frozenset()]
    for options in option_lists:
        out = [acc | opt for acc, opt in itertools.product(out, options)]
        if len(out) > _CROSS_CAP:
            out = out[:_CROSS_CAP]
    return out


def choice_body_support(g: GroundProgram, x: ChoiceAtomSpec, A: frozenset[int],
                        positive: bool = True):
    """The node for a choice-atom occurrence plus its table expansion."""
    node = g.spec_node(x, positive)
    satisfied = g.satisfied_elements(x, A)
    expansion: dict = {}
    if satisfied:
        tuple_nodes = [g.tuple_node(e) for e in satisfied]
        expansion[node] = [frozenset(tuple_nodes)]
        for tn in tuple_nodes:
            expansion[tn] = [frozenset({nodes.star_true_node()})]
    else:
        expansion[node] = [frozenset({nodes.star_empty_node()})]
    return node, expansion


def _merge_expansion(table, expansion) -> None:
    for key, value in expansion.items():
        table.setdefault(key, value)


def _holding_alternatives(g: GroundProgram, lit: int,
                          A: frozenset[int]) -> list[frozenset[nodes.ENode]]:
    """Ways the literal holds under A, as sets of literal nodes."""
    out = []
    for alt in g.resolve_aux(lit):
        if all(g.lit_holds(l, A) for l in alt):
            out.append(frozenset(g.lit_node(l) for l in alt))
    return out


def _term_true_options(g, term, positive, A, expansion):
    if isinstance(term, ChoiceAtomSpec):
        if g.term_holds(term, positive, A):
            node, fragment = choice_body_support(g, term, A, positive)
            _merge_expansion(expansion, fragment)
            return [frozenset({node})]
        return []
    return _holding_alternatives(g, term if positive else -term, A)


def _term_false_options(g, term, positive, A, expansion):
    if isinstance(term, ChoiceAtomSpec):
        if not g.term_holds(term, positive, A):
            node, fragment = choice_body_support(g, term, A, not positive)
            _merge_expansion(expansion, fragment)
            return [frozenset({node})]
        return []
    return _holding_alternatives(g, -term if positive else term, A)


def _body_true_options(g, rule: GroundRule, A, expansion):
    """One supported set per way of satisfying the body; [] if unsatisfied."""
    g.body_holds(rule, A)  # raises on opaque weight bodies
    per_term = []
    for term in rule.pos_body:
        per_term.append(_term_true_options(g, term, True, A, expansion))
    for term in rule.neg_body:
        per_term.append(_term_true_options(g, term, False, A, expansion))
    if any(not options for options in per_term):
        return []
    return _cross_union(per_term)


def _companions(g, rule: GroundRule, c: int) -> frozenset[nodes.ENode]:
    return frozenset(g.lit_node(l) for l in rule.element_conditions.get(c, ()))


def supported_sets_true(g: GroundProgram, A: frozenset[int], c: int,
                        expansion: dict | None = None):
    """Supported sets for an atom true in A, one per applicable rule."""
    expansion = {} if expansion is None else expansion
    sets: list[frozenset[nodes.ENode]] = []
    if g.atoms[c].is_fact:
        sets.append(frozenset({nodes.top_node()}))
    for rule in g.rules_for_head(c):
        body_options = _body_true_options(g, rule, A, expansion)
        for option in body_options:
            if rule.kind == CHOICE:
                option = option | {nodes.plus_choice_node()} | _companions(g, rule, c)
            # An empty-bodied rule supports its head unconditionally.
            sets.append(option or frozenset({nodes.top_node()}))
    sets = _dedupe_sets(sets)
    if not sets:
        raise NoSupport(
            f"{g.display_atom(c)} is in the answer set but no rule supports "
            "it; the interpretation is not an answer set")
    return sets


def supported_sets_false(g: GroundProgram, A: frozenset[int], c: int,
                         expansion: dict | None = None):
    """Supported sets for an atom false in A: defeat every rule at once."""
    expansion = {} if expansion is None else expansion
    rules = g.rules_for_head(c)
    if not rules:
        return [frozenset({nodes.bottom_node()})]
    per_rule = []
    for rule in rules:
        options: list[frozenset[nodes.ENode]] = []
        body_options = _body_true_options(g, rule, A, expansion)
        if rule.kind == CHOICE and body_options:
            # The body fires but this element was not chosen.
            for option in body_options:
                options.append(option | {nodes.minus_choice_node()}
                               | _companions(g, rule, c))
        elif not body_options:
            failing = []
            for term in rule.pos_body:
                failing.append(_term_false_options(g, term, True, A, expansion))
            for term in rule.neg_body:
                failing.append(_term_false_options(g, term, False, A, expansion))
            for ways in failing:
                options.extend(ways)
            options = _minimize_sets(options)
        per_rule.append(options)
    combined = _minimize_sets(_cross_union(per_rule))
    # Unconditional falsity renders with the same glyph as a missing rule.
    return [s or frozenset({nodes.bottom_node()}) for s in combined]


def er_key_order(g: GroundProgram) -> list[int]:
    """Named atoms: rule heads in statement order, then facts, then the rest."""
    seen = set()
    order = []
    for rule in g.rules:
        for head in rule.heads:
            if g.is_named(head) and head not in seen:
                seen.add(head)
                order.append(head)
    for aid in g.fact_order:
        if g.is_named(aid) and aid not in seen:
            seen.add(aid)
            order.append(aid)
    for aid in g.symbol_order:
        if aid not in seen:
            seen.add(aid)
            order.append(aid)
    return order


def build_er(g: GroundProgram, A: frozenset[int]):
    """The full supported-set table for every named atom."""
    table: dict[nodes.ENode, list[frozenset[nodes.ENode]]] = {}
    for aid in er_key_order(g):
        expansion: dict = {}
        if aid in A:
            key = nodes.atom_node(g.display_atom(aid))
            value = supported_sets_true(g, A, aid, expansion)
        else:
            key = nodes.neg_atom_node(g.display_atom(aid))
            value = supported_sets_false(g, A, aid, expansion)
        table[key] = value
        _merge_expansion(table, expansion)
    return table


def dump_table(table, ascii_only: bool = False) -> str:
    """Render a support table one ``key : [{...}, ...]`` line per key."""
    lines = []
    for key, value in table.items():
        rendered_sets = []
        for support in value:
            members = ", ".join(n.render(ascii_only)
                                for n in nodes.sorted_nodes(support))
            rendered_sets.append("{" + members + "}")
        lines.append(f"{key.render(ascii_only)} : [{', '.join(rendered_sets)}]")
    return "\n".join(lines)
