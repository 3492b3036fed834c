"""Minimal assumption sets: which false atoms must be assumed false.

Atoms under default negation that are false in the answer set but not
well-founded-false may rest on unresolved negative cycles.  Derivation
paths through the support table sort them into T (no self-consistent
derivation; must be assumed) and T' (derivable from other tentative
atoms, recorded in DA).  Minimal cycle-breaking subsets of the DA
dependency relation complete the assumption set U = T ∪ min(B).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import nodes
from .aspif import HEAD_CHOICE, WeightBody
from .constraints import constraint_preprocessing
from .egraph import build_egraph, merge_supports
from .errors import NoValidGraph
from .ground import GroundProgram
from .support import build_er

_PATH_CAP = 512
_EXACT_SEARCH_LIMIT = 20


@dataclass(frozen=True)
class AssumptionReport:
    ta: frozenset[str]
    t_must: frozenset[str]
    t_deferred: frozenset[str]
    da: dict[str, list[frozenset[str]]] = field(default_factory=dict)
    min_b_candidates: list[frozenset[str]] = field(default_factory=list)
    chosen_u: frozenset[str] = frozenset()


def well_founded(g: GroundProgram) -> tuple[frozenset[int], frozenset[int]]:
    """(true, false) atom ids under the alternating-fixpoint approximation."""
    program = g.aspif
    atoms = program.atom_ids()
    externals = {s.atom for s in program.externals}
    rules = program.rules

    def gamma(assumed_true: set[int], include_choice: bool) -> set[int]:
        derived = set(externals)

        def holds(lit: int) -> bool:
            if lit > 0:
                return lit in derived
            return -lit not in assumed_true

        def body_true(body) -> bool:
            if isinstance(body, WeightBody):
                return sum(w for l, w in body.elements if holds(l)) >= body.lower
            return all(holds(l) for l in body.literals)

        changed = True
        while changed:
            changed = False
            for stmt in rules:
                if stmt.is_constraint:
                    continue
                if stmt.head_type == HEAD_CHOICE and not include_choice:
                    continue
                targets = [h for h in stmt.head if h not in derived]
                if targets and body_true(stmt.body):
                    derived.update(targets)
                    changed = True
        return derived

    true: set[int] = set()
    possible: set[int] = set(atoms)
    while True:
        new_true = gamma(possible, include_choice=False)
        new_possible = gamma(new_true, include_choice=True)
        if new_true == true and new_possible == possible:
            break
        true, possible = new_true, new_possible
    return frozenset(true), frozenset(atoms - possible)


def tentative_assumptions(g: GroundProgram, A: frozenset[int]) -> frozenset[str]:
    """Atoms that may need to be assumed false: in NANT, false, undecided."""
    _, wf_false = well_founded(g)
    return frozenset(g.display_atom(a) for a in g.nant
                     if a not in A and a not in wf_false)


def derivation_analysis(er, ta: frozenset[str]):
    """Split TA into T (must assume) and T' (derivable), with DA."""
    t_deferred = set()
    da: dict[str, list[frozenset[str]]] = {}
    for name in sorted(ta):
        ds = _path_ds(er, nodes.neg_atom_node(name), (), ta, name)
        if ds is not None:
            t_deferred.add(name)
            da[name] = ds
    t_must = set(ta) - t_deferred
    return frozenset(t_must), frozenset(t_deferred), da


def _path_ds(er, node, path, ta, root):
    """D-sets of all valid derivation paths below a node, or None.

    A path is invalid if it re-reaches the root or closes a cycle through
    any non-minus edge; other tentative atoms terminate a path and are
    collected.
    """
    if node.kind in nodes.TERMINAL_KINDS:
        return [frozenset()]
    if node.kind == nodes.NEG_ATOM and node.payload[0] in ta:
        name = node.payload[0]
        if name != root:
            return [frozenset({name})]
        if path:
            return None
    if node in path:
        start = path.index(node)
        cycle = path[start + 1:] + (node,)
        if all(n.kind == nodes.NEG_ATOM for n in cycle):
            return [frozenset()]
        return None
    alternatives = er.get(node)
    if alternatives is None:
        return None
    results: list[frozenset[str]] = []
    for support in alternatives:
        member_lists = []
        for member in nodes.sorted_nodes(support):
            sub = _path_ds(er, member, path + (node,), ta, root)
            if sub is None:
                member_lists = None
                break
            member_lists.append(sub)
        if member_lists is None:
            continue
        for combo in itertools.product(*member_lists):
            results.append(frozenset().union(*combo))
            if len(results) > _PATH_CAP:
                break
    results = _minimal_sets(results)
    return results or None


def _minimal_sets(sets):
    seen = set()
    unique = []
    for s in sets:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return [s for s in unique if not any(o < s for o in unique)]


def min_cycle_break(da: dict) -> list[frozenset[str]]:
    """All subset-minimal sets breaking the DA dependency cycles."""
    keys = set(da)
    base = {a for ds in da.values() for d in ds for a in d} - keys

    def stuck_after(broken: frozenset[str]) -> set[str]:
        resolved = set(broken) | base
        pending = {k for k in keys if k not in broken}
        changed = True
        while changed and pending:
            changed = False
            for k in sorted(pending):
                if any(d <= resolved for d in da[k]):
                    resolved.add(k)
                    pending.discard(k)
                    changed = True
                    break
        return pending

    stuck = stuck_after(frozenset())
    if not stuck:
        return [frozenset()]
    participants = sorted(stuck)
    if len(participants) > _EXACT_SEARCH_LIMIT:
        return [_greedy_break(da, participants, stuck_after)]
    found: list[frozenset[str]] = []
    for size in range(1, len(participants) + 1):
        for combo in itertools.combinations(participants, size):
            candidate = frozenset(combo)
            if any(f <= candidate for f in found):
                continue
            if not stuck_after(candidate):
                found.append(candidate)
    return found


def _greedy_break(da, participants, stuck_after) -> frozenset[str]:
    broken: set[str] = set()
    while True:
        pending = stuck_after(frozenset(broken))
        if not pending:
            return frozenset(broken)
        counts = {p: 0 for p in pending}
        for k in pending:
            for d in da[k]:
                for a in d:
                    if a in counts:
                        counts[a] += 1
        broken.add(max(sorted(counts), key=lambda p: counts[p]))


def minimal_assumption_sets(g: GroundProgram, A: frozenset[int],
                            er=None, table=None) -> AssumptionReport:
    """TA, the T/T' split, min(B) candidates, and the chosen U.

    The path analysis over-approximates: a cycle it rejects only because
    it returns to the queried atom may still close through minus edges
    only, which a valid graph is allowed to do.  The chosen set is
    therefore shrunk against actual graph buildability; validity is
    monotone in the assumed set, so one greedy pass reaches a
    subset-minimal U.
    """
    if er is None:
        er = build_er(g, A)
    ta = tentative_assumptions(g, A)
    t_must, t_deferred, da = derivation_analysis(er, ta)
    candidates = min_cycle_break(da)
    candidates.sort(key=lambda c: (len(c), tuple(sorted(c))))
    best = min(candidates, key=lambda c: tuple(sorted(c)))
    chosen = frozenset(t_must) | best
    chosen = _shrink_against_graphs(g, A, er, table, chosen)
    return AssumptionReport(
        ta=ta,
        t_must=t_must,
        t_deferred=t_deferred,
        da=da,
        min_b_candidates=candidates,
        chosen_u=chosen,
    )


def _shrink_against_graphs(g, A, er, table, chosen: frozenset[str]):
    if not chosen:
        return chosen
    if table is None:
        table = merge_supports(er, constraint_preprocessing(g, A))
    if not _all_literals_explainable(g, A, table, chosen):
        return chosen
    for name in sorted(chosen):
        smaller = chosen - {name}
        if _all_literals_explainable(g, A, table, smaller):
            chosen = smaller
    return chosen


def _all_literals_explainable(g, A, table, u) -> bool:
    for aid in sorted(g.named_ids()):
        root = nodes.literal_node(g.display_atom(aid), aid in A)
        try:
            build_egraph(table, u, root, max_graphs=1)
        except NoValidGraph:
            return False
    return True

