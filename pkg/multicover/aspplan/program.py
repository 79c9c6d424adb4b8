"""ASP planning program: grounded problem facts plus the fixed rule set.

Layer ``K`` holds fluents, actions at ``K`` produce layer ``K+1``. Actions
are gated by ``validAct`` and fluents by ``validFluent``, both taken from the
first-appearance layers of the relaxed planning graph.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

from core.exceptions import UnreachableGoalError
from multicover import encode
from multicover.cover import Covering
from multicover.planning.planning_graph import PlanningGraph, first_appearance_layers
from multicover.planning.strips import Action, StripsProblem, add_preserving_actions

logger = logging.getLogger(__name__)

SMART = 'smart'
RULE4 = 'rule4'
MULTICLIQUE = 'multiclique'
RULE5 = 'rule5'
ACTION_MODES = (SMART, RULE4)
FLUENT_MODES = (MULTICLIQUE, RULE5)

PRESERVING_RULES = (
    'action(preserve(F)) :- fluent(F).',
    'pre(preserve(F),F) :- fluent(F).',
    'add(preserve(F),F) :- fluent(F).',
    'validAct(preserve(F),K) :- fluent(F); validFluent(F,K); finalStep(M); K < M.',
)

PLAN_RULES = (
    'holds(F,K) :- goal(F); finalStep(K).',
    'happens(A,K-1) : add(A,F), validAct(A,K-1) :- holds(F,K); K > 0.',
    'holds(F,K) :- pre(A,F); happens(A,K); validFluent(F,K).',
    ':- holds(F,K); not validFluent(F,K).',
)

SMART_ACTION_RULES = (
    'used_preserved(F,K) :- happens(A,K); pre(A,F); not del(A,F).',
    'deleted_unused(F,K) :- happens(A,K); del(A,F); not pre(A,F).',
    'valid_at(F,K) :- validFluent(F,K).',
    ':- {used_preserved(F,K); deleted_unused(F,K); happens(A,K) : pre(A,F), del(A,F)} > 1; valid_at(F,K).',
    'deleted(F,K) :- happens(A,K); del(A,F).',
    ':- holds(F,K); deleted(F,K-1).',
)

RULE4_ACTION_RULES = (
    ':- mutexAct(A,B); happens(A,K); happens(B,K).',
)

RULE5_FLUENT_RULES = (
    ':- mutex(F,G); holds(F,K); holds(G,K).',
)

SHOW = '#show happens/2.'


@dataclass
class PlanProgram:
    makespan: int
    facts: list[str] = field(default_factory=list)
    rules: list[str] = field(default_factory=list)
    mutex_rules: list[str] = field(default_factory=list)
    action_mode: str = SMART
    fluent_mode: str = MULTICLIQUE

    @property
    def text(self) -> str:
        return ''.join(f'{line}\n' for line in (*self.facts, *self.rules, *self.mutex_rules, SHOW))


def _interval(first: int, last: int) -> str:
    return str(first) if first == last else f'{first}..{last}'


def interfering(a: Action, b: Action) -> bool:
    """Direct interference: one action deletes a precondition or add effect of the other."""
    return bool(a.delete & (b.pre | b.add) or b.delete & (a.pre | a.add))


def problem_facts(p: StripsProblem, layers: PlanningGraph, makespan: int) -> list[str]:
    facts = [f'step({_interval(0, makespan)}).', f'finalStep({makespan}).']
    for f in p.fluents:
        facts.append(f'fluent({f}).')
        first = layers.fluent_first_layer[f]
        if first is not None and first <= makespan:
            facts.append(f'validFluent({f},{_interval(first, makespan)}).')
    for a in p.regular_actions:
        facts.append(f'action({a.name}).')
        facts.extend(f'pre({a.name},{f}).' for f in sorted(a.pre))
        facts.extend(f'add({a.name},{f}).' for f in sorted(a.add))
        facts.extend(f'del({a.name},{f}).' for f in sorted(a.delete))
        first = layers.action_first_layer[a.name]
        if first is not None and first < makespan:
            facts.append(f'validAct({a.name},{_interval(first, makespan - 1)}).')
    facts.extend(f'goal({f}).' for f in sorted(p.goal))
    return facts


def _mutex_act_facts(p: StripsProblem) -> list[str]:
    actions = add_preserving_actions(p).actions
    return [f'mutexAct({a.name},{b.name}).' for a, b in combinations(actions, 2) if interfering(a, b)]


def _mutex_facts(mutexes: Covering) -> list[str]:
    g = mutexes.source
    return [f'mutex({g.label(u)},{g.label(v)}).' for u, v in g.edges()]


def emit_plan_program(p: StripsProblem, mutexes: Covering, makespan: int, action_mode: str = SMART,
                      fluent_mode: str = MULTICLIQUE, layers: PlanningGraph | None = None) -> PlanProgram:
    if action_mode not in ACTION_MODES:
        raise ValueError(f'unknown action-mutex encoding {action_mode}')
    if fluent_mode not in FLUENT_MODES:
        raise ValueError(f'unknown fluent-mutex encoding {fluent_mode}')

    layers = layers or first_appearance_layers(p)
    goal_layer = layers.goal_layer(p.goal)
    if makespan < goal_layer:
        raise UnreachableGoalError(
            f'Goals are not all reachable before layer {goal_layer}; makespan {makespan} is too small.'
        )

    program = PlanProgram(makespan=makespan, action_mode=action_mode, fluent_mode=fluent_mode)
    program.facts = problem_facts(p, layers, makespan)
    program.rules = [*PRESERVING_RULES, *PLAN_RULES]
    if action_mode == SMART:
        program.rules.extend(SMART_ACTION_RULES)
    else:
        program.facts.extend(_mutex_act_facts(p))
        program.rules.extend(RULE4_ACTION_RULES)

    if fluent_mode == MULTICLIQUE:
        rules, _ = encode.emit_multiclique_program(mutexes, mutexes.source.labels)
        program.mutex_rules = [rule.text for rule in rules]
    else:
        program.facts.extend(_mutex_facts(mutexes))
        program.mutex_rules = list(RULE5_FLUENT_RULES)

    logger.info('program for makespan %d: %d facts, %d rules, %d mutex rules',
                makespan, len(program.facts), len(program.rules), len(program.mutex_rules))
    return program
