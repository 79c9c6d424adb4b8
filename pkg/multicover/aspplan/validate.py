"""Plan checking and extraction of plans from solver models.

A plan lists the regular actions of each layer. Preserving actions are
implied: ``preserve(F)`` runs at layer ``k`` when ``F`` is needed at ``k+1``
(as a precondition or a goal, directly or through later preserves) and no
regular action at ``k`` adds it.
"""
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from core.exceptions import SolverError
from multicover.planning.strips import Action, PRESERVE, StripsProblem

PRECONDITION = 'precondition'
FLUENT_USE = 'fluent-use'
CONFLICTING_EFFECTS = 'conflicting-effects'
GOAL = 'goal'


@dataclass
class Plan:
    steps: list[frozenset[str]] = field(default_factory=list)
    makespan: int = 0

    def __post_init__(self):
        self.steps = [frozenset(step) for step in self.steps]
        self.makespan = max(self.makespan, len(self.steps))
        self.steps.extend(frozenset() for _ in range(self.makespan - len(self.steps)))

    @property
    def actions(self) -> list[str]:
        return [name for step in self.steps for name in sorted(step)]


@dataclass(frozen=True)
class PlanViolation:
    kind: str
    layer: int
    fluent: str | None = None
    actions: tuple[str, ...] = ()

    def __str__(self):
        acting = f' by {", ".join(self.actions)}' if self.actions else ''
        return f'{self.kind} violated at layer {self.layer} on {self.fluent}{acting}'


def _needed_by_layer(p: StripsProblem, steps: Sequence[list[Action]]) -> list[set[str]]:
    needed = [set() for _ in range(len(steps) + 1)]
    needed[-1] = set(p.goal)
    for k in range(len(steps) - 1, -1, -1):
        added = {f for a in steps[k] for f in a.add}
        needed[k] = {f for a in steps[k] for f in a.pre} | (needed[k + 1] - added)
    return needed


def validate_plan(p: StripsProblem, plan: Plan) -> PlanViolation | None:
    """Return the first violated condition, or None when the plan is valid."""
    for k, step in enumerate(plan.steps):
        unknown = sorted(name for name in step if not p.has_action(name) or p.action(name).is_preserving)
        if unknown:
            return PlanViolation(PRECONDITION, k, None, tuple(unknown))

    steps = [[p.action(name) for name in sorted(step)] for step in plan.steps]
    needed = _needed_by_layer(p, steps)
    state = set(p.init)
    for k, actions in enumerate(steps):
        added = {f for a in actions for f in a.add}
        kept = [Action.preserving(f) for f in sorted(needed[k + 1] - added)]
        acting = actions + kept

        for a in acting:
            missing = sorted(a.pre - state)
            if missing:
                return PlanViolation(PRECONDITION, k, missing[0], (a.name,))

        for f in sorted({f for a in acting for f in a.pre | a.delete}):
            users = [a.name for a in acting if f in a.pre and f not in a.delete]
            deleters = [a.name for a in acting if f in a.delete and f not in a.pre]
            consumers = [a.name for a in acting if f in a.pre and f in a.delete]
            if bool(users) + bool(deleters) + len(consumers) > 1:
                return PlanViolation(FLUENT_USE, k, f, tuple(users[:1] + deleters[:1] + consumers))

        deleted = {f for a in actions for f in a.delete}
        for f in sorted(needed[k + 1] & deleted):
            culprits = tuple(a.name for a in actions if f in a.delete)
            return PlanViolation(CONFLICTING_EFFECTS, k, f, culprits)

        state = (state | added) - deleted

    missing = sorted(p.goal - state)
    if missing:
        return PlanViolation(GOAL, plan.makespan, missing[0])
    return None


def split_arguments(text: str) -> list[str]:
    """Split ``a(b,c),d`` into ``['a(b,c)', 'd']`` at parenthesis depth zero."""
    parts, depth, start = [], 0, 0
    for i, char in enumerate(text):
        if char == '(':
            depth += 1
        elif char == ')':
            depth -= 1
        elif char == ',' and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def extract_plan(atoms: Iterable[str], p: StripsProblem, makespan: int) -> Plan:
    steps: list[set[str]] = [set() for _ in range(makespan)]
    for atom in atoms:
        if not atom.startswith('happens(') or not atom.endswith(')'):
            continue
        arguments = split_arguments(atom[len('happens('):-1])
        if len(arguments) != 2 or not arguments[1].lstrip('-').isdigit():
            raise SolverError(f'Cannot read plan atom {atom!r}.')
        name, k = arguments[0], int(arguments[1])
        if name.startswith(f'{PRESERVE}('):
            continue
        if not p.has_action(name):
            raise SolverError(f'Solver reported unknown action {name!r}.')
        if not 0 <= k < makespan:
            raise SolverError(f'Solver placed {name} at layer {k}, outside 0..{makespan - 1}.')
        steps[k].add(name)
    return Plan(steps=steps, makespan=makespan)
