import re
from collections.abc import Iterable
from dataclasses import dataclass, field

PRESERVE = 'preserve'

_ASP_NAME = re.compile(r'^[a-z][A-Za-z0-9_]*$')


def asp_name(name: str) -> str:
    name = name.lower().replace('-', '_')
    if not _ASP_NAME.match(name):
        name = f'c_{re.sub(r"[^a-z0-9_]", "_", name)}'
    return name


def term(functor: str, args: Iterable[str] = ()) -> str:
    args = tuple(args)
    if not args:
        return asp_name(functor)
    return f'{asp_name(functor)}({",".join(asp_name(a) for a in args)})'


def preserve_name(fluent: str) -> str:
    return f'{PRESERVE}({fluent})'


@dataclass(frozen=True, order=True)
class Action:
    name: str
    pre: frozenset[str] = frozenset()
    add: frozenset[str] = frozenset()
    delete: frozenset[str] = frozenset()
    is_preserving: bool = False

    def __repr__(self):
        return f'Action({self.name})'

    @classmethod
    def preserving(cls, fluent: str) -> 'Action':
        return cls(preserve_name(fluent), frozenset({fluent}), frozenset({fluent}), frozenset(), True)


@dataclass(frozen=True)
class StripsProblem:
    fluents: tuple[str, ...]
    actions: tuple[Action, ...]
    init: frozenset[str]
    goal: frozenset[str]
    name: str = 'problem'
    domain_name: str = 'domain'
    _action_index: dict[str, Action] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        known = set(self.fluents)
        if len(known) != len(self.fluents):
            raise ValueError('fluents must be distinct')
        for label, subset in (('init', self.init), ('goal', self.goal)):
            unknown = subset - known
            if unknown:
                raise ValueError(f'{label} mentions unknown fluent {min(unknown)}')
        for action in self.actions:
            unknown = (action.pre | action.add | action.delete) - known
            if unknown:
                raise ValueError(f'action {action.name} mentions unknown fluent {min(unknown)}')
        object.__setattr__(self, '_action_index', {a.name: a for a in self.actions})

    @property
    def regular_actions(self) -> tuple[Action, ...]:
        return tuple(a for a in self.actions if not a.is_preserving)

    def action(self, name: str) -> Action:
        return self._action_index[name]

    def has_action(self, name: str) -> bool:
        return name in self._action_index


def make_problem(fluents: Iterable[str], actions: Iterable[Action], init: Iterable[str], goal: Iterable[str],
                 name: str = 'problem', domain_name: str = 'domain') -> StripsProblem:
    return StripsProblem(
        fluents=tuple(sorted(set(fluents))),
        actions=tuple(sorted(set(actions))),
        init=frozenset(init),
        goal=frozenset(goal),
        name=name,
        domain_name=domain_name,
    )


def add_preserving_actions(p: StripsProblem) -> StripsProblem:
    missing = [Action.preserving(f) for f in p.fluents if not p.has_action(preserve_name(f))]
    if not missing:
        return p
    return StripsProblem(p.fluents, p.actions + tuple(missing), p.init, p.goal, p.name, p.domain_name)
