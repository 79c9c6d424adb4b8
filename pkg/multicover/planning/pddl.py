"""Reader for the STRIPS subset of PDDL (``:strips`` and ``:typing``).

Domains and problems are read as s-expressions and action schemata are
grounded over every type-compatible combination of objects. Atoms over
static predicates (never changed by an effect) are evaluated against the
initial state during grounding and do not become fluents.
"""
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import chain

import pyparsing
from pyparsing import CharsNotIn, Empty, Forward, Group, StringEnd, Suppress, ZeroOrMore, rest_of_line

from core import validator
from core.exceptions import InputError, PddlSyntaxError, UnsupportedRequirementError, UnreachableGoalError
from multicover.planning.strips import Action, StripsProblem, make_problem, term

logger = logging.getLogger(__name__)

OBJECT = 'object'
Sexp = list


def _grammar():
    # Empty() skips the whitespace CharsNotIn would not
    token = Empty() + CharsNotIn('() \t\r\n;')
    sexp = Forward()
    sexp <<= Group(Suppress('(') + ZeroOrMore(token | sexp) + Suppress(')'))
    document = sexp + StringEnd()
    document.ignore(';' + rest_of_line)
    return document


_DOCUMENT = _grammar()


def parse_sexp(text: str, source: str = 'pddl') -> Sexp:
    try:
        result = _DOCUMENT.parse_string(text.lower(), parse_all=True)
    except pyparsing.ParseException as e:
        raise PddlSyntaxError(f'unbalanced or malformed expression near {e.line.strip()!r}', e.lineno, e.col, source)
    return result.as_list()[0]


@dataclass
class Schema:
    name: str
    parameters: list[tuple[str, tuple[str, ...]]]
    pre: list[tuple[str, ...]]
    add: list[tuple[str, ...]]
    delete: list[tuple[str, ...]]


@dataclass
class Domain:
    name: str
    requirements: list[str] = field(default_factory=list)
    parents: dict[str, str] = field(default_factory=dict)
    constants: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    predicates: set[str] = field(default_factory=set)
    schemata: list[Schema] = field(default_factory=list)


@dataclass
class Problem:
    name: str
    domain_name: str
    objects: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    init: set[tuple[str, ...]] = field(default_factory=set)
    goal: list[tuple[str, ...]] = field(default_factory=list)


def _typed_list(items: Sexp, what: str) -> list[tuple[str, tuple[str, ...]]]:
    typed, pending = [], []
    tokens = iter(items)
    for item in tokens:
        if item == '-':
            kind = next(tokens, None)
            if kind is None:
                raise InputError(f'Missing type after "-" in {what}.')
            if isinstance(kind, list):
                if not kind or kind[0] != 'either':
                    raise InputError(f'Unexpected type expression {kind} in {what}.')
                kinds = tuple(kind[1:])
            else:
                kinds = (kind,)
            typed.extend((name, kinds) for name in pending)
            pending = []
        elif isinstance(item, list):
            raise InputError(f'Unexpected list {item} in {what}.')
        else:
            pending.append(item)
    typed.extend((name, (OBJECT,)) for name in pending)
    return typed


def _atom(expr: Sexp, what: str) -> tuple[str, ...]:
    if not expr or any(isinstance(part, list) for part in expr):
        raise InputError(f'Malformed atom {expr} in {what}.')
    if expr[0] == '=':
        raise UnsupportedRequirementError(f'Equality in {what} needs :equality, which is not supported.')
    return tuple(expr)


def _conjunction(expr: Sexp, what: str, allow_negation: bool = False) -> Iterator[tuple[bool, tuple[str, ...]]]:
    if not expr:
        return
    match expr[0]:
        case 'and':
            for part in expr[1:]:
                yield from _conjunction(part, what, allow_negation)
        case 'not':
            if not allow_negation:
                raise UnsupportedRequirementError(
                    f'Negative literal in {what} needs :negative-preconditions, which is not supported.'
                )
            yield False, _atom(expr[1], what)
        case 'or' | 'imply' | 'exists' | 'forall' | 'when' | 'increase' | 'decrease' | 'assign':
            raise UnsupportedRequirementError(f'"{expr[0]}" in {what} is outside the STRIPS subset.')
        case _:
            yield True, _atom(expr, what)


def _sections(expr: Sexp, kind: str, source: str) -> tuple[str, Iterator[Sexp]]:
    if len(expr) < 2 or expr[0] != 'define' or not isinstance(expr[1], list) or expr[1][:1] != [kind]:
        raise InputError(f'{source}: expected (define ({kind} <name>) ...).')
    return expr[1][1], iter(expr[2:])


def read_domain(text: str, source: str = 'domain') -> Domain:
    name, sections = _sections(parse_sexp(text, source), 'domain', source)
    domain = Domain(name=name)
    for section in sections:
        match section[0]:
            case ':requirements':
                domain.requirements = section[1:]
                validator.validate_requirements(domain.requirements)
            case ':types':
                for child, kinds in _typed_list(section[1:], ':types'):
                    if len(kinds) != 1:
                        raise InputError(f'Type {child} must have a single parent.')
                    if child != OBJECT:
                        domain.parents[child] = kinds[0]
            case ':constants':
                domain.constants = _typed_list(section[1:], ':constants')
            case ':predicates':
                domain.predicates = {predicate[0] for predicate in section[1:]}
            case ':action':
                domain.schemata.append(_read_schema(section))
            case other:
                raise UnsupportedRequirementError(f'{source}: section {other} is not supported.')
    return domain


def _read_schema(section: Sexp) -> Schema:
    name = section[1]
    fields = dict(zip(section[2::2], section[3::2]))
    what = f'action {name}'
    parameters = _typed_list(fields.get(':parameters', []), what)
    pre = [atom for _, atom in _conjunction(fields.get(':precondition', []), f'precondition of {what}')]
    effects = list(_conjunction(fields.get(':effect', []), f'effect of {what}', allow_negation=True))
    return Schema(
        name=name,
        parameters=[(variable.lstrip('?'), kinds) for variable, kinds in parameters],
        pre=pre,
        add=[atom for positive, atom in effects if positive],
        delete=[atom for positive, atom in effects if not positive],
    )


def read_problem(text: str, source: str = 'problem') -> Problem:
    name, sections = _sections(parse_sexp(text, source), 'problem', source)
    problem = Problem(name=name, domain_name='')
    for section in sections:
        match section[0]:
            case ':domain':
                problem.domain_name = section[1]
            case ':requirements':
                validator.validate_requirements(section[1:])
            case ':objects':
                problem.objects = _typed_list(section[1:], ':objects')
            case ':init':
                problem.init = {_atom(atom, ':init') for atom in section[1:]}
            case ':goal':
                problem.goal = [atom for _, atom in _conjunction(section[1], ':goal')]
            case other:
                raise UnsupportedRequirementError(f'{source}: section {other} is not supported.')
    return problem


def _ancestors(kind: str, parents: dict[str, str]) -> list[str]:
    chain_, seen = [kind], {kind}
    while chain_[-1] in parents:
        parent = parents[chain_[-1]]
        if parent in seen:
            raise InputError(f'Type hierarchy has a cycle through {parent}.')
        chain_.append(parent)
        seen.add(parent)
    if chain_[-1] != OBJECT:
        chain_.append(OBJECT)
    return chain_


def _objects_by_type(domain: Domain, problem: Problem) -> dict[str, list[str]]:
    members: dict[str, set[str]] = {}
    for obj, kinds in chain(domain.constants, problem.objects):
        for kind in kinds:
            for ancestor in _ancestors(kind, domain.parents):
                members.setdefault(ancestor, set()).add(obj)
    return {kind: sorted(objs) for kind, objs in members.items()}


def _substitute(atom: tuple[str, ...], binding: dict[str, str]) -> tuple[str, ...]:
    return (atom[0],) + tuple(binding.get(arg.lstrip('?'), arg) if arg.startswith('?') else arg for arg in atom[1:])


def _ground(schema: Schema, typed: dict[str, list[str]], static: set[str],
            init: set[tuple[str, ...]]) -> Iterator[dict[str, str]]:
    static_pre = [atom for atom in schema.pre if atom[0] in static]
    domains = [sorted({o for kind in kinds for o in typed.get(kind, [])}) for _, kinds in schema.parameters]
    variables = [variable for variable, _ in schema.parameters]

    def bound(atom, binding):
        return all(not arg.startswith('?') or arg.lstrip('?') in binding for arg in atom[1:])

    def extend(i: int, binding: dict[str, str]):
        if i == len(variables):
            yield dict(binding)
            return
        for obj in domains[i]:
            binding[variables[i]] = obj
            checks = [a for a in static_pre if bound(a, binding) and not bound(a, {k: binding[k] for k in variables[:i]})]
            if all(_substitute(a, binding) in init for a in checks):
                yield from extend(i + 1, binding)
            del binding[variables[i]]

    # static atoms without variables are checked once
    if all(_substitute(a, {}) in init for a in static_pre if bound(a, {})):
        yield from extend(0, {})


def ground(domain: Domain, problem: Problem) -> StripsProblem:
    if problem.domain_name and problem.domain_name != domain.name:
        raise InputError(f'Problem {problem.name} is for domain {problem.domain_name}, not {domain.name}.')

    typed = _objects_by_type(domain, problem)
    changed = {atom[0] for schema in domain.schemata for atom in chain(schema.add, schema.delete)}
    static = (domain.predicates | {atom[0] for atom in problem.init}) - changed

    def fluent(atom: tuple[str, ...]) -> str:
        return term(atom[0], atom[1:])

    actions = []
    for schema in domain.schemata:
        count = 0
        for binding in _ground(schema, typed, static, problem.init):
            args = [binding[variable] for variable, _ in schema.parameters]
            add = frozenset(fluent(_substitute(a, binding)) for a in schema.add)
            actions.append(Action(
                name=term(schema.name, args),
                pre=frozenset(fluent(_substitute(a, binding)) for a in schema.pre if a[0] not in static),
                add=add,
                # an atom both deleted and added stays true
                delete=frozenset(fluent(_substitute(a, binding)) for a in schema.delete) - add,
            ))
            count += 1
        logger.info('grounded %s into %d actions', schema.name, count)

    for atom in problem.goal:
        if atom[0] in static and atom not in problem.init:
            raise UnreachableGoalError(f'Goal {fluent(atom)} is a static fact that does not hold initially.')

    init = {fluent(a) for a in problem.init if a[0] not in static}
    goal = {fluent(a) for a in problem.goal if a[0] not in static}
    fluents = init | goal | {f for a in actions for f in a.pre | a.add | a.delete}
    return make_problem(fluents, actions, init, goal, name=problem.name, domain_name=domain.name)


def parse_pddl(domain_text: str, problem_text: str, domain_source: str = 'domain',
               problem_source: str = 'problem') -> StripsProblem:
    return ground(read_domain(domain_text, domain_source), read_problem(problem_text, problem_source))
