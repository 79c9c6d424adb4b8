import logging
import random

import pytest

from core.exceptions import InputError, PddlSyntaxError, UnreachableGoalError, UnsupportedRequirementError
from multicover.planning import (
    Action,
    MutexPair,
    add_preserving_actions,
    eventual_fluent_mutexes,
    first_appearance_layers,
    make_problem,
    mutex_graph_of,
    parse_pddl,
    prune_to_needed,
)
from multicover.planning.strips import asp_name, term
from tests.oracles import co_reachable_pairs, graphplan_mutexes, random_strips, reachable_states

logger = logging.getLogger(__name__)

TINY_DOMAIN = '''
(define (domain tiny)
  (:requirements :strips)
  (:predicates (p) (q))
  (:action go :parameters () :precondition (p) :effect (and (q) (not (p)))))
'''


def _problem(init='(p)', goal='(q)', domain='tiny'):
    return f'(define (problem t) (:domain {domain}) (:init {init}) (:goal (and {goal})))'


def test_ferry_fluents(ferry):
    assert len(ferry.fluents) == 11
    assert 'just_moved(ferry,island_b)' in ferry.fluents
    assert ferry.init == {'ferry_at(island_a)', 'car_at(island_a)'}
    assert ferry.goal == {'car_at(island_c)'}
    assert ferry.has_action('sail(ferry,island_a,island_c)')
    assert len(ferry.regular_actions) == 9 + 3 + 3 + 3


def test_ferry_mutexes(ferry):
    pairs, graph = eventual_fluent_mutexes(ferry)
    assert len(pairs) == 22
    assert MutexPair('ferry_at(island_a)', 'ferry_at(island_b)') in pairs
    assert MutexPair('on_ferry(car)', 'car_at(island_a)') in pairs
    assert MutexPair('loading(ferry)', 'on_ferry(car)') in pairs
    assert MutexPair('ferry_at(island_b)', 'just_moved(ferry,island_a)') in pairs
    assert MutexPair('ferry_at(island_a)', 'just_moved(ferry,island_a)') not in pairs
    assert MutexPair('loading(ferry)', 'car_at(island_b)') not in pairs

    together = co_reachable_pairs(ferry)
    assert not any(frozenset((pair.f, pair.g)) in together for pair in pairs)
    assert graph.stabilized_layer > 0


def test_ferry_mutex_graph(ferry):
    pairs, _ = eventual_fluent_mutexes(ferry)
    g = mutex_graph_of(pairs)
    assert g.vertex_count == 11
    assert g.edge_count == 22
    assert list(g.labels) == sorted(g.labels)
    assert g.has_edge(g.labels.index('car_at(island_a)'), g.labels.index('car_at(island_b)'))


def test_mutex_graph_of_empty():
    g = mutex_graph_of(set())
    assert (g.vertex_count, g.edge_count) == (0, 0)
    g = mutex_graph_of(set(), fluents=['x', 'y'], all_fluents=True)
    assert (g.vertex_count, g.edge_count) == (2, 0)


def test_mutex_pair_is_unordered():
    assert MutexPair('b', 'a') == MutexPair('a', 'b')
    assert MutexPair('b', 'a').f == 'a'
    with pytest.raises(ValueError):
        MutexPair('a', 'a')


def test_single_fluent_has_no_mutexes():
    p = make_problem(['x'], [], ['x'], ['x'])
    pairs, _ = eventual_fluent_mutexes(p)
    assert pairs == set()


def test_shared_producer_is_not_mutex():
    both = Action('both', frozenset({'s'}), frozenset({'f', 'g'}), frozenset({'s'}))
    p = make_problem(['s', 'f', 'g'], [both], ['s'], ['f', 'g'])
    pairs, _ = eventual_fluent_mutexes(p)
    assert MutexPair('f', 'g') not in pairs
    assert MutexPair('s', 'f') in pairs


def test_empty_problem():
    p = make_problem([], [], [], [])
    pairs, graph = eventual_fluent_mutexes(p)
    assert pairs == set()
    assert graph.stabilized_layer == 0


def test_mutexes_on_random_problems():
    rng = random.Random(4242)
    deviations = 0
    for _ in range(50):
        p = random_strips(rng, n_fluents=rng.randint(3, 10), n_actions=rng.randint(1, 15))
        pairs, graph = eventual_fluent_mutexes(p)
        mutex = {frozenset((pair.f, pair.g)) for pair in pairs}
        together = co_reachable_pairs(p)
        assert not mutex & together

        present = {graph.fluents[f] for f in graph.present_by_layer[-1]}
        reachable = set().union(*reachable_states(p))
        assert reachable <= present

        textbook = graphplan_mutexes(p)
        assert not textbook & together
        # fewer parallel combinations can only add mutexes
        assert {pair for pair in textbook if pair <= present} <= mutex
        deviations += len(mutex ^ {pair for pair in textbook if pair <= present})

        stored = graph.action_mutex_entries
        assert stored <= len(p.regular_actions) * len(p.fluents)
    logger.info('sequential and graphplan mutex sets differ in %d pairs', deviations)


def test_mutexes_only_disappear_across_layers(ferry):
    _, graph = eventual_fluent_mutexes(ferry)
    layers = list(zip(graph.present_by_layer, graph.fluent_mutex_by_layer))
    for (present, mutex), (_, later) in zip(layers, layers[1:]):
        old = {pair for pair in later if set(pair) <= present}
        assert old <= mutex


def test_first_appearance_layers(ferry):
    layers = first_appearance_layers(ferry)
    assert layers.fluent_first_layer['car_at(island_a)'] == 0
    assert layers.fluent_first_layer['loading(ferry)'] == 1
    assert layers.fluent_first_layer['on_ferry(car)'] == 2
    assert layers.goal_layer(ferry.goal) == 3
    for a in ferry.regular_actions:
        first = layers.action_first_layer[a.name]
        assert first >= max(layers.fluent_first_layer[f] for f in a.pre)
        for f in a.add:
            assert layers.fluent_first_layer[f] <= first + 1


def test_unreachable_fluent_is_marked():
    never = Action('never', frozenset({'z'}), frozenset({'y'}))
    p = make_problem(['x', 'y', 'z'], [never], ['x'], [])
    layers = first_appearance_layers(p)
    assert layers.fluent_first_layer['y'] is None
    assert layers.action_first_layer['never'] is None
    with pytest.raises(UnreachableGoalError):
        first_appearance_layers(make_problem(['x', 'y', 'z'], [never], ['x'], ['y']))


def test_add_preserving_actions_is_idempotent(ferry):
    once = add_preserving_actions(ferry)
    assert len(once.actions) == len(ferry.actions) + 11
    assert once.action('preserve(loading(ferry))').pre == {'loading(ferry)'}
    assert once.action('preserve(loading(ferry))').add == {'loading(ferry)'}
    assert add_preserving_actions(once) is once
    empty = make_problem([], [], [], [])
    assert add_preserving_actions(empty) is empty


def test_unsupported_requirement_is_named():
    domain = TINY_DOMAIN.replace(':strips', ':strips :negative-preconditions')
    with pytest.raises(UnsupportedRequirementError, match=':negative-preconditions'):
        parse_pddl(domain, _problem())


@pytest.mark.parametrize('precondition', ['(not (p))', '(or (p) (q))', '(= ?x ?y)'])
def test_non_strips_preconditions_are_rejected(precondition):
    domain = TINY_DOMAIN.replace(':precondition (p)', f':precondition {precondition}')
    with pytest.raises(UnsupportedRequirementError):
        parse_pddl(domain, _problem())


def test_syntax_error_has_position():
    broken = TINY_DOMAIN + ')\n'
    with pytest.raises(PddlSyntaxError) as error:
        parse_pddl(broken, _problem())
    assert error.value.line >= 6
    assert error.value.detail.startswith(f'domain:{error.value.line}:')


def test_comments_and_case_are_ignored():
    domain = TINY_DOMAIN.replace('(:predicates', '; a comment (with parens\n  (:PREDICATES')
    p = parse_pddl(domain, _problem())
    assert p.fluents == ('p', 'q')
    assert p.has_action('go')


def test_domain_mismatch():
    with pytest.raises(InputError):
        parse_pddl(TINY_DOMAIN, _problem(domain='other'))


def test_no_actions():
    domain = '(define (domain idle) (:requirements :strips) (:predicates (p)))'
    p = parse_pddl(domain, _problem(goal='(p)', domain='idle'))
    assert p.actions == ()
    assert len(add_preserving_actions(p).actions) == 1


def test_typed_objects_and_constants():
    domain = '''
    (define (domain typed)
      (:requirements :strips :typing)
      (:types truck plane - vehicle place)
      (:constants depot - place)
      (:predicates (at ?v - vehicle ?p - place))
      (:action move
        :parameters (?v - vehicle ?from ?to - place)
        :precondition (at ?v ?from)
        :effect (and (at ?v ?to) (not (at ?v ?from)))))
    '''
    problem = '''
    (define (problem typed1) (:domain typed)
      (:objects t1 - truck p1 - plane home - place)
      (:init (at t1 depot) (at p1 home))
      (:goal (and (at t1 home))))
    '''
    p = parse_pddl(domain, problem)
    # two vehicles, two places
    assert len(p.regular_actions) == 2 * 2 * 2
    assert p.has_action('move(p1,home,depot)')


def test_either_types():
    domain = '''
    (define (domain either)
      (:requirements :strips :typing)
      (:types cat dog box)
      (:predicates (in ?x - (either cat dog) ?b - box) (out ?x - (either cat dog)))
      (:action pack :parameters (?x - (either cat dog) ?b - box)
        :precondition (out ?x) :effect (and (in ?x ?b) (not (out ?x)))))
    '''
    problem = '''
    (define (problem e1) (:domain either)
      (:objects tom - cat rex - dog crate - box)
      (:init (out tom) (out rex))
      (:goal (and (in tom crate))))
    '''
    p = parse_pddl(domain, problem)
    assert {a.name for a in p.regular_actions} == {'pack(rex,crate)', 'pack(tom,crate)'}


def test_static_predicates_are_compiled_out():
    domain = '''
    (define (domain roads)
      (:requirements :strips :typing)
      (:types city)
      (:predicates (at ?c - city) (road ?a ?b - city))
      (:action drive :parameters (?a ?b - city)
        :precondition (and (at ?a) (road ?a ?b))
        :effect (and (at ?b) (not (at ?a)))))
    '''
    problem = '''
    (define (problem r1) (:domain roads)
      (:objects x y z - city)
      (:init (at x) (road x y) (road y z))
      (:goal (and (at z))))
    '''
    p = parse_pddl(domain, problem)
    assert {a.name for a in p.regular_actions} == {'drive(x,y)', 'drive(y,z)'}
    assert p.fluents == ('at(x)', 'at(y)', 'at(z)')


def test_asp_names():
    assert asp_name('Truck-1') == 'truck_1'
    assert asp_name('1st') == 'c_1st'
    assert term('at', ['Truck-1', 'depot']) == 'at(truck_1,depot)'
    assert term('handempty') == 'handempty'


def test_neededness_prunes_irrelevant_parts():
    useful = Action('useful', frozenset({'a'}), frozenset({'goal'}))
    detour = Action('detour', frozenset({'a'}), frozenset({'noise'}))
    stuck = Action('stuck', frozenset({'never'}), frozenset({'goal'}))
    p = make_problem(['a', 'goal', 'noise', 'never'], [useful, detour, stuck], ['a'], ['goal'])
    pruned = prune_to_needed(p)
    assert pruned.fluents == ('a', 'goal')
    assert [a.name for a in pruned.actions] == ['useful']


def test_neededness_keeps_ferry_solvable(ferry):
    pruned = prune_to_needed(ferry)
    assert pruned.goal == ferry.goal
    assert first_appearance_layers(pruned).goal_layer(pruned.goal) == 3
    assert set(pruned.fluents) <= set(ferry.fluents)


def test_state_oracle_sanity(ferry):
    states = reachable_states(ferry)
    assert any('car_at(island_c)' in s for s in states)
    assert all(len({f for f in s if f.startswith('ferry_at')}) == 1 for s in states)
    assert not any({'loading(ferry)', 'on_ferry(car)'} <= s for s in states)
