import json

import pytest

from core.exceptions import InputError
from multicover import serializer
from multicover.aspplan import Plan
from multicover.cover import find_cover
from multicover.planning import MutexPair
from tests.conftest import SAMPLE_EDGES


def test_read_graph(data_dir):
    g = serializer.read_graph((data_dir / 'sample.graph').read_text())
    assert (g.vertex_count, g.edge_count) == (5, 8)
    assert sorted(g.edges()) == sorted(SAMPLE_EDGES)
    assert g.label(2) == 'c'


def test_write_graph_is_readable(sample):
    text = serializer.write_graph(sample)
    assert text.startswith('p 5 8\ne 0 1\n')
    assert serializer.read_graph(text).labels == sample.labels


def test_duplicate_edges_count_once():
    g = serializer.read_graph('p 3 1\ne 0 1\ne 1 0\n')
    assert g.edge_count == 1


@pytest.mark.parametrize('text, line', [
    ('e 0 1\n', 1),
    ('p 3 1\ne 0 0\n', 2),
    ('p 3 1\ne 0 7\n', 2),
    ('p 3 1\n\ne 0 x\n', 3),
    ('p 3 1\ne 0 1\nq 1 2\n', 3),
    ('p 3 1\np 3 1\n', 2),
    ('p 3 1\nl 5 far\n', 2),
])
def test_read_graph_errors_name_the_line(text, line):
    with pytest.raises(InputError, match=f'^g.graph:{line}:'):
        serializer.read_graph(text, source='g.graph')


def test_read_graph_edge_count_mismatch():
    with pytest.raises(InputError, match='declares 2 edges'):
        serializer.read_graph('p 3 2\ne 0 1\n')
    with pytest.raises(InputError, match='missing'):
        serializer.read_graph('# only a comment\n')


def test_covering_round_trip(sample):
    covering = find_cover(sample)
    text = serializer.write_covering(covering)
    again = serializer.read_covering(text, sample)
    assert [mc.partitions for mc in again] == [mc.partitions for mc in covering]


@pytest.mark.parametrize('text', ['m {0} {3}\n', 'm {0} {0}\n', 'x {0} {2}\n', 'm {0} {9}\n'])
def test_read_covering_rejects_bad_lines(sample, text):
    with pytest.raises(InputError):
        serializer.read_covering(text, sample)


def test_read_covering_unknown_vertex_names_the_line(sample):
    with pytest.raises(InputError, match=r'^covering:2: Unknown vertex 9'):
        serializer.read_covering('m {0} {1}\nm {0} {9}\n', sample)
    with pytest.raises(InputError, match=r'^cover\.txt:1: Unknown vertex -1'):
        serializer.read_covering('m {-1} {2}\n', sample, source='cover.txt')


def test_plan_text(ferry):
    plan = Plan(steps=[{'start_loading(ferry,island_a)'}, set(), {'b', 'a'}])
    text = serializer.write_plan(plan)
    assert text == '0: start_loading(ferry,island_a)\n1:\n2: a b\n'


def test_mutex_pairs_json():
    pairs = {MutexPair('b', 'a'), MutexPair('c', 'a')}
    assert json.loads(serializer.mutex_pairs_json(pairs)) == [['a', 'b'], ['a', 'c']]
