"""Tests for morphisms, embeddings and rigid surjections"""
import pytest
from hypothesis import given, settings

from ramsey_forge.errors import NotRigidSurjectionError, TreeParseError
from ramsey_forge.maps import (GaloisPair, TreeMap, compose, copies, enumerate_embeddings,
                               enumerate_rigid_surjections, format_map, galois_verify, identity, is_embedding,
                               is_morphism, is_rigid_surjection, is_sealed, is_surjective, naive_rigid_surjections,
                               parse_map, projection_of, rigid_adjoint, truncate_map)
from ramsey_forge.tests.strategies import trees
from ramsey_forge.trees import decode, encode, enumerate_trees, path_tree

CHERRY = decode("(()())")


def test_morphism_examples():
    assert is_morphism(identity(CHERRY))
    # the constant root map satisfies all three conditions
    assert is_morphism(TreeMap(path_tree(2), CHERRY, (0, 0)))
    assert not is_morphism(TreeMap(path_tree(2), path_tree(3), (1, 2)))
    assert not is_morphism(TreeMap(CHERRY, path_tree(3), (0, 1, 2)))
    assert not is_morphism(TreeMap(path_tree(3), path_tree(3), (0, 2, 1)))


def test_embedding_counts():
    for m in range(2, 6):
        assert len(list(enumerate_embeddings(path_tree(2), path_tree(m)))) == m - 1
    assert [e.image for e in enumerate_embeddings(CHERRY, CHERRY)] == [(0, 1, 2)]
    assert list(enumerate_embeddings(CHERRY, path_tree(3))) == []
    assert copies(path_tree(2), CHERRY) == [(0, 1), (0, 2)]


@given(trees(3), trees(5))
def test_enumerated_embeddings_are_embeddings(s, t):
    found = list(enumerate_embeddings(s, t))
    assert all(is_embedding(e) for e in found)
    assert [e.image for e in found] == sorted({e.image for e in found})


def test_map_text_format():
    f = parse_map("((())) -> (()) : 0,0,1")
    assert f.image == (0, 0, 1)
    assert format_map(f) == "((())) -> (()) : 0,0,1"
    with pytest.raises(TreeParseError):
        parse_map("((())) (())")
    with pytest.raises(TreeParseError):
        parse_map("((())) -> (()) : 0,a,1")


def test_compose_checks_types():
    f = TreeMap(path_tree(3), path_tree(2), (0, 0, 1))
    assert compose(identity(path_tree(2)), f) == f
    with pytest.raises(ValueError):
        compose(f, f)


def test_rigid_adjoint_examples():
    pair = rigid_adjoint(TreeMap(path_tree(3), path_tree(2), (0, 0, 1)))
    assert pair is not None
    assert pair.e.image == (0, 2)
    constant = TreeMap(CHERRY, path_tree(1), (0, 0, 0))
    assert rigid_adjoint(constant).e.image == (0,)
    assert rigid_adjoint(TreeMap(CHERRY, path_tree(2), (0, 1, 1))) is None
    assert rigid_adjoint(TreeMap(path_tree(3), path_tree(2), (0, 0, 0))) is None


def test_galois_verify_rejects_wrong_adjoint():
    f = TreeMap(path_tree(3), path_tree(2), (0, 1, 1))
    e = TreeMap(path_tree(2), path_tree(3), (0, 2))
    assert not galois_verify(GaloisPair(f, e))
    assert galois_verify(GaloisPair(f, TreeMap(path_tree(2), path_tree(3), (0, 1))))


def test_path_surjection_counts():
    def count(m, k):
        return len(list(enumerate_rigid_surjections(path_tree(m), path_tree(k))))

    assert count(3, 2) == 3
    assert count(4, 2) == 7
    assert count(4, 3) == 6
    assert count(2, 3) == 0


def test_cherry_onto_path():
    found = [f.image for f in enumerate_rigid_surjections(CHERRY, path_tree(2))]
    assert found == [(0, 0, 1), (0, 1, 0)]


@given(trees())
def test_only_rigid_self_surjection_is_identity(t):
    assert list(enumerate_rigid_surjections(t, t)) == [identity(t)]


@given(trees())
def test_surjections_onto_single_node(t):
    found = list(enumerate_rigid_surjections(t, path_tree(1)))
    assert [f.image for f in found] == [(0,) * t.size]


@settings(max_examples=150, deadline=None)
@given(trees(5), trees(4))
def test_enumeration_matches_naive_filter(t, s):
    assert list(enumerate_rigid_surjections(t, s)) == list(naive_rigid_surjections(t, s))
    assert (list(enumerate_rigid_surjections(t, s, sealed_only=True))
            == list(naive_rigid_surjections(t, s, sealed_only=True)))


@settings(max_examples=100, deadline=None)
@given(trees(5), trees(4))
def test_adjoint_pairs_satisfy_galois_laws(t, s):
    for f in enumerate_rigid_surjections(t, s):
        pair = rigid_adjoint(f)
        assert galois_verify(pair)
        assert is_morphism(pair.e)
        assert is_embedding(pair.e)


@settings(max_examples=100, deadline=None)
@given(trees(5), trees(4), trees(3))
def test_composition_of_rigid_surjections_is_rigid(u, t, s):
    for g in enumerate_rigid_surjections(u, t):
        for f in enumerate_rigid_surjections(t, s):
            assert is_rigid_surjection(compose(f, g))


def test_truncation_examples():
    f = TreeMap(path_tree(3), path_tree(2), (0, 1, 1))
    assert truncate_map(f, 1).image == (0, 1)
    assert truncate_map(f, 0) == TreeMap(path_tree(1), path_tree(1), (0,))
    g = TreeMap(CHERRY, path_tree(2), (0, 1, 0))
    assert encode(truncate_map(g, 1).source) == "(())"


def test_truncation_requires_rigid_surjection():
    with pytest.raises(NotRigidSurjectionError):
        truncate_map(TreeMap(CHERRY, path_tree(2), (0, 1, 1)), 1)


@settings(max_examples=100, deadline=None)
@given(trees(5), trees(4))
def test_truncations_are_sealed_rigid_surjections(t, s):
    for f in enumerate_rigid_surjections(t, s):
        for v in range(s.size):
            h = truncate_map(f, v)
            assert is_sealed(h)
            assert is_rigid_surjection(h)


def test_projection_of_path_embedding():
    e = TreeMap(path_tree(2), path_tree(3), (0, 2))
    assert projection_of(e).image == (0, 0, 1)


def test_adjoint_determines_the_surjection():
    checked = 0
    all_trees = list(enumerate_trees(5))
    for t in all_trees:
        for s in all_trees:
            if s.size > t.size:
                continue
            maps = list(naive_rigid_surjections(t, s))
            assert maps == list(enumerate_rigid_surjections(t, s))
            adjoints = set()
            for f in maps:
                e = rigid_adjoint(f).e
                assert projection_of(e) == f
                adjoints.add(e.image)
                checked += 1
            assert len(adjoints) == len(maps)
    assert checked > 0


def test_surjectivity():
    assert is_surjective(TreeMap(CHERRY, path_tree(2), (0, 1, 1)))
    assert not is_surjective(TreeMap(CHERRY, path_tree(2), (0, 0, 0)))
