"""Tests for composition-space and Ramsey-domain fragments"""
import pytest

from ramsey_forge.errors import CapExceededError, FiberError
from ramsey_forge.framework import (CompositionSpaceFragment, RamseyDomainFragment, build_tree_instance,
                                    build_tree_space, check_domain_axioms, check_LP, check_R,
                                    check_space_axioms, check_theorem, condition_instance, extends, fiber,
                                    fragment_to_json, one_point_fragment, tree_action, tree_truncation,
                                    vanishing_depth)
from ramsey_forge.maps import TreeMap, format_map, identity
from ramsey_forge.trees import decode, path_tree
from ramsey_forge.witness import naive_oracle

CHERRY = decode("(()())")


@pytest.fixture(scope="module")
def tree_fragment():
    return build_tree_instance(3)


def _incomparable_domain() -> RamseyDomainFragment:
    space = CompositionSpaceFragment(
        ("e",), ("u", "v"),
        {("e", "e"): "e"},
        {("e", "u"): "u", ("e", "v"): "v"},
        {"u": "u", "v": "v"},
        {"u": "m", "v": "n"},
        frozenset(),
    )
    members = {"E": frozenset({"e"}), "P": frozenset({"u", "v"})}
    return RamseyDomainFragment(space, ("E",), ("P",), members, {("E", "E"): "E"},
                                {("E", "P"): "P"}, {"P": "P"})


def test_one_point_fragment_passes_everything():
    space, domain = one_point_fragment()
    assert check_space_axioms(space).all_passed
    assert check_domain_axioms(domain).all_passed
    assert vanishing_depth(domain, "E") == 0


def test_truncation_that_does_not_commute_is_caught():
    space = CompositionSpaceFragment(
        ("a",), ("x", "y"),
        {("a", "a"): "a"},
        {("a", "x"): "y", ("a", "y"): "y"},
        {"x": "x", "y": "x"},
        {"x": "n", "y": "n"},
        frozenset(),
    )
    report = check_space_axioms(space)
    assert report.get("action_law").passed
    assert not report.get("i").passed
    assert report.get("i").witness == ("a", "x")
    assert not report.all_passed


def test_incomparable_norms_break_linearity():
    report = check_domain_axioms(_incomparable_domain())
    linear = report.get("linear")
    assert not linear.passed
    assert linear.witness == ("P", "u", "v")
    assert not report.get("vanishing").passed


def test_tree_fragment_size(tree_fragment):
    space, domain = tree_fragment
    assert len(space.A_elems) == 6
    assert len(domain.P_sets) == 13
    assert domain.F_sets == domain.P_sets


def test_tree_fragment_satisfies_axioms(tree_fragment):
    space, domain = tree_fragment
    assert check_space_axioms(space).all_passed
    report = check_domain_axioms(domain)
    assert report.all_passed, report.to_json()
    assert report.get("vanishing").witness == (1,)


def test_tree_fragment_set_cap():
    with pytest.raises(CapExceededError):
        build_tree_instance(3, set_cap=5)


def test_tree_action_examples():
    p2, p3 = path_tree(2), path_tree(3)
    g = TreeMap(p3, p2, (0, 0, 1))
    assert tree_action(g, identity(p2)) == g
    assert tree_action(identity(p2), identity(p2)) == identity(p2)
    assert tree_action(g, identity(path_tree(1))) == identity(path_tree(1))
    assert tree_action(identity(CHERRY), g) is None


def test_identity_acts_trivially():
    space, points = build_tree_space(3)
    for f_id, f in points.items():
        assert space.act[(format_map(identity(f.source)), f_id)] == f_id


def test_tree_truncation():
    g = TreeMap(path_tree(3), path_tree(2), (0, 0, 1))
    assert tree_truncation(g) == identity(path_tree(1))
    assert tree_truncation(identity(path_tree(1))) == identity(path_tree(1))


def test_conditions_on_one_point_domain():
    _, domain = one_point_fragment()
    for c in (1, 2, 3):
        assert check_R(domain, c, "E").holds_with == ("E",)
        assert check_LP(domain, c, "E", "e").holds_with == ("E", "e")


def test_fiber_must_be_non_empty():
    _, domain = one_point_fragment()
    assert fiber(domain, "E", "e") == frozenset({"e"})
    with pytest.raises(FiberError):
        fiber(domain, "E", "missing")


def test_pigeonhole_implies_ramsey_on_tree_fragment(tree_fragment):
    _, domain = tree_fragment
    report = check_theorem(domain, 2)
    assert report.counterexamples == []
    assert report.implication_holds
    assert report.linear and report.vanishing


def test_fragment_dump_is_sorted(tree_fragment):
    space, domain = tree_fragment
    dump = fragment_to_json(space, domain)
    assert dump["A"] == sorted(space.A_elems)
    assert len(dump["P"]) == 13
    assert dump["act"] == sorted(dump["act"])


def _one_set_domain(space: CompositionSpaceFragment, set_mult, set_act, set_trunc) -> RamseyDomainFragment:
    return RamseyDomainFragment(space, ("E",), ("E",), {"E": frozenset({"e"})}, set_mult, set_act, set_trunc)


def test_missing_product_breaks_associative_definedness():
    space, _ = one_point_fragment()
    report = check_domain_axioms(_one_set_domain(space, {}, {("E", "E"): "E"}, {"E": "E"}))
    assert report.get("a").witness == ("E", "E", "E")
    assert not report.get("a").passed
    assert report.get("b").passed


def test_missing_set_truncation_breaks_closure():
    space, _ = one_point_fragment()
    report = check_domain_axioms(_one_set_domain(space, {("E", "E"): "E"}, {("E", "E"): "E"}, {}))
    assert not report.get("b").passed
    assert report.get("b").witness == ("E",)
    assert report.get("a").passed


def test_set_product_must_be_pointwise():
    space = CompositionSpaceFragment(("e",), ("e",), {}, {("e", "e"): "e"}, {"e": "e"}, {"e": "n"},
                                     frozenset())
    report = check_domain_axioms(_one_set_domain(space, {("E", "E"): "E"}, {("E", "E"): "E"}, {"E": "E"}))
    assert not report.get("pointwise").passed
    assert report.get("pointwise").witness == ("mult", "E", "E", "e", "e")


def test_unextendable_set_breaks_extension():
    space = CompositionSpaceFragment(
        ("e",), ("x", "y"),
        {("e", "e"): "e"},
        {("e", "y"): "y"},
        {"x": "y", "y": "y"},
        {"x": "n", "y": "n"},
        frozenset(),
    )
    members = {"E": frozenset({"e"}), "P": frozenset({"x"}), "Q": frozenset({"y"})}
    domain = RamseyDomainFragment(space, ("E",), ("P", "Q"), members, {("E", "E"): "E"},
                                  {("E", "Q"): "Q"}, {"P": "Q", "Q": "Q"})
    report = check_domain_axioms(domain)
    assert report.get("pointwise").passed
    assert report.get("a").passed and report.get("b").passed
    assert not report.get("c").passed
    assert report.get("c").witness == ("E", "P")


def test_action_must_reach_smaller_norms():
    space = CompositionSpaceFragment(
        ("a",), ("x", "y"),
        {("a", "a"): "a"},
        {("a", "y"): "y"},
        {"x": "x", "y": "y"},
        {"x": "m", "y": "n"},
        frozenset({("m", "n")}),
    )
    report = check_space_axioms(space)
    assert report.get("action_law").passed
    assert report.get("i").passed and report.get("ii").passed
    assert not report.get("iii").passed
    assert report.get("iii").witness == ("a", "x", "y")


def _placing_sets(domain, P):
    return [F for F in domain.F_sets if (F, P) in domain.set_act]


def _lp_candidates(domain, P, y):
    space = domain.space
    for F in _placing_sets(domain, P):
        for a in space.A_elems:
            if (a, y) not in space.act:
                continue
            Fa = sorted(f for f in domain.members[F] if extends(space, f, a))
            if Fa:
                yield F, a, Fa


def test_conditions_agree_with_enumeration(tree_fragment):
    space, domain = tree_fragment
    for c in (2, 3):
        for P in domain.P_sets:
            expected = None
            for F in _placing_sets(domain, P):
                inst = condition_instance(domain, sorted(domain.members[F]), domain.members[P], "R", c)
                if naive_oracle(inst, 4096).is_witness:
                    expected = (F,)
                    break
            assert check_R(domain, c, P).holds_with == expected
            for y in sorted({space.trunc[x] for x in domain.members[P]}):
                expected = None
                for F, a, Fa in _lp_candidates(domain, P, y):
                    inst = condition_instance(domain, Fa, fiber(domain, P, y), "LP", c)
                    if naive_oracle(inst, 4096).is_witness:
                        expected = (F, a)
                        break
                assert check_LP(domain, c, P, y).holds_with == expected


def test_one_color_or_one_point_always_holds(tree_fragment):
    space, domain = tree_fragment
    for P in domain.P_sets:
        first = next(iter(_placing_sets(domain, P)), None)
        expected = (first,) if first is not None else None
        assert check_R(domain, 1, P).holds_with == expected
        if len(domain.members[P]) == 1:
            assert check_R(domain, 3, P).holds_with == expected
        for y in sorted({space.trunc[x] for x in domain.members[P]}):
            first_lp = next(((F, a) for F, a, _ in _lp_candidates(domain, P, y)), None)
            assert check_LP(domain, 1, P, y).holds_with == first_lp
            if len(fiber(domain, P, y)) == 1:
                assert check_LP(domain, 3, P, y).holds_with == first_lp
