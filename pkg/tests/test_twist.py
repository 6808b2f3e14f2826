import pytest
from hypothesis import given, settings, strategies as st

from sphtwist.artin import parse_word
from sphtwist.errors import AmbiguousAction, InsufficientWindow, InvalidInput, UnsupportedDiagram
from sphtwist.mesh import SphericalSequenceSpec, Vertex, build_mesh, u_stat
from sphtwist.twist import (
    QuiverAutomorphism,
    a3_sequences,
    act_on_class,
    apply_word,
    builtin_d4_actions,
    central_member_action,
    check_relation,
    commutes_with_rules,
    compose,
    d4_sequences,
    derive_automorphism,
    detect_exceptional,
    invert,
    orbit_sph,
    sph_class,
    twist_on_member,
    twist_power_on_member,
    verify_relation,
    word_action,
)

V = Vertex
D4 = build_mesh("D4", (-6, 9))
A3 = build_mesh("A3", (-9, 8))
T_E, T_EP = builtin_d4_actions(D4)
D4_GENS = {1: T_E, 2: T_EP}
A3_E, A3_EP = a3_sequences()
A3_TE = derive_automorphism(A3, A3_E)
A3_TEP = derive_automorphism(A3, A3_EP)
A3_GENS = {1: A3_TE, 2: A3_TEP}


def rel(gens, lhs, rhs):
    return verify_relation(parse_word(lhs), parse_word(rhs), gens)


def test_builtin_table():
    assert T_E(V(2, 0)) == V(3, 1)
    assert T_EP(V(3, 5)) == V(1, 6)
    assert T_E(V(0, -2)) == V(0, -1)
    assert T_E(V(1, 4)) == V(1, 5) and T_EP(V(1, 4)) == V(3, 5)
    with pytest.raises(UnsupportedDiagram):
        builtin_d4_actions(A3)
    with pytest.raises(InsufficientWindow):
        T_E(V(1, 9))


def test_derived_d4_matches_table():
    E, Ep = d4_sequences()
    assert derive_automorphism(D4, E).vertex_map == T_E.vertex_map
    assert derive_automorphism(D4, Ep).vertex_map == T_EP.vertex_map


def test_derived_a3_actions():
    for s in range(-9, 8):
        if V(1, s) in A3_TE:
            assert A3_TE(V(1, s)) == V(-1, s + 1)
        if V(0, s) in A3_TE:
            assert A3_TE(V(0, s)) == V(0, s + 1)
    aut, rule = derive_automorphism(A3, A3_EP, return_rule=True)
    assert aut.vertex_map == A3_TEP.vertex_map
    assert rule.t_offset == 2


def test_actions_commute_with_serre_and_shift():
    for aut in (T_E, T_EP, A3_TE, A3_TEP):
        assert commutes_with_rules(aut) == []
    bad = QuiverAutomorphism(D4, {V(1, 0): V(2, 0), V(1, 2): V(1, 2)}, "bad")
    assert commutes_with_rules(bad)


def test_degenerate_twist_has_no_action():
    # a 0-spherical object on A1 gives no invertible twist
    a1 = build_mesh("A1", (-4, 4))
    with pytest.raises(InvalidInput):
        derive_automorphism(a1, SphericalSequenceSpec((V(0, 0),), (0,), "P"))


def test_ambiguity_is_reported(monkeypatch):
    # with a blind Euler form both automorphisms fixing row 1 survive
    import sphtwist.twist as twist

    monkeypatch.setattr(twist, "euler_form", lambda model, x, y: 0)
    E, _ = d4_sequences()
    with pytest.raises(AmbiguousAction) as info:
        derive_automorphism(D4, E)
    assert len(info.value.candidates) == 2


def test_window_too_small_for_derivation():
    with pytest.raises(InsufficientWindow):
        derive_automorphism(build_mesh("A3", (0, 1)), A3_E)


def test_compose_and_invert():
    ident = compose(T_E, invert(T_E))
    assert ident.domain and all(ident(v) == v for v in ident.domain)
    chain = compose(T_E, compose(T_EP, T_E))
    assert chain(V(1, 0)) == V(2, 3)
    assert compose(T_EP, compose(T_E, T_EP))(V(1, 0)) == V(2, 3)
    both = compose(A3_TE, A3_TEP)
    other = compose(A3_TEP, A3_TE)
    assert both.vertex_map == other.vertex_map
    with pytest.raises(InvalidInput):
        compose(T_E, A3_TE)
    with pytest.raises(InvalidInput):
        invert(QuiverAutomorphism(D4, {V(0, 0): V(1, 0), V(0, 1): V(1, 0)}))


def test_d4_relations():
    assert rel(D4_GENS, "s1 s2 s1", "s2 s1 s2")
    assert rel(D4_GENS, "s1^2", "s2^2")
    assert not rel(D4_GENS, "s1", "s2")
    for a in range(1, 7):
        assert not rel(D4_GENS, f"s1^{a}", "e")
    six = word_action(parse_word("s1^6"), D4_GENS)
    for v in six.domain:
        if v.row == 2:
            assert six(v) == D4.shift(v, 2)
    # (T_E T_E')^3 is the double shift on every vertex
    cube = word_action(parse_word("(s1 s2)^3"), D4_GENS)
    assert cube.domain and all(cube(v) == D4.shift(v, 2) for v in cube.domain)


def test_a3_relations():
    assert rel(A3_GENS, "s1 s2", "s2 s1")
    assert rel(A3_GENS, "s1^2", "s2^2")
    assert rel(A3_GENS, "(s1 s2^-1)^2", "e")
    assert not rel(A3_GENS, "s1 s2^-1", "e")
    assert A3_TE(A3_EP.members[0]) == A3.shift(A3_EP.members[1], 1) == V(-1, 1)


def test_relation_check_domain_guard():
    small = build_mesh("D4", (0, 2))
    gens = dict(zip((1, 2), builtin_d4_actions(small)))
    with pytest.raises(InsufficientWindow):
        check_relation(parse_word("s1^6"), parse_word("e"), gens)
    result = check_relation(parse_word("s1"), parse_word("s2"), D4_GENS)
    assert not result and result.mismatches
    assert apply_word(parse_word("s1^40"), D4_GENS, V(1, 0)) is None
    with pytest.raises(InvalidInput):
        apply_word(parse_word("s3"), D4_GENS, V(1, 0))


def test_member_formulas():
    spec = SphericalSequenceSpec(("a", "b", "c"), (1, 1, 0))
    assert twist_on_member(spec, 1) == (0, 0)
    for m in (0, 1, 2, 5):
        assert twist_on_member(SphericalSequenceSpec(("x",), (m,)), 0) == (0, 1 - m)
    assert twist_power_on_member(SphericalSequenceSpec(("x", "y"), (1, 0)), 0, 2) == (0, 1)
    with pytest.raises(InvalidInput):
        twist_on_member(spec, 3)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=6), st.data())
def test_full_cycle_shift(degrees, data):
    spec = SphericalSequenceSpec(tuple(range(len(degrees))), tuple(degrees))
    i = data.draw(st.integers(0, len(degrees) - 1))
    assert twist_power_on_member(spec, i, spec.length) == (i, spec.length - spec.sphericity)


def test_member_formula_matches_d4_vertices():
    E, _ = d4_sequences()
    for i, e in enumerate(E.members):
        j, s = twist_on_member(E, i)
        assert T_E(e) == D4.shift(E.members[j], s)


def test_central_member_action():
    assert central_member_action(1, (1, 1, 0), 0) == (3, 0, 2)
    # r = 3 with zero degrees: index -3, shift +5
    for k in (1, 2, 3):
        power, idx, shift = central_member_action(3, (0,) * k, 0)
        assert (power, idx, shift) == (3, (-3) % k, 5)
    with pytest.raises(InvalidInput):
        central_member_action(4, (0,), 0)


def test_central_action_on_d4_members():
    E, Ep = d4_sequences()
    for spec in (E, Ep):
        for i, e in enumerate(spec.members):
            _, j, s = central_member_action(1, spec.degrees, i)
            assert apply_word(parse_word("(s1 s2)^3"), D4_GENS, e) == D4.shift(spec.members[j], s)


def test_sph_class():
    E, Ep = d4_sequences()
    cE = sph_class(E, D4)
    assert {v.row for v in cE.key} == {1} and len(cE.key) == 3
    assert sph_class([D4.shift(v, 1) for v in E.members], D4) == cE
    assert {v.row for v in act_on_class(T_E, sph_class(Ep, D4)).key} == {3}
    with pytest.raises(InvalidInput):
        sph_class([], D4)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(D4.vertices), st.integers(-4, 4))
def test_class_is_shift_invariant(v, n):
    assert sph_class([v], D4) == sph_class([D4.shift(v, n)], D4)


def test_orbits():
    E, Ep = d4_sequences()
    seeds = [sph_class(E, D4), sph_class(Ep, D4)]
    gens = {"T_E": T_E, "T_E'": T_EP}
    assert orbit_sph(gens, seeds, 0).nodes == seeds
    orbit = orbit_sph(gens, seeds, 4)
    assert len(orbit.nodes) == 3 and orbit.group_order == 6
    assert {v.row for n in orbit.nodes for v in n.key} == {1, 2, 3}
    # class statistics stay consistent along the orbit
    for node in orbit.nodes:
        assert u_stat(D4, E, list(node.key)) in (3, 6)
    assert "induced permutation group order: 6" in orbit.to_text()
    assert orbit.to_dict()["group_order"] == 6
    a3 = orbit_sph({"T_E": A3_TE, "T_E'": A3_TEP}, [sph_class(A3_E, A3), sph_class(A3_EP, A3)], 3)
    assert len(a3.nodes) == 2
    with pytest.raises(InvalidInput):
        orbit_sph(gens, seeds, -1)


def test_detect_exceptional():
    E, Ep = d4_sequences()
    assert detect_exceptional(D4, E, Ep, "A", (T_E, T_EP))
    assert detect_exceptional(D4, E, Ep, "A")
    assert detect_exceptional(A3, A3_E, A3_EP, "B")
    assert not detect_exceptional(D4, E, Ep, "B", (T_E, T_EP))
    with pytest.raises(InvalidInput):
        detect_exceptional(D4, E, E, "A", (T_E, T_EP))
    with pytest.raises(InvalidInput):
        detect_exceptional(D4, E, Ep, "C")
    with pytest.raises(InsufficientWindow):
        detect_exceptional(build_mesh("A3", (0, 1)), A3_E, A3_EP, "B")
