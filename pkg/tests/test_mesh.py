import pytest
from hypothesis import given, settings, strategies as st

from sphtwist.errors import InsufficientWindow, UnsupportedDiagram
from sphtwist.mesh import (
    SphericalSequenceSpec,
    Vertex,
    build_mesh,
    check_spherical,
    dimension_statistics,
    euler_form,
    graded_hom,
    hom_dim,
    hom_dim_oracle,
    member_a_values,
    parse_vertices,
    path_space_dim,
    u_stat,
)
from sphtwist.twist import a3_sequences, d4_sequences

V = Vertex
D4 = build_mesh("D4", (-6, 9))
A3 = build_mesh("A3", (-9, 8))


def test_d4_small_window_counts():
    m = build_mesh("D4", (-3, 3))
    assert len(m.vertices) == 28
    # three arrows out of each row-0 vertex and one out of each outer vertex, minus boundary
    assert len(m.arrows) == 39
    assert all(w in m for v, w in m.arrows)


def test_d4_arrow_pattern():
    m = build_mesh("D4", (-3, 3))
    assert set(m.successors(V(0, 0))) == {V(1, 0), V(2, 0), V(3, 0)}
    assert m.successors(V(2, 0)) == [V(0, 1)]


def test_a3_degenerate_window():
    m = build_mesh("A3", (0, 0))
    assert len(m.vertices) == 3
    assert m.meshes == []
    assert m.rows == (-1, 0, 1)


def test_unsupported_diagrams():
    for bad in ("E6", "D5", "B2", "A0"):
        with pytest.raises(UnsupportedDiagram):
            build_mesh(bad, (0, 1))
    with pytest.raises(ValueError):
        build_mesh("D4", (2, 1))


def test_serre_and_shift_rules():
    m = build_mesh("D4", (0, 2))
    assert m.serre(V(1, 0)) == V(1, 2)
    assert V(1, 2) in m
    for v in D4.vertices:
        assert D4.serre(v) == V(v.row, v.pos + 2)
        assert D4.shift(v) == V(v.row, v.pos + 3)
    for v in A3.vertices:
        assert A3.serre(v) == V(-v.row, v.pos + 1)
        assert A3.shift(v) == V(-v.row, v.pos + 2)


def test_other_a_n_rules():
    a4 = build_mesh("A4", (0, 3))
    assert a4.rows == (-2, -1, 0, 1)
    # shift is tau^-1 composed with the Serre functor
    for v in a4.vertices:
        assert a4.shift(v) == a4.serre(a4.tau(v, -1))
    a1 = build_mesh("A1", (0, 2))
    assert a1.serre(V(0, 0)) == V(0, 0) and a1.shift(V(0, 0)) == V(0, 1)


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 0), (1, 0), 1), ((1, 0), (2, 1), 1), ((1, 0), (1, 3), 0), ((1, 0), (1, 2), 1), ((0, 0), (0, 1), 2)],
)
def test_d4_hom_examples(x, y, expected):
    assert hom_dim(D4, V(*x), V(*y)) == expected
    assert hom_dim_oracle(D4, V(*x), V(*y)) == expected


def test_a3_oracle_example():
    assert hom_dim_oracle(A3, V(1, -1), V(0, 0)) == 1


def test_hom_outside_window():
    with pytest.raises(InsufficientWindow):
        hom_dim(D4, V(1, 0), V(1, 20))
    with pytest.raises(InsufficientWindow):
        hom_dim_oracle(D4, V(1, -20), V(1, 0))


def test_serre_duality_on_hammock():
    # Hom(x, y) and Hom(y, Sx) have the same dimension
    for x in D4.vertices:
        sx = D4.serre(x)
        if sx not in D4:
            continue
        for y in D4.vertices:
            if D4.time(x) <= D4.time(y) <= D4.time(sx):
                assert hom_dim(D4, x, y) == hom_dim(D4, y, sx)


def test_literal_path_space_agrees_on_short_pairs():
    for model in (build_mesh("D4", (-1, 3)), build_mesh("A3", (-2, 2))):
        for x in model.vertices:
            for y in model.vertices:
                if 0 <= model.time(y) - model.time(x) <= 5:
                    assert path_space_dim(model, x, y) == hom_dim(model, x, y), (x, y)


d4_vertices = st.sampled_from(D4.vertices)
a3_vertices = st.sampled_from(A3.vertices)


@settings(max_examples=200, deadline=None)
@given(d4_vertices, d4_vertices)
def test_serre_invariance_d4(x, y):
    sx, sy = D4.serre(x), D4.serre(y)
    if sx in D4 and sy in D4:
        assert hom_dim(D4, x, y) == hom_dim(D4, sx, sy)


@settings(max_examples=200, deadline=None)
@given(a3_vertices, a3_vertices)
def test_serre_invariance_a3(x, y):
    sx, sy = A3.serre(x), A3.serre(y)
    if sx in A3 and sy in A3:
        assert hom_dim(A3, x, y) == hom_dim(A3, sx, sy)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["D4", "A3", "A4", "A5"]), st.integers(-5, 5), st.integers(-3, 3))
def test_serre_commutes_with_shift(diagram, pos, n):
    m = build_mesh(diagram, (-8, 8))
    for r in m.rows:
        v = V(r, pos)
        assert m.serre(m.shift(v, n)) == m.shift(m.serre(v), n)


def test_spherical_examples():
    E, Ep = d4_sequences()
    report = check_spherical(D4, E)
    assert report.valid and E.sphericity == 2
    assert check_spherical(D4, Ep).valid
    aE, aEp = a3_sequences()
    assert check_spherical(A3, aEp).valid and aEp.sphericity == 2
    assert check_spherical(A3, aE).valid and aE.sphericity == 1


def test_spherical_violation_reported():
    E, _ = d4_sequences()
    bad = SphericalSequenceSpec(E.members, (1, 1, 1))
    report = check_spherical(D4, bad)
    assert not report.valid
    assert any("i=2" in v for v in report.violations)
    assert "INVALID" in report.lines()[0]


def test_spec_invariants():
    with pytest.raises(ValueError):
        SphericalSequenceSpec((), ())
    with pytest.raises(ValueError):
        SphericalSequenceSpec((V(0, 0),), (1, 2))
    with pytest.raises(ValueError):
        SphericalSequenceSpec((V(0, 0), V(0, 1)), (1, 0), sphericity=3)
    s = SphericalSequenceSpec(("a",), (2,))
    assert s.length == 1 and s.sphericity == 2


def test_u_statistics():
    E, Ep = d4_sequences()
    assert u_stat(D4, E, Ep.members) == 3
    assert u_stat(D4, E, E.members) == 6
    assert u_stat(D4, E, []) == 0
    # a formal sum counts with multiplicity
    assert u_stat(D4, E, list(Ep.members) * 2) == 6


def test_graded_hom_and_euler_form():
    assert graded_hom(D4, V(1, 0), V(1, 0)) == {0: 1}
    # E_1[1] is the Serre image of E_0
    assert graded_hom(D4, V(1, 0), V(1, -1)) == {1: 1}
    assert euler_form(D4, V(1, 0), V(1, -1)) == -1
    assert euler_form(D4, V(0, 0), V(0, 1)) == 2
    with pytest.raises(InsufficientWindow):
        graded_hom(D4, V(1, 9), V(1, 9))


def test_length_weighted_totals_balance():
    for model, (E, Ep) in ((D4, d4_sequences()), (A3, a3_sequences())):
        stats = dimension_statistics(model, {"E": E, "E'": Ep}, {"E'": Ep.members})
        assert stats.balance_violations() == []
        assert len(set(member_a_values(model, E, Ep))) == 1
    stats = dimension_statistics(A3, dict(zip(("E", "E'"), a3_sequences())))
    assert stats.a_values[("E", "E'")] == 2 and stats.a_values[("E'", "E")] == 1


def test_vertex_parsing():
    assert Vertex.parse(" ( 1 , -2 ) ") == V(1, -2)
    assert parse_vertices("(1,0) (1,-1)") == [V(1, 0), V(1, -1)]
    with pytest.raises(ValueError):
        Vertex.parse("1,2")
    with pytest.raises(ValueError):
        parse_vertices("(1,0) junk")
    assert str(V(-1, 3)) == "(-1,3)"
