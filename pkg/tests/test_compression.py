"""Compressed multiplicities: closed forms, Hom oracle, structure."""

from __future__ import annotations

import pytest

from gridpersist.compression import (
    ARROW,
    ONE_SOURCE_TWO_SINKS,
    POINT,
    TWO_SOURCES_ONE_SINK,
    TWO_SOURCES_TWO_SINKS,
    QuiverRep,
    almost_split_fixtures,
    classify_ss,
    compressed_multiplicity_function,
    hom_dim,
    restrict,
    ss_compressed_multiplicity,
    ss_interval_rep,
    ss_quiver_vertices,
    ss_restrict,
)
from gridpersist.ffmat import GF2, FFMatrix, FieldSpec, ShapeError
from gridpersist.generators import example_module, make_rng, random_interval_decomposable, random_module
from gridpersist.grid import (
    Grid,
    direct_sum,
    interval_module,
    path_map_table,
    rank_invariant,
)
from gridpersist.intervals import Interval, enumerate_intervals, leq
from gridpersist.mobius import zeta_act
from oracles import hom_multiplicity

iv = Interval.from_string


class TestClassify:
    def test_point(self):
        s = classify_ss(iv("1..1:[2,2]"))
        assert s.kind == POINT and s.src == s.dst == (1, 2)

    def test_single_row_arrow(self):
        s = classify_ss(iv("2..2:[1,3]"))
        assert s.kind == ARROW and s.src == (2, 1) and s.dst == (2, 3)

    def test_tall_rectangle_arrow(self):
        s = classify_ss(iv("1..2:[2,3];[2,3]"))
        assert s.kind == ARROW and s.src == (1, 2) and s.dst == (2, 3)

    def test_two_sources_one_sink(self):
        s = classify_ss(iv("1..2:[2,3];[1,3]"))
        assert s.kind == TWO_SOURCES_ONE_SINK
        assert (s.s1, s.s2, s.t2) == ((1, 2), (2, 1), (2, 3))
        assert s.t1 is None

    def test_one_source_two_sinks(self):
        s = classify_ss(iv("1..2:[1,3];[1,2]"))
        assert s.kind == ONE_SOURCE_TWO_SINKS
        assert (s.s1, s.t1, s.t2) == ((1, 1), (1, 3), (2, 2))
        assert s.s2 is None

    def test_two_sources_two_sinks(self):
        s = classify_ss(iv("1..2:[2,3];[1,2]"))
        assert s.kind == TWO_SOURCES_TWO_SINKS
        assert (s.s1, s.s2, s.t1, s.t2) == ((1, 2), (2, 1), (1, 3), (2, 2))

    def test_three_rows_rejected(self):
        with pytest.raises(ValueError):
            classify_ss(Interval(1, 3, ((2, 2), (1, 2), (1, 1))))


# Nonzero compressed multiplicities of the worked 2 x 3 example, frozen
# from the independent Hom-dimension computation.  All other intervals
# give 0; note in particular 1..2:[2,3];[1,2] gives 0.
EXAMPLE_NONZERO = {
    "1..1:[2,2]": 1,
    "1..1:[2,3]": 1,
    "1..1:[3,3]": 1,
    "1..2:[2,2];[2,2]": 1,
    "1..2:[2,3];[1,3]": 1,
    "1..2:[2,3];[2,2]": 1,
    "1..2:[2,3];[2,3]": 1,
    "1..2:[3,3];[1,3]": 1,
    "1..2:[3,3];[2,3]": 1,
    "1..2:[3,3];[3,3]": 1,
    "2..2:[1,1]": 1,
    "2..2:[1,2]": 1,
    "2..2:[1,3]": 1,
    "2..2:[2,2]": 2,
    "2..2:[2,3]": 1,
    "2..2:[3,3]": 1,
}


class TestWorkedExample:
    def test_all_values(self):
        f = compressed_multiplicity_function(example_module())
        got = {I.to_string(): v for I, v in f.items() if v}
        assert got == EXAMPLE_NONZERO

    def test_single_interval_entry_point(self):
        m = example_module()
        table = path_map_table(m)
        assert ss_compressed_multiplicity(m, table, iv("2..2:[2,2]")) == 2
        assert ss_compressed_multiplicity(m, table, iv("1..2:[2,3];[1,2]")) == 0

    def test_thread_count_does_not_change_values(self):
        m = example_module()
        assert compressed_multiplicity_function(m, threads=4) == compressed_multiplicity_function(m)


class TestAgainstHomOracle:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_random_modules(self, p):
        rng = make_rng(200 + p)
        for _ in range(6):
            m = random_module(4, 3, FieldSpec(p), rng)
            table = path_map_table(m)
            f = compressed_multiplicity_function(m)
            for I in enumerate_intervals(2, 4):
                assert f[I] == hom_multiplicity(m, table, I), I.to_string()

    def test_each_shape_covered(self):
        kinds = {classify_ss(I).kind for I in enumerate_intervals(2, 4)}
        assert kinds == {POINT, ARROW, TWO_SOURCES_ONE_SINK, ONE_SOURCE_TWO_SINKS, TWO_SOURCES_TWO_SINKS}


class TestStructuralProperties:
    def test_indicator_on_interval_modules(self):
        # multiplicity of I in the module of J is 1 exactly when I <= J
        grid = Grid(2, 3)
        intervals = enumerate_intervals(2, 3)
        for J in intervals:
            f = compressed_multiplicity_function(interval_module(grid, J, FieldSpec(3)))
            for I in intervals:
                assert f[I] == (1 if leq(I, J) else 0)

    def test_additive_under_direct_sum(self):
        rng = make_rng(77)
        a = random_module(5, 2, GF2, rng)
        b = random_module(5, 3, GF2, rng)
        fa = compressed_multiplicity_function(a)
        fb = compressed_multiplicity_function(b)
        fs = compressed_multiplicity_function(direct_sum(a, b))
        assert all(fs[I] == fa[I] + fb[I] for I in fs)

    def test_counts_weakly_larger_intervals(self):
        # on a decomposable module the value at I is the number of
        # summands J with I <= J; zeta_act turns multiplicities into that
        rng = make_rng(31)
        for trial in range(10):
            m, mult = random_interval_decomposable(2, 4, 4, FieldSpec(3), rng)
            f = compressed_multiplicity_function(m)
            assert f == zeta_act(mult, 2, 4)

    def test_rectangles_match_rank_invariant(self):
        rng = make_rng(13)
        m = random_module(5, 3, FieldSpec(5), rng)
        ranks = rank_invariant(m)
        f = compressed_multiplicity_function(m)
        for I in enumerate_intervals(2, 5):
            if I.is_rectangle():
                shape = classify_ss(I)
                assert f[I] == ranks[(shape.src, shape.dst)]

    def test_height_three_rejected(self):
        from gridpersist.grid import PersistenceModule

        tall = PersistenceModule(Grid(3, 1), GF2, {(1, 1): 0, (2, 1): 0, (3, 1): 0})
        with pytest.raises(ValueError):
            compressed_multiplicity_function(tall)
        with pytest.raises(ValueError):
            ss_compressed_multiplicity(tall, path_map_table(tall), iv("1..1:[1,1]"))

    def test_interval_outside_grid_rejected(self):
        m = example_module()
        with pytest.raises(ValueError):
            ss_compressed_multiplicity(m, path_map_table(m), iv("1..1:[4,4]"))


class TestRestriction:
    def test_uses_path_maps(self):
        m = example_module()
        table = path_map_table(m)
        rep = restrict(m, table, [(1, 2), (2, 3)], [((1, 2), (2, 3))])
        assert rep.dims == (1, 1)
        assert rep.mats[0] == table[((1, 2), (2, 3))]
        assert rep.labels == ((1, 2), (2, 3))

    def test_duplicate_vertex_rejected(self):
        m = example_module()
        with pytest.raises(ValueError):
            restrict(m, path_map_table(m), [(1, 1), (1, 1)], [])

    def test_arrow_outside_vertex_set_rejected(self):
        m = example_module()
        with pytest.raises(ValueError):
            restrict(m, path_map_table(m), [(1, 1)], [((1, 1), (1, 2))])

    def test_decreasing_arrow_rejected(self):
        m = example_module()
        with pytest.raises(ValueError):
            restrict(m, path_map_table(m), [(1, 1), (1, 2)], [((1, 2), (1, 1))])

    def test_ss_restrict_orders_roles(self):
        m = example_module()
        table = path_map_table(m)
        I = iv("1..2:[2,3];[1,2]")
        rep = ss_restrict(m, table, I)
        assert rep.labels == ((1, 2), (2, 1), (1, 3), (2, 2))
        assert rep.dims == (1, 1, 1, 2)


class TestHomDim:
    def test_interval_rep_endomorphisms(self):
        for text in ["1..1:[1,1]", "1..1:[1,2]", "1..2:[1,2];[1,2]",
                     "1..2:[2,3];[1,3]", "1..2:[1,3];[1,2]", "1..2:[2,3];[1,2]"]:
            rep = ss_interval_rep(classify_ss(iv(text)), 2)
            assert hom_dim(rep, rep) == 1

    def test_arrow_quiver_known_values(self):
        # reps of . -> . : the full rep surjects onto the simple at the
        # source and the simple at the sink embeds into it, never the
        # other way around
        p = 3
        one = FFMatrix.identity(1, p)
        full = QuiverRep(p, (1, 1), ((0, 1),), (one,))
        left = QuiverRep(p, (1, 0), ((0, 1),), (FFMatrix.zeros(0, 1, p),))
        right = QuiverRep(p, (0, 1), ((0, 1),), (FFMatrix.zeros(1, 0, p),))
        assert hom_dim(full, full) == 1
        assert hom_dim(full, left) == 1
        assert hom_dim(left, full) == 0
        assert hom_dim(right, left) == 0
        assert hom_dim(full, right) == 0
        assert hom_dim(right, full) == 1

    def test_quiver_mismatch_rejected(self):
        p = 2
        one = FFMatrix.identity(1, p)
        a = QuiverRep(p, (1, 1), ((0, 1),), (one,))
        b = QuiverRep(p, (1, 1), (), ())
        with pytest.raises(ShapeError):
            hom_dim(a, b)

    def test_modulus_mismatch_rejected(self):
        a = QuiverRep(2, (1,), (), ())
        b = QuiverRep(3, (1,), (), ())
        with pytest.raises(ShapeError):
            hom_dim(a, b)


class TestAlmostSplitFixtures:
    def test_shapes(self):
        shape = classify_ss(iv("1..2:[2,3];[1,2]"))
        B, C = almost_split_fixtures(shape, 5)
        assert B.dims == (2, 1, 1, 1)
        assert C.dims == (1, 0, 0, 0)
        assert [m.tolist() for m in B.mats] == [[[1]], [[1, 0]], [[0, 1]]]

    def test_only_for_two_sources_two_sinks(self):
        with pytest.raises(ValueError):
            almost_split_fixtures(classify_ss(iv("1..1:[1,1]")), 2)

    def test_sequence_dimensions_balance(self):
        # middle term dims = interval dims + end term dims, vertexwise
        shape = classify_ss(iv("1..2:[2,3];[1,2]"))
        B, C = almost_split_fixtures(shape, 2)
        Ip = ss_interval_rep(shape, 2)
        assert B.dims == tuple(i + c for i, c in zip(Ip.dims, C.dims))

    def test_interval_maps_into_middle_term(self):
        # the inclusion plus the factoring of the corner give a
        # 2-dimensional hom space; nothing maps back onto the interval
        shape = classify_ss(iv("1..2:[2,3];[1,2]"))
        B, C = almost_split_fixtures(shape, 2)
        Ip = ss_interval_rep(shape, 2)
        assert hom_dim(Ip, B) == 2
        assert hom_dim(B, Ip) == 0
        assert hom_dim(C, Ip) == 0
