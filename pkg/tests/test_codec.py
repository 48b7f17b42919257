import math

import pytest
from hypothesis import given, settings, strategies as st

from graphsim import codec
from graphsim.codec import (
    CommonModel,
    CommonStructure,
    TransformPair,
    common_model_length,
    glog,
    gloglog,
    log_binomial,
    model_length,
    transform_length,
    universal_int,
)
from graphsim.errors import InvariantError
from graphsim.structures import (
    Biclique,
    Clique,
    Model,
    Star,
    Starclique,
    StructureKind,
)

LOG2_C0 = math.log2(2.865064)


class TestUniversalInt:
    def test_one(self):
        assert universal_int(1) == pytest.approx(LOG2_C0, abs=1e-12)
        assert universal_int(1) == pytest.approx(1.5186, abs=1e-4)

    def test_sixteen(self):
        # iterated logs 4, 2, 1 all positive
        assert universal_int(16) == pytest.approx(LOG2_C0 + 7.0, abs=1e-12)

    def test_two_pow_sixteen(self):
        assert universal_int(2 ** 16) == pytest.approx(LOG2_C0 + 23.0, abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            universal_int(0)

    @given(st.integers(1, 10 ** 6))
    def test_monotone(self, k):
        assert universal_int(k + 1) >= universal_int(k)


class TestLogBinomial:
    def test_k_zero(self):
        assert log_binomial(5, 0) == 0.0

    def test_small(self):
        assert log_binomial(4, 2) == pytest.approx(math.log2(6), abs=1e-12)

    def test_against_big_integer(self):
        assert log_binomial(100, 10) == pytest.approx(
            math.log2(math.comb(100, 10)), rel=1e-12
        )

    def test_domain_errors(self):
        for n, k in ((3, 4), (-1, 0), (3, -1)):
            with pytest.raises(ValueError):
                log_binomial(n, k)

    @given(st.integers(0, 1000), st.data())
    @settings(max_examples=200)
    def test_oracle_relative_error(self, n, data):
        k = data.draw(st.integers(0, n))
        exact = math.log2(math.comb(n, k)) if 0 < k < n else 0.0
        if exact == 0.0:
            assert log_binomial(n, k) == pytest.approx(0.0, abs=1e-9)
        else:
            assert log_binomial(n, k) == pytest.approx(exact, rel=1e-9)


class TestZeroGuards:
    def test_glog(self):
        assert glog(0) == 0.0
        assert glog(0.5) == 0.0
        assert glog(1) == 0.0
        assert glog(8) == 3.0

    def test_gloglog_composed(self):
        assert gloglog(2) == 0.0  # inner log = 1, outer guarded to 0
        assert gloglog(1) == 0.0
        assert gloglog(16) == 2.0


class TestCliqueLength:
    def test_full_clique_with_ids(self):
        s = Clique(frozenset(range(10)), 45)
        expected = universal_int(10) + 1 + gloglog(22) + math.log2(math.comb(100, 10))
        assert codec.clique_length(s, 100, with_ids=True) == pytest.approx(expected)

    def test_without_ids_drops_binomial(self):
        s = Clique(frozenset(range(10)), 45)
        with_ids = codec.clique_length(s, 100, True)
        without = codec.clique_length(s, 100, False)
        assert with_ids - without == pytest.approx(math.log2(math.comb(100, 10)))

    def test_min_of_edges_and_nonedges(self):
        s = Clique(frozenset(range(10)), 40)  # min{40, 5} = 5
        base = Clique(frozenset(range(10)), 45)
        diff = codec.clique_length(s, 100, False) - codec.clique_length(base, 100, False)
        assert diff == pytest.approx(math.log2(5))

    def test_bound_violation(self):
        with pytest.raises(InvariantError):
            Clique(frozenset(range(4)), 7)


class TestStarLength:
    def test_pure_star_with_ids(self):
        s = Star(0, frozenset(range(1, 6)), 0)
        expected = (
            universal_int(5)
            + gloglog(10)  # x* = 5*4/2 spoke pairs
            + math.log2(100)
            + math.log2(math.comb(99, 5))
        )
        assert codec.star_length(s, 100, True) == pytest.approx(expected)

    def test_without_ids(self):
        s = Star(0, frozenset(range(1, 6)), 0)
        assert codec.star_length(s, 100, False) == pytest.approx(
            universal_int(5) + gloglog(10)
        )

    def test_spoke_edges_term(self):
        s = Star(0, frozenset(range(1, 10)), 3)
        base = Star(0, frozenset(range(1, 10)), 1)
        diff = codec.star_length(s, 100, False) - codec.star_length(base, 100, False)
        assert diff == pytest.approx(math.log2(3))

    def test_bound_violation(self):
        with pytest.raises(InvariantError):
            Star(0, frozenset({1, 2}), 2)


class TestBicliqueLength:
    def perfect(self):
        return Biclique(frozenset(range(3)), frozenset(range(3, 8)), 0, 0, 15)

    def test_perfect_biclique_with_ids(self):
        s = self.perfect()
        expected = (
            universal_int(8)
            + math.log2(8)
            + gloglog(3)   # m*_L = 3
            + gloglog(10)  # m*_R = 10
            + gloglog(15)  # m*_A = 15, and log(m*_A - m_A) = log 0 = 0
            + math.log2(math.comb(50, 3))
            + math.log2(math.comb(47, 5))
        )
        assert codec.biclique_length(s, 50, True) == pytest.approx(expected)

    def test_starclique_swaps_left_term(self):
        b = self.perfect()
        sc = Starclique(b.left, b.right, 0, 0, 15)
        # m_L = 0 becomes mbar_L = 3, adding log2(3) over the biclique score
        diff = codec.starclique_length(sc, 50, False) - codec.biclique_length(
            b, 50, False
        )
        assert diff == pytest.approx(math.log2(3))

    def test_cross_bound_violation(self):
        with pytest.raises(InvariantError):
            Biclique(frozenset({0, 1}), frozenset({2, 3}), 0, 0, 5)


class TestModelLength:
    def test_empty_model(self):
        value = model_length(Model(13579, 37448, []))
        expected = universal_int(13580) + universal_int(37449) + universal_int(1)
        assert value == pytest.approx(expected)  # log C(3,3) = 0

    def test_single_structure_type_term_zero(self):
        s = Clique(frozenset(range(10)), 45)
        m = Model(100, 45, [s])
        expected = (
            universal_int(101) + universal_int(46) + universal_int(2)
            + log_binomial(4, 3) + codec.clique_length(s, 100, True)
        )
        assert model_length(m) == pytest.approx(expected)

    def test_two_kinds_one_bit_each(self):
        structures = [
            Clique(frozenset(range(10)), 45),
            Clique(frozenset(range(10, 20)), 45),
            Star(30, frozenset(range(31, 40)), 0),
            Star(40, frozenset(range(41, 50)), 0),
        ]
        m = Model(100, 108, structures)
        per_structure = sum(codec.structure_length(s, 100, True) for s in structures)
        expected = (
            universal_int(101) + universal_int(109) + universal_int(5)
            + log_binomial(7, 3) + 4.0 + per_structure
        )
        assert model_length(m) == pytest.approx(expected)

    def test_order_invariance(self):
        structures = [
            Clique(frozenset(range(10)), 40),
            Star(30, frozenset(range(31, 40)), 2),
            Clique(frozenset(range(15, 25)), 41),
        ]
        m1 = Model(100, 200, structures)
        m2 = Model(100, 200, structures[::-1])
        assert model_length(m1) == pytest.approx(model_length(m2))


class TestCommonModelLength:
    def test_empty_common_model(self):
        cm = CommonModel(10, 10, 20, 20, [])
        expected = (
            universal_int(11) + universal_int(1) + universal_int(21)
            + universal_int(1) + 1 + universal_int(1)
        )
        assert common_model_length(cm) == pytest.approx(expected)

    def test_header_substitution(self):
        cm = CommonModel(100, 60, 500, 300, [])
        expected = (
            universal_int(101) + universal_int(41) + universal_int(501)
            + universal_int(201) + 1 + universal_int(1)
        )
        assert common_model_length(cm) == pytest.approx(expected)

    def test_shared_clique_reconstitutes_at_n1(self):
        cs = CommonStructure(StructureKind.CLIQUE, (0.1,), (1.0,))
        cm = CommonModel(100, 100, 45, 45, [cs])
        nodes, edges = cs.reconstitute(100)
        assert nodes == (10,) and edges == (45,)
        expected = (
            universal_int(101) + universal_int(1) + universal_int(46)
            + universal_int(1) + 1 + universal_int(2) + log_binomial(4, 3)
            + codec.clique_length_counts(10, 45)  # no ID terms
        )
        assert common_model_length(cm) == pytest.approx(expected)

    def test_swapped_inputs_rejected(self):
        with pytest.raises(InvariantError):
            CommonModel(5, 10, 3, 3, [])


class TestTransformLength:
    def test_empty_transform(self):
        tp = TransformPair(10, 10)
        assert transform_length(tp) == pytest.approx(2 * universal_int(1))

    def test_delta_terms_and_direction_count(self):
        tp = TransformPair(100, 80, deltas=[(2, -3)], parities=[(0, 0)])
        expected = (
            universal_int(3) + universal_int(4) + math.log2(2)
            + 2 * universal_int(1)
        )
        assert transform_length(tp) == pytest.approx(expected)

    def test_single_unmatched_star(self):
        s = Star(0, frozenset(range(1, 10)), 0)
        tp = TransformPair(100, 80, unmatched_1=[s])
        expected = (
            universal_int(2) + log_binomial(4, 3)
            + codec.star_length(s, 100, with_ids=False)
            + universal_int(1)
        )
        assert transform_length(tp, with_ids=False) == pytest.approx(expected)

    def test_with_ids_at_each_side_n(self):
        s1 = Star(0, frozenset(range(1, 10)), 0)
        s2 = Clique(frozenset(range(12)), 60)
        tp = TransformPair(100, 80, unmatched_1=[s1], unmatched_2=[s2])
        with_ids = transform_length(tp, with_ids=True)
        without = transform_length(tp, with_ids=False)
        id_terms = (
            codec.star_length(s1, 100, True) - codec.star_length(s1, 100, False)
            + codec.clique_length(s2, 80, True) - codec.clique_length(s2, 80, False)
        )
        assert with_ids - without == pytest.approx(id_terms)


# ---------------------------------------------------------------------------
# Property suite over randomized structures
# ---------------------------------------------------------------------------


@st.composite
def random_structure(draw):
    kind = draw(st.sampled_from(list(StructureKind)))
    if kind is StructureKind.CLIQUE:
        n_s = draw(st.integers(1, 60))
        m_s = draw(st.integers(0, n_s * (n_s - 1) // 2))
        return Clique(frozenset(range(n_s)), m_s)
    if kind is StructureKind.STAR:
        spokes = draw(st.integers(1, 60))
        x_s = draw(st.integers(0, spokes * (spokes - 1) // 2))
        return Star(100, frozenset(range(spokes)), x_s)
    n_l = draw(st.integers(1, 25))
    n_r = draw(st.integers(1, 25))
    m_l = draw(st.integers(0, n_l * (n_l - 1) // 2))
    m_r = draw(st.integers(0, n_r * (n_r - 1) // 2))
    m_a = draw(st.integers(0, n_l * n_r))
    cls = Starclique if kind is StructureKind.STARCLIQUE else Biclique
    return cls(frozenset(range(n_l)), frozenset(range(100, 100 + n_r)), m_l, m_r, m_a)


@given(random_structure())
@settings(max_examples=300)
def test_structure_lengths_finite_nonnegative(s):
    n = 200
    with_ids = codec.structure_length(s, n, True)
    without = codec.structure_length(s, n, False)
    assert math.isfinite(with_ids) and math.isfinite(without)
    assert without >= 0.0
    assert with_ids >= without
