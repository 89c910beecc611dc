"""Euler form, validation, canonical keys, path evaluation."""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from qsing.core import (
    Arrow,
    MarkedQuiverSetting,
    Representation,
    canonical_key,
    euler_form,
    euler_matrix,
    evaluate_path,
    strip_degenerate_marks,
    strongly_connected,
    unit_vector,
    validate,
)
from qsing.errors import CapacityError, CompositionError, DimensionMismatchError

from conftest import random_setting


def brute_force_euler(s: MarkedQuiverSetting, beta, gamma) -> int:
    """Independent oracle: assemble the matrix entrywise and contract."""
    total = 0
    for i in range(s.k):
        for j in range(s.k):
            entry = (1 if i == j else 0) - s.arrows[i][j]
            if i == j:
                entry -= s.marked_loops[i]
            total += beta[i] * entry * gamma[j]
    return total


class TestEulerForm:
    def test_conifold_value(self, conifold):
        # oracle first: direct matrix arithmetic
        assert brute_force_euler(conifold, (1, 1), (1, 1)) == -2
        assert euler_form(conifold, (1, 1), (1, 1)) == -2
        # cross-check: the central dimension 1 - chi is 3
        assert 1 - euler_form(conifold, (1, 1), (1, 1)) == 3

    def test_two_loops_dim_two(self):
        s = MarkedQuiverSetting.make([2], [[2]])
        assert euler_form(s, (2,), (2,)) == -4

    def test_zero_vector(self, conifold):
        assert euler_form(conifold, (0, 0), (1, 1)) == 0
        assert euler_form(conifold, (1, 1), (0, 0)) == 0

    def test_marked_loops_count_as_loops(self, quantum_plane_origin):
        # markings are forgotten by the form: one vertex, two marked loops
        assert euler_matrix(quantum_plane_origin) == ((-1,),)
        assert euler_form(quantum_plane_origin, (2,), (2,)) == -4

    def test_length_mismatch(self, conifold):
        with pytest.raises(DimensionMismatchError):
            euler_form(conifold, (1,), (1, 1))

    @given(st.data())
    @hyp_settings(max_examples=60, deadline=None)
    def test_bilinearity(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        s = random_setting(rng, max_k=4)
        vec = st.tuples(*(st.integers(-3, 3) for _ in range(s.k)))
        b1, b2, g = data.draw(vec), data.draw(vec), data.draw(vec)
        lhs = euler_form(s, tuple(x + y for x, y in zip(b1, b2)), g)
        assert lhs == euler_form(s, b1, g) + euler_form(s, b2, g)
        rhs = euler_form(s, g, tuple(x + y for x, y in zip(b1, b2)))
        assert rhs == euler_form(s, g, b1) + euler_form(s, g, b2)

    def test_unit_vector_entries(self):
        rng = random.Random(7)
        for _ in range(25):
            s = random_setting(rng, max_k=4)
            m = euler_matrix(s)
            for i in range(s.k):
                for j in range(s.k):
                    ev_i, ev_j = unit_vector(s.k, i), unit_vector(s.k, j)
                    expected = (1 if i == j else 0) - s.arrows[i][j]
                    if i == j:
                        expected -= s.marked_loops[i]
                    assert euler_form(s, ev_i, ev_j) == expected == m[i][j]

    def test_cycle_rank_identity_all_ones(self):
        # arrows - k + 1 = 1 - chi(alpha, alpha) on strongly connected settings
        rng = random.Random(11)
        checked = 0
        while checked < 40:
            k = rng.randint(1, 4)
            arrows = [[rng.randint(0, 2) for _ in range(k)] for _ in range(k)]
            s = MarkedQuiverSetting.make([1] * k, arrows)
            if not strongly_connected(s):
                continue
            alpha = (1,) * k
            assert 1 - euler_form(s, alpha, alpha) == s.num_arrows - s.k + 1
            checked += 1


class TestValidation:
    def test_conifold_ok(self, conifold):
        assert validate(conifold) == []

    def test_marked_loop_at_dim_one(self):
        s = MarkedQuiverSetting.make([1], [[0]], [1])
        assert any("marked loop requires dim >= 2" in p for p in validate(s))

    def test_zero_dimension(self):
        s = MarkedQuiverSetting.make([0, 1], [[0, 1], [1, 0]])
        assert any("dimension must be >= 1" in p for p in validate(s))

    def test_disconnected_is_a_note(self):
        s = MarkedQuiverSetting.make([1, 1], [[0, 1], [0, 0]])
        problems = validate(s)
        assert problems == ["note: support is not strongly connected"]

    def test_strip_degenerate_marks(self):
        s = MarkedQuiverSetting.make([1, 2], [[0, 1], [1, 0]], [1, 1])
        with pytest.warns(UserWarning):
            cleaned = strip_degenerate_marks(s)
        assert cleaned.marked_loops == (0, 1)

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(ValueError):
            MarkedQuiverSetting.make([1], [[-1]])


class TestCanonicalKey:
    def test_conifold_swap(self, conifold):
        assert canonical_key(conifold) == canonical_key(conifold.permuted([1, 0]))

    def test_mirror_two_vs_three(self):
        # oracle: brute force over the 2 permutations
        s = MarkedQuiverSetting.make([1, 1], [[0, 2], [3, 0]])
        mirror = MarkedQuiverSetting.make([1, 1], [[0, 3], [2, 0]])
        assert mirror in (s.permuted([0, 1]), s.permuted([1, 0]))
        assert canonical_key(s) == canonical_key(mirror)

    def test_different_dims_differ(self):
        a = MarkedQuiverSetting.make([1, 2], [[0, 1], [1, 0]])
        b = MarkedQuiverSetting.make([1, 1], [[0, 1], [1, 0]])
        assert canonical_key(a) != canonical_key(b)

    def test_permutation_invariance_exhaustive_k6(self):
        rng = random.Random(3)
        for k in range(1, 7):
            for _ in range(3):
                s = random_setting(rng, max_k=k)
                while s.k != k:
                    s = random_setting(rng, max_k=k)
                key = canonical_key(s)
                for perm in itertools.permutations(range(k)):
                    assert canonical_key(s.permuted(perm)) == key

    def test_non_isomorphic_same_signature(self):
        # directed triangle vs its opposite with asymmetric multiplicities
        a = MarkedQuiverSetting.make([1, 1, 1], [[0, 2, 0], [0, 0, 1], [1, 0, 0]])
        b = MarkedQuiverSetting.make([1, 1, 1], [[0, 1, 0], [0, 0, 2], [1, 0, 0]])
        iso = any(
            a.permuted(p) == b for p in itertools.permutations(range(3))
        )
        assert (canonical_key(a) == canonical_key(b)) == iso

    def test_capacity_bound(self):
        s = MarkedQuiverSetting.make([1] * 11, [[0] * 11] * 11)
        with pytest.raises(CapacityError):
            canonical_key(s)

    def test_vertex_transitive_large(self):
        # doubled directed 8-cycle: highly symmetric, still fast
        k = 8
        arrows = [[0] * k for _ in range(k)]
        for v in range(k):
            arrows[v][(v + 1) % k] = 2
        s = MarkedQuiverSetting.make([1] * k, arrows)
        key = canonical_key(s)
        rng = random.Random(5)
        for _ in range(5):
            perm = list(range(k))
            rng.shuffle(perm)
            assert canonical_key(s.permuted(perm)) == key


class TestRepresentations:
    def test_scalar_path_product(self, conifold):
        arrows = conifold.arrow_list()
        a0 = arrows[0]  # 0 -> 1
        c0 = arrows[2]  # 1 -> 0
        rep = Representation.from_scalars(conifold, {a0: 2, c0: 3})
        # path: first traverse 0->1 (value 2), then 1->0 (value 3)
        assert evaluate_path(rep, [a0, c0]) == ((Fraction(6),),)

    def test_empty_path_identity(self):
        s = MarkedQuiverSetting.make([2], [[1]])
        rep = Representation.make(s, {Arrow(0, 0, 0): [[1, 2], [3, 4]]})
        assert evaluate_path(rep, [], at=0) == (
            (Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(1)),
        )

    def test_non_composable(self, conifold):
        arrows = conifold.arrow_list()
        with pytest.raises(CompositionError):
            evaluate_path(
                Representation.from_scalars(conifold, {}), [arrows[0], arrows[1]]
            )

    def test_marked_loop_trace_checked(self):
        s = MarkedQuiverSetting.make([2], [[0]], [1])
        marked = Arrow(0, 0, 0, marked=True)
        Representation.make(s, {marked: [[1, 2], [3, -1]]})
        with pytest.raises(ValueError):
            Representation.make(s, {marked: [[1, 0], [0, 1]]})

    def test_shape_mismatch(self, conifold):
        with pytest.raises(DimensionMismatchError):
            Representation.make(conifold, {Arrow(0, 1, 0): [[1, 2]]})


class TestJson:
    def test_round_trip(self, conifold):
        assert MarkedQuiverSetting.from_json(json.loads(conifold.dumps())) == conifold

    @given(st.integers(0, 10**6))
    @hyp_settings(max_examples=40, deadline=None)
    def test_round_trip_random(self, seed):
        s = random_setting(random.Random(seed))
        assert MarkedQuiverSetting.from_json(s.to_json()) == s

    def test_malformed(self):
        with pytest.raises(ValueError):
            MarkedQuiverSetting.from_json({"dims": [1]})
