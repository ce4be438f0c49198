from itertools import combinations
from math import comb

import pytest

from blocksig.cff import (
    CffError,
    CffMatrix,
    Construction,
    build,
    build_identity,
    build_ks_rs,
    build_pr_greedy,
    build_sperner,
    canonical_bytes,
    canonical_digest,
    plan,
    pr_code_params,
    sperner_rows,
    verify_cff,
)


class TestPlan:
    @pytest.mark.parametrize("d,n,construction,t,w", [
        (1, 128, Construction.SPERNER, 10, 640),
        (2, 1024, Construction.PR_GREEDY, 62, 10646),
        (10, 256, Construction.KS_RS, 176, 2816),
        (3, 16, Construction.IDENTITY, 16, 16),
        (2, 8, Construction.IDENTITY, 8, 8),
    ])
    def test_examples(self, d, n, construction, t, w):
        p = plan(d, n)
        assert p.construction is construction
        assert (p.t_formula, p.w_formula) == (t, w)

    def test_d_at_least_n_plans_identity(self):
        p = plan(5, 4)
        assert p.construction is Construction.IDENTITY
        assert p.t_formula == 4

    def test_rejects_small_n(self):
        with pytest.raises(CffError):
            plan(1, 1)
        with pytest.raises(CffError):
            plan(0, 8)


class TestSperner:
    def test_n2(self):
        m = build_sperner(2)
        assert m.t == 2
        assert m.rows == ((0,), (1,))

    def test_n6_matches_known_size(self):
        m = build_sperner(6)
        assert m.t == 4
        # six 2-subsets of 4 rows, each column weight 2
        masks = m.column_masks()
        assert all(bin(mask).count("1") == 2 for mask in masks)

    def test_n1024_actual_weight(self):
        m = build_sperner(1024)
        assert m.t == 13
        assert m.weight == 1024 * (13 // 2)  # 6144; planner estimate is 6656

    @pytest.mark.parametrize("n", [2, 3, 6, 10, 20, 35, 70])
    def test_antichain(self, n):
        # no column's row set contains another's
        m = build_sperner(n)
        cols = [frozenset(i for i, row in enumerate(m.rows) if j in row)
                for j in range(n)]
        for a, b in combinations(cols, 2):
            assert not a <= b and not b <= a

    def test_weight_bound(self):
        for n in (2, 7, 33, 100):
            m = build_sperner(n)
            assert m.weight == n * (m.t // 2)
            assert m.weight <= n * m.t / 2

    def test_minimality(self):
        for n in (2, 6, 64, 128):
            t = sperner_rows(n)
            assert comb(t, t // 2) >= n
            assert t == 1 or comb(t - 1, (t - 1) // 2) < n


class TestKsRs:
    def test_2_9(self):
        m = build_ks_rs(2, 9)
        assert m.params["q"] == 3
        assert m.t == 9
        assert all(bin(mask).count("1") == 3 for mask in m.column_masks())
        assert verify_cff(m, 2)

    def test_2_4_parameter_arithmetic(self):
        m = build_ks_rs(2, 4)
        assert m.params["q"] == 3  # smallest prime >= max(2, 3)
        assert m.t == 9
        assert m.n == 4

    def test_10_256(self):
        m = build_ks_rs(10, 256)
        assert m.params["q"] == 17  # smallest prime >= max(16, 11)
        assert m.t == 187
        assert m.weight == 256 * 11

    @pytest.mark.parametrize("d,n", [(2, 9), (2, 25), (3, 20), (4, 30)])
    def test_block_agreement_at_most_one(self, d, n):
        m = build_ks_rs(d, n)
        q = m.params["q"]
        # per-column symbol per row block
        symbols = []
        for j in range(n):
            a, b = divmod(j, q)
            symbols.append([(a * i + b) % q for i in range(d + 1)])
        for u, v in combinations(range(n), 2):
            agreement = sum(1 for i in range(d + 1)
                            if symbols[u][i] == symbols[v][i])
            assert agreement <= 1

    def test_rejects_d1(self):
        with pytest.raises(CffError):
            build_ks_rs(1, 9)


class TestPrGreedy:
    def test_2_16_is_cff(self):
        m = build_pr_greedy(2, 16)
        assert m.params["q"] == 7
        assert verify_cff(m, 2)

    @pytest.mark.parametrize("d,n", [(2, 3), (2, 16), (2, 30), (3, 12)])
    def test_pairwise_agreement_bound(self, d, n):
        m = build_pr_greedy(d, n)
        q, L, a = m.params["q"], m.params["L"], m.params["max_agreement"]
        assert a == (L - 1) // d
        # recover codewords from the row layout
        words = [[None] * L for _ in range(n)]
        for r, row in enumerate(m.rows):
            pos, sym = divmod(r, q)
            for j in row:
                words[j][pos] = sym
        for u, v in combinations(range(n), 2):
            agreement = sum(1 for p in range(L) if words[u][p] == words[v][p])
            assert agreement <= a

    def test_length_bound_is_minimal(self):
        q, L, a = pr_code_params(2, 16)
        assert q == 7
        # L-1 must fail the expected-bad-pairs bound
        if L > 1:
            from blocksig.cff import _binomial_tail_numerators
            prev_a = (L - 2) // 2
            tails = _binomial_tail_numerators(L - 1, q)
            assert comb(16, 2) * tails[L - 1][prev_a + 1] >= q ** (L - 1)


class TestBuild:
    def test_sperner_route(self):
        m = build(1, 6)
        assert m.construction is Construction.SPERNER
        assert m.t == 4

    def test_identity_route(self):
        m = build(5, 4)
        assert m.construction is Construction.IDENTITY
        assert m.rows == tuple((j,) for j in range(4))

    def test_planner_tie_prefers_identity(self):
        # at (2, 9) the identity and the RS matrix tie at t = 9;
        # the smaller weight wins
        m = build(2, 9)
        assert m.construction is Construction.IDENTITY

    def test_pr_plan_falls_back_to_ks(self):
        # greedy-code overhead makes its realized t worse than RS here
        m = build(2, 1024)
        assert m.construction is Construction.KS_RS
        assert m.t == 111

    @pytest.mark.parametrize("d,n", [(1, 17), (2, 50), (3, 64), (10, 100)])
    def test_deterministic(self, d, n):
        assert canonical_bytes(build(d, n)) == canonical_bytes(build(d, n))


class TestVerifyCff:
    def test_identity_is_cff_for_all_d(self):
        m = build_identity(5, 4)
        assert verify_cff(m, 4)

    def test_all_ones_fails(self):
        m = CffMatrix(1, 2, 2, ((0, 1), (0, 1)), Construction.IDENTITY)
        assert not verify_cff(m, 1)

    def test_sperner6_is_exactly_1_cff(self):
        m = build_sperner(6)
        assert verify_cff(m, 1)
        assert not verify_cff(m, 2)


class TestCanonical:
    def test_header_layout(self):
        m = build(2, 9)
        data = canonical_bytes(m)
        assert data[:4] == b"CFF1"
        assert int.from_bytes(data[4:8], "big") == 2
        assert int.from_bytes(data[8:12], "big") == 9
        assert int.from_bytes(data[12:16], "big") == m.t
        assert int.from_bytes(data[16:20], "big") == int(m.construction)

    def test_digest_equality(self):
        assert canonical_digest(build(2, 9)) == canonical_digest(build(2, 9))
        assert canonical_digest(build(2, 9)) != canonical_digest(build(2, 10))


class TestMatrixInvariants:
    def test_out_of_range_column(self):
        with pytest.raises(CffError):
            CffMatrix(1, 2, 1, ((0, 2),), Construction.IDENTITY)

    def test_uncovered_column(self):
        with pytest.raises(CffError):
            CffMatrix(1, 3, 2, ((0,), (1,)), Construction.IDENTITY)

    def test_unsorted_row(self):
        with pytest.raises(CffError):
            CffMatrix(1, 3, 1, ((2, 0, 1),), Construction.IDENTITY)
