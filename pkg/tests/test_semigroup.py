import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from morita import (
    AlgebraError,
    Congruence,
    classify,
    green_D,
    inverses_of,
    local_submonoid,
    min_inverse_congruence,
    natural_order,
    quotient,
    validate_table,
)
from morita.catalog import adjoin_identity, brandt, chain, cyclic_group, right_zero, symmetric_inverse_monoid
from morita.semigroup import FiniteSemigroup, green_L, green_R, is_orthodox
from strategies import inverse_semigroup

# B2 ids: 0 zero, 1 (1,1), 2 (1,2), 3 (2,1), 4 (2,2)
ZERO, E11, E12, E21, E22 = range(5)


class TestValidateTable:
    def test_trivial(self):
        S = validate_table([[0]])
        assert S.order == 1 and S.idempotents == (0,)

    def test_semilattice(self):
        S = validate_table([[0, 0], [0, 1]])
        assert S.order == 2

    def test_not_associative_witness_is_a_real_failure(self):
        table = [[1, 0], [1, 1]]
        with pytest.raises(AlgebraError) as err:
            validate_table(table)
        assert err.value.code == "NOT_ASSOCIATIVE"
        failures = oracles.assoc_failures(table)
        assert failures
        assert tuple(err.value.witness) == failures[0]

    def test_out_of_range(self):
        with pytest.raises(AlgebraError) as err:
            validate_table([[0, 2], [1, 0]])
        assert err.value.code == "OUT_OF_RANGE_ENTRY"
        assert list(err.value.witness) == [0, 1]

    def test_not_square(self):
        with pytest.raises(AlgebraError) as err:
            validate_table([[0, 0]])
        assert err.value.code == "NOT_SQUARE"

    def test_table_is_read_only(self, E2):
        with pytest.raises(ValueError):
            E2.table[0, 0] = 1


class TestInverses:
    def test_idempotent_is_self_inverse(self, E2):
        assert inverses_of(E2, 1) == {1}

    def test_group_inverse(self, Z2):
        assert inverses_of(Z2, 1) == {1}

    def test_brandt_off_diagonal(self, B2):
        assert inverses_of(B2, E12) == {E21}
        assert oracles.inverses(oracles.rows(B2), E12) == {E21}

    def test_right_zero_has_two_inverses(self, RZ2):
        assert inverses_of(RZ2, 0) == {0, 1}

    def test_not_inverse_raises(self, RZ2):
        with pytest.raises(AlgebraError) as err:
            RZ2.inv
        assert err.value.code == "NOT_INVERSE"

    def test_matches_oracle_on_corpus(self, semigroups):
        for S in semigroups.values():
            t = oracles.rows(S)
            for s in range(S.order):
                assert inverses_of(S, s) == oracles.inverses(t, s)


class TestClassify:
    def test_semilattice(self, E2):
        r = classify(E2)
        assert r.is_inverse and r.is_orthodox and r.is_locally_inverse

    def test_brandt_inverse(self, B2):
        assert classify(B2).is_inverse
        assert oracles.is_inverse_table(oracles.rows(B2))

    def test_right_zero(self, RZ2):
        r = classify(RZ2)
        assert r.is_regular and not r.is_inverse and r.is_orthodox
        assert "is_inverse" in r.witnesses

    def test_non_regular_has_witness(self):
        # null semigroup {0, a} with every product 0: a is not regular
        S = FiniteSemigroup([[0, 0], [0, 0]])
        r = classify(S)
        assert not r.is_regular and r.witnesses["is_regular"] == {"element": 1}
        assert not oracles.inverses(oracles.rows(S), 1)

    def test_orthodox_not_locally_inverse(self, RZ2):
        S = adjoin_identity(RZ2)
        r = classify(S)
        assert r.is_orthodox and not r.is_locally_inverse and not r.is_generalized_inverse
        t = oracles.rows(S)
        assert oracles.is_orthodox(t) and not oracles.is_locally_inverse(t)

    def test_every_false_flag_has_witness(self, RZ2):
        for S in (RZ2, adjoin_identity(RZ2), FiniteSemigroup([[0, 0], [0, 0]])):
            r = classify(S)
            flags = {k: v for k, v in r.to_dict().items() if k != "witnesses"}
            for name, ok in flags.items():
                if not ok:
                    assert name in r.witnesses, name


class TestNaturalOrder:
    def test_semilattice(self, E2):
        le = natural_order(E2)
        assert le[0, 1] and not le[1, 0]

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_group_order_is_equality(self, n):
        assert np.array_equal(natural_order(cyclic_group(n)), np.eye(n, dtype=bool))

    def test_brandt(self, B2):
        le = natural_order(B2)
        assert le[ZERO].all()
        nonzero = le[1:, 1:]
        assert np.array_equal(nonzero, np.eye(4, dtype=bool))

    def test_matches_oracle_on_corpus(self, semigroups):
        for S in semigroups.values():
            t = oracles.rows(S)
            le = natural_order(S)
            for s in range(S.order):
                for u in range(S.order):
                    assert bool(le[s, u]) == oracles.leq(t, s, u)


class TestLocalSubmonoid:
    def test_identity_gives_whole_monoid(self, Z3):
        sub, emb = local_submonoid(Z3, 0)
        assert emb == (0, 1, 2)
        assert np.array_equal(sub.table, Z3.table)

    def test_bottom_of_semilattice(self, E2):
        sub, emb = local_submonoid(E2, 0)
        assert emb == (0,) and sub.order == 1

    def test_brandt_nonzero_idempotent(self, B2):
        _, emb = local_submonoid(B2, E11)
        t = oracles.rows(B2)
        assert set(emb) == {t[t[E11][s]][E11] for s in range(5)} == {ZERO, E11}

    def test_not_idempotent(self, B2):
        with pytest.raises(AlgebraError) as err:
            local_submonoid(B2, E12)
        assert err.value.code == "NOT_IDEMPOTENT"


class TestGreen:
    def test_group_single_class(self, Z3):
        assert green_D(Z3) == [(0, 1, 2)]

    def test_semilattice_singletons(self, E2):
        assert green_D(E2) == [(0,), (1,)]

    def test_brandt(self, B2):
        assert green_D(B2) == [(0,), (1, 2, 3, 4)]

    def test_matches_oracle(self, semigroups, RZ2):
        for S in [*semigroups.values(), RZ2, adjoin_identity(RZ2)]:
            assert green_D(S) == oracles.d_classes(oracles.rows(S))

    def test_r_and_l_on_brandt(self, B2):
        R, L = green_R(B2), green_L(B2)
        # (1,1) R (1,2) and (1,1) L (2,1)
        assert R[E11] == R[E12] != R[E21]
        assert L[E11] == L[E21] != L[E12]


class TestMinInverseCongruence:
    def test_inverse_gives_identity(self, semigroups):
        for S in semigroups.values():
            assert min_inverse_congruence(S) == Congruence.identity(S.order)

    def test_right_zero_universal(self, RZ2):
        g = min_inverse_congruence(RZ2)
        assert g == Congruence.universal(2)
        Q, _ = quotient(RZ2, g)
        assert Q.order == 1

    def test_not_orthodox(self):
        S = FiniteSemigroup([[0, 0], [0, 0]])
        with pytest.raises(AlgebraError) as err:
            min_inverse_congruence(S)
        assert err.value.code == "NOT_ORTHODOX"

    @pytest.mark.parametrize("name", ["RZ2", "RZ3", "RZ2+1"])
    def test_is_meet_of_inverse_quotients(self, name):
        S = {"RZ2": right_zero(2), "RZ3": right_zero(3), "RZ2+1": adjoin_identity(right_zero(2))}[name]
        meet, hits = oracles.min_inverse_congruence_by_lattice(oracles.rows(S))
        g = min_inverse_congruence(S)
        assert list(g.classes) == meet
        for cls in hits:
            assert g.refines(Congruence(cls))

    def test_minimality_on_small_rees_semigroups(self):
        from morita.rees import SandwichFunction, build_rees
        E2, Z2 = chain(2), cyclic_group(2)
        for S, entries in ((E2, [[1, 0], [0, 1]]), (Z2, [[0, 0], [0, 0]]), (Z2, [[0, 1], [1, 0]])):
            rm = build_rees(S, SandwichFunction(S, entries))
            assert rm.semigroup.order <= 8
            meet, _ = oracles.min_inverse_congruence_by_lattice(oracles.rows(rm.semigroup))
            assert list(min_inverse_congruence(rm.semigroup).classes) == meet


class TestQuotient:
    def test_identity_congruence(self, B2):
        Q, proj = quotient(B2, Congruence.identity(5))
        assert np.array_equal(Q.table, B2.table)
        assert proj.is_isomorphism()

    def test_universal(self, B2):
        Q, proj = quotient(B2, Congruence.universal(5))
        assert Q.order == 1 and proj.is_homomorphism()

    def test_incompatible(self, E3):
        # {e0, e2} is not a congruence: e0 e1 = e0 but e2 e1 = e1
        with pytest.raises(AlgebraError) as err:
            quotient(E3, Congruence([0, 1, 0]))
        assert err.value.code == "NOT_COMPATIBLE"
        assert not oracles.is_congruence(oracles.rows(E3), [0, 1, 0])

    def test_projection_multiplicative(self, RZ2):
        S = adjoin_identity(RZ2)
        Q, proj = quotient(S, min_inverse_congruence(S))
        for a in range(S.order):
            for b in range(S.order):
                assert proj(S.mul(a, b)) == Q.mul(proj(a), proj(b))


# properties

@given(inverse_semigroup())
def test_inverse_semigroup_invariants(S):
    t = oracles.rows(S)
    assert not oracles.assoc_failures(t)
    for s in range(S.order):
        assert len(inverses_of(S, s)) == 1
    r = classify(S)
    assert r.is_inverse and r.is_orthodox and r.is_regular
    assert r.is_generalized_inverse == (r.is_orthodox and r.is_locally_inverse)


@given(inverse_semigroup())
def test_natural_order_is_compatible_partial_order(S):
    le = natural_order(S)
    n, inv = S.order, S.inv
    assert le.diagonal().all()
    assert not (le & le.T & ~np.eye(n, dtype=bool)).any()
    assert not ((le.astype(int) @ le.astype(int) > 0) & ~le).any()
    for s, t in np.argwhere(le):
        assert le[inv[s], inv[t]]
        for u in range(n):
            assert le[S.mul(s, u), S.mul(t, u)] and le[S.mul(u, s), S.mul(u, t)]


@given(st.sampled_from(["RZ2", "RZ3", "RZ2+1", "SIM2", "B2", "RZ2xZ2"]))
def test_orthodox_inverse_sets_meet_or_coincide(name):
    if name == "RZ2xZ2":
        rz, z = right_zero(2), cyclic_group(2)
        pairs = [(a, b) for a in range(2) for b in range(2)]
        S = FiniteSemigroup([[pairs.index((rz.mul(a, c), z.mul(b, d))) for c, d in pairs] for a, b in pairs])
    else:
        S = {"RZ2": right_zero(2), "RZ3": right_zero(3), "RZ2+1": adjoin_identity(right_zero(2)),
             "SIM2": symmetric_inverse_monoid(2), "B2": brandt(2)}[name]
    assert is_orthodox(S)
    t = oracles.rows(S)
    V = [oracles.inverses(t, s) for s in range(S.order)]
    for a in range(S.order):
        for b in range(S.order):
            assert bool(V[a] & V[b]) == (V[a] == V[b])
    g = min_inverse_congruence(S)
    assert all(g.related(a, b) == (V[a] == V[b]) for a in range(S.order) for b in range(S.order))
    Q, _ = quotient(S, g)
    assert Q.is_inverse
