import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from morita import (
    AlgebraError,
    SandwichFunction,
    build_im,
    find_isomorphism,
    identity_biset,
    is_local_isomorphism,
    mcalister_from_biset,
)
from morita.morphisms import SemigroupMap
from morita.search import find_bijection
from morita.semigroup import FiniteSemigroup
from strategies import inverse_semigroup


def relabel(S, perm):
    """Copy of S with element a renamed perm[a]."""
    n = S.order
    inv = np.argsort(perm)
    table = [[int(perm[S.table[inv[x], inv[y]]]) for y in range(n)] for x in range(n)]
    return FiniteSemigroup(table)


class TestLocalIsomorphism:
    def test_identity(self, semigroups):
        for S in semigroups.values():
            assert is_local_isomorphism(SemigroupMap(S, S, range(S.order))).is_local_isomorphism

    def test_collapse(self, E2, T1):
        r = is_local_isomorphism(SemigroupMap(E2, T1, [0, 0]))
        assert not r.li1 and not r.is_local_isomorphism
        assert r.witnesses["li1"]["e"] == 1 == r.witnesses["li1"]["f"]
        t = oracles.rows(E2)
        assert len(oracles.slice_(t, 1, 1)) == 2

    def test_missed_d_class(self, E2, E3):
        r = is_local_isomorphism(SemigroupMap(E2, E3, [0, 1]))
        assert r.li1 and not r.li2 and "li2" in r.witnesses

    def test_projection_of_rees(self, semigroups):
        S = semigroups["B2"]
        p = mcalister_from_biset(identity_biset(S))
        im = build_im(S, p)
        assert is_local_isomorphism(im.projection).is_local_isomorphism

    def test_li1_matches_slice_oracle(self, E2):
        IM, proj = build_im(E2, SandwichFunction(E2, [[1, 0], [0, 1]]))
        src, tgt = oracles.rows(proj.source), oracles.rows(IM)
        for e in oracles.idempotents(src):
            for f in oracles.idempotents(src):
                slice_ = sorted(oracles.slice_(src, e, f))
                assert sorted({proj(x) for x in slice_}) == sorted(oracles.slice_(tgt, proj(e), proj(f)))
                assert len({proj(x) for x in slice_}) == len(slice_)

    def test_not_homomorphism(self, E2):
        m = SemigroupMap(E2, E2, [1, 0])
        assert not m.is_homomorphism()
        with pytest.raises(AlgebraError) as err:
            m.check_homomorphism()
        assert err.value.code == "NOT_HOMOMORPHISM"


class TestFindIsomorphism:
    def test_self(self, semigroups):
        for S in semigroups.values():
            iso = find_isomorphism(S, S)
            assert iso is not None and iso.is_isomorphism()
            assert list(iso.images) == list(range(S.order))

    def test_invariant_mismatch(self, E2, Z2):
        assert find_isomorphism(E2, Z2) is None

    def test_same_order_not_isomorphic(self, E3, Z3):
        assert find_isomorphism(E3, Z3) is None
        assert oracles.find_iso(oracles.rows(E3), oracles.rows(Z3)) is None

    def test_brandt_partner(self, B2):
        IM, _ = build_im(B2, mcalister_from_biset(identity_biset(B2)))
        iso = find_isomorphism(IM, B2)
        assert iso is not None and iso.is_isomorphism()

    def test_deterministic(self, semigroups):
        S = semigroups["SIM2"]
        T = relabel(S, [3, 1, 4, 0, 6, 5, 2])
        a, b = find_isomorphism(S, T), find_isomorphism(S, T)
        assert a is not None and list(a.images) == list(b.images)


def test_find_bijection_on_cyclic_groups():
    z3 = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    op = np.array(z3)
    images = find_bijection(op, op, [[0], [1, 2], [1, 2]], [0, 1, 2])
    assert images is not None and list(images) == [0, 1, 2]
    assert find_bijection(op, op, [[1], [0], [2]], [0, 1, 2]) is None


@given(inverse_semigroup(max_order=7), st.randoms(use_true_random=False))
def test_isomorphism_search_matches_permutation_oracle(S, rnd):
    perm = list(range(S.order))
    rnd.shuffle(perm)
    T = relabel(S, perm)
    iso = find_isomorphism(S, T)
    assert iso is not None and iso.is_isomorphism()
    assert oracles.find_iso(oracles.rows(S), oracles.rows(T)) is not None


@given(inverse_semigroup(max_order=6), inverse_semigroup(max_order=6))
def test_isomorphism_existence_matches_oracle(S, T):
    found = find_isomorphism(S, T) is not None
    assert found == (oracles.find_iso(oracles.rows(S), oracles.rows(T)) is not None)
