"""Square Rees matrix semigroups over an inverse semigroup.

A sandwich function ``p: I x I -> S`` is stored as an ``m x m`` matrix of
element ids. ``M(S, I, p)`` consists of triples ``(i, s, j)`` multiplied by
``(i, s, j)(k, t, l) = (i, s p[j, k] t, l)``; ``RM`` keeps the regular
triples and ``IM = RM / gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

import numpy as np

from .errors import AlgebraError
from .morphisms import SemigroupMap, is_local_isomorphism
from .semigroup import (
    Congruence,
    FiniteSemigroup,
    classify,
    min_inverse_congruence,
    natural_order,
    quotient,
)

__all__ = [
    "SandwichFunction",
    "McAlisterReport",
    "ReesMatrixSemigroup",
    "InverseReesMatrix",
    "validate_mcalister",
    "build_rees",
    "is_regular_triple",
    "is_idempotent_triple",
    "inverse_triple",
    "gamma_closed_form",
    "build_im",
    "enumerate_mcalister",
]

FULL = "full"
REGULAR = "regular"

Triple = tuple[int, int, int]


class SandwichFunction:
    def __init__(self, base: FiniteSemigroup, entries: Any):
        p = np.array(entries, dtype=np.int64)
        if p.size == 0:
            p = p.reshape(0, 0)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise AlgebraError("NOT_SQUARE", f"sandwich matrix must be m x m, got shape {p.shape}")
        bad = np.argwhere((p < 0) | (p >= base.order))
        if len(bad):
            i, j = (int(x) for x in bad[0])
            raise AlgebraError("OUT_OF_RANGE_ENTRY", f"p[{i}][{j}] = {int(p[i, j])} is not an element",
                               witness=[i, j])
        p.setflags(write=False)
        self.base = base
        self.entries = p

    @property
    def index_size(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return int(self.entries[ij])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SandwichFunction):
            return NotImplemented
        return self.base == other.base and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __repr__(self) -> str:
        return f"SandwichFunction({self.entries.tolist()})"

    def to_lists(self) -> list[list[int]]:
        return self.entries.tolist()


MF_CONDITIONS = ("MF1", "MF2", "MF3", "MF4", "MF5")


@dataclass(frozen=True)
class McAlisterReport:
    verdicts: dict[str, bool]
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    @property
    def through_mf4(self) -> bool:
        return all(self.verdicts[c] for c in MF_CONDITIONS[:4])

    def failures(self) -> list[str]:
        return [c for c in MF_CONDITIONS if not self.verdicts[c]]

    def to_dict(self) -> dict[str, Any]:
        return {
            c: {"ok": self.verdicts[c], "witness": self.witnesses.get(c)} for c in MF_CONDITIONS
        }


def _first_index(mask: np.ndarray) -> list[int] | None:
    bad = np.argwhere(mask)
    return [int(x) for x in bad[0]] if len(bad) else None


def validate_mcalister(S: FiniteSemigroup, p: SandwichFunction) -> McAlisterReport:
    """Check MF1-MF5 exhaustively. The order in MF4/MF5 is the natural order of S."""
    if not S.is_inverse:
        raise AlgebraError("BASE_NOT_INVERSE", "sandwich functions need an inverse base",
                           witness=classify(S).witnesses.get("is_inverse"))
    if p.index_size == 0:
        raise AlgebraError("EMPTY_INDEX_SET", "an empty index set cannot satisfy MF5")
    T, P, inv = S.table, p.entries, S.inv
    le = natural_order(S)
    m = p.index_size
    diag = np.diagonal(P)
    w: dict[str, Any] = {}

    mf1 = _first_index(~S.idempotent_mask[diag][:, None])
    if mf1 is not None:
        w["MF1"] = {"i": mf1[0], "p_ii": int(diag[mf1[0]])}

    absorbed = T[T[diag[:, None], P], diag[None, :]]
    mf2 = _first_index(absorbed != P)
    if mf2 is not None:
        i, j = mf2
        w["MF2"] = {"i": i, "j": j, "p_ij": int(P[i, j]), "p_ii p_ij p_jj": int(absorbed[i, j])}

    mf3 = _first_index(P != inv[P.T])
    if mf3 is not None:
        i, j = mf3
        w["MF3"] = {"i": i, "j": j, "p_ij": int(P[i, j]), "p_ji^-1": int(inv[P[j, i]])}

    # [i, j, k] -> p_ij p_jk <= p_ik
    prods = T[P[:, :, None], P[None, :, :]]
    mf4 = _first_index(~le[prods, P[:, None, :]])
    if mf4 is not None:
        i, j, k = mf4
        w["MF4"] = {"i": i, "j": j, "k": k, "p_ij p_jk": int(prods[i, j, k]), "p_ik": int(P[i, k])}

    es = np.array(S.idempotents)
    covered = le[np.ix_(es, diag)].any(axis=1)
    mf5 = _first_index(~covered[:, None])
    if mf5 is not None:
        w["MF5"] = {"e": int(es[mf5[0]])}

    verdicts = {c: c not in w for c in MF_CONDITIONS}
    return McAlisterReport(verdicts, w)


def _require(S: FiniteSemigroup, p: SandwichFunction, with_mf5: bool) -> McAlisterReport:
    if p.base is not S and p.base != S:
        raise AlgebraError("BASE_MISMATCH", "sandwich function is over a different semigroup")
    report = validate_mcalister(S, p)
    if not (report.ok if with_mf5 else report.through_mf4):
        raise AlgebraError("MCALISTER_VIOLATION", "sandwich function fails " + ", ".join(report.failures()),
                           witness=report.to_dict())
    return report


def is_regular_triple(p: SandwichFunction, triple: Triple) -> bool:
    """(i, s, j) is regular iff s^-1 s <= p_jj and s s^-1 <= p_ii."""
    S = p.base
    i, s, j = triple
    inv = S.inverse(s)
    d, r = S.mul(s, inv), S.mul(inv, s)
    return S.mul(d, p[i, i]) == d and S.mul(r, p[j, j]) == r


def is_idempotent_triple(p: SandwichFunction, triple: Triple) -> bool:
    """(i, s, j) is idempotent iff s <= p_ij."""
    S = p.base
    i, s, j = triple
    return S.mul(s, S.inverse(s), p[i, j]) == s


def _triple_product(p: SandwichFunction, x: Triple, y: Triple) -> Triple:
    S = p.base
    return x[0], S.mul(x[1], p[x[2], y[0]], y[1]), y[2]


def inverse_triple(p: SandwichFunction, triple: Triple) -> Triple:
    """The inverse (j, s^-1, i) of a regular triple, checked by multiplication."""
    if not is_regular_triple(p, triple):
        raise AlgebraError("NOT_REGULAR", f"{triple} is not regular", witness=list(triple))
    i, s, j = triple
    y = (j, p.base.inverse(s), i)
    x = tuple(triple)
    if _triple_product(p, _triple_product(p, x, y), x) != x or _triple_product(p, _triple_product(p, y, x), y) != y:
        raise AlgebraError("INTERNAL_INCONSISTENCY", f"{y} is not an inverse of {x}")
    return y


class ReesMatrixSemigroup:
    """Materialized M(S, I, p) (mode ``full``) or RM(S, I, p) (mode ``regular``).

    ``semigroup`` is the multiplication table over triple indices; ``triples``
    lists the triple for each index in lexicographic order.
    """

    def __init__(self, base: FiniteSemigroup, sandwich: SandwichFunction, mode: str,
                 triples: list[Triple], semigroup: FiniteSemigroup):
        self.base = base
        self.sandwich = sandwich
        self.mode = mode
        self.triples = triples
        self.semigroup = semigroup
        self._index = {t: k for k, t in enumerate(triples)}

    def __len__(self) -> int:
        return len(self.triples)

    def __repr__(self) -> str:
        return f"ReesMatrixSemigroup(mode={self.mode}, order={len(self)})"

    def index(self, triple: Triple) -> int:
        return self._index[tuple(triple)]

    def __contains__(self, triple: object) -> bool:
        return triple in self._index

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        a = np.array(self.triples, dtype=np.int64).reshape(-1, 3)
        return a[:, 0], a[:, 1], a[:, 2]


def _regular_mask(p: SandwichFunction, I: np.ndarray, X: np.ndarray, J: np.ndarray) -> np.ndarray:
    S = p.base
    T, P, inv = S.table, p.entries, S.inv
    d, r = T[X, inv[X]], T[inv[X], X]
    return (T[d, P[I, I]] == d) & (T[r, P[J, J]] == r)


def build_rees(S: FiniteSemigroup, p: SandwichFunction, mode: str = REGULAR,
               require_mf5: bool = False) -> ReesMatrixSemigroup:
    """Materialize M(S, I, p) or its regular part.

    MF1-MF4 are required (and MF5 with ``require_mf5``). In regular mode the
    regular triples are selected by the closed-form criterion and the
    restricted table is recomputed; a product escaping the set raises.
    """
    if mode not in (FULL, REGULAR):
        raise ValueError(f"unknown mode {mode!r}")
    _require(S, p, require_mf5)
    n, m = S.order, p.index_size
    T, P = S.table, p.entries
    I, X, J = (a.ravel() for a in np.meshgrid(np.arange(m), np.arange(n), np.arange(m), indexing="ij"))
    if mode == REGULAR:
        keep = _regular_mask(p, I, X, J)
        I, X, J = I[keep], X[keep], J[keep]
    mid = T[T[X[:, None], P[J[:, None], I[None, :]]], X[None, :]]
    full_ids = (I[:, None] * n + mid) * m + J[None, :]
    lookup = np.full(m * n * m, -1, dtype=np.int64)
    lookup[(I * n + X) * m + J] = np.arange(len(I))
    table = lookup[full_ids]
    if (table < 0).any():
        a, b = (int(x) for x in np.argwhere(table < 0)[0])
        raise AlgebraError("INTERNAL_INCONSISTENCY", "regular triples are not closed under multiplication",
                           witness=[a, b])
    triples = [(int(i), int(x), int(j)) for i, x, j in zip(I, X, J)]
    labels = [f"({i},{S.label(x)},{j})" for i, x, j in triples]
    sg = FiniteSemigroup(table, labels, check=False)
    return ReesMatrixSemigroup(S, p, mode, triples, sg)


def _closed_form_relation(rm: ReesMatrixSemigroup) -> np.ndarray:
    T, P = rm.base.table, rm.sandwich.entries
    I, X, J = rm.arrays
    a, b = (slice(None), None), (None, slice(None))
    # rows (i, s, j), columns (k, t, l)
    s_ok = X[a] == T[T[P[I[a], I[b]], X[b]], P[J[b], J[a]]]
    t_ok = X[b] == T[T[P[I[b], I[a]], X[a]], P[J[a], J[b]]]
    return s_ok & t_ok


def gamma_closed_form(rm: ReesMatrixSemigroup) -> Congruence:
    """gamma on RM: (i,s,j) ~ (k,t,l) iff s = p_ik t p_lj and t = p_ki s p_jl.

    The relation is computed pairwise and certified to be an equivalence
    before being turned into a partition.
    """
    if rm.mode != REGULAR:
        raise AlgebraError("NOT_REGULAR", "gamma is defined on the regular Rees matrix semigroup")
    rel = _closed_form_relation(rm)
    ri = rel.astype(np.int64)
    if not (np.diagonal(rel).all() and np.array_equal(rel, rel.T) and not ((ri @ ri > 0) & ~rel).any()):
        raise AlgebraError("INTERNAL_INCONSISTENCY", "closed-form gamma is not an equivalence relation")
    return Congruence(rel.argmax(axis=1).tolist())


@dataclass
class InverseReesMatrix:
    """IM(S, I, p) together with the data it was built from."""

    rm: ReesMatrixSemigroup
    gamma: Congruence
    semigroup: FiniteSemigroup
    projection: SemigroupMap
    report: McAlisterReport

    def __iter__(self):
        yield self.semigroup
        yield self.projection


def build_im(S: FiniteSemigroup, p: SandwichFunction, *, check: bool = True,
             oracle: bool = False) -> InverseReesMatrix:
    """IM(S, I, p) = RM(S, I, p) / gamma for a McAlister function p.

    With ``check`` the structural facts are asserted on the instance: RM is
    locally inverse and orthodox, IM is inverse and the projection is a local
    isomorphism. With ``oracle`` the closed-form gamma is compared with the
    brute-force minimum inverse congruence.
    """
    report = _require(S, p, with_mf5=True)
    rm = build_rees(S, p, REGULAR)
    gamma = gamma_closed_form(rm)
    if oracle and gamma != min_inverse_congruence(rm.semigroup):
        raise AlgebraError("INTERNAL_INCONSISTENCY", "closed-form gamma differs from the minimum inverse congruence")
    im, proj = quotient(rm.semigroup, gamma)
    if check:
        cls = classify(rm.semigroup)
        if not (cls.is_locally_inverse and cls.is_generalized_inverse):
            raise AlgebraError("INTERNAL_INCONSISTENCY", "RM is not a generalized inverse semigroup",
                               witness=cls.witnesses)
        if not im.is_inverse:
            raise AlgebraError("INTERNAL_INCONSISTENCY", "RM / gamma is not inverse")
        li = is_local_isomorphism(proj)
        if not li:
            raise AlgebraError("INTERNAL_INCONSISTENCY", "projection RM -> IM is not a local isomorphism",
                               witness=li.witnesses)
    return InverseReesMatrix(rm, gamma, im, proj, report)


def enumerate_mcalister(S: FiniteSemigroup, index_size: int, max_bits: float = 48.0) -> Iterator[SandwichFunction]:
    """Yield every McAlister function on an index set of the given size.

    Entries are filled in row-major order and each condition is tested as
    soon as its entries are known, so the output is in lexicographic order
    of the flattened matrix. Below-diagonal entries are forced by MF3.
    """
    if not S.is_inverse:
        raise AlgebraError("BASE_NOT_INVERSE", "sandwich functions need an inverse base")
    m = index_size
    if m <= 0:
        raise AlgebraError("EMPTY_INDEX_SET", "index set must be nonempty")
    bits = m * m * math.log2(max(S.order, 2))
    if bits > max_bits:
        raise AlgebraError("SEARCH_SPACE_TOO_LARGE",
                           f"{S.order}^({m}^2) candidates exceeds the 2^{max_bits:g} guard", witness=bits)
    T = S.table.tolist()
    inv = S.inv.tolist()
    le = natural_order(S).tolist()
    idem = list(S.idempotents)
    everything = list(range(S.order))
    positions = [(i, j) for i in range(m) for j in range(m)]
    pos = {ij: k for k, ij in enumerate(positions)}

    # checks[k]: constraints whose last entry is filled at position k
    checks: list[list[tuple]] = [[] for _ in positions]
    for i in range(m):
        for j in range(m):
            last = max(pos[i, i], pos[i, j], pos[j, j])
            checks[last].append(("MF2", i, j))
            for k in range(m):
                last = max(pos[i, j], pos[j, k], pos[i, k])
                checks[last].append(("MF4", i, j, k))

    P = [[-1] * m for _ in range(m)]

    def holds(c: tuple) -> bool:
        if c[0] == "MF2":
            _, i, j = c
            return T[T[P[i][i]][P[i][j]]][P[j][j]] == P[i][j]
        _, i, j, k = c
        return le[T[P[i][j]][P[j][k]]][P[i][k]]

    def mf5() -> bool:
        return all(any(le[e][P[i][i]] for i in range(m)) for e in idem)

    def fill(k: int) -> Iterator[SandwichFunction]:
        if k == len(positions):
            if mf5():
                yield SandwichFunction(S, [row[:] for row in P])
            return
        i, j = positions[k]
        if i == j:
            options = idem
        elif i > j:
            options = [inv[P[j][i]]]
        else:
            options = everything
        for x in options:
            P[i][j] = x
            if all(holds(c) for c in checks[k]):
                yield from fill(k + 1)
        P[i][j] = -1

    yield from fill(0)
