"""Equivalence bisets between finite inverse semigroups.

A biset from S to T is a finite set X = {0..m-1} with a left S-action, a
right T-action and two pairings: ``bra[x, y]`` in S (the angle bracket) and
``ket[x, y]`` in T (the square bracket). All checks are exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import AlgebraError
from .morphisms import SemigroupMap, find_isomorphism
from .rees import (
    REGULAR,
    InverseReesMatrix,
    ReesMatrixSemigroup,
    SandwichFunction,
    build_im,
    build_rees,
    gamma_closed_form,
    validate_mcalister,
)
from .semigroup import FiniteSemigroup

__all__ = [
    "EquivalenceBiset",
    "BisetReport",
    "EpsilonEta",
    "Partner",
    "identity_biset",
    "validate_biset",
    "epsilon_eta",
    "mcalister_from_biset",
    "theta_from_biset",
    "synthesize_partner",
    "AXIOMS",
    "DERIVED",
]

STRUCTURE = ("left_action", "right_action", "bimodule", "left_unitary", "right_unitary",
             "bra_surjective", "ket_surjective")
AXIOMS = ("M1", "M2", "M3", "M4", "M5", "M6", "M7")
# consequences of the axioms, checked as internal consistency assertions
DERIVED = ("brackets_idempotent", "bra_product", "ket_product", "bra_shift", "ket_shift")


def _grid(raw: Any, shape: tuple[int, int], bound: int, name: str) -> np.ndarray:
    try:
        a = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError):
        raise AlgebraError("PARTIAL_MAPPING", f"{name} is not an integer grid") from None
    if a.shape != shape:
        raise AlgebraError("PARTIAL_MAPPING", f"{name} must have shape {shape}, got {a.shape}")
    bad = np.argwhere((a < 0) | (a >= bound))
    if len(bad):
        raise AlgebraError("PARTIAL_MAPPING", f"{name} has an entry outside [0, {bound})",
                           witness=[int(v) for v in bad[0]])
    a.setflags(write=False)
    return a


class EquivalenceBiset:
    def __init__(self, S: FiniteSemigroup, T: FiniteSemigroup, size: int,
                 left_action: Any, right_action: Any, bra: Any, ket: Any):
        if size <= 0:
            raise AlgebraError("PARTIAL_MAPPING", "carrier must be nonempty")
        self.S = S
        self.T = T
        self.size = size
        self.left_action = _grid(left_action, (S.order, size), size, "left_action")
        self.right_action = _grid(right_action, (size, T.order), size, "right_action")
        self.bra = _grid(bra, (size, size), S.order, "bra")
        self.ket = _grid(ket, (size, size), T.order, "ket")

    def __repr__(self) -> str:
        return f"EquivalenceBiset(|S|={self.S.order}, |T|={self.T.order}, |X|={self.size})"

    def replace(self, **changes: Any) -> "EquivalenceBiset":
        fields = dict(S=self.S, T=self.T, size=self.size, left_action=self.left_action,
                      right_action=self.right_action, bra=self.bra, ket=self.ket)
        fields.update(changes)
        return EquivalenceBiset(**fields)


def identity_biset(S: FiniteSemigroup) -> EquivalenceBiset:
    """X = S acting on itself, with <x, y> = x y^-1 and [x, y] = x^-1 y."""
    t, inv = S.table, S.inv
    return EquivalenceBiset(S, S, S.order, t, t, t[:, inv], t[inv, :])


@dataclass(frozen=True)
class BisetReport:
    checks: dict[str, bool]
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def axioms_ok(self) -> bool:
        return all(self.checks[c] for c in STRUCTURE + AXIOMS)

    def failures(self) -> list[str]:
        return [c for c, v in self.checks.items() if not v]

    def to_dict(self) -> dict[str, Any]:
        return {c: {"ok": v, "witness": self.witnesses.get(c)} for c, v in self.checks.items()}


def _first(mask: np.ndarray, names: Sequence[str]) -> dict[str, int] | None:
    bad = np.argwhere(mask)
    if not len(bad):
        return None
    return {n: int(v) for n, v in zip(names, bad[0])}


def _missing(values: np.ndarray, n: int) -> dict[str, int] | None:
    hit = np.zeros(n, dtype=bool)
    hit[values.ravel()] = True
    miss = np.flatnonzero(~hit)
    return {"missing": int(miss[0])} if len(miss) else None


def validate_biset(B: EquivalenceBiset) -> BisetReport:
    """Exhaustive check of the biset structure, the axioms M1-M7 and their consequences.

    Witness keys name the variables of the failing instance (s, t for
    semigroup elements, x, y, z, w for carrier points).
    """
    S, T = B.S, B.T
    for name, sg in (("S", S), ("T", T)):
        if not sg.is_inverse:
            raise AlgebraError("NOT_INVERSE_BASE", f"{name} is not an inverse semigroup")
    sT, tT = S.table, T.table
    sinv, tinv = S.inv, T.inv
    L, R, bra, ket = B.left_action, B.right_action, B.bra, B.ket
    X = np.arange(B.size)
    x3, y3, z3 = X[:, None, None], X[None, :, None], X[None, None, :]
    w: dict[str, Any] = {}

    def record(name: str, witness: dict | None) -> None:
        if witness is not None:
            w[name] = witness

    ss = np.arange(S.order)
    tt = np.arange(T.order)
    # [s, s', x] -> (s s') x vs s (s' x)
    record("left_action", _first(L[sT[:, :, None], X] != L[ss[:, None, None], L[None, :, :]], ("s", "s2", "x")))
    # [x, t, t'] -> x (t t') vs (x t) t'
    record("right_action", _first(R[x3, tT[None, :, :]] != R[R[:, :, None], tt[None, None, :]], ("x", "t", "t2")))
    # [s, x, t] -> (s x) t vs s (x t)
    record("bimodule", _first(R[L[:, :, None], tt[None, None, :]] != L[ss[:, None, None], R[None, :, :]], "sxt"))
    record("left_unitary", _missing(L, B.size))
    record("right_unitary", _missing(R, B.size))
    record("bra_surjective", _missing(bra, S.order))
    record("ket_surjective", _missing(ket, T.order))

    # M1 [s, x, y]: <s x, y> = s <x, y>
    record("M1", _first(bra[L[:, :, None], X[None, None, :]] != sT[ss[:, None, None], bra[None, :, :]], "sxy"))
    # M2: <y, x> = <x, y>^-1
    record("M2", _first(bra.T != sinv[bra], "xy"))
    # M3: <x, x> x = x
    record("M3", _first((L[np.diagonal(bra), X] != X)[:, None], "x"))
    # M4 [x, y, t]: [x, y t] = [x, y] t
    record("M4", _first(ket[x3, R[None, :, :]] != tT[ket[:, :, None], tt[None, None, :]], "xyt"))
    # M5: [x, y] = [y, x]^-1
    record("M5", _first(ket != tinv[ket.T], "xy"))
    # M6: x [x, x] = x
    record("M6", _first((R[X, np.diagonal(ket)] != X)[:, None], "x"))
    # M7 [x, y, z]: <x, y> z = x [y, z]
    record("M7", _first(L[bra[:, :, None], z3] != R[x3, ket[None, :, :]], "xyz"))

    diag_bra, diag_ket = np.diagonal(bra), np.diagonal(ket)
    not_idem = ~S.idempotent_mask[diag_bra] | ~T.idempotent_mask[diag_ket]
    record("brackets_idempotent", _first(not_idem[:, None], "x"))
    x4 = X[:, None, None, None]
    y4 = X[None, :, None, None]
    z4 = X[None, None, :, None]
    w4 = X[None, None, None, :]
    # <x, y><z, w> = <x [y, z], w>
    record("bra_product", _first(sT[bra[x4, y4], bra[z4, w4]] != bra[R[x4, ket[y4, z4]], w4], "xyzw"))
    # [x, y][z, w] = [x, <y, z> w]
    record("ket_product", _first(tT[ket[x4, y4], ket[z4, w4]] != ket[x4, L[bra[y4, z4], w4]], "xyzw"))
    # [x, t, y]: <x t, y> = <x, y t^-1>
    record("bra_shift", _first(bra[R[:, :, None], y3.reshape(1, 1, -1)] != bra[x3, R[:, tinv].T[None, :, :]], "xty"))
    # [s, x, y]: [s x, y] = [x, s^-1 y]
    record("ket_shift", _first(ket[L[:, :, None], X[None, None, :]] != ket[X[None, :, None], L[sinv][:, None, :]], "sxy"))

    checks = {c: c not in w for c in STRUCTURE + AXIOMS + DERIVED}
    report = BisetReport(checks, w)
    if report.axioms_ok and not report.ok:
        raise AlgebraError("INTERNAL_INCONSISTENCY", "axioms hold but a derived identity fails",
                           witness={c: w[c] for c in DERIVED if c in w})
    return report


def _require_valid(B: EquivalenceBiset) -> BisetReport:
    report = validate_biset(B)
    if not report.ok:
        raise AlgebraError("BISET_INVALID", "biset fails " + ", ".join(report.failures()),
                           witness=report.to_dict())
    return report


@dataclass(frozen=True)
class EpsilonEta:
    """Idempotent transfer maps at a point x of the carrier.

    ``epsilon[e] = [ex, ex]`` satisfies ex = x epsilon(e) for e in E(S);
    ``eta[f] = <xf, xf>`` satisfies xf = eta(f) x for f in E(T).
    """

    point: int
    epsilon: dict[int, int]
    eta: dict[int, int]


def _check_semilattice_hom(src: FiniteSemigroup, dst: FiniteSemigroup, m: dict[int, int], name: str) -> None:
    for e in m:
        if not dst.idempotent_mask[m[e]]:
            raise AlgebraError("INTERNAL_INCONSISTENCY", f"{name}({e}) is not idempotent", witness=e)
        for f in m:
            if m[src.mul(e, f)] != dst.mul(m[e], m[f]):
                raise AlgebraError("INTERNAL_INCONSISTENCY", f"{name} is not multiplicative", witness=[e, f])


def epsilon_eta(B: EquivalenceBiset, x: int, validate: bool = True) -> EpsilonEta:
    if validate:
        _require_valid(B)
    L, R = B.left_action, B.right_action
    eps = {e: int(B.ket[L[e, x], L[e, x]]) for e in B.S.idempotents}
    eta = {f: int(B.bra[R[x, f], R[x, f]]) for f in B.T.idempotents}
    for e, t in eps.items():
        if L[e, x] != R[x, t]:
            raise AlgebraError("INTERNAL_INCONSISTENCY", "e x != x epsilon(e)", witness=[x, e])
    for f, s in eta.items():
        if R[x, f] != L[s, x]:
            raise AlgebraError("INTERNAL_INCONSISTENCY", "x f != eta(f) x", witness=[x, f])
    _check_semilattice_hom(B.S, B.T, eps, "epsilon")
    _check_semilattice_hom(B.T, B.S, eta, "eta")
    return EpsilonEta(x, eps, eta)


def mcalister_from_biset(B: EquivalenceBiset, validate: bool = True) -> SandwichFunction:
    """p[x, y] = <x, y>, certified to satisfy MF1-MF5."""
    if validate:
        _require_valid(B)
    p = SandwichFunction(B.S, B.bra)
    report = validate_mcalister(B.S, p)
    if not report.ok:
        raise AlgebraError("INTERNAL_INCONSISTENCY", "bracket sandwich is not a McAlister function",
                           witness=report.to_dict())
    return p


def theta_from_biset(B: EquivalenceBiset, validate: bool = True) -> tuple[ReesMatrixSemigroup, SemigroupMap]:
    """RM(S, X, p) and the map (x, s, y) -> [x, s y] onto T.

    Asserts that the map is a homomorphism, that each t = [x, y] is hit by
    the triple (x, <x,x><y,y>, y), and that its kernel is gamma.
    """
    p = mcalister_from_biset(B, validate)
    rm = build_rees(B.S, p, REGULAR, require_mf5=True)
    I, X, J = rm.arrays
    images = B.ket[I, B.left_action[X, J]]
    theta = SemigroupMap(rm.semigroup, B.T, images)
    hw = theta.homomorphism_witness()
    if hw is not None:
        raise AlgebraError("INTERNAL_INCONSISTENCY", "theta is not a homomorphism", witness=list(hw))
    sT = B.S.table
    for t in range(B.T.order):
        x, y = (int(v) for v in np.argwhere(B.ket == t)[0])
        s = int(sT[B.bra[x, x], B.bra[y, y]])
        if (x, s, y) not in rm or theta(rm.index((x, s, y))) != t:
            raise AlgebraError("INTERNAL_INCONSISTENCY", "surjectivity witness triple fails", witness=[x, s, y, t])
    if theta.kernel() != gamma_closed_form(rm):
        raise AlgebraError("KERNEL_MISMATCH", "kernel of theta differs from gamma")
    return rm, theta


@dataclass
class Partner:
    """IM(S, X, p) built from a biset, with the induced isomorphism onto T."""

    im: InverseReesMatrix
    isomorphism: SemigroupMap

    @property
    def semigroup(self) -> FiniteSemigroup:
        return self.im.semigroup


def synthesize_partner(B: EquivalenceBiset, validate: bool = True) -> Partner:
    rm, theta = theta_from_biset(B, validate)
    im = build_im(B.S, rm.sandwich)
    classes = np.array(im.gamma.classes)
    images = np.full(im.semigroup.order, -1, dtype=np.int64)
    for k, c in enumerate(classes):
        t = theta(k)
        if images[c] not in (-1, t):
            raise AlgebraError("KERNEL_MISMATCH", "theta is not constant on a gamma class", witness=int(c))
        images[c] = t
    iso = SemigroupMap(im.semigroup, B.T, images)
    if not iso.is_isomorphism():
        raise AlgebraError("INTERNAL_INCONSISTENCY", "induced map IM -> T is not an isomorphism")
    if find_isomorphism(im.semigroup, B.T) is None:
        raise AlgebraError("INTERNAL_INCONSISTENCY", "isomorphism search disagrees with the induced isomorphism")
    return Partner(im, iso)
