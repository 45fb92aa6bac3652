"""Homomorphisms between finite semigroups: local isomorphisms and isomorphism search."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import AlgebraError
from .search import find_bijection
from .semigroup import Congruence, FiniteSemigroup, d_class_index, green_D

__all__ = ["SemigroupMap", "LocalIsoReport", "is_local_isomorphism", "find_isomorphism", "element_signature"]


class SemigroupMap:
    """A function between the element sets of two semigroups.

    Construction only checks ranges; call :meth:`check_homomorphism` to certify
    multiplicativity.
    """

    def __init__(self, source: FiniteSemigroup, target: FiniteSemigroup, images: Sequence[int]):
        imgs = np.array(images, dtype=np.int64)
        if imgs.shape != (source.order,):
            raise AlgebraError("PARTIAL_MAPPING", f"expected {source.order} images, got {imgs.shape}")
        bad = np.flatnonzero((imgs < 0) | (imgs >= target.order))
        if len(bad):
            raise AlgebraError("OUT_OF_RANGE_ENTRY", "image outside the target", witness=int(bad[0]))
        imgs.setflags(write=False)
        self.source = source
        self.target = target
        self.images = imgs

    def __call__(self, a: int) -> int:
        return int(self.images[a])

    def __repr__(self) -> str:
        return f"SemigroupMap({self.source.order} -> {self.target.order}: {self.images.tolist()})"

    def homomorphism_witness(self) -> tuple[int, int] | None:
        lhs = self.images[self.source.table]
        rhs = self.target.table[np.ix_(self.images, self.images)]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = bad[0]
            return int(a), int(b)
        return None

    def is_homomorphism(self) -> bool:
        return self.homomorphism_witness() is None

    def check_homomorphism(self) -> "SemigroupMap":
        w = self.homomorphism_witness()
        if w is not None:
            a, b = w
            raise AlgebraError("NOT_HOMOMORPHISM", f"image of {a}*{b} is not the product of images",
                               witness=[a, b])
        return self

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.target.order

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.images)) == self.source.order

    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective and self.is_homomorphism()

    def kernel(self) -> Congruence:
        return Congruence(self.images.tolist())

    def then(self, other: "SemigroupMap") -> "SemigroupMap":
        """Composite: apply self, then other."""
        return SemigroupMap(self.source, other.target, other.images[self.images])


@dataclass(frozen=True)
class LocalIsoReport:
    is_local_isomorphism: bool
    li1: bool
    li2: bool
    surjective: bool
    witnesses: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.is_local_isomorphism

    def to_dict(self) -> dict[str, Any]:
        return {
            "is_local_isomorphism": self.is_local_isomorphism,
            "li1": self.li1,
            "li2": self.li2,
            "surjective": self.surjective,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def _distinct_counts(values: np.ndarray, axis: int) -> np.ndarray:
    s = np.sort(values, axis=axis)
    return 1 + (np.diff(s, axis=axis) != 0).sum(axis=axis)


def _li1_table(m: SemigroupMap) -> tuple[np.ndarray, np.ndarray]:
    """For every idempotent pair (e, f): is theta restricted to eSf injective / onto theta(e)Ttheta(f)?"""
    S, T = m.source, m.target
    es = np.array(S.idempotents, dtype=np.int64)
    tes = m.images[es]
    # [e, x, f] -> e x f, in S and in T
    slices = S.table[S.table[es][:, :, None], es[None, None, :]]
    images = m.images[slices]
    tslices = T.table[T.table[tes][:, :, None], tes[None, None, :]]
    n_src = _distinct_counts(slices, axis=1)
    n_img = _distinct_counts(images, axis=1)
    n_tgt = _distinct_counts(tslices, axis=1)
    return n_img == n_src, n_img == n_tgt


def is_local_isomorphism(m: SemigroupMap) -> LocalIsoReport:
    """Check (LI1) on every idempotent pair and (LI2) through Green's D on the target.

    For a surjective map between regular semigroups the diagonal pairs (e, e)
    already decide LI1; that shortcut is evaluated too and must agree with
    the full check.
    """
    m.check_homomorphism()
    S, T = m.source, m.target
    es = np.array(S.idempotents, dtype=np.int64)
    w: dict[str, Any] = {}

    injective, onto = _li1_table(m)
    ok = injective & onto
    li1 = bool(ok.all())
    if not li1:
        i, j = (int(x) for x in np.argwhere(~ok)[0])
        e, f = int(es[i]), int(es[j])
        w["li1"] = {"e": e, "f": f, "reason": "not injective" if not injective[i, j] else "not onto"}

    d = d_class_index(T)
    hit = set(d[m.images[es]].tolist())
    missed = [i for i in T.idempotents if d[i] not in hit]
    li2 = not missed
    if not li2:
        w["li2"] = {"idempotent": missed[0]}

    surjective = m.is_surjective
    if surjective:
        diag = bool(np.diagonal(ok).all())
        if diag != li1:
            raise AlgebraError(
                "INTERNAL_INCONSISTENCY",
                "diagonal LI1 shortcut disagrees with the full check on a surjective map",
            )
    return LocalIsoReport(li1 and li2, li1, li2, surjective, w)


def _index_period(S: FiniteSemigroup, s: int) -> tuple[int, int]:
    seen: dict[int, int] = {}
    x, k = s, 1
    while x not in seen:
        seen[x] = k
        x = int(S.table[x, s])
        k += 1
    return seen[x], k - seen[x]


def element_signature(S: FiniteSemigroup) -> list[tuple]:
    """Isomorphism-invariant fingerprint of each element."""
    blocks = green_D(S)
    d = d_class_index(S)
    block_size = [len(b) for b in blocks]
    block_idem = [sum(1 for x in b if S.idempotent_mask[x]) for b in blocks]
    n_inv = S.inverse_matrix.sum(axis=1)
    out = []
    for s in range(S.order):
        right = len(set(S.table[s].tolist()) | {s})
        left = len(set(S.table[:, s].tolist()) | {s})
        out.append((
            not bool(S.idempotent_mask[s]),
            block_size[d[s]],
            block_idem[d[s]],
            _index_period(S, s),
            int(n_inv[s]),
            right,
            left,
        ))
    return out


def find_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup) -> SemigroupMap | None:
    """An isomorphism S -> T, or None.

    Elements are placed idempotents first, smallest D-class first; candidates
    are restricted to target elements with the same signature and tried in
    ascending order, so the returned witness is deterministic.
    """
    if S.order != T.order:
        return None
    sig_s, sig_t = element_signature(S), element_signature(T)
    if Counter(sig_s) != Counter(sig_t):
        return None
    by_sig: dict[tuple, list[int]] = {}
    for y, sig in enumerate(sig_t):
        by_sig.setdefault(sig, []).append(y)
    candidates = [by_sig[sig] for sig in sig_s]
    order = sorted(range(S.order), key=lambda x: (sig_s[x][0], sig_s[x][1], x))
    images = find_bijection(S.table, T.table, candidates, order)
    if images is None:
        return None
    m = SemigroupMap(S, T, images)
    if not m.is_isomorphism():
        raise AlgebraError("INTERNAL_INCONSISTENCY", "search returned a non-isomorphism")
    return m
