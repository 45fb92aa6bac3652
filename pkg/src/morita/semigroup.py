"""Finite semigroups given by multiplication tables.

Elements are the dense ids ``0..n-1``; ``table[a, b]`` is the product ``ab``.
Everything here is exhaustive and meant for desk-scale orders (a few hundred
elements at most for the cubic checks).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import AlgebraError

__all__ = [
    "FiniteSemigroup",
    "ClassificationReport",
    "Congruence",
    "validate_table",
    "associativity_witness",
    "inverses_of",
    "classify",
    "natural_order",
    "leq",
    "local_submonoid",
    "green_R",
    "green_L",
    "green_D",
    "min_inverse_congruence",
    "quotient",
]


def _as_table(raw: Any) -> np.ndarray:
    try:
        table = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise AlgebraError("NOT_SQUARE", f"table is not an integer grid ({exc})") from None
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise AlgebraError("NOT_SQUARE", f"table must be a nonempty n x n grid, got shape {table.shape}")
    return table


class FiniteSemigroup:
    """A finite semigroup on ``0..n-1``.

    The table is copied and frozen on construction. ``check=True`` certifies
    associativity; internal constructors whose output is associative by
    construction pass ``check=False``.
    """

    def __init__(self, table: Any, labels: Sequence[str] | None = None, *, check: bool = True):
        t = _as_table(table)
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            a, b = (int(v) for v in bad[0])
            raise AlgebraError(
                "OUT_OF_RANGE_ENTRY", f"table[{a}][{b}] = {int(t[a, b])} not in [0, {n})", witness=[a, b]
            )
        t = t.copy()
        t.setflags(write=False)
        self.table = t
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise AlgebraError("BAD_LABELS", f"expected {n} labels, got {len(self.labels)}")
        if check:
            w = associativity_witness(t)
            if w is not None:
                a, b, c = w
                raise AlgebraError("NOT_ASSOCIATIVE", f"({a}*{b})*{c} != {a}*({b}*{c})", witness=list(w))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self) -> str:
        return f"FiniteSemigroup(order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def mul(self, *xs: int) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = int(self.table[acc, x])
        return int(acc)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def to_lists(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        ar = np.arange(self.order)
        return self.table[ar, ar] == ar

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(int(e) for e in np.flatnonzero(self.idempotent_mask))

    @cached_property
    def inverse_matrix(self) -> np.ndarray:
        """Boolean ``V[s, t]``: t is an inverse of s (sts = s and tst = t)."""
        t = self.table
        ar = np.arange(self.order)
        sts = t[t, ar[:, None]]
        tst = t[t.T, ar[None, :]]
        return (sts == ar[:, None]) & (tst == ar[None, :])

    @cached_property
    def inv(self) -> np.ndarray:
        """Array of unique inverses; only defined on inverse semigroups."""
        v = self.inverse_matrix
        counts = v.sum(axis=1)
        bad = np.flatnonzero(counts != 1)
        if len(bad):
            s = int(bad[0])
            raise AlgebraError(
                "NOT_INVERSE", f"element {s} has {int(counts[s])} inverses", witness=s
            )
        out = v.argmax(axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def is_inverse(self) -> bool:
        return bool((self.inverse_matrix.sum(axis=1) == 1).all())

    def inverse(self, s: int) -> int:
        return int(self.inv[s])

    def has_identity(self) -> int | None:
        ar = np.arange(self.order)
        for e in self.idempotents:
            if (self.table[e] == ar).all() and (self.table[:, e] == ar).all():
                return e
        return None


def associativity_witness(table: np.ndarray) -> tuple[int, int, int] | None:
    """Lexicographically least (a, b, c) with (ab)c != a(bc), or None."""
    n = table.shape[0]
    for a in range(n):
        left = table[table[a]]          # [b, c] -> (ab)c
        right = table[a][table]         # [b, c] -> a(bc)
        diff = np.argwhere(left != right)
        if len(diff):
            b, c = diff[0]
            return a, int(b), int(c)
    return None


def validate_table(raw: Any, labels: Sequence[str] | None = None) -> FiniteSemigroup:
    """Parse a raw integer grid into a certified :class:`FiniteSemigroup`.

    Raises ``AlgebraError`` with code ``NOT_SQUARE``, ``OUT_OF_RANGE_ENTRY`` or
    ``NOT_ASSOCIATIVE`` (witness: the least failing triple).
    """
    return FiniteSemigroup(raw, labels, check=True)


def inverses_of(S: FiniteSemigroup, s: int) -> frozenset[int]:
    """V(s) by exhaustive scan."""
    return frozenset(int(t) for t in np.flatnonzero(S.inverse_matrix[s]))


def _first(mask: np.ndarray) -> int | None:
    idx = np.flatnonzero(mask)
    return int(idx[0]) if len(idx) else None


@dataclass(frozen=True)
class ClassificationReport:
    is_regular: bool
    is_inverse: bool
    is_orthodox: bool
    is_locally_inverse: bool
    is_generalized_inverse: bool
    has_local_units: bool
    witnesses: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "is_regular": self.is_regular,
            "is_inverse": self.is_inverse,
            "is_orthodox": self.is_orthodox,
            "is_locally_inverse": self.is_locally_inverse,
            "is_generalized_inverse": self.is_generalized_inverse,
            "has_local_units": self.has_local_units,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def _subtable(S: FiniteSemigroup, elements: np.ndarray) -> np.ndarray:
    """Multiplication table of a subsemigroup, reindexed to 0..k-1."""
    lookup = np.full(S.order, -1, dtype=np.int64)
    lookup[elements] = np.arange(len(elements))
    sub = lookup[S.table[np.ix_(elements, elements)]]
    if (sub < 0).any():
        raise AlgebraError("NOT_CLOSED", "subset is not closed under multiplication")
    return sub


def _local_elements(S: FiniteSemigroup, e: int) -> np.ndarray:
    return np.unique(S.table[S.table[e], e])


def _nonclosed_idempotent_pair(S: FiniteSemigroup) -> tuple[int, int] | None:
    es = np.array(S.idempotents)
    prods = S.table[np.ix_(es, es)]
    bad = np.argwhere(~S.idempotent_mask[prods])
    if len(bad):
        i, j = bad[0]
        return int(es[i]), int(es[j])
    return None


def is_orthodox(S: FiniteSemigroup) -> bool:
    regular = bool(S.inverse_matrix.any(axis=1).all())
    return regular and _nonclosed_idempotent_pair(S) is None


def classify(S: FiniteSemigroup) -> ClassificationReport:
    """Exhaustive classification; each false flag gets a witness."""
    w: dict[str, Any] = {}
    v = S.inverse_matrix
    counts = v.sum(axis=1)

    nonreg = _first(counts == 0)
    regular = nonreg is None
    if not regular:
        w["is_regular"] = {"element": nonreg}

    non_unique = _first(counts != 1)
    inverse = non_unique is None
    if not inverse:
        w["is_inverse"] = {"element": non_unique, "inverses": sorted(inverses_of(S, non_unique))}

    pair = _nonclosed_idempotent_pair(S)
    orthodox = regular and pair is None
    if not orthodox:
        w["is_orthodox"] = {"element": nonreg} if not regular else {"idempotents": list(pair)}

    locally_inverse = regular
    if not regular:
        w["is_locally_inverse"] = {"element": nonreg}
    else:
        for e in S.idempotents:
            els = _local_elements(S, e)
            sub = FiniteSemigroup(_subtable(S, els), check=False)
            if not sub.is_inverse:
                locally_inverse = False
                w["is_locally_inverse"] = {"idempotent": e}
                break

    generalized = orthodox and locally_inverse
    if not generalized:
        w["is_generalized_inverse"] = {
            "fails": "is_orthodox" if not orthodox else "is_locally_inverse"
        }

    # s has local units iff s = esf for idempotents e, f; equivalently
    # s lies in both E*s and s*E.
    es = np.array(S.idempotents, dtype=np.int64)
    ar = np.arange(S.order)
    left_ok = (S.table[es][:, ar] == ar).any(axis=0) if len(es) else np.zeros(S.order, bool)
    right_ok = (S.table[:, es] == ar[:, None]).any(axis=1) if len(es) else np.zeros(S.order, bool)
    no_units = _first(~(left_ok & right_ok))
    if no_units is not None:
        w["has_local_units"] = {"element": no_units}

    return ClassificationReport(
        is_regular=regular,
        is_inverse=inverse,
        is_orthodox=orthodox,
        is_locally_inverse=locally_inverse,
        is_generalized_inverse=generalized,
        has_local_units=no_units is None,
        witnesses=w,
    )


def _require_inverse(S: FiniteSemigroup) -> None:
    if not S.is_inverse:
        S.inv  # raises NOT_INVERSE with a witness


def natural_order(S: FiniteSemigroup) -> np.ndarray:
    """Boolean matrix ``leq[s, t]`` of the natural partial order s = s s^-1 t."""
    _require_inverse(S)
    t = S.table
    ar = np.arange(S.order)
    d = t[ar, S.inv]                    # s s^-1
    return t[d[:, None], ar[None, :]] == ar[:, None]


def leq(S: FiniteSemigroup, s: int, t: int) -> bool:
    return S.mul(s, S.inverse(s), t) == s


def local_submonoid(S: FiniteSemigroup, e: int) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    """eSe with its embedding into S (sorted ids)."""
    if not S.idempotent_mask[e]:
        raise AlgebraError("NOT_IDEMPOTENT", f"{e} is not idempotent", witness=e)
    els = _local_elements(S, e)
    labels = [S.label(int(x)) for x in els] if S.labels is not None else None
    return FiniteSemigroup(_subtable(S, els), labels, check=False), tuple(int(x) for x in els)


def _classes_by_key(keys: Iterable[Any]) -> list[int]:
    ids: dict[Any, int] = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def green_R(S: FiniteSemigroup) -> list[int]:
    return _classes_by_key(frozenset(S.table[a].tolist()) | {a} for a in range(S.order))


def green_L(S: FiniteSemigroup) -> list[int]:
    return _classes_by_key(frozenset(S.table[:, a].tolist()) | {a} for a in range(S.order))


def green_D(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    """D-classes as sorted tuples, ordered by least element.

    D is the join of L and R, taken as the connected components of their union.
    """
    n = S.order
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (green_R(S), green_L(S)):
        first: dict[int, int] = {}
        for a, c in enumerate(labels):
            if c in first:
                ra, rb = find(a), find(first[c])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                first[c] = a
    blocks: dict[int, list[int]] = {}
    for a in range(n):
        blocks.setdefault(find(a), []).append(a)
    return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])


def d_class_index(S: FiniteSemigroup) -> np.ndarray:
    out = np.empty(S.order, dtype=np.int64)
    for k, block in enumerate(green_D(S)):
        out[list(block)] = k
    return out


class Congruence:
    """A partition of ``0..n-1``, stored as canonical class ids.

    Class ids are renumbered in order of first occurrence, so two congruences
    compare equal exactly when they are the same partition.
    """

    def __init__(self, classes: Iterable[Any]):
        self.classes = tuple(_classes_by_key(classes))

    @property
    def count(self) -> int:
        return max(self.classes, default=-1) + 1

    def __len__(self) -> int:
        return len(self.classes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.classes == other.classes

    def __hash__(self) -> int:
        return hash(self.classes)

    def __repr__(self) -> str:
        return f"Congruence({self.blocks()})"

    def related(self, a: int, b: int) -> bool:
        return self.classes[a] == self.classes[b]

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for a, c in enumerate(self.classes):
            out[c].append(a)
        return [tuple(b) for b in out]

    def representatives(self) -> list[int]:
        return [b[0] for b in self.blocks()]

    def refines(self, other: "Congruence") -> bool:
        """True when every class of self lies inside a class of other."""
        seen: dict[int, int] = {}
        for c, d in zip(self.classes, other.classes):
            if seen.setdefault(c, d) != d:
                return False
        return True

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(range(n))

    @classmethod
    def universal(cls, n: int) -> "Congruence":
        return cls([0] * n)


def compatibility_witness(S: FiniteSemigroup, c: Congruence) -> tuple[int, int, int, int] | None:
    """(a, a', b, b') with a~a', b~b' but ab !~ a'b', or None."""
    if len(c) != S.order:
        raise AlgebraError("SIZE_MISMATCH", "partition does not cover the semigroup")
    cls = np.array(c.classes)
    reps = np.array(c.representatives())
    expected = cls[S.table[np.ix_(reps[cls], reps[cls])]]
    bad = np.argwhere(cls[S.table] != expected)
    if len(bad):
        a, b = (int(x) for x in bad[0])
        return a, int(reps[cls[a]]), b, int(reps[cls[b]])
    return None


def quotient(S: FiniteSemigroup, c: Congruence):
    """S/c and the projection map S -> S/c. Class ids are the new elements."""
    from .morphisms import SemigroupMap

    w = compatibility_witness(S, c)
    if w is not None:
        raise AlgebraError("NOT_COMPATIBLE", "partition is not a congruence", witness=list(w))
    cls = np.array(c.classes)
    reps = np.array(c.representatives())
    table = cls[S.table[np.ix_(reps, reps)]]
    labels = None
    if S.labels is not None:
        labels = ["[" + S.label(int(r)) + "]" for r in reps]
    Q = FiniteSemigroup(table, labels, check=False)
    return Q, SemigroupMap(S, Q, c.classes)


def min_inverse_congruence(S: FiniteSemigroup) -> Congruence:
    """Minimum inverse congruence of an orthodox semigroup: s ~ t iff V(s) = V(t)."""
    if not is_orthodox(S):
        rep = classify(S)
        raise AlgebraError(
            "NOT_ORTHODOX", "minimum inverse congruence needs an orthodox semigroup",
            witness=rep.witnesses.get("is_orthodox"),
        )
    v = S.inverse_matrix
    gamma = Congruence(v[s].tobytes() for s in range(S.order))
    cls = np.array(gamma.classes)
    overlap = (v.astype(np.int64) @ v.T.astype(np.int64)) > 0
    same = cls[:, None] == cls[None, :]
    if not np.array_equal(overlap, same):
        s, t = (int(x) for x in np.argwhere(overlap != same)[0])
        raise AlgebraError(
            "INTERNAL_NOT_CONGRUENCE", "inverse sets overlap without being equal", witness=[s, t]
        )
    w = compatibility_witness(S, gamma)
    if w is not None:
        raise AlgebraError("INTERNAL_NOT_CONGRUENCE", "equal-inverse-set relation is not compatible",
                           witness=list(w))
    Q, _ = quotient(S, gamma)
    if not Q.is_inverse:
        raise AlgebraError("INTERNAL_NOT_CONGRUENCE", "quotient by gamma is not inverse")
    return gamma
