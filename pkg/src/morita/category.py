"""Finite categories, Cauchy completions, functor checks and equivalence decisions.

Composition is written diagrammatically throughout: ``compose(f, g)`` is
"f then g", defined when ``tgt(f) == src(g)``, matching
``(e, s, f)(f, t, g) = (e, st, g)`` in a Cauchy completion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .errors import AlgebraError, ParseError
from .morphisms import SemigroupMap
from .rees import REGULAR, ReesMatrixSemigroup, SandwichFunction, build_rees
from .search import find_bijection
from .semigroup import FiniteSemigroup, classify

__all__ = [
    "FiniteCategory",
    "TableCategory",
    "CauchyCompletion",
    "FunctorMap",
    "FunctorReport",
    "Skeleton",
    "EquivalenceVerdict",
    "cauchy_completion",
    "functor_theta",
    "functor_psi",
    "functor_checks",
    "object_iso_classes",
    "skeleton",
    "decide_equivalence",
    "dump_category",
    "parse_category_dump",
]

DEFAULT_MAX_SKELETON = 2000


def _clean(label: str) -> str:
    return "_".join(str(label).split()) or "_"


class FiniteCategory:
    """Objects ``0..k-1`` and morphisms ``0..M-1`` with source/target arrays.

    Subclasses supply :meth:`compose_many`, a broadcasting composition on
    arrays of morphism ids that returns -1 where the pair is not composable.
    """

    def __init__(self, object_labels: Sequence[str], src: Any, tgt: Any, identities: Any,
                 morphism_labels: Sequence[str] | None = None):
        self.object_labels = tuple(object_labels)
        self.src = np.asarray(src, dtype=np.int64)
        self.tgt = np.asarray(tgt, dtype=np.int64)
        self.identities = np.asarray(identities, dtype=np.int64)
        self.morphism_labels = (tuple(morphism_labels) if morphism_labels is not None
                                else tuple(str(f) for f in range(len(self.src))))
        for a in (self.src, self.tgt, self.identities):
            a.setflags(write=False)

    @property
    def n_objects(self) -> int:
        return len(self.object_labels)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(objects={self.n_objects}, morphisms={self.n_morphisms})"

    def compose_many(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def compose(self, f: int, g: int) -> int:
        if self.tgt[f] != self.src[g]:
            raise AlgebraError("NOT_COMPOSABLE", f"target of {f} is not the source of {g}", witness=[f, g])
        return int(self.compose_many(np.array(f), np.array(g)))

    @cached_property
    def homs(self) -> dict[tuple[int, int], np.ndarray]:
        out: dict[tuple[int, int], list[int]] = {}
        for f, (a, b) in enumerate(zip(self.src.tolist(), self.tgt.tolist())):
            out.setdefault((a, b), []).append(f)
        return {k: np.array(v, dtype=np.int64) for k, v in out.items()}

    def hom(self, a: int, b: int) -> np.ndarray:
        return self.homs.get((a, b), np.empty(0, dtype=np.int64))

    @cached_property
    def hom_sizes(self) -> np.ndarray:
        h = np.zeros((self.n_objects, self.n_objects), dtype=np.int64)
        np.add.at(h, (self.src, self.tgt), 1)
        return h

    @cached_property
    def _incoming(self) -> list[np.ndarray]:
        order = np.argsort(self.tgt, kind="stable")
        return np.split(order, np.searchsorted(self.tgt[order], np.arange(1, self.n_objects)))

    @cached_property
    def _outgoing(self) -> list[np.ndarray]:
        order = np.argsort(self.src, kind="stable")
        return np.split(order, np.searchsorted(self.src[order], np.arange(1, self.n_objects)))

    def composable_pairs(self):
        """Yield, per middle object, (incoming ids, outgoing ids, composites)."""
        for b in range(self.n_objects):
            f, g = self._incoming[b], self._outgoing[b]
            if len(f) and len(g):
                yield f, g, self.compose_many(f[:, None], g[None, :])

    def validation_witness(self) -> dict[str, Any] | None:
        """First violation of the category laws, or None."""
        idt = self.identities
        if (self.src[idt] != np.arange(self.n_objects)).any() or (self.tgt[idt] != np.arange(self.n_objects)).any():
            return {"law": "identity_endpoints"}
        for f, g, fg in self.composable_pairs():
            if (fg < 0).any():
                i, j = np.argwhere(fg < 0)[0]
                return {"law": "composition_total", "f": int(f[i]), "g": int(g[j])}
            if (self.src[fg] != self.src[f][:, None]).any() or (self.tgt[fg] != self.tgt[g][None, :]).any():
                return {"law": "composition_endpoints"}
        m = np.arange(self.n_morphisms)
        if (self.compose_many(idt[self.src], m) != m).any() or (self.compose_many(m, idt[self.tgt]) != m).any():
            return {"law": "identity_neutral"}
        for b in range(self.n_objects):
            f, g = self._incoming[b], self._outgoing[b]
            if not len(f) or not len(g):
                continue
            for c in np.unique(self.tgt[g]).tolist():
                h = self._outgoing[c]
                gg = g[self.tgt[g] == c]
                fg_c = self.compose_many(f[:, None], gg[None, :])
                left = self.compose_many(fg_c[:, :, None], h[None, None, :])
                right = self.compose_many(f[:, None, None], self.compose_many(gg[:, None], h[None, :])[None, :, :])
                if (left != right).any():
                    i, j, k = np.argwhere(left != right)[0]
                    return {"law": "associativity", "f": int(f[i]), "g": int(gg[j]), "h": int(h[k])}
        return None


class TableCategory(FiniteCategory):
    """Category with an explicit composition table (``comp[f, g]``, -1 when undefined)."""

    def __init__(self, object_labels, src, tgt, identities, comp: Any, morphism_labels=None):
        super().__init__(object_labels, src, tgt, identities, morphism_labels)
        c = np.asarray(comp, dtype=np.int64)
        c.setflags(write=False)
        self.comp = c

    def compose_many(self, f, g):
        return self.comp[f, g]

    def full_table(self) -> np.ndarray:
        return self.comp


class CauchyCompletion(FiniteCategory):
    """C(S): objects the idempotents of S, morphisms (e, s, f) with s = esf."""

    def __init__(self, S: FiniteSemigroup):
        self.semigroup = S
        es = np.array(S.idempotents, dtype=np.int64)
        k = len(es)
        T = S.table
        obj_of = np.full(S.order, -1, dtype=np.int64)
        obj_of[es] = np.arange(k)
        slices = T[T[es][:, :, None], es[None, None, :]]   # [e, x, f] -> e x f
        member = np.zeros((k, S.order, k), dtype=bool)
        ei, _, fi = np.indices(slices.shape)
        member[ei, slices, fi] = True
        mors = np.argwhere(member)                          # sorted (e, s, f)
        mor_id = np.full((k, S.order, k), -1, dtype=np.int64)
        mor_id[mors[:, 0], mors[:, 1], mors[:, 2]] = np.arange(len(mors))
        self.elements = es
        self.object_of = obj_of
        self.payload = mors[:, 1].copy()
        self.mor_id = mor_id
        labels = [f"({S.label(int(es[a]))},{S.label(int(s))},{S.label(int(es[b]))})" for a, s, b in mors]
        identities = mor_id[np.arange(k), es, np.arange(k)]
        super().__init__([S.label(int(e)) for e in es], mors[:, 0], mors[:, 2], identities, labels)

    def compose_many(self, f, g):
        f, g = np.asarray(f), np.asarray(g)
        payload = self.semigroup.table[self.payload[f], self.payload[g]]
        out = self.mor_id[self.src[f], payload, self.tgt[g]]
        return np.where(self.tgt[f] == self.src[g], out, -1)

    def morphism(self, e: int, s: int, f: int) -> int:
        """Id of (e, s, f) given as semigroup elements; -1 if it is not a morphism."""
        a, b = self.object_of[e], self.object_of[f]
        if a < 0 or b < 0:
            return -1
        return int(self.mor_id[a, s, b])


def cauchy_completion(S: FiniteSemigroup) -> CauchyCompletion:
    if not S.is_inverse:
        rep = classify(S)
        if not rep.has_local_units:
            raise AlgebraError("NO_LOCAL_UNITS", "semigroup does not have local units",
                               witness=rep.witnesses["has_local_units"])
    return CauchyCompletion(S)


class FunctorMap:
    def __init__(self, source: FiniteCategory, target: FiniteCategory, object_map: Any, morphism_map: Any):
        self.source = source
        self.target = target
        self.object_map = np.asarray(object_map, dtype=np.int64)
        self.morphism_map = np.asarray(morphism_map, dtype=np.int64)
        if self.object_map.shape != (source.n_objects,) or self.morphism_map.shape != (source.n_morphisms,):
            raise AlgebraError("PARTIAL_MAPPING", "functor data does not cover the source category")
        if (self.object_map < 0).any() or (self.morphism_map < 0).any():
            raise AlgebraError("PARTIAL_MAPPING", "functor data has undefined images")

    def __repr__(self) -> str:
        return f"FunctorMap({self.source!r} -> {self.target!r})"

    def then(self, other: "FunctorMap") -> "FunctorMap":
        return FunctorMap(self.source, other.target, other.object_map[self.object_map],
                          other.morphism_map[self.morphism_map])


@dataclass(frozen=True)
class FunctorReport:
    functorial: bool
    full: bool
    faithful: bool
    essentially_surjective: bool
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def weak_equivalence(self) -> bool:
        return self.functorial and self.full and self.faithful and self.essentially_surjective

    def to_dict(self) -> dict[str, Any]:
        return {
            "functorial": self.functorial,
            "full": self.full,
            "faithful": self.faithful,
            "essentially_surjective": self.essentially_surjective,
            "weak_equivalence": self.weak_equivalence,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def _functoriality_witness(F: FunctorMap) -> dict[str, Any] | None:
    C, D = F.source, F.target
    ob, mo = F.object_map, F.morphism_map
    bad = np.flatnonzero((D.src[mo] != ob[C.src]) | (D.tgt[mo] != ob[C.tgt]))
    if len(bad):
        return {"law": "endpoints", "morphism": int(bad[0])}
    bad = np.flatnonzero(mo[C.identities] != D.identities[ob])
    if len(bad):
        return {"law": "identities", "object": int(bad[0])}
    for f, g, fg in C.composable_pairs():
        lhs = mo[fg]
        rhs = D.compose_many(mo[f][:, None], mo[g][None, :])
        if (lhs != rhs).any():
            i, j = np.argwhere(lhs != rhs)[0]
            return {"law": "composition", "f": int(f[i]), "g": int(g[j])}
    return None


def functor_checks(F: FunctorMap) -> FunctorReport:
    """Functoriality, fullness, faithfulness and essential surjectivity, exhaustively."""
    C, D = F.source, F.target
    ob, mo = F.object_map, F.morphism_map
    w: dict[str, Any] = {}

    bad = _functoriality_witness(F)
    if bad is not None:
        w["functorial"] = bad

    k = C.n_objects
    pair = C.src * k + C.tgt
    keyed = np.unique(np.stack([pair, mo], axis=1), axis=0) if len(mo) else np.empty((0, 2), np.int64)
    faithful = len(keyed) == C.n_morphisms
    if not faithful:
        seen: dict[tuple[int, int], int] = {}
        for f in range(C.n_morphisms):
            key = (int(pair[f]), int(mo[f]))
            if key in seen:
                w["faithful"] = {"f": seen[key], "g": f, "image": int(mo[f])}
                break
            seen[key] = f

    image_counts = np.zeros(k * k, dtype=np.int64)
    np.add.at(image_counts, keyed[:, 0], 1)
    needed = D.hom_sizes[ob[:, None], ob[None, :]].ravel()
    short = np.flatnonzero(image_counts < needed)
    full = len(short) == 0
    if not full:
        a, b = divmod(int(short[0]), k)
        w["full"] = {"source": a, "target": b, "images": int(image_counts[short[0]]), "hom_size": int(needed[short[0]])}

    classes, _ = object_iso_classes(D)
    covered = set(classes[ob].tolist())
    missing = [y for y in range(D.n_objects) if classes[y] not in covered]
    if missing:
        w["essentially_surjective"] = {"object": missing[0]}

    return FunctorReport(
        functorial="functorial" not in w,
        full=full,
        faithful=faithful,
        essentially_surjective=not missing,
        witnesses=w,
    )


def functor_theta(theta: SemigroupMap, source: CauchyCompletion | None = None,
                  target: CauchyCompletion | None = None) -> FunctorMap:
    """The functor (e, s, f) -> (theta(e), theta(s), theta(f)) between Cauchy completions."""
    theta.check_homomorphism()
    C = source if source is not None else cauchy_completion(theta.source)
    D = target if target is not None else cauchy_completion(theta.target)
    img = theta.images
    ob = D.object_of[img[C.elements]]
    mo = D.mor_id[ob[C.src], img[C.payload], ob[C.tgt]]
    if (ob < 0).any() or (mo < 0).any():
        raise AlgebraError("INTERNAL_INCONSISTENCY", "homomorphism image is not a morphism of the target")
    return FunctorMap(C, D, ob, mo)


def functor_psi(S: FiniteSemigroup, p: SandwichFunction, rm: ReesMatrixSemigroup | None = None,
                source: CauchyCompletion | None = None,
                target: CauchyCompletion | None = None) -> FunctorMap:
    """The functor C(RM(S, I, p)) -> C(S).

    A morphism with source object (i, a, j), payload (i, s, k) and target
    object (l, b, k) goes to (a p_ji, s p_kl, b p_kl).
    """
    if rm is None:
        rm = build_rees(S, p, REGULAR, require_mf5=True)
    else:
        from .rees import _require
        _require(S, p, with_mf5=True)
    C = source if source is not None else cauchy_completion(rm.semigroup)
    D = target if target is not None else cauchy_completion(S)
    T, P = S.table, p.entries
    I, X, J = rm.arrays
    # object (l, b, k) -> b p_kl
    oe = C.elements
    obj_elem = T[X[oe], P[J[oe], I[oe]]]
    ob = D.object_of[obj_elem]
    pay = C.payload
    tgt_triple = oe[C.tgt]
    payload_elem = T[X[pay], P[J[tgt_triple], I[tgt_triple]]]
    mo = D.mor_id[ob[C.src], payload_elem, ob[C.tgt]]
    if (ob < 0).any() or (mo < 0).any():
        raise AlgebraError("INTERNAL_INCONSISTENCY", "Psi image is not a morphism of C(S)")
    return FunctorMap(C, D, ob, mo)


def _iso_pair(C: FiniteCategory, x: int, y: int) -> tuple[int, int] | None:
    """(f: x -> y, g: y -> x) with fg = id_x and gf = id_y, least f first."""
    F, G = C.hom(x, y), C.hom(y, x)
    if not len(F) or not len(G):
        return None
    fg = C.compose_many(F[:, None], G[None, :]) == C.identities[x]
    gf = C.compose_many(G[:, None], F[None, :]).T == C.identities[y]
    hit = np.argwhere(fg & gf)
    if not len(hit):
        return None
    i, j = hit[0]
    return int(F[i]), int(G[j])


def object_iso_classes(C: FiniteCategory) -> tuple[np.ndarray, dict[int, tuple[int, int]]]:
    """Isomorphism class of each object, plus isos (rep -> x, x -> rep) per object.

    Class representatives are the least object in each class.
    """
    classes = np.full(C.n_objects, -1, dtype=np.int64)
    isos: dict[int, tuple[int, int]] = {}
    reps: list[int] = []
    end = np.diagonal(C.hom_sizes)
    for y in range(C.n_objects):
        for c, r in enumerate(reps):
            if end[r] != end[y]:
                continue
            pair = _iso_pair(C, r, y)
            if pair is not None:
                classes[y] = c
                isos[y] = pair
                break
        else:
            classes[y] = len(reps)
            reps.append(y)
            idt = int(C.identities[y])
            isos[y] = (idt, idt)
    return classes, isos


@dataclass
class Skeleton:
    """Full subcategory on one representative per iso class, with retraction data.

    ``isos[x] = (i, j)`` where ``i: rep(x) -> x`` and ``j: x -> rep(x)`` are
    mutually inverse; ``embedding`` sends skeleton morphisms to the original ids.
    """

    category: TableCategory
    representatives: list[int]
    object_class: np.ndarray
    isos: dict[int, tuple[int, int]]
    embedding: np.ndarray

    def retraction(self, C: FiniteCategory) -> FunctorMap:
        """The functor C -> skeleton sending f: x -> y to j_x^-1 f j_y, i.e. i_x f j_y."""
        i = np.array([self.isos[x][0] for x in range(C.n_objects)], dtype=np.int64)
        j = np.array([self.isos[x][1] for x in range(C.n_objects)], dtype=np.int64)
        m = np.arange(C.n_morphisms)
        conj = C.compose_many(C.compose_many(i[C.src], m), j[C.tgt])
        back = np.full(C.n_morphisms, -1, dtype=np.int64)
        back[self.embedding] = np.arange(len(self.embedding))
        return FunctorMap(C, self.category, self.object_class, back[conj])

    def inclusion(self, C: FiniteCategory) -> FunctorMap:
        return FunctorMap(self.category, C, np.array(self.representatives), self.embedding)


def skeleton(C: FiniteCategory, max_morphisms: int = DEFAULT_MAX_SKELETON) -> Skeleton:
    classes, isos = object_iso_classes(C)
    reps = sorted({int(np.flatnonzero(classes == c)[0]) for c in range(int(classes.max()) + 1)})
    pos = {r: k for k, r in enumerate(reps)}
    keep = np.flatnonzero(np.isin(C.src, reps) & np.isin(C.tgt, reps))
    if len(keep) > max_morphisms:
        raise AlgebraError("SEARCH_SPACE_TOO_LARGE", f"skeleton has {len(keep)} morphisms (guard {max_morphisms})",
                           witness=int(len(keep)))
    new_id = np.full(C.n_morphisms, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    src = np.array([pos[int(a)] for a in C.src[keep]], dtype=np.int64)
    tgt = np.array([pos[int(b)] for b in C.tgt[keep]], dtype=np.int64)
    comp = np.full((len(keep), len(keep)), -1, dtype=np.int64)
    ok = tgt[:, None] == src[None, :]
    fi, gi = np.nonzero(ok)
    if len(fi):
        comp[fi, gi] = new_id[C.compose_many(keep[fi], keep[gi])]
    cat = TableCategory([C.object_labels[r] for r in reps], src, tgt, new_id[C.identities[reps]], comp,
                        [C.morphism_labels[f] for f in keep])
    return Skeleton(cat, reps, classes, isos, keep)


def _endo_signature(C: TableCategory, f: int) -> tuple:
    a, b = int(C.src[f]), int(C.tgt[f])
    is_identity = f == C.identities[a]
    iso = _is_iso(C, f)
    if a != b:
        return (not is_identity, not iso, -1, -1)
    seen: dict[int, int] = {}
    x, k = f, 1
    while x not in seen:
        seen[x] = k
        x = int(C.comp[x, f])
        k += 1
    return (not is_identity, not iso, seen[x], k - seen[x])


def _is_iso(C: TableCategory, f: int) -> bool:
    a, b = int(C.src[f]), int(C.tgt[f])
    G = C.hom(b, a)
    return bool(((C.comp[f, G] == C.identities[a]) & (C.comp[G, f] == C.identities[b])).any())


def _object_bijections(H: np.ndarray, K: np.ndarray):
    """Yield object bijections phi with H[a, b] == K[phi a, phi b], in lexicographic order."""
    k = H.shape[0]
    phi = [-1] * k
    used = [False] * k

    def rec(a: int):
        if a == k:
            yield list(phi)
            return
        for y in range(k):
            if used[y] or H[a, a] != K[y, y]:
                continue
            if all(H[a, b] == K[y, phi[b]] and H[b, a] == K[phi[b], y] for b in range(a)):
                phi[a], used[y] = y, True
                yield from rec(a + 1)
                phi[a], used[y] = -1, False

    yield from rec(0)


def category_isomorphism(C: TableCategory, D: TableCategory) -> FunctorMap | None:
    """An isomorphism of small categories, searched object map first, then morphisms."""
    if C.n_objects != D.n_objects or C.n_morphisms != D.n_morphisms:
        return None
    H, K = C.hom_sizes, D.hom_sizes
    if sorted(H.ravel().tolist()) != sorted(K.ravel().tolist()):
        return None
    sig_c = [_endo_signature(C, f) for f in range(C.n_morphisms)]
    sig_d = [_endo_signature(D, f) for f in range(D.n_morphisms)]
    order = sorted(range(C.n_morphisms), key=lambda f: (sig_c[f][0], H[C.src[f], C.tgt[f]], f))
    for phi in _object_bijections(H, K):
        candidates = []
        for f in range(C.n_morphisms):
            cand = D.hom(phi[C.src[f]], phi[C.tgt[f]])
            candidates.append([int(g) for g in cand if sig_d[g] == sig_c[f]])
        images = find_bijection(C.comp, D.comp, candidates, order)
        if images is not None:
            return FunctorMap(C, D, phi, images)
    return None


@dataclass
class EquivalenceVerdict:
    equivalent: bool
    witness: FunctorMap | None = None
    skeleton_isomorphism: FunctorMap | None = None
    obstruction: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"equivalent": self.equivalent, "obstruction": self.obstruction}
        if self.skeleton_isomorphism is not None:
            iso = self.skeleton_isomorphism
            out["skeleton_isomorphism"] = {
                "objects": iso.object_map.tolist(),
                "morphisms": iso.morphism_map.tolist(),
            }
            out["skeleton_objects"] = iso.source.n_objects
            out["skeleton_morphisms"] = iso.source.n_morphisms
        return out


def decide_equivalence(C: FiniteCategory, D: FiniteCategory,
                       max_morphisms: int = DEFAULT_MAX_SKELETON) -> EquivalenceVerdict:
    """Equivalent iff the skeletons are isomorphic.

    A positive verdict carries a weak equivalence C -> D (retract onto the
    skeleton, cross the skeleton isomorphism, include into D), certified by
    :func:`functor_checks`.
    """
    sk_c, sk_d = skeleton(C, max_morphisms), skeleton(D, max_morphisms)
    a, b = sk_c.category, sk_d.category
    if a.n_objects != b.n_objects:
        return EquivalenceVerdict(False, obstruction=f"skeleton object counts differ: {a.n_objects} vs {b.n_objects}")
    if a.n_morphisms != b.n_morphisms:
        return EquivalenceVerdict(False, obstruction=f"skeleton morphism counts differ: {a.n_morphisms} vs {b.n_morphisms}")
    if sorted(a.hom_sizes.ravel().tolist()) != sorted(b.hom_sizes.ravel().tolist()):
        return EquivalenceVerdict(False, obstruction="skeleton hom-size multisets differ")
    iso = category_isomorphism(a, b)
    if iso is None:
        return EquivalenceVerdict(False, obstruction="skeletons are not isomorphic")
    weak = sk_c.retraction(C).then(iso).then(sk_d.inclusion(D))
    report = functor_checks(weak)
    if not report.weak_equivalence:
        raise AlgebraError("INTERNAL_INCONSISTENCY", "composite of skeleton data is not a weak equivalence",
                           witness=report.witnesses)
    return EquivalenceVerdict(True, witness=weak, skeleton_isomorphism=iso)


def dump_category(C: FiniteCategory) -> str:
    """Canonical text dump: objects, morphisms, then every composite, sorted by id."""
    lines = [f"object {a} {_clean(lbl)}" for a, lbl in enumerate(C.object_labels)]
    lines += [f"mor {f} {int(C.src[f])} {int(C.tgt[f])} {_clean(C.morphism_labels[f])}"
              for f in range(C.n_morphisms)]
    comps = []
    for f, g, fg in C.composable_pairs():
        for i, j in zip(*np.nonzero(fg >= 0)):
            comps.append((int(f[i]), int(g[j]), int(fg[i, j])))
    comps.sort()
    lines += [f"comp {f} {g} {h}" for f, g, h in comps]
    return "\n".join(lines) + "\n"


def parse_category_dump(text: str) -> TableCategory:
    objects: dict[int, str] = {}
    mors: dict[int, tuple[int, int, str]] = {}
    comps: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        try:
            if parts[0] == "object":
                objects[int(parts[1])] = parts[2] if len(parts) > 2 else parts[1]
            elif parts[0] == "mor":
                mors[int(parts[1])] = (int(parts[2]), int(parts[3]), parts[4] if len(parts) > 4 else parts[1])
            elif parts[0] == "comp":
                comps.append((int(parts[1]), int(parts[2]), int(parts[3])))
            else:
                raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if sorted(objects) != list(range(len(objects))) or sorted(mors) != list(range(len(mors))):
        raise ParseError("object and morphism ids must be 0..k-1")
    src = [mors[f][0] for f in range(len(mors))]
    tgt = [mors[f][1] for f in range(len(mors))]
    comp = np.full((len(mors), len(mors)), -1, dtype=np.int64)
    for f, g, h in comps:
        comp[f, g] = h
    identities = []
    for a in range(len(objects)):
        cands = [f for f in range(len(mors)) if src[f] == a and tgt[f] == a
                 and all(comp[f, g] == g for g in range(len(mors)) if src[g] == a)
                 and all(comp[g, f] == g for g in range(len(mors)) if tgt[g] == a)]
        if not cands:
            raise ParseError(f"object {a} has no identity morphism")
        identities.append(cands[0])
    return TableCategory([objects[a] for a in range(len(objects))], src, tgt, identities, comp,
                         [mors[f][2] for f in range(len(mors))])
