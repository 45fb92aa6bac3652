"""Brute-force reference implementations.

Everything here works on plain nested lists with Python loops and never
calls into the library, so agreement with the library is a real cross-check.
"""

from __future__ import annotations

from itertools import permutations, product


def rows(S):
    """Plain list-of-lists copy of a semigroup table."""
    return [list(map(int, r)) for r in S.table]


def assoc_failures(t):
    n = len(t)
    return [(a, b, c) for a, b, c in product(range(n), repeat=3) if t[t[a][b]][c] != t[a][t[b][c]]]


def inverses(t, s):
    return {x for x in range(len(t)) if t[t[s][x]][s] == s and t[t[x][s]][x] == x}


def idempotents(t):
    return [e for e in range(len(t)) if t[e][e] == e]


def unique_inverse(t, s):
    (x,) = inverses(t, s)
    return x


def leq(t, s, u):
    """Natural order on an inverse semigroup: s = s s^-1 u."""
    return t[t[s][unique_inverse(t, s)]][u] == s


def right_ideal(t, s):
    return {s} | {t[s][x] for x in range(len(t))}


def left_ideal(t, s):
    return {s} | {t[x][s] for x in range(len(t))}


def d_classes(t):
    n = len(t)
    R = [[right_ideal(t, a) == right_ideal(t, b) for b in range(n)] for a in range(n)]
    L = [[left_ideal(t, a) == left_ideal(t, b) for b in range(n)] for a in range(n)]
    D = [[any(R[a][u] and L[u][b] for u in range(n)) for b in range(n)] for a in range(n)]
    seen, out = set(), []
    for a in range(n):
        if a not in seen:
            block = tuple(b for b in range(n) if D[a][b])
            seen.update(block)
            out.append(block)
    return sorted(out)


def set_partitions(n):
    """All set partitions of range(n) as canonical first-occurrence class lists."""
    def rec(k, classes, top):
        if k == n:
            yield list(classes)
            return
        for c in range(top + 1):
            classes.append(c)
            yield from rec(k + 1, classes, max(top, c + 1) if c == top else top)
            classes.pop()
    if n == 0:
        yield []
        return
    yield from rec(1, [0], 1)


def is_congruence(t, cls):
    n = len(t)
    for a, b in product(range(n), repeat=2):
        if cls[a] != cls[b]:
            continue
        for c in range(n):
            if cls[t[a][c]] != cls[t[b][c]] or cls[t[c][a]] != cls[t[c][b]]:
                return False
    return True


def quotient_table(t, cls):
    reps = {}
    for a, c in enumerate(cls):
        reps.setdefault(c, a)
    k = len(reps)
    return [[cls[t[reps[x]][reps[y]]] for y in range(k)] for x in range(k)]


def is_inverse_table(t):
    return all(len(inverses(t, s)) == 1 for s in range(len(t)))


def canonical(cls):
    seen = {}
    return [seen.setdefault(c, len(seen)) for c in cls]


def min_inverse_congruence_by_lattice(t):
    """Meet of all congruences with inverse quotient, by enumerating every partition."""
    n = len(t)
    hits = [cls for cls in set_partitions(n) if is_congruence(t, cls) and is_inverse_table(quotient_table(t, cls))]
    meet = [tuple(c[a] for c in hits) for a in range(n)]
    return canonical(meet), hits


def mcalister_verdicts(t, p):
    """MF1-MF5 straight from their definitions, over the natural order of the base."""
    m, n = len(p), len(t)
    inv = [unique_inverse(t, s) for s in range(n)]
    E = idempotents(t)
    r = range(m)
    return {
        "MF1": all(t[p[i][i]][p[i][i]] == p[i][i] for i in r),
        "MF2": all(t[t[p[i][i]][p[i][j]]][p[j][j]] == p[i][j] for i in r for j in r),
        "MF3": all(inv[p[i][j]] == p[j][i] for i in r for j in r),
        "MF4": all(leq(t, t[p[i][j]][p[j][k]], p[i][k]) for i in r for j in r for k in r),
        "MF5": all(any(leq(t, e, p[i][i]) for i in r) for e in E),
    }


def all_sandwiches(n, m):
    for flat in product(range(n), repeat=m * m):
        yield [list(flat[i * m:(i + 1) * m]) for i in range(m)]


def rees_full(t, p):
    """Triples (i, s, j) in lexicographic order and their product table."""
    m, n = len(p), len(t)
    triples = [(i, s, j) for i in range(m) for s in range(n) for j in range(m)]
    idx = {x: k for k, x in enumerate(triples)}
    table = [[idx[(i, t[t[s][p[j][k]]][u], l)] for (k, u, l) in triples] for (i, s, j) in triples]
    return triples, table


def restrict(t, keep):
    pos = {a: k for k, a in enumerate(keep)}
    return [[pos[t[a][b]] for b in keep] for a in keep]


def is_orthodox(t):
    n = len(t)
    if any(not inverses(t, s) for s in range(n)):
        return False
    E = idempotents(t)
    return all(t[t[e][f]][t[e][f]] == t[e][f] for e in E for f in E)


def is_locally_inverse(t):
    for e in idempotents(t):
        local = sorted({t[t[e][s]][e] for s in range(len(t))})
        if not is_inverse_table(restrict(t, local)):
            return False
    return True


def cauchy_hom_sizes(t):
    E = idempotents(t)
    return {(e, f): sum(1 for s in range(len(t)) if t[t[e][s]][f] == s) for e in E for f in E}


def slice_(t, e, f):
    return {t[t[e][s]][f] for s in range(len(t))}


def find_iso(a, b):
    """Isomorphism between two tables by trying every permutation (small orders only)."""
    n = len(a)
    if n != len(b):
        return None
    for perm in permutations(range(n)):
        if all(perm[a[x][y]] == b[perm[x]][perm[y]] for x in range(n) for y in range(n)):
            return perm
    return None


def cauchy_morphisms(t):
    """Sorted (e, s, f) with e, f idempotent and s = e s f."""
    E = idempotents(t)
    return [(e, s, f) for e in E for s in range(len(t)) for f in E if t[t[e][s]][f] == s]


def cauchy_isomorphic(t, e, f):
    """e and f are isomorphic objects of the Cauchy completion."""
    there = [s for (a, s, b) in cauchy_morphisms(t) if (a, b) == (e, f)]
    back = [s for (a, s, b) in cauchy_morphisms(t) if (a, b) == (f, e)]
    return any(t[s][u] == e and t[u][s] == f for s in there for u in back)


def functor_verdicts(src_mors, tgt_mors, tgt_iso, obj_map, mor_map):
    """Full / faithful / essentially surjective from explicit morphism lists.

    ``src_mors`` and ``tgt_mors`` list (source, label, target) per morphism,
    ``mor_map`` sends source morphism index to target morphism index and
    ``tgt_iso(x, y)`` decides whether two target objects are isomorphic.
    """
    src_objs = sorted({m[0] for m in src_mors} | {m[2] for m in src_mors})
    tgt_objs = sorted({m[0] for m in tgt_mors} | {m[2] for m in tgt_mors})
    full = faithful = True
    for a in src_objs:
        for b in src_objs:
            homs = [k for k, m in enumerate(src_mors) if (m[0], m[2]) == (a, b)]
            images = [mor_map[k] for k in homs]
            target = [k for k, m in enumerate(tgt_mors) if (m[0], m[2]) == (obj_map[a], obj_map[b])]
            faithful &= len(set(images)) == len(images)
            full &= set(images) == set(target)
    covered = {obj_map[a] for a in src_objs}
    ess = all(any(tgt_iso(c, y) for c in covered) for y in tgt_objs)
    return {"full": full, "faithful": faithful, "essentially_surjective": ess}


def biset_axiom_failures(s_t, t_t, L, R, bra, ket):
    """First failing instance of each of M1-M7, scanning variables lexicographically."""
    nS, nT, nX = len(s_t), len(t_t), len(bra)
    s_inv = [unique_inverse(s_t, a) for a in range(nS)]
    t_inv = [unique_inverse(t_t, a) for a in range(nT)]
    X, Sx, Tx = range(nX), range(nS), range(nT)
    checks = {
        "M1": ((s, x, y) for s in Sx for x in X for y in X if bra[L[s][x]][y] != s_t[s][bra[x][y]]),
        "M2": ((x, y) for x in X for y in X if bra[y][x] != s_inv[bra[x][y]]),
        "M3": ((x,) for x in X if L[bra[x][x]][x] != x),
        "M4": ((x, y, t) for x in X for y in X for t in Tx if ket[x][R[y][t]] != t_t[ket[x][y]][t]),
        "M5": ((x, y) for x in X for y in X if ket[x][y] != t_inv[ket[y][x]]),
        "M6": ((x,) for x in X if R[x][ket[x][x]] != x),
        "M7": ((x, y, z) for x in X for y in X for z in X if L[bra[x][y]][z] != R[x][ket[y][z]]),
    }
    return {name: next(gen, None) for name, gen in checks.items()}
