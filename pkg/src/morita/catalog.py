"""Small named semigroups used as fixtures and as the verification corpus."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .semigroup import FiniteSemigroup

# A partial bijection on {0..d-1} is a tuple whose i-th entry is the image of
# i, or -1 where undefined. Products compose left to right: (ab)(x) = b(a(x)).
PartialBijection = tuple[int, ...]


def trivial() -> FiniteSemigroup:
    return FiniteSemigroup([[0]], ["0"])


def chain(n: int) -> FiniteSemigroup:
    """Semilattice e0 < e1 < ... < e(n-1) with meet as product."""
    return FiniteSemigroup([[min(a, b) for b in range(n)] for a in range(n)],
                           [f"e{i}" for i in range(n)])


def cyclic_group(n: int) -> FiniteSemigroup:
    labels = ["1"] + (["a"] if n == 2 else [f"a{k}" for k in range(1, n)])
    return FiniteSemigroup([[(a + b) % n for b in range(n)] for a in range(n)], labels)


def brandt(k: int = 2) -> FiniteSemigroup:
    """Aperiodic Brandt semigroup B_k: zero plus matrix units (i, j), 1 <= i, j <= k.

    Element 0 is the zero; (i, j) has id 1 + (i-1)*k + (j-1). For k = 2 this
    gives 1 = (1,1), 2 = (1,2), 3 = (2,1), 4 = (2,2).
    """
    units = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
    idx = {u: n + 1 for n, u in enumerate(units)}
    elems = [None] + units

    def mul(x, y):
        if x is None or y is None or x[1] != y[0]:
            return 0
        return idx[(x[0], y[1])]

    table = [[mul(x, y) for y in elems] for x in elems]
    return FiniteSemigroup(table, ["0"] + [f"({i},{j})" for i, j in units])


def right_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([list(range(n)) for _ in range(n)], [f"r{i}" for i in range(n)])


def adjoin_identity(S: FiniteSemigroup, label: str = "1") -> FiniteSemigroup:
    n = S.order
    table = [row + [a] for a, row in enumerate(S.to_lists())]
    table.append(list(range(n + 1)))
    labels = [S.label(a) for a in range(n)] + [label]
    return FiniteSemigroup(table, labels, check=False)


def compose_partial(a: PartialBijection, b: PartialBijection) -> PartialBijection:
    return tuple(-1 if x == -1 else b[x] for x in a)


def invert_partial(a: PartialBijection) -> PartialBijection:
    out = [-1] * len(a)
    for i, x in enumerate(a):
        if x != -1:
            out[x] = i
    return tuple(out)


def _label_partial(a: PartialBijection) -> str:
    return "{" + ",".join(f"{i}>{x}" for i, x in enumerate(a) if x != -1) + "}"


def from_partial_bijections(elements: Sequence[PartialBijection]) -> FiniteSemigroup:
    """Semigroup on an explicit set of partial bijections, which must be closed."""
    elems = sorted(set(elements), key=lambda a: (sum(x != -1 for x in a), a))
    idx = {a: i for i, a in enumerate(elems)}
    table = [[idx[compose_partial(a, b)] for b in elems] for a in elems]
    return FiniteSemigroup(table, [_label_partial(a) for a in elems], check=False)


def symmetric_inverse_monoid(d: int) -> FiniteSemigroup:
    """All partial bijections of a d-element set (7 elements for d = 2)."""
    elems = []
    for images in product(range(-1, d), repeat=d):
        defined = [x for x in images if x != -1]
        if len(defined) == len(set(defined)):
            elems.append(tuple(images))
    return from_partial_bijections(elems)


def inverse_closure(generators: Iterable[PartialBijection]) -> FiniteSemigroup:
    """Inverse subsemigroup of a symmetric inverse monoid generated by the given partial bijections."""
    gens = set()
    for g in generators:
        gens.add(tuple(g))
        gens.add(invert_partial(tuple(g)))
    if not gens:
        raise ValueError("need at least one generator")
    elems = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                for c in (compose_partial(a, g), compose_partial(g, a)):
                    if c not in elems:
                        new.add(c)
        elems |= new
        frontier = new
    return from_partial_bijections(elems)


def corpus() -> dict[str, FiniteSemigroup]:
    """The named inverse semigroups used as the verification corpus."""
    return {
        "trivial": trivial(),
        "E2": chain(2),
        "E3": chain(3),
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "B2": brandt(2),
        "SIM2": symmetric_inverse_monoid(2),
    }
