"""Text and JSON file formats for semigroups, sandwich matrices and bisets.

Semigroup text format::

    semigroup 2
    # label 0 e0
    # label 1 e1
    0 0
    0 1

Sandwich text format is the same with a ``sandwich m`` header. Both also
accept JSON (``{"order": n, "table": ...}`` / ``{"index_size": m, "entries": ...}``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .biset import EquivalenceBiset
from .errors import ParseError
from .rees import SandwichFunction
from .semigroup import FiniteSemigroup, validate_table


def _parse_grid(text: str, keyword: str) -> tuple[list[list[int]], dict[int, str]]:
    header: int | None = None
    rows: list[list[int]] = []
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 2)
            if len(parts) >= 2 and parts[0] == "label":
                try:
                    idx = int(parts[1])
                except ValueError:
                    raise ParseError(f"line {lineno}: bad label index {parts[1]!r}") from None
                labels[idx] = parts[2].strip() if len(parts) > 2 else parts[1]
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != keyword:
                raise ParseError(f"line {lineno}: expected header '{keyword} <n>'")
            try:
                header = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad size {parts[1]!r}") from None
            if header < 0:
                raise ParseError(f"line {lineno}: negative size")
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry") from None
        if len(row) != header:
            raise ParseError(f"line {lineno}: expected {header} entries, got {len(row)}")
        rows.append(row)
    if header is None:
        raise ParseError(f"missing '{keyword} <n>' header")
    if len(rows) != header:
        raise ParseError(f"expected {header} rows, got {len(rows)}")
    return rows, labels


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _square(obj: Any, size_key: str, grid_key: str) -> list[list[int]]:
    if not isinstance(obj, dict) or grid_key not in obj:
        raise ParseError(f"JSON object with '{grid_key}' expected")
    grid = obj[grid_key]
    n = obj.get(size_key, len(grid) if isinstance(grid, list) else None)
    if not isinstance(grid, list) or not all(isinstance(r, list) and len(r) == n for r in grid) or len(grid) != n:
        raise ParseError(f"'{grid_key}' must be a {n} x {n} grid")
    if not all(isinstance(v, int) and not isinstance(v, bool) for r in grid for v in r):
        raise ParseError(f"'{grid_key}' entries must be integers")
    return grid


def semigroup_from_json(obj: Any) -> FiniteSemigroup:
    table = _square(obj, "order", "table")
    if not table:
        raise ParseError("semigroup must have at least one element")
    labels = obj.get("labels")
    return validate_table(table, labels)


def parse_semigroup(text: str) -> FiniteSemigroup:
    if text.lstrip().startswith("{"):
        return semigroup_from_json(_load_json(text))
    rows, labels = _parse_grid(text, "semigroup")
    if not rows:
        raise ParseError("semigroup must have at least one element")
    lbls = [labels.get(i, str(i)) for i in range(len(rows))] if labels else None
    return validate_table(rows, lbls)


def format_semigroup(S: FiniteSemigroup) -> str:
    lines = [f"semigroup {S.order}"]
    if S.labels is not None:
        lines += [f"# label {i} {S.labels[i]}" for i in range(S.order)]
    lines += [" ".join(str(v) for v in row) for row in S.to_lists()]
    return "\n".join(lines) + "\n"


def semigroup_to_json(S: FiniteSemigroup) -> dict[str, Any]:
    out: dict[str, Any] = {"order": S.order, "table": S.to_lists()}
    if S.labels is not None:
        out["labels"] = list(S.labels)
    return out


def parse_sandwich(text: str, base: FiniteSemigroup) -> SandwichFunction:
    if text.lstrip().startswith("{"):
        entries = _square(_load_json(text), "index_size", "entries")
    else:
        entries, _ = _parse_grid(text, "sandwich")
    return SandwichFunction(base, entries)


def format_sandwich(p: SandwichFunction) -> str:
    lines = [f"sandwich {p.index_size}"] + [" ".join(str(v) for v in row) for row in p.to_lists()]
    return "\n".join(lines) + "\n"


def biset_from_json(obj: Any) -> EquivalenceBiset:
    if not isinstance(obj, dict):
        raise ParseError("biset JSON must be an object")
    missing = [k for k in ("S", "T", "X_size", "left_action", "right_action", "bra", "ket") if k not in obj]
    if missing:
        raise ParseError(f"biset JSON lacks {', '.join(missing)}")
    S, T = semigroup_from_json(obj["S"]), semigroup_from_json(obj["T"])
    if not isinstance(obj["X_size"], int):
        raise ParseError("X_size must be an integer")
    return EquivalenceBiset(S, T, obj["X_size"], obj["left_action"], obj["right_action"], obj["bra"], obj["ket"])


def parse_biset(text: str) -> EquivalenceBiset:
    return biset_from_json(_load_json(text))


def biset_to_json(B: EquivalenceBiset) -> dict[str, Any]:
    return {
        "S": semigroup_to_json(B.S),
        "T": semigroup_to_json(B.T),
        "X_size": B.size,
        "left_action": B.left_action.tolist(),
        "right_action": B.right_action.tolist(),
        "bra": B.bra.tolist(),
        "ket": B.ket.tolist(),
    }


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
