"""Command-line front end.

Reports are canonical JSON on stdout (sorted keys, no timing); a one-line
summary with the elapsed time goes to stderr.

Exit codes: 0 success / equivalent, 1 domain violation (report carries the
witness), 2 unreadable input, 3 verified not equivalent.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import io
from .biset import synthesize_partner, validate_biset
from .category import (
    cauchy_completion,
    decide_equivalence,
    dump_category,
    functor_checks,
    object_iso_classes,
    skeleton,
)
from .errors import AlgebraError, ParseError
from .morphisms import find_isomorphism, is_local_isomorphism
from .rees import (
    FULL,
    REGULAR,
    SandwichFunction,
    build_im,
    build_rees,
    enumerate_mcalister,
    gamma_closed_form,
    is_idempotent_triple,
    is_regular_triple,
    validate_mcalister,
)
from .semigroup import FiniteSemigroup, classify, green_D, min_inverse_congruence, natural_order

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_NOT_EQUIVALENT = 3


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    error: dict[str, Any] | None = None
    exit_code: int = EXIT_OK
    timing_ms: float = 0.0
    fmt: str = "json"

    def canonical(self) -> dict[str, Any]:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "data": self.data,
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_json(self) -> str:
        return json.dumps(self.canonical(), sort_keys=True, indent=2, default=_jsonable) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for name, digest in sorted(self.inputs.items()):
            lines.append(f"input {name}: sha256 {digest[:16]}")
        for name, ok in sorted(self.verdicts.items()):
            lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
            if not ok and name in self.witnesses:
                lines.append(f"     witness: {json.dumps(self.witnesses[name], sort_keys=True, default=_jsonable)}")
        for key, value in sorted(self.data.items()):
            if isinstance(value, str) and "\n" in value:
                lines.append(f"{key}:")
                lines.append(value.rstrip("\n"))
            else:
                lines.append(f"{key}: {json.dumps(value, sort_keys=True, default=_jsonable)}")
        if self.error is not None:
            lines.append(f"error: {self.error['code']}: {json.dumps(self.error.get('witness'), default=_jsonable)}")
        lines.append(f"exit: {self.exit_code}")
        return "\n".join(lines) + "\n"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


class _Inputs:
    """Reads input files once, recording a digest for the report."""

    def __init__(self, report: RunReport):
        self.report = report

    def text(self, name: str, path: str) -> str:
        text = io.read_text(path)
        self.report.inputs[name] = hashlib.sha256(text.encode()).hexdigest()
        return text

    def semigroup(self, name: str, path: str) -> FiniteSemigroup:
        return io.parse_semigroup(self.text(name, path))


def _write(prefix: str | None, suffix: str, content: str, report: RunReport) -> None:
    if prefix is None:
        return
    path = Path(f"{prefix}{suffix}")
    path.write_text(content)
    report.data.setdefault("written", []).append(path.name)


def _finish_verdicts(report: RunReport) -> None:
    if not all(report.verdicts.values()):
        report.exit_code = EXIT_VIOLATION


def _strict_order_pairs(S: FiniteSemigroup) -> list[list[int]]:
    le = natural_order(S)
    return [[int(s), int(t)] for s, t in np.argwhere(le) if s != t]


def cmd_analyze(args, report: RunReport, inputs: _Inputs) -> None:
    S = inputs.semigroup("semigroup", args.semigroup)
    cls = classify(S)
    flags = cls.to_dict()
    witnesses = flags.pop("witnesses")
    report.data.update({
        "order": S.order,
        "classification": flags,
        "idempotents": list(S.idempotents),
        "d_classes": [list(b) for b in green_D(S)],
    })
    report.witnesses.update(witnesses)
    if S.is_inverse:
        report.data["natural_order"] = _strict_order_pairs(S)
        report.data["inverses"] = S.inv.tolist()
        if args.oracle:
            le = natural_order(S)
            es = list(S.idempotents)
            report.verdicts["natural_order_on_idempotents"] = all(
                bool(le[e, f]) == (S.mul(e, f) == e == S.mul(f, e)) for e in es for f in es
            )
    if cls.is_orthodox:
        report.data["min_inverse_congruence"] = [list(b) for b in min_inverse_congruence(S).blocks()]
    _finish_verdicts(report)


def _load_pair(args, inputs: _Inputs):
    S = inputs.semigroup("semigroup", args.semigroup)
    p = io.parse_sandwich(inputs.text("sandwich", args.sandwich), S)
    return S, p


def cmd_mcalister_check(args, report: RunReport, inputs: _Inputs) -> None:
    S, p = _load_pair(args, inputs)
    mc = validate_mcalister(S, p)
    report.data["index_size"] = p.index_size
    report.verdicts.update(mc.verdicts)
    report.witnesses.update(mc.witnesses)
    _finish_verdicts(report)


def _guard_rees(S: FiniteSemigroup, m: int, max_size: int) -> None:
    if m * m * S.order > max_size:
        raise AlgebraError("SEARCH_SPACE_TOO_LARGE", f"|I|^2 |S| = {m * m * S.order} exceeds --max-size {max_size}")


def _rees_oracle_verdicts(S, p, rm_regular, report: RunReport) -> None:
    """Closed-form triple criteria and gamma against brute force."""
    full = build_rees(S, p, FULL)
    v = full.semigroup.inverse_matrix.any(axis=1)
    idem = full.semigroup.idempotent_mask
    reg_bad = [list(t) for k, t in enumerate(full.triples) if is_regular_triple(p, t) != bool(v[k])]
    idem_bad = [list(t) for k, t in enumerate(full.triples) if is_idempotent_triple(p, t) != bool(idem[k])]
    report.verdicts["regular_closed_form_agrees"] = not reg_bad
    report.verdicts["idempotent_closed_form_agrees"] = not idem_bad
    if reg_bad:
        report.witnesses["regular_closed_form_agrees"] = reg_bad[0]
    if idem_bad:
        report.witnesses["idempotent_closed_form_agrees"] = idem_bad[0]
    sg = rm_regular.semigroup
    es = np.array(sg.idempotents)
    report.verdicts["idempotents_closed"] = bool(sg.idempotent_mask[sg.table[np.ix_(es, es)]].all())
    gamma_ok = gamma_closed_form(rm_regular) == min_inverse_congruence(sg)
    report.verdicts["gamma_closed_form_agrees"] = gamma_ok


def cmd_build_rm(args, report: RunReport, inputs: _Inputs) -> None:
    S, p = _load_pair(args, inputs)
    _guard_rees(S, p.index_size, args.max_size)
    mode = FULL if args.full else REGULAR
    rm = build_rees(S, p, mode)
    cls = classify(rm.semigroup).to_dict()
    report.witnesses.update(cls.pop("witnesses"))
    report.data.update({
        "mode": mode,
        "order": len(rm),
        "triples": [list(t) for t in rm.triples],
        "idempotent_count": len(rm.semigroup.idempotents),
        "classification": cls,
    })
    if args.oracle:
        _rees_oracle_verdicts(S, p, rm if mode == REGULAR else build_rees(S, p, REGULAR), report)
    if mode == REGULAR:
        report.verdicts["orthodox"] = cls["is_orthodox"]
        report.verdicts["locally_inverse"] = cls["is_locally_inverse"]
    _write(args.out, ".rm.semigroup", io.format_semigroup(rm.semigroup), report)
    _finish_verdicts(report)


def cmd_build_im(args, report: RunReport, inputs: _Inputs) -> None:
    S, p = _load_pair(args, inputs)
    _guard_rees(S, p.index_size, args.max_size)
    mc = validate_mcalister(S, p)
    report.verdicts.update(mc.verdicts)
    report.witnesses.update(mc.witnesses)
    if not mc.ok:
        report.error = {"code": "MCALISTER_VIOLATION", "failed": mc.failures()}
        report.exit_code = EXIT_VIOLATION
        return
    im = build_im(S, p, check=False)
    _rees_oracle_verdicts(S, p, im.rm, report)
    rm_cls = classify(im.rm.semigroup)
    report.verdicts["rm_generalized_inverse"] = rm_cls.is_generalized_inverse
    report.verdicts["rm_locally_inverse"] = rm_cls.is_locally_inverse
    report.verdicts["im_inverse"] = im.semigroup.is_inverse
    report.verdicts["projection_local_isomorphism"] = bool(is_local_isomorphism(im.projection))
    iso = find_isomorphism(im.semigroup, S)
    report.data.update({
        "rm_order": len(im.rm),
        "im_order": im.semigroup.order,
        "gamma_classes": [list(b) for b in im.gamma.blocks()],
        "im_table": im.semigroup.to_lists(),
        "iso_to_input": iso is not None,
    })
    if iso is not None:
        report.data["isomorphism_to_input"] = iso.images.tolist()
    if args.oracle:
        report.verdicts["morita_equivalent_to_input"] = decide_equivalence(
            cauchy_completion(S), cauchy_completion(im.semigroup), args.max_size).equivalent
    _write(args.out, ".im.semigroup", io.format_semigroup(im.semigroup), report)
    _finish_verdicts(report)


def cmd_cauchy(args, report: RunReport, inputs: _Inputs) -> None:
    S = inputs.semigroup("semigroup", args.semigroup)
    C = cauchy_completion(S)
    classes, _ = object_iso_classes(C)
    sk = skeleton(C, args.max_size)
    report.data.update({
        "objects": list(C.object_labels),
        "morphism_count": C.n_morphisms,
        "hom_sizes": C.hom_sizes.tolist(),
        "iso_classes": classes.tolist(),
        "skeleton_objects": sk.category.n_objects,
        "skeleton_morphisms": sk.category.n_morphisms,
    })
    if args.oracle:
        bad = C.validation_witness()
        report.verdicts["category_laws"] = bad is None
        if bad is not None:
            report.witnesses["category_laws"] = bad
    dump = dump_category(C)
    if args.format == "text":
        report.data["dump"] = dump
    _write(args.out, ".cat", dump, report)
    _finish_verdicts(report)


def cmd_equiv(args, report: RunReport, inputs: _Inputs) -> None:
    A = inputs.semigroup("a", args.a)
    B = inputs.semigroup("b", args.b)
    verdict = decide_equivalence(cauchy_completion(A), cauchy_completion(B), args.max_size)
    report.data.update(verdict.to_dict())
    report.verdicts["equivalent"] = verdict.equivalent
    if verdict.equivalent:
        if args.oracle:
            checks = functor_checks(verdict.witness)
            report.verdicts["witness_weak_equivalence"] = checks.weak_equivalence
        report.exit_code = EXIT_OK if all(report.verdicts.values()) else EXIT_VIOLATION
    else:
        report.witnesses["equivalent"] = {"obstruction": verdict.obstruction}
        report.exit_code = EXIT_NOT_EQUIVALENT


def _biset_verdicts(B, report: RunReport) -> bool:
    rep = validate_biset(B)
    report.verdicts.update(rep.checks)
    report.witnesses.update(rep.witnesses)
    failures = rep.failures()
    if failures:
        first = failures[0]
        report.error = {"code": "BISET_INVALID", "first_failure": first, "witness": rep.witnesses[first]}
        report.exit_code = EXIT_VIOLATION
    return not failures


def cmd_verify_biset(args, report: RunReport, inputs: _Inputs) -> None:
    B = io.parse_biset(inputs.text("biset", args.biset))
    report.data.update({"S_order": B.S.order, "T_order": B.T.order, "X_size": B.size})
    _biset_verdicts(B, report)


def cmd_biset_to_im(args, report: RunReport, inputs: _Inputs) -> None:
    B = io.parse_biset(inputs.text("biset", args.biset))
    _guard_rees(B.S, B.size, args.max_size)
    report.data.update({"S_order": B.S.order, "T_order": B.T.order, "X_size": B.size})
    if not _biset_verdicts(B, report):
        return
    partner = synthesize_partner(B, validate=False)
    im = partner.im
    report.verdicts["mcalister_from_biset"] = im.report.ok
    report.verdicts["iso_to_T"] = partner.isomorphism.is_isomorphism()
    report.data.update({
        "rm_order": len(im.rm),
        "im_order": im.semigroup.order,
        "im_table": im.semigroup.to_lists(),
        "isomorphism_to_T": partner.isomorphism.images.tolist(),
    })
    if args.oracle:
        report.verdicts["morita_equivalent"] = decide_equivalence(
            cauchy_completion(B.S), cauchy_completion(B.T), args.max_size).equivalent
    _write(args.out, ".im.semigroup", io.format_semigroup(im.semigroup), report)
    _finish_verdicts(report)


def cmd_enumerate_mcalister(args, report: RunReport, inputs: _Inputs) -> None:
    S = inputs.semigroup("semigroup", args.semigroup)
    found = []
    count = 0
    for p in enumerate_mcalister(S, args.index_size):
        count += 1
        if args.limit is None or len(found) < args.limit:
            found.append(p.to_lists())
        if args.oracle and not validate_mcalister(S, p).ok:
            report.verdicts["all_valid"] = False
            report.witnesses["all_valid"] = p.to_lists()
    if args.oracle:
        report.verdicts.setdefault("all_valid", True)
    report.data.update({"index_size": args.index_size, "count": count, "functions": found})
    if args.out is not None:
        for k, entries in enumerate(found):
            _write(args.out, f".{k}.sandwich", io.format_sandwich(SandwichFunction(S, entries)), report)
    _finish_verdicts(report)


COMMANDS: dict[str, Callable] = {
    "analyze": cmd_analyze,
    "mcalister-check": cmd_mcalister_check,
    "build-rm": cmd_build_rm,
    "build-im": cmd_build_im,
    "cauchy": cmd_cauchy,
    "equiv": cmd_equiv,
    "verify-biset": cmd_verify_biset,
    "biset-to-im": cmd_biset_to_im,
    "enumerate-mcalister": cmd_enumerate_mcalister,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--oracle", action="store_true",
                        help="also run brute-force oracles and fail on disagreement")
    common.add_argument("--max-size", type=int, default=10000,
                        help="guard on Rees triple counts and skeleton sizes")
    common.add_argument("--out", metavar="PREFIX", default=None, help="write artifacts with this path prefix")

    parser = argparse.ArgumentParser(prog="morita", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="classify a semigroup")
    p.add_argument("semigroup")
    for name, hlp in (("mcalister-check", "check MF1-MF5"),
                      ("build-rm", "build the (regular) Rees matrix semigroup"),
                      ("build-im", "build the inverse Rees matrix semigroup")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("semigroup")
        p.add_argument("sandwich")
        if name == "build-rm":
            p.add_argument("--full", action="store_true", help="all triples, not only the regular ones")
    p = sub.add_parser("cauchy", parents=[common], help="Cauchy completion and its skeleton")
    p.add_argument("semigroup")
    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of Cauchy completions")
    p.add_argument("a")
    p.add_argument("b")
    for name, hlp in (("verify-biset", "check an equivalence biset"),
                      ("biset-to-im", "rebuild the partner semigroup from a biset")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("biset")
    p = sub.add_parser("enumerate-mcalister", parents=[common], help="list all McAlister functions")
    p.add_argument("semigroup")
    p.add_argument("--index-size", "-m", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    return parser


def run(argv: list[str] | None = None) -> RunReport:
    args = build_parser().parse_args(argv)
    report = RunReport(args.command, fmt=args.format)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report, _Inputs(report))
    except ParseError as exc:
        report.error = {"code": "PARSE_ERROR", "message": str(exc)}
        report.exit_code = EXIT_PARSE
    except AlgebraError as exc:
        report.error = exc.to_dict()
        report.exit_code = EXIT_VIOLATION
    report.timing_ms = (time.perf_counter() - start) * 1000
    report.fmt = args.format
    return report


def main(argv: list[str] | None = None) -> int:
    report = run(argv)
    out = report.to_text() if report.fmt == "text" else report.to_json()
    sys.stdout.write(out)
    status = {0: "ok", 1: "violation", 2: "parse error", 3: "not equivalent"}[report.exit_code]
    detail = f" [{report.error['code']}]" if report.error else ""
    print(f"{report.command}: {status}{detail} ({report.timing_ms:.1f} ms)", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
