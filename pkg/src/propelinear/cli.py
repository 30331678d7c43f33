"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (or a word is not a
member), 2 on usage or input errors.  Results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import fileio
from .binary import ExplicitCode, word_from_str, word_to_str, weight_distribution
from .bounds import bound_evaluate, shapes_count
from .errors import BudgetExceeded, ConsistencyError, RejectedInput
from .mds import (
    QuasigroupShape,
    IsotopicStructure,
    MdsCode,
    all_shapes,
    check_isotopic,
    check_isotopic_group_lemmas,
    closed_form_structure,
    kernel_bruteforce_quaternary,
    mds_enumerate,
    mds_kernel_characterize,
    quaternary_min_distance,
)
from .phelps import (
    DEFAULT_BUDGET_BYTES,
    PhelpsCode,
    canonical_assignment,
    phelps_code,
    phelps_contains,
    phelps_enumerate,
    phelps_kernel_contains,
)
from .report import VerificationReport
from .verify import (
    check_extended_perfect,
    check_group_axioms,
    check_normalized,
    check_propelinear,
    check_transitive,
    enumerate_normalized,
    kernel_bruteforce_binary,
    kernel_permutations,
    rank_of,
)


class UsageError(Exception):
    pass


def _add_construction(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--n", type=int, required=required, help="MDS length (number of 4-bit blocks)")
    p.add_argument("--shape", default=None, help="cut list i1,i2,... or 'none'")


def _add_mode(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--threads", type=int, default=1)


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--memory-budget", type=int, default=DEFAULT_BUDGET_BYTES // 2 ** 20,
                   metavar="MIB", help="enumeration budget in MiB (default 512)")
    p.add_argument("--force-enumerate", action="store_true", help="ignore enumeration budgets")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="propelinear", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    mds = sub.add_parser("mds", help="quaternary MDS codes").add_subparsers(dest="action", required=True)
    p = mds.add_parser("build")
    _add_construction(p, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--structure-out", type=Path)
    _add_budget(p)
    p = mds.add_parser("verify")
    _add_construction(p)
    p.add_argument("--code", type=Path, help="QCODE file")
    p.add_argument("--structure", type=Path, help="QSTRUCT file (default: closed form)")
    _add_mode(p)
    _add_budget(p)

    ph = sub.add_parser("phelps", help="binary Phelps codes").add_subparsers(dest="action", required=True)
    p = ph.add_parser("build")
    _add_construction(p, required=True)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--out", type=Path)
    p.add_argument("--structure-out", type=Path)
    _add_budget(p)
    p = ph.add_parser("verify")
    _add_construction(p, required=True)
    _add_mode(p)
    _add_budget(p)

    ver = sub.add_parser("verify", help="check a binary code").add_subparsers(dest="action", required=True)
    for name in ("propelinear", "transitive", "perfect"):
        p = ver.add_parser(name)
        p.add_argument("--code", type=Path, help="BINCODE file")
        _add_construction(p)
        if name != "perfect":
            p.add_argument("--structure", type=Path, help="PSTRUCT file")
            _add_mode(p)
        _add_budget(p)

    ana = sub.add_parser("analyze", help="invariants of a binary code").add_subparsers(dest="action", required=True)
    for name in ("kernel", "rank", "weights", "normalized"):
        p = ana.add_parser(name)
        p.add_argument("--code", type=Path, help="BINCODE file")
        _add_construction(p)
        if name == "normalized":
            p.add_argument("--structure", type=Path, help="PSTRUCT file")
            p.add_argument("--all-involutions", action="store_true")
        _add_budget(p)

    p = sub.add_parser("member", help="O(n) membership in a Phelps code")
    _add_construction(p, required=True)
    p.add_argument("--word", required=True)

    p = sub.add_parser("bound", help="evaluate the lower-bound leading term")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", choices=("phelps", "mds"), default="phelps")

    p = sub.add_parser("shapes", help="count quasigroup shapes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true")
    return parser


# -- helpers ------------------------------------------------------------------------------

def _shape(args) -> QuasigroupShape:
    if args.n is None or args.shape is None:
        raise UsageError("--n and --shape are required here")
    return QuasigroupShape.parse(args.n, args.shape)


def _phelps(args) -> PhelpsCode:
    return phelps_code(args.n, _shape(args))


def _budget(args) -> Optional[int]:
    return None if args.force_enumerate else args.memory_budget * 2 ** 20


def _load_code(args) -> ExplicitCode:
    if args.code is not None:
        return fileio.load_bincode(args.code.read_text(encoding="ascii"))
    return phelps_enumerate(_phelps(args), _budget(args))


def _assignment(args, code: ExplicitCode):
    if getattr(args, "structure", None) is not None:
        length, table = fileio.load_pstruct(args.structure.read_text(encoding="ascii"))
        if length != code.length:
            raise RejectedInput(f"structure length {length} differs from code length {code.length}")
        return table
    return canonical_assignment(_phelps(args))


def _emit(report: VerificationReport, length: Optional[int] = None) -> int:
    fmt = (lambda v: word_to_str(v, length) if isinstance(v, int) and v >= 0 else str(v)) if length else str
    sys.stdout.write(report.to_text(fmt))
    return 0 if report.passed else 1


def _qfmt(v) -> str:
    return "".join(map(str, v)) if isinstance(v, tuple) else str(v)


# -- commands ----------------------------------------------------------------------------------

def cmd_mds(args) -> int:
    if args.action == "build":
        shape = _shape(args)
        code = mds_enumerate(shape, None if args.force_enumerate else 4 ** 8)
        text = fileio.dump_qcode(shape, code.words)
        if args.out:
            args.out.write_text(text, encoding="ascii")
        else:
            sys.stdout.write(text)
        if args.structure_out:
            table = closed_form_structure(shape).materialized(code)
            args.structure_out.write_text(fileio.dump_qstruct(table), encoding="ascii")
        return 0

    if args.code is not None:
        shape, words = fileio.load_qcode(args.code.read_text(encoding="ascii"))
        if len(words) != 4 ** (shape.n - 1):
            print(f"RESULT fail\nCHECKED 0\nCOUNTEREXAMPLE {len(words)} {4 ** (shape.n - 1)} size")
            return 1
        code = MdsCode(shape, tuple(words))
    else:
        shape = _shape(args)
        code = mds_enumerate(shape, None if args.force_enumerate else 4 ** 8) if args.mode == "exhaustive" else MdsCode(shape)
    if args.structure is not None:
        structure = IsotopicStructure(shape, fileio.load_qstruct(args.structure.read_text(encoding="ascii")))
    else:
        structure = closed_form_structure(shape)
    report = check_isotopic(code, structure, args.mode, args.seed, args.trials)
    if report.passed and code.words is not None:
        lemmas = check_isotopic_group_lemmas(code, structure)
        if not lemmas.passed:
            report = lemmas
        else:
            d = quaternary_min_distance(code.words)
            kernel = kernel_bruteforce_quaternary(code)
            agree = kernel == [w for w in code.words if mds_kernel_characterize(shape, w)]
            report.notes.update(min_distance=d, kernel_size=len(kernel), kernel_characterization=agree)
            if d != 2 or not agree:
                report = VerificationReport(False, report.checked, (d, len(kernel), "distance or kernel mismatch"))
    sys.stdout.write(report.to_text(_qfmt))
    return 0 if report.passed else 1


def cmd_phelps(args) -> int:
    code = _phelps(args)
    if args.action == "build":
        if not args.enumerate:
            if args.out or args.structure_out:
                raise UsageError("--out/--structure-out need --enumerate")
            print(f"LENGTH {code.length}\nSIZE {code.size}\nSHAPE {code.shape.label()}")
            return 0
        explicit = phelps_enumerate(code, _budget(args))
        text = fileio.dump_bincode(explicit)
        if args.out:
            args.out.write_text(text, encoding="ascii")
        else:
            sys.stdout.write(text)
        if args.structure_out:
            assign = canonical_assignment(code)
            pstruct = fileio.dump_pstruct(code.length, ((w, assign(w)) for w in explicit))
            args.structure_out.write_text(pstruct, encoding="ascii")
        return 0

    assign = canonical_assignment(code)
    if args.mode == "exhaustive":
        explicit = phelps_enumerate(code, _budget(args))
        reports = [
            check_extended_perfect(explicit),
            check_propelinear(explicit, assign, threads=args.threads),
            check_group_axioms(explicit, assign, seed=args.seed, trials=min(args.trials, 10_000)),
        ]
    else:
        reports = [
            check_propelinear(code, assign, "sampled", args.seed, args.trials),
            check_group_axioms(code, assign, "sampled", args.seed, args.trials),
        ]
    status = 0
    for name, report in zip(("perfect", "propelinear", "group") if args.mode == "exhaustive" else ("propelinear", "group"), reports):
        print(f"CHECK {name}")
        status = max(status, _emit(report, code.length))
    return status


def cmd_verify(args) -> int:
    code = _load_code(args)
    if args.action == "perfect":
        return _emit(check_extended_perfect(code), code.length)
    assign = _assignment(args, code)
    check = check_propelinear if args.action == "propelinear" else check_transitive
    report = check(code, assign, args.mode, args.seed, args.trials, args.threads)
    return _emit(report, code.length)


def cmd_analyze(args) -> int:
    code = _load_code(args)
    if args.action == "rank":
        print(f"RANK {rank_of(code)}")
        return 0
    if args.action == "weights":
        wd = weight_distribution(code)
        print("WEIGHTS " + " ".join(f"{w}:{c}" for w, c in wd.items()))
        return 0
    kernel, dim = kernel_bruteforce_binary(code)
    if args.action == "kernel":
        print(f"KERNEL_SIZE {len(kernel)}\nKERNEL_DIM {dim}")
        if args.n is not None and args.shape is not None:
            ph = _phelps(args)
            n, m, logn = ph.n, ph.shape.m, ph.n.bit_length() - 1
            uniform = 3 * n - (2 if m % 2 else 1) - logn
            per_block = 4 * n - m - (2 if m % 2 else 1) - logn
            agree = sorted(kernel) == sorted(w for w in code if phelps_kernel_contains(ph, w))
            print(f"PREDICTED_UNIFORM_DIM {uniform}\nPREDICTED_BLOCK_COUNT_DIM {per_block}")
            print(f"CHARACTERIZATION_AGREES {str(agree).lower()}")
            return 0 if agree else 1
        return 0
    assign = _assignment(args, code)
    report = check_normalized(code, assign, kernel)
    perms = kernel_permutations(assign, kernel)
    found = enumerate_normalized(code, assign, kernel, all_involutions=args.all_involutions)
    report.notes["normalized_structures_found"] = len(found)
    report.notes["kernel_permutations"] = len(perms)
    sys.stdout.write(report.to_text(lambda v: word_to_str(v, code.length)))
    # the structure being non-normalized is a finding, not an error
    return 0


def cmd_member(args) -> int:
    code = _phelps(args)
    word = word_from_str(args.word)
    if len(args.word.strip()) != code.length:
        raise RejectedInput(f"word must have length {code.length}")
    result = phelps_contains(code, word)
    print("true" if result else "false")
    return 0 if result else 1


def cmd_bound(args) -> int:
    print(f"{bound_evaluate(args.n, args.target):.6g}")
    return 0


def cmd_shapes(args) -> int:
    comps, parts = shapes_count(args.n)
    print(f"COMPOSITIONS {comps}\nPARTITIONS {parts}")
    if args.list:
        for s in all_shapes(args.n):
            print(s.label())
    return 0


COMMANDS = {
    "mds": cmd_mds,
    "phelps": cmd_phelps,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "member": cmd_member,
    "bound": cmd_bound,
    "shapes": cmd_shapes,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RejectedInput, BudgetExceeded, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
