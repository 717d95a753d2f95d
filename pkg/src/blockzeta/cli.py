"""Command-line front end.

Exit codes: 0 success, 1 verification refuted, 2 usage or parse error.
Subcommands communicate through JSON on stdout/stdin so that generation
and verification pipelines compose.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import identities as ident_mod
from . import serial
from .derivation import collapse_cyclic_rights, closure_comb, kernel_report
from .identities import (
    Identity,
    Zeta123Form,
    gen_altodd_even,
    gen_altodd_odd,
    gen_bbbl,
    gen_composition_sums,
    gen_cyc123,
    gen_cyclic_basic,
    gen_cyclic_full,
    gen_double_alt,
    gen_general_hoffman,
    gen_hoffman,
    gen_sym_family,
    gen_symmetric,
)
from .lincomb import LinComb
from .numerics import DEFAULT_DIGITS, verify
from .rank import table_row
from .reflect import reflective_closure
from .regalgebra import regularise_word
from .words import (
    BlockDecomposition,
    ParseError,
    Word,
    ZetaComposition,
    block_decompose,
    mzv_to_word,
    word_of,
    word_to_mzv,
)


def _ints(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(p.strip()) for p in text.split(","))


def _tokens(text: str) -> tuple[str, ...]:
    out = []
    rest = text.strip()
    while rest:
        if rest.startswith("(1,2)"):
            out.append("T")
            rest = rest[5:]
        elif rest[0] in "13":
            out.append(rest[0])
            rest = rest[1:]
        elif rest[0] in ", ":
            rest = rest[1:]
        else:
            raise ParseError(f"invalid 123 argument string near {rest[:6]!r}", 0)
    return tuple(out)


def build_identity(args) -> Identity:
    fam = args.family
    if fam == "symmetric":
        return gen_symmetric(BlockDecomposition(0, _ints(args.lengths)))
    if fam == "cyclic-basic":
        return gen_cyclic_basic(_ints(args.lengths))
    if fam == "cyclic-full":
        return gen_cyclic_full(_ints(args.lengths), mode=args.mode)
    if fam == "bbbl":
        return gen_bbbl(_ints(args.b))
    if fam == "hoffman":
        b = _ints(args.b)
        if len(b) != 3:
            raise ParseError("hoffman needs --b b1,b2,b3", 0)
        return gen_hoffman(*b)
    if fam == "general-hoffman":
        return gen_general_hoffman(args.n, _ints(args.b), args.c)
    if fam == "cyc123":
        return gen_cyc123(Zeta123Form(_tokens(args.a), _ints(args.b)))
    if fam in ("bowman-bradley", "z1333-compsum", "further-13332n"):
        return gen_composition_sums(fam, args.m, args.n)
    if fam == "z13312-sym":
        return gen_sym_family(fam, {"b": _ints(args.b)})
    if fam == "thm-2-7-1":
        return gen_sym_family(fam, {"m": args.m})
    if fam == "altodd-even":
        return gen_altodd_even(_ints(args.lengths))
    if fam == "altodd-odd":
        return gen_altodd_odd(_ints(args.lengths), args.x)
    if fam == "double-alt":
        return gen_double_alt(_ints(args.lengths))
    raise ParseError(f"unknown family {fam!r}", 0)


def cmd_decompose(args) -> int:
    w = Word.parse(args.word)
    B = block_decompose(w)
    if args.format == "json":
        print(serial.dumps({"word": str(w), "blocks": str(B), "weight": B.weight}))
    else:
        print(B)
    return 0


def cmd_word(args) -> int:
    B = BlockDecomposition.parse(args.blocks)
    w = word_of(B)
    if args.format == "json":
        print(serial.dumps({"blocks": str(B), "word": str(w)}))
    else:
        print(w)
    return 0


def cmd_mzv(args) -> int:
    text = args.value.strip()
    if text.startswith("z("):
        comp = ZetaComposition.parse(text)
        w, sign = mzv_to_word(comp)
        payload = {"zeta": str(comp), "word": str(w), "sign": sign}
        line = f"{w} sign {sign:+d}"
    else:
        w = Word.parse(text)
        comp, sign = word_to_mzv(w)
        payload = {"word": str(w), "zeta": str(comp), "sign": sign}
        line = f"{comp} sign {sign:+d}"
    print(serial.dumps(payload) if args.format == "json" else line)
    return 0


def cmd_regularise(args) -> int:
    w = Word.parse(args.word)
    comb = regularise_word(w)
    if args.format == "json":
        print(serial.dumps(serial.lincomb_to_json(comb)))
    elif args.format == "latex":
        print(serial.lincomb_to_latex(comb))
    else:
        print(comb)
    return 0


def cmd_generate(args) -> int:
    ident = build_identity(args)
    if args.format == "latex":
        print(serial.identity_to_latex(ident))
    elif args.format == "text":
        print(ident.describe())
        print("lhs =", ident.lhs)
    else:
        print(serial.dumps(serial.identity_to_json(ident)))
    return 0


def _verify_payload(payload: str, digits: int, max_den: int):
    ident = serial.identity_from_json(json.loads(payload))
    return verify(ident, digits, max_den)


def cmd_verify(args) -> int:
    if args.family:
        idents = [build_identity(args)]
    else:
        lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
        idents = [serial.identity_from_json(json.loads(ln)) for ln in lines]
    if args.jobs > 1 and len(idents) > 1:
        payloads = [serial.dumps(serial.identity_to_json(i)) for i in idents]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(
                pool.map(
                    _verify_payload,
                    payloads,
                    [args.digits] * len(payloads),
                    [args.max_den] * len(payloads),
                )
            )
    else:
        reports = [verify(i, args.digits, args.max_den) for i in idents]
    worst = 0
    for rep in reports:
        if args.format == "json":
            print(serial.dumps(serial.report_to_json(rep)))
        else:
            print(rep)
        if rep.status == "refuted":
            worst = 1
    return worst


def cmd_dkernel(args) -> int:
    lengths = _ints(args.lengths)
    if args.set == "closure":
        S = reflective_closure([BlockDecomposition(0, lengths)])
        comb = closure_comb(S)
    elif args.set == "cyclic":
        comb = ident_mod.cyclic_sum(lengths)
    elif args.set == "symmetric":
        comb = gen_symmetric(BlockDecomposition(0, lengths)).lhs
    else:
        raise ParseError(f"unknown set kind {args.set!r}", 0)
    report = kernel_report(comb)
    residue = report.residue
    if args.grade:
        residue = LinComb(
            {t: c for t, c in residue.items() if t.grade == args.grade}
        )
    if args.collapse:
        residue = collapse_cyclic_rights(residue)
    if args.format == "json":
        print(
            serial.dumps(
                {
                    "vanishes": report.vanishes,
                    "weight": report.weight,
                    "conclusion": report.conclusion,
                    "residue": serial.residue_to_json(residue),
                }
            )
        )
    else:
        print(report.conclusion)
        for item in serial.residue_to_json(residue):
            print(
                f"  grade {item['grade']}: {item['coeff']} * "
                f"{item['left_word']} (x) {item['right_word']}"
            )
    return 0


def cmd_rank(args) -> int:
    families = tuple(f.strip() for f in args.families.split(","))
    if args.matrix:
        from .rank import RelationMatrix

        mat = RelationMatrix.build(args.weight, families)
        print(
            serial.dumps(
                {
                    "weight": mat.weight,
                    "basis": [str(c) for c in mat.basis],
                    "triplets": mat.sparse_triplets(),
                    "rank": mat.rank,
                }
            )
        )
        return 0
    row = table_row(args.weight, families)
    if args.format == "json":
        print(serial.dumps(_row_json(row, families)))
    else:
        _print_row(row, families)
    return 0


def cmd_table(args) -> int:
    row = table_row(args.weight)
    if args.format == "json":
        print(serial.dumps(_row_json(row, ("cyclic", "altodd", "duality"))))
    else:
        _print_row(row, ("cyclic", "altodd", "duality"))
    return 0


def _row_json(row, families) -> dict:
    out = {"weight": row.weight, "overall": row.overall, "expected": row.expected}
    if "cyclic" in families:
        out["cyclic"] = {"init": row.cyclic_init, "rank": row.cyclic_rank}
    if "altodd" in families:
        out["altodd"] = {"init": row.altodd_init, "rank": row.altodd_rank}
    if "duality" in families:
        out["duality"] = {"init": row.duality_init, "rank": row.duality_rank}
    return out


def _print_row(row, families) -> None:
    parts = [f"weight {row.weight}:"]
    if "cyclic" in families:
        parts.append(f"cyclic {row.cyclic_init}/{row.cyclic_rank}")
    if "altodd" in families:
        parts.append(f"alt-odd {row.altodd_init}/{row.altodd_rank}")
    if "duality" in families:
        parts.append(f"duality {row.duality_init}/{row.duality_rank}")
    parts.append(f"overall {row.overall}")
    parts.append(f"expected {row.expected}")
    print("  ".join(parts))


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockzeta",
        description="Block decompositions of iterated integrals: identities, "
        "derivation checks, numeric verification, relation ranks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("text", "json", "latex"), default="text"
        )

    p = sub.add_parser("decompose", help="block-decompose a binary word")
    p.add_argument("word")
    add_format(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("word", help="rebuild the word of a block decomposition")
    p.add_argument("blocks")
    add_format(p)
    p.set_defaults(fn=cmd_word)

    p = sub.add_parser("mzv", help="convert between z(...) and word forms")
    p.add_argument("value")
    add_format(p)
    p.set_defaults(fn=cmd_mzv)

    p = sub.add_parser("regularise", help="shuffle-regularise an integral word")
    p.add_argument("word")
    add_format(p)
    p.set_defaults(fn=cmd_regularise)

    def add_family_opts(p):
        p.add_argument("--lengths", default="")
        p.add_argument("--b", default="")
        p.add_argument("--a", default="")
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--x", type=int, default=0)
        p.add_argument("--c", type=int, default=0)
        p.add_argument(
            "--mode", choices=("transcendental", "symbolic"), default="transcendental"
        )

    p = sub.add_parser("generate", help="generate an identity family member")
    p.add_argument("family")
    add_family_opts(p)
    p.add_argument(
        "--format", choices=("text", "json", "latex"), default="json"
    )
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("verify", help="numerically verify identities")
    p.add_argument("--family", default="")
    add_family_opts(p)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-den", type=int, default=10**6, dest="max_den",
                   help="denominator bound for rational recognition")
    add_format(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("dkernel", help="derivation-kernel cancellation check")
    p.add_argument("--lengths", required=True)
    p.add_argument("--set", choices=("closure", "cyclic", "symmetric"), default="closure")
    p.add_argument("--grade", type=int, default=0,
                   help="restrict the residue to one derivation grade")
    p.add_argument("--collapse", action="store_true",
                   help="collapse full cyclic right-factor orbits")
    add_format(p)
    p.set_defaults(fn=cmd_dkernel)

    p = sub.add_parser("rank", help="relation ranks for chosen families")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--families", default="cyclic,altodd,duality")
    p.add_argument("--matrix", action="store_true",
                   help="emit the relation matrix as sparse triplets")
    add_format(p)
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("table", help="one full row of the rank table")
    p.add_argument("--weight", type=int, required=True)
    add_format(p)
    p.set_defaults(fn=cmd_table)

    return parser


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
