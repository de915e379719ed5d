"""Command-line interface.

    coxrank classify FILE            per-component spherical types
    coxrank bases FILE               basic subsets with distinguished elements
    coxrank eligibility FILE         per-base blow-down/blow-up verdicts
    coxrank spectrum FILE            k, l, the rank interval, witness scripts
    coxrank blowdown FILE --base x,y [--sink r] [--out OUT]
    coxrank blowup FILE --base c1,c2,c3 [--pivot a] [--out OUT]
    coxrank twist FILE --s1 a,b --s2 b,c --base b [--out OUT]
    coxrank verify RECORD_JSON       re-run certification on saved records
    coxrank dot FILE [--view c|p|odd]

Exit status: 0 success, 1 user error, 2 internal inconsistency (a failed
certification, which should never happen for untampered inputs).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import coxfile
from .classify import basic_subsets, classify_irreducible, find_base
from .eligibility import all_reports, sinks_of
from .errors import CertificationFailed, CoxError, InternalInconsistency
from .matrix import CoxeterMatrix, components
from .spectrum import spectrum
from .transforms import blow_down, blow_up, normalize_for_blow_down, twist
from .words import verify_isomorphism


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to status 2; keep 2 for bugs only
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="coxrank", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("file", help="input file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--seed", type=int, default=None,
                       help="reserved for the test harness; no effect on results")
        return p

    add("classify", help="classify the components of the diagram")
    add("bases", help="list basic subsets")
    add("eligibility", help="per-base transform eligibility")
    add("spectrum", help="rank spectrum with witness scripts")

    for name in ("blowdown", "blowup", "twist"):
        p = add(name, help=f"apply a {name} and write the result")
        p.add_argument("--base", required=True, help="comma list of base members")
        p.add_argument("--out", default=None, help="output .cox path")
        if name == "blowdown":
            p.add_argument("--sink", default=None, help="sink generator to consume")
        if name == "blowup":
            p.add_argument("--pivot", default=None, help="pivot generator to remove")
        if name == "twist":
            p.add_argument("--s1", required=True, help="comma list for the fixed side")
            p.add_argument("--s2", required=True, help="comma list for the moved side")

    add("verify", help="re-run certification on a saved record file")

    p = add("dot", help="emit a DOT rendering")
    p.add_argument("--view", choices=["c", "p", "odd"], default="c")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    return parser


def _split_list(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def _load(path: str) -> CoxeterMatrix:
    return coxfile.parse_file(path)


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _cmd_classify(args) -> int:
    mat = _load(args.file)
    rows = []
    for comp in components(mat, mat.generators):
        stype = classify_irreducible(mat, comp)
        rows.append({"component": list(mat.sorted_gens(comp)),
                     "type": str(stype) if stype else "not spherical"})
    if args.json:
        _print_json({"schema": coxfile.SCHEMA_VERSION, "components": rows})
    else:
        for row in rows:
            print(f"component {{{', '.join(row['component'])}}}: {row['type']}")
    return 0


def _cmd_bases(args) -> int:
    mat = _load(args.file)
    bases = basic_subsets(mat)
    if args.json:
        _print_json({"schema": coxfile.SCHEMA_VERSION,
                     "bases": [coxfile.base_to_json(b) for b in bases]})
        return 0
    if not bases:
        print("no bases")
    for base in bases:
        extras = []
        if base.split_ends:
            extras.append(f"split ends {base.split_ends[0]},{base.split_ends[1]}")
        if base.four_end:
            extras.append(f"four-end {base.four_end}")
        suffix = f" ({'; '.join(extras)})" if extras else ""
        print(f"base {{{', '.join(base.sorted_members(mat))}}}: {base.stype}{suffix}")
    return 0


def _flag(value: bool | None) -> str:
    return "-" if value is None else ("yes" if value else "no")


def _cmd_eligibility(args) -> int:
    mat = _load(args.file)
    reports = all_reports(mat)
    if args.json:
        rows = []
        for rep in reports:
            row = {
                "base": coxfile.base_to_json(rep.base),
                "cond1": rep.cond1, "cond2": rep.cond2, "cond3": rep.cond3,
                "blow_down_eligible": rep.blow_down_eligible,
                "sinks": list(rep.sinks),
                "blow_up_eligible": rep.blow_up_eligible,
                "blow_up_pivot": rep.blow_up_pivot,
            }
            if rep.cond3_witness:
                row["cond3_witness"] = {
                    "r": rep.cond3_witness.r,
                    "component": sorted(rep.cond3_witness.component),
                    "component_type": str(rep.cond3_witness.component_type),
                }
            rows.append(row)
        _print_json({"schema": coxfile.SCHEMA_VERSION, "reports": rows})
        return 0
    for rep in reports:
        members = ", ".join(rep.base.sorted_members(mat))
        print(f"base {{{members}}} [{rep.base.stype}]"
              f" cond1={_flag(rep.cond1)} cond2={_flag(rep.cond2)} cond3={_flag(rep.cond3)}"
              f" blowdown={'yes' if rep.blow_down_eligible else 'no'}"
              f" sinks=[{','.join(rep.sinks)}]"
              f" blowup={'yes' if rep.blow_up_eligible else 'no'}"
              + (f" pivot={rep.blow_up_pivot}" if rep.blow_up_pivot else ""))
    return 0


def _cmd_spectrum(args) -> int:
    mat = _load(args.file)
    result = spectrum(mat)
    if args.json:
        _print_json(coxfile.spectrum_to_json(result))
        return 0
    print(f"k={result.k} l={result.l} spectrum=[{result.min_rank},{result.max_rank}]")
    for base, sink in result.matching:
        print(f"  blow down {{{', '.join(base.sorted_members(mat))}}} at sink {sink}")
    for base in result.blow_up_bases:
        print(f"  blow up {{{', '.join(base.sorted_members(mat))}}}")
    return 0


def _write_transform(args, mat, records) -> int:
    out = Path(args.out) if args.out else Path(args.file).with_suffix(f".{args.command}.cox")
    record_path = out.with_suffix(out.suffix + ".record.json")
    final = records[-1].output
    out.write_text(coxfile.emit(final, comment=f"written by coxrank {args.command}"),
                   encoding="utf-8")
    record_path.write_text(coxfile.dump_records(records), encoding="utf-8")
    if args.json:
        _print_json([coxfile.record_to_json(r) for r in records])
    else:
        kinds = " + ".join(r.kind for r in records)
        print(f"{kinds}: rank {mat.rank()} -> {final.rank()}; wrote {out} and {record_path}")
    return 0


def _cmd_blowdown(args) -> int:
    mat = _load(args.file)
    base = find_base(mat, _split_list(args.base))
    records = []
    norm = normalize_for_blow_down(mat, base)
    current_base = base
    current = mat
    if norm.record is not None:
        records.append(norm.record)
        current = norm.record.output
        current_base = find_base(current, base.members)  # base members persist
    sinks = sinks_of(current, current_base)
    sink = args.sink if args.sink else (sinks[0] if sinks else None)
    if sink is None:
        raise CoxError("BLOW_DOWN_PRECONDITION", "base has no sink")
    records.append(blow_down(current, current_base, sink))
    return _write_transform(args, mat, records)


def _cmd_blowup(args) -> int:
    mat = _load(args.file)
    base = find_base(mat, _split_list(args.base))
    record = blow_up(mat, base, args.pivot)
    return _write_transform(args, mat, [record])


def _cmd_twist(args) -> int:
    mat = _load(args.file)
    record = twist(mat, _split_list(args.s1), _split_list(args.s2),
                   mat.check_subset(_split_list(args.base)))
    return _write_transform(args, mat, [record])


def _cmd_verify(args) -> int:
    with open(args.file, encoding="utf-8") as handle:
        data = json.load(handle)
    if isinstance(data, dict):
        data = [data]
    for i, entry in enumerate(data):
        mat_in, mat_out, forward, backward = coxfile.record_maps_from_json(entry)
        if not verify_isomorphism(mat_in, mat_out, forward, backward):
            raise CertificationFailed(f"record {i} failed certification")
    print(f"{len(data)} record(s) certified")
    return 0


def _cmd_dot(args) -> int:
    mat = _load(args.file)
    text = coxfile.emit_dot(mat, args.view)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "bases": _cmd_bases,
    "eligibility": _cmd_eligibility,
    "spectrum": _cmd_spectrum,
    "blowdown": _cmd_blowdown,
    "blowup": _cmd_blowup,
    "twist": _cmd_twist,
    "verify": _cmd_verify,
    "dot": _cmd_dot,
}


def run(argv: list[str]) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CertificationFailed, InternalInconsistency) as exc:
        print(f"coxrank: {exc}", file=sys.stderr)
        return 2
    except CoxError as exc:
        print(f"coxrank: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"coxrank: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
