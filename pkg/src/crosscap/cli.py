"""Command-line entry point.

Every subcommand prints one JSON report on stdout and a one-line summary on
stderr.  Exit status: 0 computed and all checks passed, 1 refuted or
infeasible, 2 undecided within the budget, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from . import cosets as CS
from . import klein as K
from . import presentations as PR
from . import surfaces as SF
from . import verifier as VF
from .consequence import abelianization
from .words import WordError

EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _report(command: str, inputs: dict, results: dict, spent: dict | None = None) -> dict:
    return {"command": command, "inputs": inputs, "results": results,
            "budgets_spent": spent or {}, "version": __version__}


def _entry(key: str) -> PR.CatalogEntry:
    try:
        return PR.get(key)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


# -- subcommands ---------------------------------------------------------------------------


def cmd_presentations(args) -> tuple[dict, int, str]:
    if args.action == "list":
        rows = [{"key": k, "name": PR.get(k).presentation.name, "generators": list(PR.get(k).gens),
                 "relators": len(PR.get(k).presentation.relators), "provenance": PR.get(k).provenance}
                for k in PR.CATALOG]
        return _report("presentations list", {}, {"catalog": rows}), EXIT_OK, f"{len(rows)} presentations"
    if not args.key:
        raise UsageError("presentations show needs a catalog key")
    e = _entry(args.key)
    res = {
        "key": e.key,
        "text": e.presentation.dumps(),
        "relators": [{"label": e.label(i), "word": str(r), "tag": e.tags.get(i)}
                     for i, r in enumerate(e.presentation.relators)],
        "distinguished": {k: str(w) for k, w in e.distinguished.items()},
        "provenance": e.provenance,
    }
    return _report("presentations show", {"key": e.key}, res), EXIT_OK, e.presentation.name


def cmd_verify(args) -> tuple[dict, int, str]:
    e = _entry(args.presentation)
    if not args.map:
        raise UsageError("verify needs --map FILE")
    path = Path(args.map)
    if not path.is_file():
        raise UsageError(f"map file {path} not found")
    spec = VF.parse_map(path.read_text(), e, name=path.stem)
    rep = VF.check_endomorphism(spec, args.budget)
    res = {"presentation": e.key,
           "map": {g: str(w) for g, w in spec.images.items()},
           "per_relator": [c.describe() for c in rep.checks],
           "overall": rep.overall,
           "invariant_m": None}
    if args.extract and rep.overall == "CERTIFIED":
        try:
            res["invariant_m"] = VF.extract_out_invariant(spec, args.budget).m
            res["non_inner"] = VF.check_non_inner(spec, args.budget)
        except VF.NotInCanonicalForm as exc:
            res["invariant_error"] = str(exc)
    code = {"CERTIFIED": EXIT_OK, "REFUTED": EXIT_REFUTED}.get(rep.overall, EXIT_UNKNOWN)
    inputs = {"presentation": e.key, "map": str(path), "budget": args.budget, "extract": args.extract}
    return _report("verify", inputs, res, {"states": rep.states}), code, f"{spec.name}: {rep.overall}"


def cmd_out_klein(args) -> tuple[dict, int, str]:
    tab = K.k_out(args.bound)
    res = {"automorphisms": tab.automorphisms, "order": tab.order,
           "representatives": [str(r) for r in tab.representatives],
           "element_orders": [tab.element_order(i) for i in range(tab.order)],
           "table": [list(r) for r in tab.table], "klein_four": tab.is_klein_four,
           "abelian": tab.abelian}
    return _report("out-klein", {"bound": args.bound}, res), EXIT_OK, f"|Out| = {tab.order}"


def cmd_yclasses(args) -> tuple[dict, int, str]:
    reps = K.k_Y_conjugacy_classes(args.bound)
    res = {"representatives": [str(r) for r in reps], "pairs": [[r.m, r.n] for r in reps]}
    return _report("yclasses", {"bound": args.bound}, res), EXIT_OK, f"{len(reps)} classes"


def _genus(args) -> int:
    if args.genus is None:
        raise UsageError("--genus is required")
    return args.genus


def cmd_chains(args) -> tuple[dict, int, str]:
    G = _genus(args)
    c = SF.Constraint.MUST_CONTAIN_KLEIN_BOTTLE_PIECE if args.y_centralizer else SF.Constraint.NONE
    k = SF.max_chain(G, c)
    witness = SF.chain_feasible(G, k, c)
    above = SF.chain_feasible(G, k + 2, c)
    res = {"max": k, "witness": witness.describe(),
           "next_odd_infeasible": {"k": k + 2, "enumerated": above.enumerated}}
    return (_report("chains", {"genus": G, "y_centralizer": args.y_centralizer}, res), EXIT_OK,
            f"longest chain in N{G}: {k}")


def cmd_rank(args) -> tuple[dict, int, str]:
    G = _genus(args)
    rank = SF.abelian_rank(G)
    res: dict = {"value": rank}
    code = EXIT_OK
    if G >= 5:
        sys_ = SF.max_disjoint_system(G)
        res["disjoint_system"] = sys_.describe()
        res["agrees"] = sys_.count == rank
        code = EXIT_OK if sys_.count == rank else EXIT_REFUTED
    return _report("rank", {"genus": G}, res), code, f"abelian rank for N{G}: {rank}"


def cmd_cover(args) -> tuple[dict, int, str]:
    if not args.surface:
        raise UsageError("--surface is required")
    s = SF.parse_surface(args.surface)
    cov = SF.double_cover(s)
    res = {"surface": str(s), "euler": SF.euler(s), "cover": str(cov), "cover_euler": SF.euler(cov)}
    return _report("cover", {"surface": args.surface}, res), EXIT_OK, f"{s} <- {cov}"


def cmd_abelianize(args) -> tuple[dict, int, str]:
    e = _entry(args.presentation)
    ab = abelianization(e.presentation)
    res = {"invariants": list(ab.invariants), "description": ab.describe()}
    return _report("abelianize", {"presentation": e.key}, res), EXIT_OK, ab.describe()


def cmd_cosets(args) -> tuple[dict, int, str]:
    e = _entry(args.presentation)
    if args.subgroup:
        gens = [e.word(s) for s in args.subgroup.split(";")]
    elif e.key == "n31v":
        gens = list(PR.subgroup_L().generators)
    else:
        raise UsageError("--subgroup is required for this presentation")
    out = CS.coset_enumerate(len(e.gens), [r.letters for r in e.presentation.relators],
                             [g.letters for g in gens], max_cosets=args.max_cosets)
    res = {"subgroup": [str(g) for g in gens], "index": out.index, "defined": out.defined,
           "max_cosets": args.max_cosets}
    inputs = {"presentation": e.key, "subgroup": [str(g) for g in gens], "max_cosets": args.max_cosets}
    if out.index is None:
        return _report("cosets", inputs, res), EXIT_UNKNOWN, "coset enumeration overflowed"
    res["permutations"] = {g: list(out.permutation(i)) for i, g in enumerate(e.gens)}
    return _report("cosets", inputs, res), EXIT_OK, f"index {out.index}"


COMMANDS = {
    "presentations": cmd_presentations, "verify": cmd_verify, "out-klein": cmd_out_klein,
    "chains": cmd_chains, "rank": cmd_rank, "cover": cmd_cover, "abelianize": cmd_abelianize,
    "cosets": cmd_cosets, "yclasses": cmd_yclasses,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=100_000, help="search states per check")
    common.add_argument("--seed", type=int, default=0,
                        help="echoed in the report; every search in this tool is deterministic")
    p = _Parser(prog="crosscap", description="Mapping class group computations for nonorientable surfaces.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("presentations", parents=[common], help="list or show catalog presentations")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("key", nargs="?")

    s = sub.add_parser("verify", parents=[common], help="check a generator map is an endomorphism")
    s.add_argument("--presentation", default="n31v")
    s.add_argument("--map")
    s.add_argument("--extract", action="store_true", help="also extract the Out invariant m")

    for name, default in (("out-klein", 3), ("yclasses", 4)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--bound", type=int, default=default)

    s = sub.add_parser("chains", parents=[common], help="longest chain of circles in N_G")
    s.add_argument("--genus", type=int)
    s.add_argument("--y-centralizer", action="store_true",
                   help="require a one-holed Klein bottle in the complement")

    s = sub.add_parser("rank", parents=[common], help="maximal rank of an abelian subgroup")
    s.add_argument("--genus", type=int)

    s = sub.add_parser("cover", parents=[common], help="orientation double cover")
    s.add_argument("--surface")

    s = sub.add_parser("abelianize", parents=[common])
    s.add_argument("--presentation", default="n31v")

    s = sub.add_parser("cosets", parents=[common])
    s.add_argument("--presentation", default="n31v")
    s.add_argument("--subgroup", help="';'-separated generator words")
    s.add_argument("--max-cosets", type=int, default=10_000)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        report, code, summary = COMMANDS[args.command](args)
    except (UsageError, WordError, ValueError) as exc:
        print(f"crosscap {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report["inputs"]["seed"] = args.seed
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    print(f"crosscap {args.command}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
