"""Command line front end.

Commands: catalog, lattice, pairs, verify, reject.  Exit codes: 0 success,
1 mathematical consistency failure, 2 input error, 3 budget exceeded.
Outputs are byte-identical across runs for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .algebra import (
    AmbiguousReductionError,
    ConsistencyError,
    InputError,
    QuiverSpec,
    build_algebra,
    rep_from_json_file,
)
from .catalog import (
    build_explicit,
    build_hereditary,
    build_nakayama,
    catalog_to_json_dict,
    tables,
)
from .cosiltpair import PairContext, grains, pairs_report, reject_sequence
from .repmod import BudgetExceededError, UnsupportedFieldError
from .torslat import (
    cmi_elements,
    enumerate_torsion_pairs,
    hasse_with_labels,
    lattice_to_dot,
    lattice_to_json_dict,
)
from .verify import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    algebra_path: str
    family: str = "auto"
    module_paths: list = field(default_factory=list)
    assert_complete: bool = False
    subset_budget: int = 1 << 20
    submodule_budget: int = 1 << 16
    decomposition_budget: int = 4096
    seed: int = 0
    json_path: str = None
    dot_path: str = None
    check: str = "all"

    def __post_init__(self):
        for name in ("subset_budget", "submodule_budget", "decomposition_budget"):
            if getattr(self, name) <= 0:
                raise InputError(f"{name.replace('_', '-')} must be positive")


def _load_catalog(cfg: RunConfig):
    spec = QuiverSpec.from_json_file(cfg.algebra_path)
    alg = build_algebra(spec)
    family = cfg.family
    if family == "auto":
        for attempt in ("hereditary", "nakayama"):
            try:
                return alg, _build_family(alg, attempt, cfg)
            except InputError:
                continue
        if cfg.module_paths:
            return alg, _build_family(alg, "explicit", cfg)
        raise InputError(
            "no built-in catalog family fits this algebra; pass --family explicit "
            "with --module files and --assert-complete"
        )
    return alg, _build_family(alg, family, cfg)


def _build_family(alg, family, cfg: RunConfig):
    if family == "hereditary":
        return build_hereditary(alg)
    if family == "nakayama":
        return build_nakayama(alg)
    if family == "explicit":
        if not cfg.module_paths:
            raise InputError("explicit catalogs need at least one --module file")
        mods = [rep_from_json_file(alg, p) for p in cfg.module_paths]
        return build_explicit(alg, mods, assert_complete=cfg.assert_complete)
    raise InputError(f"unknown family {family!r}")


def _write_json(path, data):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _require_complete(cat, cfg):
    if not cat.completeness.complete:
        raise InputError(
            "the catalog is not declared complete; lattice commands refuse to run "
            "(build with --assert-complete if the list really is complete)"
        )


def cmd_catalog(cfg: RunConfig):
    _, cat = _load_catalog(cfg)
    tables(cat)
    if cfg.json_path:
        _write_json(cfg.json_path, catalog_to_json_dict(cat))
    print(f"members: {len(cat)}, complete: {cat.completeness.complete} "
          f"({cat.completeness.provenance})")
    return EXIT_OK


def cmd_lattice(cfg: RunConfig):
    _, cat = _load_catalog(cfg)
    _require_complete(cat, cfg)
    lat = enumerate_torsion_pairs(cat, subset_budget=cfg.subset_budget,
                                  submodule_budget=cfg.submodule_budget)
    hasse_with_labels(lat)
    cmi = cmi_elements(lat)
    if cfg.json_path:
        _write_json(cfg.json_path, lattice_to_json_dict(lat))
    if cfg.dot_path:
        with open(cfg.dot_path, "w", encoding="utf-8") as fh:
            fh.write(lattice_to_dot(lat))
    print(f"pairs: {len(lat.pairs)}, cmi: {len(cmi)}")
    return EXIT_OK


def cmd_pairs(cfg: RunConfig):
    _, cat = _load_catalog(cfg)
    _require_complete(cat, cfg)
    lat = enumerate_torsion_pairs(cat, subset_budget=cfg.subset_budget,
                                  submodule_budget=cfg.submodule_budget)
    hasse_with_labels(lat)
    ctx = PairContext(lat)
    report = pairs_report(ctx)
    if cfg.json_path:
        _write_json(cfg.json_path, report)
    n_ok = sum(1 for row in report["pairs"] if row["verified"])
    if n_ok != len(report["pairs"]):
        print(f"only {n_ok} of {len(report['pairs'])} cosilting pairs verified")
        return EXIT_MATH
    print(f"all {n_ok} cosilting pairs verified")
    return EXIT_OK


def cmd_verify(cfg: RunConfig):
    _, cat = _load_catalog(cfg)
    _require_complete(cat, cfg)
    report = run_suites(cat, names=cfg.check, seed=cfg.seed,
                        subset_budget=cfg.subset_budget,
                        submodule_budget=cfg.submodule_budget)
    for name in sorted(report["suites"]):
        res = report["suites"][name]
        status = "ok" if res["pass"] else "FAIL"
        extra = "" if res["pass"] else f" ({res.get('detail', '')})"
        print(f"{status:4s} {name}{extra}")
    if cfg.json_path:
        _write_json(cfg.json_path, report)
    if not report["pass"]:
        first = next(n for n in sorted(report["suites"]) if not report["suites"][n]["pass"])
        print(f"first failing suite: {first}")
        return EXIT_MATH
    return EXIT_OK


def cmd_reject(cfg: RunConfig):
    _, cat = _load_catalog(cfg)
    _require_complete(cat, cfg)
    lat = enumerate_torsion_pairs(cat, subset_budget=cfg.subset_budget,
                                  submodule_budget=cfg.submodule_budget)
    hasse_with_labels(lat)
    ctx = PairContext(lat)
    rows = []
    for rec in grains(ctx):
        if not rec.is_grain:
            continue
        rej = reject_sequence(cat.members[rec.index])
        rows.append({
            "module": cat.names()[rec.index],
            "socle_dim": rej.s_n.total_dim,
            "image_dim": rej.n_tilde.total_dim,
            "radical_rank": rej.end.radical_dim(),
            "is_cmi": rec.is_cmi,
        })
        print(f"{rows[-1]['module']}: 0 -> {rej.s_n.total_dim} -> "
              f"{cat.members[rec.index].total_dim} -> {rej.n_tilde.total_dim} -> 0")
    if cfg.json_path:
        _write_json(cfg.json_path, {"rejects": rows})
    return EXIT_OK


COMMANDS = {
    "catalog": cmd_catalog,
    "lattice": cmd_lattice,
    "pairs": cmd_pairs,
    "verify": cmd_verify,
    "reject": cmd_reject,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cosilt",
        description="torsion pair lattices, cosilting pairs, bricks and grains "
                    "for bound quiver algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--algebra", required=True, help="algebra spec JSON file")
        p.add_argument("--family", default="auto",
                       choices=["auto", "hereditary", "nakayama", "explicit"])
        p.add_argument("--module", action="append", default=[],
                       help="module spec JSON file (repeatable, for explicit catalogs)")
        p.add_argument("--assert-complete", action="store_true")
        p.add_argument("--json", default=None, help="write a JSON report here")
        p.add_argument("--dot", default=None, help="write a DOT file here (lattice only)")
        p.add_argument("--check", default="all",
                       help=f"verify suite name or 'all'; known: {', '.join(SUITE_NAMES)}")
        p.add_argument("--budget-subsets", type=int, default=1 << 20)
        p.add_argument("--budget-submodules", type=int, default=1 << 16)
        p.add_argument("--budget-decomposition", type=int, default=4096)
        p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            algebra_path=args.algebra,
            family=args.family,
            module_paths=args.module,
            assert_complete=args.assert_complete,
            subset_budget=args.budget_subsets,
            submodule_budget=args.budget_submodules,
            decomposition_budget=args.budget_decomposition,
            seed=args.seed,
            json_path=args.json,
            dot_path=args.dot,
            check=args.check,
        )
        return COMMANDS[args.command](cfg)
    except (InputError, AmbiguousReductionError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError,) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConsistencyError, UnsupportedFieldError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
