"""Command-line entry point: ``geoprove {prove,discover,translate} FILE``.

Exit status: 0 proved / report written, 1 statement not proved, 2 usage or
parse error, 3 work budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .algebraizer import default_specialization, point_specialization, specialize, translate
from .discovery import KINDS, discover
from .dsl import load_construction, parse_point_assignments
from .errors import BudgetExceeded, GeoproveError, NotEnoughFreePoints, ParseError
from .groebner import default_budget
from .prover import Mode, prove_and_score
from .transcript import dumps, render

EXIT_OK, EXIT_UNPROVED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    input: str
    order: str = "tdeg"
    encoding: Optional[str] = None
    specialize: str = "auto"  # "auto", "none" or "A=(0,0),B=(0,1)"
    minimize: bool = False
    budget_spairs: Optional[int] = None
    budget_degree: int = 3
    seed: int = 0
    output: str = "text"
    route: str = "ladder"
    include_auxiliary: bool = True
    kinds: list = field(default_factory=lambda: list(KINDS[:2]))
    trials: int = 5
    jobs: int = 1
    v_offset: int = 1

    def __post_init__(self):
        if self.budget_spairs is not None and self.budget_spairs <= 0:
            raise ValueError("S-pair budget must be positive")
        if self.budget_degree < 0:
            raise ValueError("degree budget must be non-negative")
        if self.specialize not in ("auto", "none"):
            parse_point_assignments(self.specialize)


def _specialization(cfg: RunConfig, system):
    if cfg.specialize == "none":
        return {}
    if cfg.specialize == "auto":
        try:
            return default_specialization(system)
        except NotEnoughFreePoints:
            return {}
    return point_specialization(system, parse_point_assignments(cfg.specialize))


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one command; documents go to ``out`` and diagnostics to ``err``."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        construction = load_construction(cfg.input)
        system = translate(construction, cfg.encoding)
        system.v_offset = cfg.v_offset
        spec = _specialization(cfg, system)
        budget = cfg.budget_spairs if cfg.budget_spairs is not None else default_budget()

        if cfg.command == "translate":
            out.write(dumps(specialize(system, spec).to_json()))
            return EXIT_OK

        if cfg.command == "discover":
            report = discover(
                construction,
                kinds=cfg.kinds,
                trials=cfg.trials,
                order=cfg.order,
                seed=cfg.seed,
                jobs=cfg.jobs,
                encoding=cfg.encoding,
                specialization=spec,
                minimize=cfg.minimize,
                budget=budget,
                budget_degree=cfg.budget_degree,
            )
            if cfg.output == "json":
                out.write(dumps(report.to_json()))
            else:
                out.write(report.to_table())
            return EXIT_OK

        special = specialize(system, spec)
        cert, diff = prove_and_score(
            special,
            order=cfg.order,
            budget=budget,
            minimize=cfg.minimize,
            budget_degree=cfg.budget_degree,
            route=cfg.route,
            include_auxiliary=cfg.include_auxiliary,
        )
        if cfg.output == "json":
            out.write(dumps(render(system, spec, cert, diff, "json")))
        else:
            out.write(render(system, spec, cert, diff, "text"))
        return EXIT_UNPROVED if cert.mode is Mode.UNPROVED else EXIT_OK
    except BudgetExceeded as exc:
        err.write(f"geoprove: budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except ParseError as exc:
        err.write(f"{cfg.input}:{exc}\n")
        return EXIT_USAGE
    except (GeoproveError, OSError, ValueError) as exc:
        err.write(f"geoprove: {exc}\n")
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoprove", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, specialize_default):
        p.add_argument("input", help=".geo construction file")
        p.add_argument("--encoding", choices=["direct", "translation"])
        p.add_argument(
            "--specialize",
            default=specialize_default,
            help="auto, none, or explicit points like 'A=(0,0),B=(0,1)'",
        )
        p.add_argument("--v-offset", type=int, default=1, help="index of the first v-variable")

    def proving(p):
        p.add_argument("--order", choices=["tdeg", "plex"], default="tdeg")
        p.add_argument("--minimize", action="store_true", help="search for lowest-degree cofactors")
        p.add_argument("--budget-spairs", type=int, help="S-pair budget (env GEOPROVE_BUDGET_SPAIRS)")
        p.add_argument("--budget-degree", type=int, default=3)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("prove", help="prove the thesis and show the certificate")
    common(p, "auto")
    proving(p)
    p.add_argument(
        "--route",
        choices=["ladder", "reductio"],
        default="ladder",
        help="reductio always certifies 1 from the hypotheses and the negated thesis",
    )
    p.add_argument(
        "--exclude-auxiliary",
        action="store_true",
        help="ignore cofactors of Rabinowitsch generators when scoring",
    )

    p = sub.add_parser("discover", help="find and rank statements over the construction")
    common(p, "none")
    proving(p)
    p.add_argument("--kinds", default="collinear,equal_length", help=f"comma list of {','.join(KINDS)}")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("translate", help="print the polynomial system as JSON")
    common(p, "none")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            encoding=args.encoding,
            specialize=args.specialize,
            v_offset=args.v_offset,
            order=getattr(args, "order", "tdeg"),
            minimize=getattr(args, "minimize", False) or args.command == "discover",
            budget_spairs=getattr(args, "budget_spairs", None),
            budget_degree=getattr(args, "budget_degree", 3),
            output="json" if getattr(args, "json", False) or args.command == "translate" else "text",
            route=getattr(args, "route", "ladder"),
            include_auxiliary=not getattr(args, "exclude_auxiliary", False),
            kinds=[k.strip() for k in getattr(args, "kinds", "collinear,equal_length").split(",") if k.strip()],
            trials=getattr(args, "trials", 5),
            jobs=getattr(args, "jobs", 1),
            seed=getattr(args, "seed", 0),
        )
    except (ValueError, ParseError) as exc:
        parser.exit(EXIT_USAGE, f"geoprove: {exc}\n")
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
