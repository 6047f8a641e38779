"""Command-line front end.

Subcommands: gen, count, sample-trees, balls-bins, bounds, enumerate-trees,
otter-fit.  Experiment subcommands read a config file; --seed/--out/--samples
override config values.  Exit codes: 0 success, 1 config error, 2 runtime
error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, apply_overrides, parse_config
from .experiments import run
from .graphs import GraphSpec, generate, write_edge_list

_SUBCOMMAND_KIND = {
    "count": "count",
    "sample-trees": "sample-census",
    "balls-bins": "balls-bins",
    "bounds": "bounds",
    "enumerate-trees": "enumerate-trees",
    "otter-fit": "otter-fit",
}


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="stlab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph and write its edge list")
    gen.add_argument("--family", required=True)
    gen.add_argument("--n", type=int, default=0)
    gen.add_argument("--d", type=int, default=0)
    gen.add_argument("--nx", type=int, default=0)
    gen.add_argument("--ny", type=int, default=0)
    gen.add_argument("--delta", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="edge-list file to write")

    for name in _SUBCOMMAND_KIND:
        p = sub.add_parser(name, help=f"run a {_SUBCOMMAND_KIND[name]} experiment")
        p.add_argument("--config", required=True, help="experiment config file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--samples", type=int, default=None)
    return top


def _run_gen(args) -> None:
    spec = GraphSpec(
        family=args.family,
        n=args.n,
        d=args.d,
        nx=args.nx,
        ny=args.ny,
        delta=args.delta,
        seed=args.seed,
    )
    try:
        spec.validate()
    except ValueError as e:
        raise ConfigError(str(e)) from e
    g = generate(spec)
    write_edge_list(g, args.out)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            _run_gen(args)
            return 0
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file {path} not found")
        cfg = parse_config(path.read_text(encoding="utf-8"))
        expected = _SUBCOMMAND_KIND[args.command]
        if cfg.kind != expected:
            raise ConfigError(f"config kind {cfg.kind!r} does not match subcommand {expected!r}")
        cfg = apply_overrides(cfg, seed=args.seed, out=args.out, samples=args.samples)
        manifest = run(cfg)
        print(f"wrote {len(manifest.outputs)} files to {cfg.out}")
        return 0
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001 - CLI boundary
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
