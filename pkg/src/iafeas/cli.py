"""Command line front end.

Four subcommands:

* ``check CONFIG.json``: full verdict pipeline on one configuration,
  report as indented JSON on stdout. Exit code 0 feasible, 1 infeasible,
  2 undetermined, 3 malformed input, 4 internal error.
* ``sweep``: verdicts over a grid of symmetric configurations (or a JSON
  list of explicit ones), one compact JSON line per configuration plus a
  footer with counts. Exit 0 once the sweep ran, 3 for an empty grid or
  malformed input.
* ``hall CONFIG.json``: sample channels and print the alignment
  coefficient matrix in the text dump format.
* ``alloc CONFIG.json``: run the pressure-transfer allocator; balanced
  runs print the allocation map and exit 0, stuck runs print the witness
  and exit 1.

Seed precedence everywhere: ``--seed`` flag, then the config file's
``seed`` entry, then the ``IA_KIT_SEED`` environment variable, then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .allocation import init_allocation, run_ptt, run_ptt_symmetric, verify_allocation
from .channels import sample_channels
from .config import NetworkConfig, load_config_file, system_shape
from .fields import COMPLEX, DEFAULT_PRIME, validate_field
from .jacobian import build_jacobian
from .rank import DEFAULT_TRIALS
from .report import (
    FEASIBLE,
    INFEASIBLE,
    UNDETERMINED,
    _symmetric_variant_applies,
    feasibility_report,
)

_EXIT_BY_VERDICT = {FEASIBLE: 0, INFEASIBLE: 1, UNDETERMINED: 2}


class CliError(Exception):
    """Malformed input: bad config, bad flag value, empty grid."""


def _resolve_seed(flag_seed, file_seed=None) -> int:
    if flag_seed is not None:
        return flag_seed
    if file_seed is not None:
        return file_seed
    env = os.environ.get("IA_KIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"IA_KIT_SEED must be an integer, got {env!r}") from None
    return 0


def _parse_range(text: str, name: str) -> list:
    """Parse "lo:hi" (inclusive) or a single integer."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = int(parts[0])
            return [v]
        if len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
            if hi < lo:
                raise CliError(f"--{name}: empty range {text!r}")
            return list(range(lo, hi + 1))
    except ValueError:
        pass
    raise CliError(f"--{name} expects an integer or lo:hi, got {text!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_check(ns) -> int:
    cfg, file_seed, field = load_config_file(ns.config)
    seed = _resolve_seed(ns.seed, file_seed)
    prime = ns.prime
    if prime is None and isinstance(field, int):
        prime = field
    if prime is None:
        prime = DEFAULT_PRIME
    validate_field(prime)
    rep = feasibility_report(
        cfg,
        seed=seed,
        mode=ns.mode,
        trials=ns.trials,
        p=prime,
        solve=ns.solve,
        tol=ns.tol,
    )
    print(json.dumps(rep.to_dict(), indent=2))
    return _EXIT_BY_VERDICT[rep.verdict]


def _sweep_worker(args) -> dict:
    pairs, seed, mode, trials, prime = args
    cfg = NetworkConfig.from_tuples(pairs)
    rep = feasibility_report(cfg, seed=seed, mode=mode, trials=trials, p=prime)
    c, v = system_shape(cfg)
    return {
        "label": cfg.describe(),
        "pairs": [list(t) for t in pairs],
        "verdict": rep.verdict,
        "rule": rep.rule,
        "sound": rep.sound,
        "constraints": c,
        "variables": v,
    }


def _sweep_jobs(ns) -> list:
    if ns.configs:
        try:
            data = json.loads(Path(ns.configs).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config list {ns.configs}: {exc}") from None
        if not isinstance(data, list):
            raise CliError("--configs file must hold a JSON list")
        jobs = []
        for entry in data:
            pairs = entry.get("pairs") if isinstance(entry, dict) else entry
            if not isinstance(pairs, list):
                raise CliError(f"config entry {entry!r} has no pair list")
            try:
                cfg = NetworkConfig.from_tuples(tuple(tuple(p) for p in pairs))
            except (TypeError, ValueError) as exc:
                raise CliError(f"bad config entry {entry!r}: {exc}") from None
            jobs.append(tuple((cfg.M(i), cfg.N(i), cfg.d(i)) for i in range(1, cfg.K + 1)))
        return jobs

    if ns.K is None or ns.M is None or ns.d is None:
        raise CliError("sweep needs --configs or all of --K, --M, --d")
    Ks = _parse_range(ns.K, "K")
    Ms = _parse_range(ns.M, "M")
    Ns = _parse_range(ns.N, "N") if ns.N else None
    ds = _parse_range(ns.d, "d")
    jobs = []
    for K in Ks:
        if K < 1:
            raise CliError("--K must be positive")
        for M in Ms:
            for N in Ns if Ns is not None else [M]:
                for d in ds:
                    if M < 1 or N < 1 or d < 1:
                        raise CliError("grid values must be positive")
                    jobs.append(tuple((M, N, d) for _ in range(K)))
    return jobs


def _cmd_sweep(ns) -> int:
    jobs = _sweep_jobs(ns)
    if not jobs:
        raise CliError("sweep grid is empty")
    seed = _resolve_seed(ns.seed)
    prime = ns.prime if ns.prime is not None else DEFAULT_PRIME
    validate_field(prime)
    args = [(pairs, seed, ns.mode, ns.trials, prime) for pairs in jobs]
    if ns.workers > 1:
        with ProcessPoolExecutor(max_workers=ns.workers) as ex:
            lines = list(ex.map(_sweep_worker, args))
    else:
        lines = [_sweep_worker(a) for a in args]

    counts = {FEASIBLE: 0, INFEASIBLE: 0, UNDETERMINED: 0}
    violations = 0
    for line in lines:
        counts[line["verdict"]] += 1
        if not line["sound"]:
            violations += 1
        print(json.dumps(line, separators=(",", ":")))
    footer = {
        "footer": {
            "configs": len(lines),
            "feasible": counts[FEASIBLE],
            "infeasible": counts[INFEASIBLE],
            "undetermined": counts[UNDETERMINED],
            "soundness_violations": violations,
        }
    }
    print(json.dumps(footer, separators=(",", ":")))
    return 0


def _cmd_hall(ns) -> int:
    cfg, file_seed, field = load_config_file(ns.config)
    seed = _resolve_seed(ns.seed, file_seed)
    if ns.field == "prime":
        field = ns.prime if ns.prime is not None else (
            field if isinstance(field, int) else DEFAULT_PRIME
        )
    elif ns.field == "complex":
        field = COMPLEX
    # ns.field None: keep whatever the config file said (default complex)
    field = validate_field(field)
    channels = sample_channels(cfg, seed=seed, field=field)
    jac = build_jacobian(cfg, channels)
    jac.dump(sys.stdout)
    return 0


def _cmd_alloc(ns) -> int:
    cfg, file_seed, _ = load_config_file(ns.config)
    seed = _resolve_seed(ns.seed, file_seed)
    variant = "plain"
    if _symmetric_variant_applies(cfg) and not ns.plain:
        try:
            res = run_ptt_symmetric(cfg, seed=seed)
            variant = "bundled"
        except ValueError:
            res = run_ptt(cfg, init_allocation(cfg, seed=seed))
    else:
        res = run_ptt(cfg, init_allocation(cfg, seed=seed))
    if res.balanced:
        report = verify_allocation(cfg, res.alloc)
        out = {
            "verdict": "balanced",
            "variant": variant,
            "transfers": res.transfers,
            "certificate": report.certificate,
            "allocation": res.alloc.to_json_dict(),
        }
        print(json.dumps(out, indent=2))
        return 0
    out = {
        "verdict": "stuck",
        "variant": variant,
        "transfers": res.transfers,
        "witness": res.witness.to_dict(),
        "tree": res.tree.to_dict(),
    }
    print(json.dumps(out, indent=2))
    return 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iafeas", description="alignment feasibility toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help="master seed")
        p.add_argument(
            "--mode", choices=("gf", "numeric"), default="gf", help="rank backend"
        )
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--prime", type=int, default=None, help="finite field modulus")

    p_check = sub.add_parser("check", help="verdict for one configuration")
    p_check.add_argument("config", help="configuration JSON file")
    common(p_check)
    p_check.add_argument("--solve", action="store_true", help="attach solver runs")
    p_check.add_argument("--tol", type=float, default=1e-9, help="solver tolerance")
    p_check.set_defaults(func=_cmd_check)

    p_sweep = sub.add_parser("sweep", help="verdicts over a configuration grid")
    p_sweep.add_argument("--configs", help="JSON file with a list of configurations")
    p_sweep.add_argument("--K", help="pair count or lo:hi")
    p_sweep.add_argument("--M", help="transmit antennas or lo:hi")
    p_sweep.add_argument("--N", help="receive antennas or lo:hi (defaults to M)")
    p_sweep.add_argument("--d", help="streams or lo:hi")
    p_sweep.add_argument("--workers", type=int, default=1)
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_hall = sub.add_parser("hall", help="dump the alignment coefficient matrix")
    p_hall.add_argument("config", help="configuration JSON file")
    p_hall.add_argument("--seed", type=int, default=None)
    p_hall.add_argument("--field", choices=("complex", "prime"), default=None)
    p_hall.add_argument("--prime", type=int, default=None)
    p_hall.set_defaults(func=_cmd_hall)

    p_alloc = sub.add_parser("alloc", help="run the pressure-transfer allocator")
    p_alloc.add_argument("config", help="configuration JSON file")
    p_alloc.add_argument("--seed", type=int, default=None)
    p_alloc.add_argument(
        "--plain",
        action="store_true",
        help="skip the bundled variant even when it applies",
    )
    p_alloc.set_defaults(func=_cmd_alloc)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.func(ns)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception:
        traceback.print_exc()
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
