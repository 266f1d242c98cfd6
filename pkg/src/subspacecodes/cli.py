"""Command-line harness: code construction, seeded channel simulations,
bound curves, and code-file distance tables.

Every subcommand reads one JSON config (--config), with --seed / --trials /
--out overriding the corresponding config keys.  Outputs are UTF-8 CSV files
whose `#` header lines carry the subcommand, a hash of the effective config,
and the seed, so identical configs reproduce byte-identical files.

Exit codes: 0 success, 2 malformed config, 3 infeasible request (caps,
dimension overflow), 4 numerical precondition violated.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

import numpy as np

from . import bounds as bounds_mod
from .channel import NoisyChannelSpec, OperatorChannelSpec, apply_noisy_operator_channel
from .codes import (CPCodeSpec, SubspaceCode, binary_to_lines, code_parameters,
                    cp_construct, cp_max_k_for_delta, cp_simplified_bound,
                    load_code, min_distance_exhaustive, random_ensemble_code,
                    save_code, DEFAULT_SEARCH_CAP)
from .decoder import decode, guarantee_noisy
from .errors import (CapExceeded, ConfigError, DimensionOverflow, EmptyCode,
                     PreconditionViolated, RankDeficient, RetryLimitExceeded,
                     SizeOverflow)
from .finitefield import FiniteField, is_prime
from .subspaces import distance

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4


# ---------------------------------------------------------------------------
# config plumbing


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: str | None, command: str, cfg: dict, seed, columns, rows) -> None:
    # the destination is not part of the experiment: two runs of the same
    # config into different files must produce byte-identical contents
    hashed = {k: v for k, v in cfg.items() if k != "out"}
    lines = [f"# subspace-codes {command} v1",
             f"# config_sha256={_config_hash(hashed)} seed={seed}",
             ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"config key '{key}' is required")
    return cfg[key]


def _field_for_order(q: int) -> FiniteField:
    if q < 2:
        raise ConfigError(f"field order {q} is not a prime power")
    p = None
    x = q
    for cand in range(2, q + 1):
        if x % cand == 0:
            p = cand
            break
    m = 0
    while x % p == 0:
        x //= p
        m += 1
    if x != 1:
        raise ConfigError(f"field order {q} is not a prime power")
    return FiniteField(p, m)


def build_code_from_config(cfg, seed=None) -> SubspaceCode:
    """Build a code from its config block (cp / binary / random-ensemble / file)."""
    if not isinstance(cfg, dict):
        raise ConfigError("'code' must be a JSON object")
    kind = _require(cfg, "type")
    if kind == "cp":
        field = _field_for_order(int(_require(cfg, "q")))
        spec = CPCodeSpec(field=field, k=int(_require(cfg, "k")),
                          character_index=int(cfg.get("character_index", 1)),
                          size_cap=int(cfg.get("size_cap", 10 ** 6)))
        return cp_construct(spec)
    if kind == "binary":
        return binary_to_lines(_require(cfg, "words"), cfg.get("length"))
    if kind == "random-ensemble":
        if seed is None:
            raise ConfigError("random-ensemble construction needs a seed")
        rng = np.random.default_rng([int(seed), 0])
        return random_ensemble_code(int(_require(cfg, "n")), int(_require(cfg, "m")),
                                    int(_require(cfg, "M")), rng,
                                    complex_field=bool(cfg.get("complex", True)))
    if kind == "file":
        return load_code(_require(cfg, "path"))
    raise ConfigError(f"unknown code type '{kind}'")


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    cfg = _load_config(args.config)
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.out is not None:
        cfg["out"] = args.out
    code = build_code_from_config(_require(cfg, "code"), cfg.get("seed"))
    cap = int(cfg.get("search_cap", DEFAULT_SEARCH_CAP))
    params = code_parameters(code, cap)
    print(f"codewords        M = {params.size}")
    print(f"ambient          n = {params.ambient_dim}")
    print(f"max dimension    l = {params.max_dim}")
    print(f"weight      lambda = {params.normalized_weight!r}")
    print(f"rate             R = {params.rate!r}")
    print(f"min distance d_min = {params.min_distance!r}")
    print(f"normalized   delta = {params.normalized_min_distance!r}")
    out = cfg.get("out")
    if out:
        save_code(code, out)
        print(f"wrote {out}")
    return EXIT_OK


def _channel_from_config(cfg: dict, code: SubspaceCode):
    if not isinstance(cfg, dict):
        raise ConfigError("'channel' must be a JSON object")
    if float(cfg.get("sigma", 0.0)) != 0.0:
        raise ConfigError("simulate drives the operator channel; sigma must be 0 "
                          "(the matrix channel is available through the API)")
    t = int(cfg.get("t", 0))
    delta = float(cfg.get("delta", 0.0))
    r_d = int(cfg.get("r_d", 0))
    if "k" in cfg and "rho" in cfg:
        raise ConfigError("give either 'k' or 'rho', not both")
    if "k" in cfg:
        k = int(cfg["k"])
    elif "rho" in cfg:
        if not code.is_constant_dimension:
            raise ConfigError("'rho' needs a constant-dimension code; use 'k'")
        k = max(0, code[0].dim - int(cfg["rho"]))
    else:
        raise ConfigError("channel config needs 'k' or 'rho'")
    return NoisyChannelSpec(base=OperatorChannelSpec(k=k, t=t),
                            rotation=delta, noise_dim=r_d)


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.trials is not None:
        cfg["trials"] = args.trials
    if args.out is not None:
        cfg["out"] = args.out
    seed = int(_require(cfg, "seed"))
    trials = int(_require(cfg, "trials"))
    if trials < 1:
        raise ConfigError("need at least one trial")
    code = build_code_from_config(_require(cfg, "code"), seed)
    spec = _channel_from_config(_require(cfg, "channel"), code)
    cap = int(cfg.get("search_cap", DEFAULT_SEARCH_CAP))
    d_min, _ = min_distance_exhaustive(code, cap)

    columns = ["trial", "rho", "t", "delta_rot", "r_d", "tx_index", "rx_index",
               "correct", "d_tx_rx", "guarantee_flag"]
    rows = []
    successes = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, 1, trial])
        tx = int(rng.integers(len(code)))
        U = code[tx]
        V = apply_noisy_operator_channel(U, spec, rng)
        result = decode(code, V)
        rho = max(0, U.dim - spec.base.k)
        flag = guarantee_noisy(d_min, rho, spec.base.t, spec.rotation, spec.noise_dim)
        correct = result.codeword_index == tx
        successes += int(correct)
        rows.append([trial, rho, spec.base.t, spec.rotation, spec.noise_dim,
                     tx, result.codeword_index, correct,
                     float(distance(U, V)), flag])
    rate = successes / trials
    rows.append(["summary", "", "", "", "", "", "", float(rate), "", ""])
    _write_csv(cfg.get("out"), "simulate", cfg, seed, columns, rows)
    if cfg.get("out"):
        print(f"{trials} trials, success rate {rate!r}, wrote {cfg['out']}")
    return EXIT_OK


_BOUND_LABELS = ("shannon", "barg_lower", "barg_upper", "cp", "gv", "zyablov",
                 "blokh_zyablov")


def cmd_bounds(args) -> int:
    cfg = _load_config(args.config)
    if args.out is not None:
        cfg["out"] = args.out
    labels = cfg.get("labels", list(_BOUND_LABELS))
    for label in labels:
        if label not in _BOUND_LABELS:
            raise ConfigError(f"unknown bound label '{label}'")
    m = int(cfg.get("m", 1))
    beta = int(cfg.get("beta", 2))
    d_lo = float(cfg.get("delta_min", 0.02))
    d_hi = float(cfg.get("delta_max", 1.0))
    d_pts = int(cfg.get("delta_points", 50))
    r_pts = int(cfg.get("rate_points", 50))
    cp_qs = [int(q) for q in cfg.get("cp_q", [101, 1009, 10007])]
    if d_pts < 2 or r_pts < 2 or not 0.0 < d_lo < d_hi <= 2.0:
        raise ConfigError("bad grid configuration")

    rows = []
    deltas = [d_lo + (d_hi - d_lo) * i / (d_pts - 1) for i in range(d_pts)]
    for label in labels:
        if label == "shannon":
            for d in deltas:
                if d <= 1.0:
                    rows.append(["shannon", float(d), bounds_mod.shannon_lower(d)])
        elif label == "barg_lower":
            for d in deltas:
                if d <= 1.0:
                    rows.append(["barg_lower", float(d), bounds_mod.barg_lower(m, d, beta)])
        elif label == "barg_upper":
            for d in deltas:
                rows.append(["barg_upper", float(d), bounds_mod.barg_upper(m, d, beta)])
        elif label == "cp":
            for q in cp_qs:
                if not is_prime(q):
                    raise ConfigError(f"cp curve needs prime q, got {q}")
                r_max = math.log(q) / math.sqrt(q)  # rate where the bound hits zero
                for i in range(1, r_pts + 1):
                    r = r_max * i / r_pts
                    rows.append([f"cp_q{q}", cp_simplified_bound(q, r), float(r)])
        elif label == "gv":
            for i in range(1, r_pts):
                r = i / r_pts
                rows.append(["gv", bounds_mod.gv_binary_delta(r), float(r)])
        elif label == "zyablov":
            for i in range(1, r_pts):
                r = i / r_pts
                rows.append(["zyablov", bounds_mod.zyablov_delta(r), float(r)])
        elif label == "blokh_zyablov":
            for i in range(1, r_pts):
                d = 0.5 * i / r_pts
                rows.append(["blokh_zyablov", float(d), bounds_mod.blokh_zyablov_rate(d)])
    _write_csv(cfg.get("out"), "bounds", cfg, cfg.get("seed", ""),
               ["label", "delta", "rate"], rows)
    return EXIT_OK


def _largest_prime_below(x: int) -> int:
    for cand in range(x - 1, 1, -1):
        if is_prime(cand):
            return cand
    raise ValueError(f"no prime below {x}")


def cmd_figure3(args) -> int:
    cfg = _load_config(args.config)
    if args.out is not None:
        cfg["out"] = args.out
    exponents = [int(e) for e in cfg.get("exponents", list(range(3, 11)))]
    target = float(cfg.get("delta_target", 0.5))
    columns = ["k_exponent", "n", "p", "chosen_k", "ln_code_size", "n_doubled",
               "external_comparator_1", "external_comparator_2"]
    rows = []
    for e in exponents:
        if e < 3:
            raise ConfigError("exponents below 3 leave no room for a prime")
        p = _largest_prime_below(2 ** (e - 1))
        chosen_k = cp_max_k_for_delta(p, target)
        ln_size = chosen_k * math.log(p)
        rows.append([e, 2 * p, p, chosen_k, float(ln_size), 2 * (p - 1), "", ""])
    _write_csv(cfg.get("out"), "figure3", cfg, cfg.get("seed", ""), columns, rows)
    return EXIT_OK


def cmd_distance(args) -> int:
    code_a = load_code(args.file_a)
    code_b = load_code(args.file_b)
    if code_a.ambient_dim != code_b.ambient_dim:
        raise ConfigError("the two codes live in different ambient dimensions")
    rows = []
    for i, u in enumerate(code_a):
        for j, v in enumerate(code_b):
            rows.append([i, j, float(distance(u, v))])
    _write_csv(args.out, "distance",
               {"file_a": args.file_a, "file_b": args.file_b}, "",
               ["index_a", "index_b", "distance"], rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subspace-codes",
        description="analog subspace codes: construction, simulation, bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code, report parameters, write a code file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="run seeded channel/decoder trials into a CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="tabulate rate/distance bound curves into a CSV")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("figure3", help="largest-prime CP sizes at a target distance")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_figure3)

    p = sub.add_parser("distance", help="pairwise distances between two code files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_distance)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionViolated, RankDeficient) as exc:
        print(f"numerical precondition violated: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SizeOverflow, CapExceeded, DimensionOverflow, RetryLimitExceeded) as exc:
        print(f"infeasible request: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ConfigError, EmptyCode, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
