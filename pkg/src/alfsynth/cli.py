"""Command-line entry point: load configs, run instances, audit traces.

Exit codes: 0 converged, 2 budget exhausted, 3 unrealizable, 1 any error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

import jsonschema

from . import expr as E
from .core import (
    ALFError, BudgetExhausted, Converged, Unrealizable, config_digest, dumps_trace,
    trace_from_json, verify_honesty, verify_kappa_laws, verify_progress,
)
from .instances import LEARNERS, build

EXIT_OK, EXIT_ERROR, EXIT_BUDGET, EXIT_UNREALIZABLE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def load_schema(name: str) -> dict:
    return json.loads(resources.files("alfsynth").joinpath("schemas", name).read_text())


def _path_of(err: jsonschema.ValidationError) -> str:
    path = list(err.absolute_path)
    # a missing required property is reported on its parent; name the field itself
    if err.validator == "required":
        missing = err.message.split("'")[1]
        path.append(missing)
    return "/".join(str(p) for p in path) or "<root>"


def validate_config(config) -> dict:
    """Structural (schema) then semantic validation; raises ConfigError."""
    validator = jsonschema.Draft202012Validator(load_schema("config.schema.json"))
    errors = sorted(validator.iter_errors(config), key=lambda e: (len(list(e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        raise ConfigError(f"{_path_of(err)}: {err.message}")
    _check_semantics(config)
    return config


def _check_semantics(config: dict) -> None:
    kind = config["kind"]
    learner = config.get("learner")
    if learner is not None and learner not in LEARNERS[kind]:
        raise ConfigError(f"learner: {learner!r} is not available for kind {kind!r} (choose from {LEARNERS[kind]})")
    if kind in ("interval", "rectangle"):
        n = 1 if kind == "interval" else config["dimension"]
        for side in ("positive", "negative"):
            for i, p in enumerate(config["hidden"][side]):
                d = 1 if isinstance(p, int) else len(p)
                if d != n:
                    raise ConfigError(f"hidden/{side}/{i}: point has dimension {d}, expected {n}")
    for key in ("program", "system", "spec"):
        if key in config:
            for i, (lo, hi) in enumerate(config[key]["bounds"]):
                if lo > hi:
                    raise ConfigError(f"{key}/bounds/{i}: lower bound {lo} exceeds upper bound {hi}")
    try:
        build(config)
    except (E.ParseError, ValueError, KeyError) as exc:
        raise ConfigError(f"{kind}: {exc}") from exc


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return validate_config(data)


def exit_code(outcome) -> int:
    if isinstance(outcome, Converged):
        return EXIT_OK
    if isinstance(outcome, BudgetExhausted):
        return EXIT_BUDGET
    if isinstance(outcome, Unrealizable):
        return EXIT_UNREALIZABLE
    return EXIT_ERROR


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def summarize(name: str, inst, outcome) -> dict:
    row = {"config": name, "kind": inst.config["kind"], "outcome": "", "rounds": "", "hypothesis": ""}
    match outcome:
        case Converged(hypothesis=h, rounds=r):
            row.update(outcome="converged", rounds=r, hypothesis=inst.domain.format_hypothesis(h))
        case BudgetExhausted(budget=b):
            row.update(outcome="budget_exhausted", rounds=b)
        case Unrealizable(rounds=r):
            row.update(outcome="unrealizable", rounds=r)
    return row


def execute(config: dict, checked: bool = False):
    """Run one config; returns (instance, outcome, trace text, audit violations)."""
    inst = build(config)
    outcome, trace = inst.run(checked=checked)
    problems = []
    if checked:
        problems = verify_progress(trace, inst.domain)
        if inst.targets is not None:
            problems += verify_honesty(trace, inst.targets(), inst.domain)
    text = dumps_trace(trace, inst.domain, seed=config.get("seed", 0), digest=config_digest(config))
    return inst, outcome, text, problems


_FIELDS = ["config", "kind", "outcome", "rounds", "hypothesis"]


def _format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = []
    for r in rows:
        if r["outcome"] == "converged":
            lines.append(f"{r['config']}: converged in {r['rounds']} rounds: {r['hypothesis']}")
        elif r["outcome"] == "budget_exhausted":
            lines.append(f"{r['config']}: budget exhausted after {r['rounds']} rounds")
        elif r["outcome"] == "unrealizable":
            lines.append(f"{r['config']}: unrealizable after {r['rounds']} rounds")
        else:
            lines.append(f"{r['config']}: {r['outcome']}")
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------------


def cmd_run(args, out) -> int:
    config = load_config(args.config)
    checked = args.checked or config.get("checked_mode", False)
    inst, outcome, text, problems = execute(config, checked)
    if args.trace:
        write_atomic(args.trace, text)
    for v in problems:
        print(f"violation: {v}", file=sys.stderr)
    out.write(_format_rows([summarize(Path(args.config).name, inst, outcome)], args.format))
    return EXIT_ERROR if problems else exit_code(outcome)


def _suite_one(path: Path, out_dir, checked: bool):
    try:
        config = load_config(path)
        inst, outcome, text, problems = execute(config, checked)
    except (ALFError, ConfigError, ValueError) as exc:
        row = {"config": path.name, "kind": "", "outcome": f"error: {exc}", "rounds": "", "hypothesis": ""}
        return row, EXIT_ERROR
    if out_dir is not None:
        write_atomic(Path(out_dir) / f"{path.stem}.trace.json", text)
    row = summarize(path.name, inst, outcome)
    if problems:
        row["outcome"] = f"error: {len(problems)} audit violations"
        return row, EXIT_ERROR
    return row, exit_code(outcome)


def cmd_suite(args, out) -> int:
    paths = sorted(Path(args.dir).glob("*.json"))
    if not paths:
        raise ConfigError(f"no *.json configs in {args.dir}")
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda p: _suite_one(p, args.out, args.checked), paths))
    rows = [r for r, _ in results]
    out.write(_format_rows(rows, args.format))
    return EXIT_ERROR if any(code == EXIT_ERROR for _, code in results) else EXIT_OK


def cmd_laws(args, out) -> int:
    config = load_config(args.config)
    inst = build(config)
    if inst.domain.universe is None:
        raise ConfigError(f"kind {config['kind']!r} with these bounds has no finite concept universe to scan")
    rng = random.Random(args.seed if args.seed is not None else config.get("seed", 0))
    pairs = [(inst.random_sample(rng), inst.random_sample(rng)) for _ in range(args.pairs)]
    violations = verify_kappa_laws(inst.domain, pairs)
    for v in violations:
        print(f"violation: {v}", file=sys.stderr)
    out.write(f"{len(violations)} violations ({len(pairs)} sample pairs, {inst.domain.universe.size} concepts)\n")
    return EXIT_OK if not violations else EXIT_ERROR


def cmd_replay(args, out) -> int:
    config = load_config(args.config)
    try:
        data = json.loads(Path(args.trace).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load trace {args.trace}: {exc}") from exc
    try:
        jsonschema.validate(data, load_schema("trace.schema.json"))
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"trace {'/'.join(map(str, exc.absolute_path)) or '<root>'}: {exc.message}") from exc
    if data["config_digest"] != config_digest(config):
        raise ConfigError("trace was recorded for a different config (digest mismatch)")
    inst = build(config)
    recorded = trace_from_json(data, inst.domain)
    problems = verify_progress(recorded, inst.domain)
    outcome, trace = inst.run(checked=False)
    fresh = dumps_trace(trace, inst.domain, seed=data["seed"], digest=data["config_digest"])
    if json.loads(fresh) != data:
        problems = list(problems) + ["re-run does not reproduce the recorded trace"]
    for v in problems:
        print(f"violation: {v}", file=sys.stderr)
    out.write(f"replayed {len(recorded.steps)} rounds, {len(problems)} violations\n")
    return EXIT_ERROR if problems else exit_code(recorded.outcome)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alfsynth", description="Run learner/teacher synthesis instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one instance")
    p.add_argument("config")
    p.add_argument("--trace", help="write the full trace JSON here")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--checked", action="store_true", help="audit every round inline")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("suite", help="run every *.json config in a directory")
    p.add_argument("dir")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="directory for per-instance trace files")
    p.add_argument("--checked", action="store_true")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("laws", help="check the sample-space laws on random sample pairs")
    p.add_argument("config")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("replay", help="validate a recorded trace against its config")
    p.add_argument("config")
    p.add_argument("trace")
    p.set_defaults(func=cmd_replay)
    return parser


def run_cli(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; 2 is reserved here
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args, out)
    except (ConfigError, ALFError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())
