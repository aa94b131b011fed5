"""Command-line front end.

    regslice run --scenario model --n 3 --samples 100
    regslice run --config runs/all.ini --format text --out report.txt

Config files are INI: a ``[run]`` section with verifier settings and one
``[scenario.<name>]`` section per scenario.  Flags override file values.

Exit codes: 0 when every scenario's verdict pattern matches its expectation,
1 on an unexpected outcome or internal error, 2 under ``--expect all-pass``
when the only failures are the expected ones, 64 for bad configuration.
"""
import argparse
import configparser
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import verifier
from .errors import ConfigError, ContractError, RegsliceError
from .scenarios import KINDS, ScenarioSpec, build
from .verifier import DECLARED, ERROR, PASS, SCHEMA_VERSION, VerifierConfig

EXIT_OK, EXIT_UNEXPECTED, EXIT_EXPECTED_FAILURE, EXIT_CONFIG = 0, 1, 2, 64
FORMATS = ("json", "text")

_FLOAT_FIELDS = {f.name for f in dataclasses.fields(VerifierConfig) if f.type in (float, "float")}
_INT_FIELDS = {f.name for f in dataclasses.fields(VerifierConfig) if f.type in (int, "int")}


@dataclass
class RunConfig:
    scenarios: list = field(default_factory=list)
    verifier: VerifierConfig = field(default_factory=VerifierConfig)
    format: str = "json"
    out: "str | None" = None
    jobs: int = 1
    expect: str = "bundled"

    def __post_init__(self):
        v = self.verifier
        for name in _INT_FIELDS:
            if name != "seed" and getattr(v, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(v, name)}")
        for name in _FLOAT_FIELDS:
            if not getattr(v, name) > 0:
                raise ConfigError(f"tolerance {name} must be positive, got {getattr(v, name)}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


def _parse_value(name, raw):
    try:
        if name in _INT_FIELDS:
            return int(raw)
        if name in _FLOAT_FIELDS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {name}: {raw!r}") from None
    return raw


def load_config_file(path):
    """Read an INI run file into (verifier overrides, scenario specs, extras)."""
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    overrides, extras = {}, {}
    if parser.has_section("run"):
        for key, raw in parser.items("run"):
            if key in ("format", "out", "expect"):
                extras[key] = raw
            elif key == "jobs":
                extras[key] = _parse_value("samples", raw)
            elif key == "tol":
                overrides["rank_tol"] = _parse_value("rank_tol", raw)
            elif key in _INT_FIELDS or key in _FLOAT_FIELDS:
                overrides[key] = _parse_value(key, raw)
            else:
                raise ConfigError(f"unknown key {key!r} in [run]")
    specs = []
    for section in parser.sections():
        if not section.startswith("scenario"):
            if section != "run":
                raise ConfigError(f"unknown section [{section}]")
            continue
        items = dict(parser.items(section))
        name = section.partition(".")[2]
        kind = items.pop("kind", name)
        try:
            n = int(items.pop("n", 2))
            seed = int(items.pop("seed", overrides.get("seed", 0)))
            params = {k: float(v) if k == "radius" else int(v) for k, v in items.items()}
        except ValueError as exc:
            raise ConfigError(f"[{section}]: {exc}") from None
        specs.append({"kind": kind, "n": n, "seed": seed, "params": params})
    return overrides, specs, extras


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def make_parser():
    parser = _Parser(prog="regslice", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="build scenarios, run the verifier, write a report")
    run.add_argument("--config", help="INI run file")
    run.add_argument("--scenario", action="append", choices=KINDS,
                     help="scenario kind (repeatable); replaces the file's scenarios")
    run.add_argument("--n", type=int, help="matrix size n of SL_n")
    run.add_argument("--samples", type=int, help="points sampled per scenario")
    run.add_argument("--seed", type=int)
    run.add_argument("--tol", type=float, help="relative singular-value rank tolerance")
    run.add_argument("--radius", type=float, help="polydisc radius for open_subvariety")
    run.add_argument("--format", choices=FORMATS)
    run.add_argument("--out", help="report path (default: stdout)")
    run.add_argument("--jobs", type=int, help="run scenarios concurrently")
    run.add_argument("--expect", choices=("bundled", "all-pass"),
                     help="compare against bundled patterns (default) or demand all-pass")
    return parser


def config_from_args(args):
    overrides, file_specs, extras = ({}, [], {})
    if args.config:
        overrides, file_specs, extras = load_config_file(args.config)
    if args.samples is not None:
        overrides["samples"] = args.samples
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.tol is not None:
        overrides["rank_tol"] = args.tol
    seed = overrides.get("seed", 0)
    if args.scenario:
        specs = [{"kind": k, "n": 2, "seed": seed, "params": {}} for k in args.scenario]
    else:
        specs = file_specs
    for s in specs:
        if args.n is not None:
            s["n"] = args.n
        if args.seed is not None:
            s["seed"] = args.seed
        if args.radius is not None and s["kind"] == "open_subvariety":
            s["params"]["radius"] = args.radius
    try:
        vconf = VerifierConfig(**overrides)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        scenarios=[ScenarioSpec(**s) for s in specs], verifier=vconf,
        format=args.format or extras.get("format", "json"),
        out=args.out or extras.get("out"),
        jobs=args.jobs or int(extras.get("jobs", 1)),
        expect=args.expect or extras.get("expect", "bundled"))


def run_scenario(spec, vconf):
    """Classify one scenario; returns its report dict (errors embedded)."""
    meta = spec.to_dict()
    try:
        space, expected = build(spec)
        conf = dataclasses.replace(vconf, seed=spec.seed)
        report = verifier.classify(space, conf, scenario=meta)
    except ContractError as exc:
        return {"schema_version": SCHEMA_VERSION, "scenario": meta,
                "error": {"type": "ContractError", "detail": str(exc)},
                "expected": None, "matches_expectation": False}
    except RegsliceError as exc:
        return {"schema_version": SCHEMA_VERSION, "scenario": meta,
                "error": {"type": type(exc).__name__, "detail": str(exc)},
                "expected": None, "matches_expectation": False}
    out = report.to_dict()
    out["expected"] = expected
    out["matches_expectation"] = report.pattern() == expected
    return out


def _all_pass(entry):
    if "error" in entry:
        return False
    return all(c["status"] in (PASS, DECLARED) for c in entry["conditions"].values())


def exit_code_for(entries, expect="bundled"):
    if any("error" in e or any(c["status"] == ERROR for c in e["conditions"].values())
           for e in entries):
        return EXIT_UNEXPECTED
    if expect == "bundled":
        return EXIT_OK if all(e["matches_expectation"] for e in entries) else EXIT_UNEXPECTED
    if all(_all_pass(e) for e in entries):
        return EXIT_OK
    if all(e["matches_expectation"] for e in entries):
        return EXIT_EXPECTED_FAILURE
    return EXIT_UNEXPECTED


def run(config):
    """Run every scenario in `config`; returns ``(exit_code, report)``."""
    if config.jobs > 1 and len(config.scenarios) > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            entries = list(pool.map(lambda s: run_scenario(s, config.verifier),
                                    config.scenarios))
    else:
        entries = [run_scenario(s, config.verifier) for s in config.scenarios]
    code = exit_code_for(entries, config.expect)
    report = {"schema_version": SCHEMA_VERSION, "expect": config.expect,
              "verifier": dataclasses.asdict(config.verifier),
              "scenarios": entries, "exit_code": code}
    return code, report


def render_json(report):
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def render_text(report):
    lines = [f"regslice report (schema {report['schema_version']}, expect={report['expect']})"]
    for entry in report["scenarios"]:
        sc = entry["scenario"]
        head = f"scenario {sc['kind']} n={sc['n']} seed={sc['seed']}"
        if "error" in entry:
            lines.append(f"{head}: ERROR {entry['error']['type']}: {entry['error']['detail']}")
            continue
        match = "matches expectation" if entry["matches_expectation"] else "UNEXPECTED"
        lines.append(f"{head}: {match}")
        for key, cond in entry["conditions"].items():
            exp = entry["expected"].get(key) if entry["expected"] else None
            flag = "" if exp in (None, cond["status"]) else f"  [expected {exp}]"
            lines.append(f"  {cond['label']:<52} {cond['status'].upper():<12} "
                         f"{cond['detail']}{flag}")
    lines.append(f"exit code {report['exit_code']}")
    return "\n".join(lines) + "\n"


def emit_report(report, format="json", out=None):
    """Render `report` and write it to `out` (or return the text if None)."""
    if format not in FORMATS:
        raise ConfigError(f"unknown format {format!r}")
    text = render_json(report) if format == "json" else render_text(report)
    if out is not None:
        with open(out, "w") as fh:
            fh.write(text)
    return text


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ConfigError as exc:
        print(f"regslice: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    code, report = run(config)
    text = emit_report(report, config.format, config.out)
    if config.out is None:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
