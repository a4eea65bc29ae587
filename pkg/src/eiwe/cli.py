"""Command-line front end.

Subcommands::

    eiwe verify-eq4      --config run.cfg
    eiwe sweep           --config run.cfg [--format json]
    eiwe oracle-compare  --config run.cfg --cutoff 60
    eiwe curvature       --xi 0.5 --p0 101325

Config files are flat ``key = value`` lines; list values are comma
separated and ``#`` starts a comment. Recognised keys: ``r``, ``n_bar``,
``temperature``, ``model``, ``omega``, ``lambda``, ``phi``, ``format``,
``seed``, ``oracle``, ``cutoff``, ``n_outcomes``.

Exit codes: 0 all checks pass, 1 a numeric threshold is violated,
2 usage or config error.
"""

import argparse
import csv
import io
import itertools
import json
import logging
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import constants
from .curvature import CurvatureInput, delta_ricci
from .errors import EiweError, TruncationError
from .fock_oracle import coherent_condition, fock_covariance, fock_entropy, thermal_fock, tmst_fock
from .measurement import GaussianMeasurement, eiwe_measurement, outcome_distribution
from .states import OCCUPATION_MODELS, two_mode_squeezed_thermal
from .thermo import eiwe_pipeline, extracted_work

log = logging.getLogger("eiwe")

EXIT_OK, EXIT_THRESHOLD, EXIT_USAGE = 0, 1, 2

# (largest n_bar the bound applies to, maximum relative deviation)
EQ4_THRESHOLDS = ((1e-6, 0.02), (1e-4, 0.05), (1e-3, 0.10))
ORACLE_REL_TOL = 1e-4
ORACLE_ALPHA_SPREAD_TOL = 1e-5
ORACLE_MIN_NBAR = 0.05

_LIST_KEYS = {"r", "n_bar", "temperature", "lambda", "phi"}
_SCALAR_KEYS = {"model", "omega", "format", "seed", "oracle", "cutoff", "n_outcomes"}


class ConfigError(Exception):
    pass


@dataclass
class SweepConfig:
    r: list
    n_bar: list = None
    temperature: list = None
    model: str = "boltzmann_approx"
    omega: float = 1.2e15
    strength: list = field(default_factory=lambda: [1.0])
    phi: list = field(default_factory=lambda: [0.0])
    format: str = "csv"
    seed: int = 0
    cutoff: int = None
    n_outcomes: int = 5

    def __post_init__(self):
        if not self.r:
            raise ConfigError("r grid must be non-empty")
        if (self.n_bar is None) == (self.temperature is None):
            raise ConfigError("exactly one of n_bar or temperature must be given")
        thermal = self.n_bar if self.n_bar is not None else self.temperature
        if not thermal:
            raise ConfigError("thermal grid must be non-empty")
        if self.n_bar is not None and any(n < 0 for n in self.n_bar):
            raise ConfigError("n_bar values must be non-negative")
        if self.temperature is not None and any(t <= 0 for t in self.temperature):
            raise ConfigError("temperatures must be positive")
        if self.model not in OCCUPATION_MODELS:
            raise ConfigError(f"model must be one of {OCCUPATION_MODELS}")
        if not self.omega > 0:
            raise ConfigError("omega must be positive")
        if not self.strength or any(not lam > 0 for lam in self.strength):
            raise ConfigError("lambda values must be positive")
        if not self.phi:
            raise ConfigError("phi grid must be non-empty")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.cutoff is not None and self.cutoff < 2:
            raise ConfigError("cutoff must be >= 2")

    @property
    def thermal_axis(self):
        return ("n_bar", self.n_bar) if self.n_bar is not None else ("temperature", self.temperature)

    def as_dict(self):
        return {k: v for k, v in self.__dict__.items()}


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def parse_config(text):
    """Parse flat ``key = value`` text into a :class:`SweepConfig`."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _LIST_KEYS | _SCALAR_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    try:
        kwargs = {}
        for key in ("r", "n_bar", "temperature", "phi"):
            if key in raw:
                kwargs[key] = _floats(raw[key])
        if "lambda" in raw:
            kwargs["strength"] = _floats(raw["lambda"])
        if "omega" in raw:
            kwargs["omega"] = float(raw["omega"])
        for key in ("seed", "n_outcomes"):
            if key in raw:
                kwargs[key] = int(raw[key])
        for key in ("model", "format"):
            if key in raw:
                kwargs[key] = raw[key]
        oracle = raw.get("oracle", "off")
        if oracle not in ("on", "off"):
            raise ConfigError("oracle must be 'on' or 'off'")
        if "cutoff" in raw:
            kwargs["cutoff"] = int(raw["cutoff"])
        elif oracle == "on":
            kwargs["cutoff"] = 60
    except ValueError as exc:
        raise ConfigError(f"bad value: {exc}") from exc
    if "r" not in kwargs:
        raise ConfigError("missing required key 'r'")
    return SweepConfig(**kwargs)


def _pipeline(cfg, r, thermal, lam=1.0, phi=0.0):
    name, _ = cfg.thermal_axis
    m = GaussianMeasurement(lam, phi)
    return eiwe_pipeline(r, cfg.omega, measurement=m, model=cfg.model, **{name: thermal})


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(value)
    return f"{float(value):.15e}"


def render(rows, columns, fmt, meta):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        return buf.getvalue()
    doc = {"metadata": {**meta, "constants": constants.as_dict()}, "columns": columns, "rows": rows}
    return json.dumps(doc, indent=2, sort_keys=True, default=float) + "\n"


def verify_eq4(cfg):
    """Rows ``[r, xi, n_bar, S_eq, S_cond, W, W_closed, rel_dev]`` and a pass flag."""
    if cfg.model != "boltzmann_approx":
        raise ConfigError("verify-eq4 requires model = boltzmann_approx")
    if cfg.strength != [1.0]:
        raise ConfigError("verify-eq4 runs the coherent-state measurement; lambda must be 1")
    _, grid = cfg.thermal_axis
    rows, ok = [], True
    for r in sorted(cfg.r):
        reports = [_pipeline(cfg, r, v) for v in sorted(grid)]
        reports.sort(key=lambda rep: -rep.n_bar)
        for rep in reports:
            rows.append({
                "r": rep.r, "xi": rep.xi, "n_bar": rep.n_bar, "S_eq": rep.entropy_eq,
                "S_cond": rep.entropy_cond, "W": rep.work, "W_closed": rep.work_closed_form,
                "rel_dev": rep.relative_deviation,
            })
            bound = next((tol for n_max, tol in EQ4_THRESHOLDS if rep.n_bar <= n_max), None)
            if bound is not None and rep.xi > 0 and rep.relative_deviation > bound:
                log.warning("r=%g n_bar=%g: rel_dev %.3g exceeds %.3g", r, rep.n_bar, rep.relative_deviation, bound)
                ok = False
        devs = [rep.relative_deviation for rep in reports if rep.xi > 0]
        if any(b >= a for a, b in zip(devs, devs[1:])):
            log.warning("r=%g: relative deviation is not decreasing with n_bar", r)
            ok = False
    return rows, ok


VERIFY_COLUMNS = ["r", "xi", "n_bar", "S_eq", "S_cond", "W", "W_closed", "rel_dev"]
SWEEP_COLUMNS = [
    "r", "n_bar", "temperature", "lambda", "phi", "omega", "xi",
    "entropy_eq", "entropy_cond", "work", "work_closed_form", "relative_deviation",
]
ORACLE_COLUMNS = [
    "r", "n_bar", "W_gaussian", "W_oracle", "abs_dev", "rel_dev", "trace_defect", "alpha_spread", "truncated",
]


def sweep(cfg):
    _, grid = cfg.thermal_axis
    rows = []
    for r, thermal, lam, phi in itertools.product(sorted(cfg.r), sorted(grid), sorted(cfg.strength), sorted(cfg.phi)):
        rep = _pipeline(cfg, r, thermal, lam, phi)
        row = rep.as_dict()
        row["lambda"] = row.pop("strength")
        rows.append({c: row[c] for c in SWEEP_COLUMNS})
    return rows


def _oracle_row(cfg, r, thermal, rng):
    rep = _pipeline(cfg, r, thermal)
    n_bar = rep.n_bar
    if n_bar < ORACLE_MIN_NBAR:
        raise ConfigError(f"oracle comparison needs n_bar >= {ORACLE_MIN_NBAR}, got {n_bar}")
    row = {"r": r, "n_bar": n_bar, "W_gaussian": rep.work}
    try:
        rho = tmst_fock(n_bar, r, cfg.cutoff)
        s_eq = fock_entropy(thermal_fock(n_bar, cfg.cutoff))
    except TruncationError as exc:
        log.warning("r=%g n_bar=%g: %s", r, n_bar, exc)
        nan = float("nan")
        row.update(W_oracle=nan, abs_dev=nan, rel_dev=nan, trace_defect=exc.defect, alpha_spread=nan, truncated=True)
        return row, False

    dist = outcome_distribution(two_mode_squeezed_thermal(n_bar, r), eiwe_measurement())
    alphas = [0j]
    while len(alphas) < cfg.n_outcomes:
        x, p = dist.sample(rng)
        alpha = complex(x, p) / np.sqrt(2)
        if abs(alpha) ** 2 <= cfg.cutoff / 4:
            alphas.append(alpha)

    covs, works = [], []
    for alpha in alphas:
        cond = coherent_condition(rho, alpha)
        covs.append(fock_covariance(cond)[1])
        works.append(extracted_work(s_eq, fock_entropy(cond), rep.temperature))
    covs = np.array(covs)
    spread = float(np.max(covs.max(axis=0) - covs.min(axis=0)))
    w_oracle = works[0]
    abs_dev = abs(w_oracle - rep.work)
    if rep.work == 0 and abs_dev <= 1e-10 * constants.K_B * rep.temperature:
        rel_dev = 0.0
    else:
        rel_dev = abs_dev / max(abs(rep.work), 1e-300)
    row.update(
        W_oracle=w_oracle, abs_dev=abs_dev, rel_dev=rel_dev,
        trace_defect=rho.trace_defect, alpha_spread=spread, truncated=False,
    )
    ok = rel_dev <= ORACLE_REL_TOL and spread <= ORACLE_ALPHA_SPREAD_TOL
    return row, ok


def oracle_compare(cfg):
    if cfg.cutoff is None:
        raise ConfigError("oracle-compare needs a cutoff (config 'cutoff' or --cutoff)")
    _, grid = cfg.thermal_axis
    rng = np.random.default_rng(cfg.seed)
    rows, ok = [], True
    for r, thermal in itertools.product(sorted(cfg.r), sorted(grid)):
        row, row_ok = _oracle_row(cfg, r, thermal, rng)
        rows.append(row)
        ok = ok and row_ok
    return rows, ok


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _load_config(args):
    if args.config is None:
        raise ConfigError("--config is required")
    try:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    if args.format is not None:
        cfg.format = args.format
    if args.seed is not None:
        cfg.seed = args.seed
    if args.cutoff is not None:
        cfg.cutoff = args.cutoff
    cfg.__post_init__()
    return cfg


def build_parser():
    parser = argparse.ArgumentParser(prog="eiwe", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify-eq4", "sweep", "oracle-compare"):
        p = sub.add_parser(name)
        p.add_argument("--config", metavar="PATH")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--seed", type=int)
        p.add_argument("--cutoff", type=int)
    p = sub.add_parser("curvature")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--p0", type=float, required=True, help="pressure in Pa")
    p.add_argument("--out", metavar="PATH")
    return parser


def _configure_logging():
    level = os.environ.get("EIWE_LOG", "quiet").lower()
    levels = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        if args.command == "curvature":
            try:
                value = delta_ricci(CurvatureInput(args.xi, args.p0))
            except EiweError as exc:
                raise ConfigError(str(exc)) from exc
            record = {"xi": args.xi, "p0": args.p0, "delta_R": value}
            _emit(json.dumps(record, sort_keys=True) + "\n", args.out)
            return EXIT_OK

        cfg = _load_config(args)
        meta = {"command": args.command, "config": cfg.as_dict()}
        if args.command == "verify-eq4":
            rows, ok = verify_eq4(cfg)
            columns = VERIFY_COLUMNS
        elif args.command == "sweep":
            rows, ok = sweep(cfg), True
            columns = SWEEP_COLUMNS
        else:
            rows, ok = oracle_compare(cfg)
            columns = ORACLE_COLUMNS
    except (ConfigError, EiweError) as exc:
        print(f"eiwe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _emit(render(rows, columns, cfg.format, meta), args.out)
    return EXIT_OK if ok else EXIT_THRESHOLD


if __name__ == "__main__":
    sys.exit(main())
