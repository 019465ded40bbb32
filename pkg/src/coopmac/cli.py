"""Command-line front end: config parsing, dispatch, CSV/JSON output.

Subcommands
-----------
bounds      averaged lower/upper throughput bounds per link class
simulate    Monte-Carlo throughput estimates
contour     helper-position throughput map for one link
reproduce   figure-style sweep tables (fig7/fig9/fig10/contour_*)
selftest    quick built-in oracle checks

Configuration is a flat ``key=value`` text file plus command-line
overrides; defaults are the reference parameter set (0 dBm transmit,
-98 dBm threshold, alpha=3, sigma=6 dB, K=-40 dB).  Exit codes: 0 ok,
1 usage error, 2 config error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .channel_model import ChannelParams, g_joint, p_success_direct, q_function
from .stochastic_geometry import lens_area, tier_region_areas
from .analytic_bounds import averaged_bounds, tier_probabilities, total_throughput_bounds
from .quadrature import adaptive_simpson
from .monte_carlo import DENSITY_GRID, ExperimentConfig, contour_grid, estimate_throughput, reproduce_figure


class UsageError(Exception):
    pass


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Full run configuration: channel, frame sizes, experiment, output."""

    # channel (dBm / dB)
    pt: float = 0.0
    pth: float = -98.0
    k_const: float = -40.0
    alpha: float = 3.0
    sigma: float = 6.0
    # frame sizes, stored for protocol-level accounting only
    rts_bits: int = 352
    cooprts_bits: int = 352
    cts_bits: int = 304
    hts_bits: int = 304
    data_bytes: int = 1000
    # experiment
    link_class: str = "C"  # A | B | C | D | all
    scheme: str = "both"
    densities: tuple = DENSITY_GRID
    trials: int = 200_000
    seed: int = 0
    mode: str = "analytic"
    conditioning: str = "ppp"  # "ppp" or "k=<int>"
    r_k: float = -1.0  # contour link length; <0 -> regime midpoint
    resolution: float = 0.5
    figure: str = "fig7"
    workers: int = 1
    # output
    out: str = "-"
    format: str = "csv"

    def channel(self) -> ChannelParams:
        try:
            return ChannelParams(pt=self.pt, pth=self.pth, k_const=self.k_const,
                                 alpha=self.alpha, sigma_sh=self.sigma)
        except ValueError as e:
            raise ConfigError(str(e))

    def k_value(self):
        """None for ppp conditioning, else the neighbor order k."""
        c = self.conditioning.strip()
        if c == "ppp":
            return None
        if c.startswith("k="):
            try:
                k = int(c[2:])
            except ValueError:
                raise ConfigError("conditioning: expected k=<int>, got %r" % (c,))
            if k < 1:
                raise ConfigError("conditioning: k must be >= 1")
            return k
        raise ConfigError("conditioning must be 'ppp' or 'k=<int>', got %r" % (c,))

    def validate(self):
        if self.link_class not in ("A", "B", "C", "D", "all"):
            raise ConfigError("class must be one of A, B, C, D, all")
        if self.scheme not in ("proposed", "conventional", "both"):
            raise ConfigError("scheme must be proposed, conventional or both")
        if self.mode not in ("analytic", "sampled"):
            raise ConfigError("mode must be analytic or sampled")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if any(d <= 0 for d in self.densities):
            raise ConfigError("lambda values must be positive")
        self.channel()
        self.k_value()
        return self

    def hash(self) -> str:
        """Short digest of the experiment-defining fields (not output/workers)."""
        payload = asdict(self)
        for key in ("out", "format", "workers"):
            payload.pop(key, None)
        return hashlib.sha256(json.dumps(payload, sort_keys=True, default=list).encode()).hexdigest()[:12]


_FLOAT_FIELDS = {"pt", "pth", "k_const", "alpha", "sigma", "r_k", "resolution"}
_INT_FIELDS = {"rts_bits", "cooprts_bits", "cts_bits", "hts_bits", "data_bytes", "trials", "seed", "workers"}
_VALID_KEYS = {f.name for f in fields(RunConfig)} | {"lambda", "class"}


def _assign(cfg: RunConfig, key: str, value: str):
    key = {"lambda": "densities", "class": "link_class"}.get(key, key)
    if key not in {f.name for f in fields(RunConfig)}:
        raise ConfigError("unknown config key %r" % (key,))
    try:
        if key == "densities":
            cfg.densities = tuple(float(v) for v in str(value).replace(",", " ").split())
        elif key in _FLOAT_FIELDS:
            setattr(cfg, key, float(value))
        elif key in _INT_FIELDS:
            setattr(cfg, key, int(value))
        else:
            setattr(cfg, key, str(value))
    except ValueError:
        raise ConfigError("invalid value %r for key %r" % (value, key))


def parse_config(path=None, overrides=None) -> RunConfig:
    """Merge defaults, an optional key=value file, and flag overrides."""
    cfg = RunConfig()
    if path:
        try:
            with open(path) as fh:
                lines = fh.readlines()
        except OSError as e:
            raise ConfigError("cannot read config file: %s" % (e,))
        for ln, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("line %d: expected key=value, got %r" % (ln, line))
            key, value = line.split("=", 1)
            _assign(cfg, key.strip(), value.strip())
    for key, value in (overrides or {}).items():
        if value is not None:
            _assign(cfg, key, value)
    return cfg.validate()


def _emit(rows, cfg: RunConfig, float_cols=None):
    """Write rows (list of dicts) as CSV (4-decimal Mbps) or JSON."""
    if not rows:
        rows = []
    meta = {"seed": cfg.seed, "config_hash": cfg.hash()}
    out_rows = [{**row, **meta} for row in rows]
    stream = sys.stdout if cfg.out in ("-", "") else open(cfg.out, "w", newline="", encoding="utf-8")
    try:
        if cfg.format == "json":
            json.dump(out_rows, stream, indent=2)
            stream.write("\n")
        else:
            if not out_rows:
                return
            writer = csv.DictWriter(stream, fieldnames=list(out_rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            for row in out_rows:
                writer.writerow(
                    {k: (format(v, ".4f") if isinstance(v, float) and k != "density" else v) for k, v in row.items()}
                )
    finally:
        if stream is not sys.stdout:
            stream.close()


def _cmd_bounds(cfg: RunConfig):
    params = cfg.channel()
    k = cfg.k_value()
    regimes = {"C": ["C"], "D": ["D1", "D2"], "all": ["C", "D1", "D2", "total"]}.get(cfg.link_class)
    if regimes is None:
        raise ConfigError("bounds requires class C, D or all (A/B links have no cooperative bounds)")
    rows = []
    for d in cfg.densities:
        for regime in regimes:
            if regime == "total":
                pair = total_throughput_bounds(d, k=k, params=params)
            else:
                pair = averaged_bounds(regime, d, k=k, params=params)
            rows.append({"density": d, "regime": regime, "lower": pair.lower, "upper": pair.upper})
    return rows


def _cmd_simulate(cfg: RunConfig):
    regimes = {"A": ["A"], "B": ["B"], "C": ["C"], "D": ["D1", "D2"], "all": ["all"]}[cfg.link_class]
    rows = []
    for regime in regimes:
        config = ExperimentConfig(
            densities=cfg.densities,
            scheme=cfg.scheme,
            regime=regime,
            trials=cfg.trials,
            estimator_mode=cfg.mode,
            base_seed=cfg.seed,
            channel=cfg.channel(),
            k=cfg.k_value(),
        )
        for est in estimate_throughput(config, workers=cfg.workers):
            rows.append(
                {
                    "density": est.density,
                    "regime": est.regime,
                    "scheme": est.scheme,
                    "mean": est.mean,
                    "stderr": est.stderr,
                    "trials": est.trials,
                }
            )
    return rows


def _cmd_contour(cfg: RunConfig):
    if cfg.link_class not in ("C", "D"):
        raise ConfigError("contour requires class C or D")
    regimes = ["C"] if cfg.link_class == "C" else ["D1", "D2"]
    rows = []
    for regime in regimes:
        grid = contour_grid(regime, r_k=cfg.r_k if cfg.r_k > 0 else None,
                            resolution=cfg.resolution, params=cfg.channel())
        yy, xx = np.nonzero(~np.isnan(grid["throughput"]))
        for i, j in zip(yy, xx):
            rows.append(
                {
                    "regime": regime,
                    "x": float(grid["x"][j]),
                    "y": float(grid["y"][i]),
                    "tier": int(grid["tier"][i, j]),
                    "throughput": float(grid["throughput"][i, j]),
                }
            )
    return rows


def _cmd_reproduce(cfg: RunConfig):
    try:
        return reproduce_figure(
            cfg.figure,
            densities=cfg.densities,
            trials=cfg.trials,
            base_seed=cfg.seed,
            params=cfg.channel(),
            k=cfg.k_value(),
            workers=cfg.workers,
        )
    except ValueError as e:
        raise UsageError(str(e))


def _cmd_selftest(cfg: RunConfig):
    """Quick oracle battery; prints one pass/fail line per check."""
    params = ChannelParams()
    checks = []

    def check(name, ok):
        checks.append((name, bool(ok)))

    check("q_function(0) == 0.5", abs(q_function(0.0) - 0.5) < 1e-12)
    check("q symmetry", abs(q_function(1.25) + q_function(-1.25) - 1.0) < 1e-12)
    check("Ps(48.2) ~= 0.8946", abs(float(p_success_direct(48.2, params)) - 0.8946) < 1e-4)
    check("Ps(67.1) ~= 0.7030", abs(float(p_success_direct(67.1, params)) - 0.7030) < 1e-4)
    check("G(48.2,48.2) ~= 0.8003", abs(float(g_joint(48.2, 48.2, params)) - 0.8003) < 1e-4)
    check("lens full overlap", abs(lens_area(48.2, 48.2, 0.0) - np.pi * 48.2 ** 2) < 1e-9)
    check("lens tangent", lens_area(48.2, 48.2, 96.4) == 0.0)

    rng = np.random.default_rng(1)
    pts = rng.uniform([-48.2, -48.2], [70 + 48.2, 48.2], size=(200_000, 2))
    box = (70 + 96.4) * 96.4
    frac = np.mean((np.hypot(pts[:, 0], pts[:, 1]) < 48.2) & (np.hypot(pts[:, 0] - 70, pts[:, 1]) < 48.2))
    check("lens(48.2,48.2,70) vs MC", abs(frac * box - lens_area(48.2, 48.2, 70.0)) / lens_area(48.2, 48.2, 70.0) < 0.02)

    areas = tier_region_areas("C", 70.0)
    check("C areas positive", all(a > 0 for a in areas.areas))
    vec = tier_probabilities("C", 70.0, density=0.001)
    check("tier probs sum to 1", abs(sum(vec.probs.values()) + vec.residual - 1.0) < 1e-12)
    check("simpson x^3", abs(adaptive_simpson(lambda x: x ** 3, 0.0, 2.0) - 4.0) < 1e-9)

    config = ExperimentConfig(densities=(0.002,), regime="C", trials=2000, base_seed=9)
    a = estimate_throughput(config)[0]
    b = estimate_throughput(config)[0]
    check("simulation determinism", a == b)

    ok = True
    for name, passed in checks:
        print("%s %s" % ("PASS" if passed else "FAIL", name))
        ok = ok and passed
    if not ok:
        raise RuntimeError("selftest failed")
    return []


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coopmac", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command")
    for name in ("bounds", "simulate", "contour", "reproduce", "selftest"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--class", dest="link_class", choices=["A", "B", "C", "D", "all"])
        p.add_argument("--scheme", choices=["proposed", "conventional", "both"])
        p.add_argument("--lambda", dest="densities", help="space/comma separated density list")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--mode", choices=["analytic", "sampled"])
        p.add_argument("--conditioning", help="ppp or k=<int>")
        p.add_argument("--workers", type=int)
        p.add_argument("--out")
        p.add_argument("--format", choices=["csv", "json"])
        if name == "contour":
            p.add_argument("--r-k", dest="r_k", type=float)
            p.add_argument("--resolution", type=float)
        if name == "reproduce":
            p.add_argument("figure", nargs="?")
    return parser


_COMMANDS = {
    "bounds": _cmd_bounds,
    "simulate": _cmd_simulate,
    "contour": _cmd_contour,
    "reproduce": _cmd_reproduce,
    "selftest": _cmd_selftest,
}


def dispatch(command: str, cfg: RunConfig) -> int:
    handler = _COMMANDS.get(command)
    if handler is None:
        raise UsageError("unknown subcommand %r" % (command,))
    rows = handler(cfg)
    if rows:
        _emit(rows, cfg)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required (bounds, simulate, contour, reproduce, selftest)")
        overrides = {
            k: v
            for k, v in vars(args).items()
            if k not in ("command", "config", "figure") and v is not None
        }
        if getattr(args, "figure", None):
            overrides["figure"] = args.figure
        cfg = parse_config(getattr(args, "config", None), overrides)
        return dispatch(args.command, cfg)
    except UsageError as e:
        print("usage error: %s" % (e,), file=sys.stderr)
        return 1
    except ConfigError as e:
        print("config error: %s" % (e,), file=sys.stderr)
        return 2
    except Exception as e:  # runtime failure
        print("error: %s" % (e,), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
