"""Command-line front end: grid scans of the spin witness and bound-check sweeps.

Subcommands::

    tempeur scan --spin 1/2 --res 101 --format csv --out m_half.csv
    tempeur check mu --trials 1000 --dim 3 --seed 0
    tempeur show-config --config scan.cfg

Exit codes: 0 success, 1 violation found by ``check``, 2 usage error, 3 I/O error.
"""

import argparse
import csv
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import bounds, lhsmodel, quantum
from ._backend import BACKEND
from .spin import SpinLabel

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

THREADS_ENV = "TEMPEUR_THREADS"
NEG_TOL = 1e-9
TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    twice_s: int = 1
    theta_min: float = 0.0
    theta_max: float = TWO_PI
    phi_min: float = 0.0
    phi_max: float = TWO_PI
    resolution: int = 101
    output_format: str = "csv"
    output_path: str = "-"
    threads: int = 0

    def validate(self):
        if not isinstance(self.twice_s, int) or self.twice_s < 1:
            raise ConfigError(f"spin: must be a positive multiple of 1/2 (twice_s={self.twice_s!r})")
        if self.resolution < 2:
            raise ConfigError(f"res: resolution must be >= 2, got {self.resolution}")
        if not self.theta_max > self.theta_min:
            raise ConfigError(f"theta-range: max {self.theta_max} must exceed min {self.theta_min}")
        if not self.phi_max > self.phi_min:
            raise ConfigError(f"phi-range: max {self.phi_max} must exceed min {self.phi_min}")
        for name in ("theta_min", "theta_max", "phi_min", "phi_max"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name}: must be finite")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"format: expected csv or json, got {self.output_format!r}")
        if self.threads < 0:
            raise ConfigError(f"threads: must be >= 0, got {self.threads}")
        return self

    @property
    def spin(self):
        return SpinLabel(self.twice_s)

    def thetas(self):
        return np.linspace(self.theta_min, self.theta_max, self.resolution)

    def phis(self):
        return np.linspace(self.phi_min, self.phi_max, self.resolution)


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    thetas: np.ndarray
    phis: np.ndarray
    grid: np.ndarray
    negative_fraction: float
    min_value: float
    argmin: tuple


def resolve_threads(threads):
    if threads > 0:
        return threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV, env)
    return os.cpu_count() or 1


def _chunks(n, k):
    bounds_ = np.linspace(0, n, min(n, k) + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds_[:-1], bounds_[1:]) if b > a]


def run_scan(cfg):
    """Evaluate the witness on the inclusive (theta, phi) grid.

    ``grid[i, j] = m_witness(s, thetas[i], phis[j])`` exactly: each cell is
    assembled from the same per-angle entropies and in the same order as a
    direct call, so results do not depend on the worker count.
    """
    cfg.validate()
    workers = resolve_threads(cfg.threads)
    thetas, phis = cfg.thetas(), cfg.phis()
    ts = cfg.twice_s
    two_log_c = bounds._spin_two_log_c(ts)
    n = cfg.resolution
    h_theta = np.empty(n)
    h_phi = np.empty(n)
    grid = np.empty((n, n))

    def curve(out, angles, lo, hi):
        out[lo:hi] = bounds.spin_conditional_entropy_curve(ts, angles[lo:hi])

    def rows(lo, hi):
        grid[lo:hi] = (h_theta[lo:hi, None] + h_phi[None, :]) + two_log_c

    with ThreadPoolExecutor(max_workers=workers) as pool:
        jobs = [pool.submit(curve, h_theta, thetas, lo, hi) for lo, hi in _chunks(n, workers)]
        jobs += [pool.submit(curve, h_phi, phis, lo, hi) for lo, hi in _chunks(n, workers)]
        for job in jobs:
            job.result()
        for job in [pool.submit(rows, lo, hi) for lo, hi in _chunks(n, workers)]:
            job.result()

    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    return ScanResult(
        config=cfg,
        thetas=thetas,
        phis=phis,
        grid=grid,
        negative_fraction=float(np.count_nonzero(grid < -NEG_TOL)) / grid.size,
        min_value=float(grid[i, j]),
        argmin=(float(thetas[i]), float(phis[j])),
    )


def _fmt(v):
    return f"{v:.12g}"


def _config_record(cfg):
    rec = asdict(cfg)
    rec["spin"] = str(cfg.spin.s)
    return rec


def render(result, cfg):
    """Serialise a scan result to text in the configured format."""
    if cfg.output_format == "csv":
        lines = ["theta,phi,m"]
        for i, th in enumerate(result.thetas):
            for j, ph in enumerate(result.phis):
                lines.append(f"{_fmt(th)},{_fmt(ph)},{_fmt(result.grid[i, j])}")
        return "\n".join(lines) + "\n"
    doc = {
        "config": _config_record(cfg),
        "thetas": [float(_fmt(v)) for v in result.thetas],
        "phis": [float(_fmt(v)) for v in result.phis],
        "grid": [float(_fmt(v)) for v in result.grid.ravel()],
        "summary": {
            "negative_fraction": result.negative_fraction,
            "min_value": result.min_value,
            "argmin": list(result.argmin),
        },
    }
    return json.dumps(doc, indent=1) + "\n"


def emit(result, cfg):
    """Write the result to ``cfg.output_path`` (``-`` for stdout). OS errors propagate."""
    text = render(result, cfg)
    if cfg.output_path in ("-", ""):
        sys.stdout.write(text)
        return
    with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_grid(path):
    """Parse a CSV or JSON scan file back into ``(thetas, phis, grid)``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        th = np.array(doc["thetas"])
        ph = np.array(doc["phis"])
        return th, ph, np.array(doc["grid"]).reshape(len(th), len(ph))
    rows = list(csv.reader(text.splitlines()))
    if rows[0] != ["theta", "phi", "m"]:
        raise ValueError(f"unexpected CSV header {rows[0]}")
    data = np.array([[float(x) for x in r] for r in rows[1:]])
    th = np.unique(data[:, 0])
    ph = np.unique(data[:, 1])
    return th, ph, data[:, 2].reshape(len(th), len(ph))


# bound-check sweeps


def run_checks(kind, trials, dim, seed):
    """Run a randomized bound sweep; return ``(summary_line, exit_code)``."""
    rng = np.random.default_rng(seed)
    min_slack = math.inf
    violations = 0
    extra = ""
    if kind == "mu":
        for _ in range(trials):
            rho = quantum.random_density_matrix(dim, rng, n_pure=int(rng.integers(1, dim + 1)))
            x = quantum.random_observable(dim, rng)
            z = quantum.random_observable(dim, rng)
            rep = bounds.mu_check(rho, x, z)
            min_slack = min(min_slack, rep.slack)
            violations += not rep.satisfied
    elif kind == "berta":
        for _ in range(trials):
            rho = quantum.random_density_matrix(dim * dim, rng, n_pure=int(rng.integers(1, 5)))
            rho_ab = quantum.BipartiteState((dim, dim), rho)
            x = quantum.random_observable(dim, rng)
            z = quantum.random_observable(dim, rng)
            rep = bounds.berta_check(rho_ab, x, z)
            min_slack = min(min_slack, rep.slack)
            violations += not rep.satisfied
    elif kind == "theorem":
        x, z = quantum.fourier_pair(dim)
        summary = lhsmodel.theorem_sweep(dim, trials, x, z, seed)
        min_slack = summary.min_slack
        violations = summary.violations
        extra = (
            f" min_member_mu_slack={summary.min_member_mu_slack:.6g}"
            f" min_averaging_slack={summary.min_averaging_slack:.6g}"
        )
    else:
        raise ConfigError(f"unsupported check kind {kind!r}")
    line = (
        f"check={kind} trials={trials} dim={dim} seed={seed} "
        f"violations={violations} min_slack={min_slack:.6g}{extra}"
    )
    return line, EXIT_VIOLATION if violations else EXIT_OK


# argument parsing

def parse_angle(text):
    """Parse ``1.5``, ``pi``, ``2pi``, ``-pi/2`` or ``3*pi/4`` into radians."""
    t = str(text).strip().lower().replace(" ", "").replace("*", "")
    try:
        if "pi" not in t:
            return float(t)
        head, _, tail = t.partition("pi")
        coef = {"": 1.0, "+": 1.0, "-": -1.0}[head] if head in ("", "+", "-") else float(head)
        value = coef * math.pi
        if tail:
            if not tail.startswith("/"):
                raise ValueError
            value /= float(tail[1:])
        return value
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse angle {text!r}") from None


def parse_range(text):
    parts = str(text).split(":")
    if len(parts) != 2:
        raise ConfigError(f"range must look like a:b, got {text!r}")
    return parse_angle(parts[0]), parse_angle(parts[1])


def read_config_file(path):
    """Read ``key=value`` lines; ``#`` starts a comment. Keys use the long flag names."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (t.strip() for t in line.split("=", 1))
            values[key.replace("_", "-")] = value
    return values


_SCAN_KEYS = ("spin", "res", "theta-range", "phi-range", "format", "out", "threads")


def build_scan_config(args):
    file_values = read_config_file(args.config) if args.config else {}
    unknown = set(file_values) - set(_SCAN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(key, attr):
        flag = getattr(args, attr)
        return flag if flag is not None else file_values.get(key)

    defaults = ScanConfig()
    kw = {}
    spin = pick("spin", "spin")
    if spin is not None:
        try:
            kw["twice_s"] = SpinLabel.parse(spin).twice_s
        except ValueError as exc:
            raise ConfigError(f"spin: {exc}") from None
    res = pick("res", "res")
    if res is not None:
        try:
            kw["resolution"] = int(res)
        except ValueError:
            raise ConfigError(f"res: not an integer: {res!r}") from None
    for key, attr, lo, hi in (
        ("theta-range", "theta_range", "theta_min", "theta_max"),
        ("phi-range", "phi_range", "phi_min", "phi_max"),
    ):
        r = pick(key, attr)
        if r is not None:
            kw[lo], kw[hi] = parse_range(r)
    fmt = pick("format", "format")
    out = pick("out", "out")
    if fmt is not None:
        kw["output_format"] = fmt
    elif out and out.lower().endswith(".json"):
        kw["output_format"] = "json"
    if out is not None:
        kw["output_path"] = out
    threads = pick("threads", "threads")
    if threads is not None:
        try:
            kw["threads"] = int(threads)
        except ValueError:
            raise ConfigError(f"threads: not an integer: {threads!r}") from None
    cfg = ScanConfig(**{**asdict(defaults), **kw})
    return cfg.validate()


def config_file_lines(cfg):
    """The config as ``(key, value)`` pairs that :func:`read_config_file` reads back losslessly."""
    return [
        ("spin", str(cfg.spin.s)),
        ("res", str(cfg.resolution)),
        ("theta-range", f"{cfg.theta_min!r}:{cfg.theta_max!r}"),
        ("phi-range", f"{cfg.phi_min!r}:{cfg.phi_max!r}"),
        ("format", cfg.output_format),
        ("out", cfg.output_path),
        ("threads", str(cfg.threads)),
    ]


def _add_scan_flags(p):
    p.add_argument("--config", help="key=value file; flags override its values")
    p.add_argument("--spin", help="spin value, e.g. 1/2, 1, 3/2 (default 1/2)")
    p.add_argument("--res", help="grid points per axis, endpoints included (default 101)")
    p.add_argument("--theta-range", help="a:b in radians, 'pi' allowed (default 0:2pi)")
    p.add_argument("--phi-range", help="a:b in radians (default 0:2pi)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output file, '-' for stdout (default)")
    p.add_argument("--threads", help=f"worker count; 0 = ${THREADS_ENV} or CPU count")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="tempeur", description="Entropic uncertainty with temporal memory: scans and checks."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="grid scan of the spin-s witness M_s(theta, phi)")
    _add_scan_flags(scan)

    show = sub.add_parser("show-config", help="print the resolved scan configuration")
    _add_scan_flags(show)

    check = sub.add_parser("check", help="randomized bound-validity sweep")
    check.add_argument("kind", choices=("mu", "berta", "theorem"))
    check.add_argument("--trials", type=int, default=1000)
    check.add_argument("--dim", type=int, default=2)
    check.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    if args.command == "check":
        if args.trials < 1 or args.dim < 2:
            parser.error("--trials must be >= 1 and --dim >= 2")
        line, code = run_checks(args.kind, args.trials, args.dim, args.seed)
        print(line)
        return code

    try:
        cfg = build_scan_config(args)
    except ConfigError as exc:
        print(f"tempeur: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"tempeur: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "show-config":
        for key, value in config_file_lines(cfg):
            print(f"{key}={value}")
        print(f"# backend={BACKEND} threads_resolved={resolve_threads(cfg.threads)}")
        return EXIT_OK

    result = run_scan(cfg)
    try:
        emit(result, cfg)
    except OSError as exc:
        print(f"tempeur: {exc}", file=sys.stderr)
        return EXIT_IO
    log.info(
        "s=%s negative_fraction=%.6f min=%.12g at theta=%.6g phi=%.6g (backend=%s)",
        cfg.spin.s,
        result.negative_fraction,
        result.min_value,
        *result.argmin,
        BACKEND,
    )
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
