"""Command-line front end.

    biphoton sweep --config sweep.cfg [--q N --scenario S --K v1,v2 --W min:max:count --out path]
    biphoton params --cn2 C --lambda L --waist W --z Z [--L len --no n]
    biphoton verify

Exit codes: 0 success, 2 configuration error, 3 numerical error.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
import io
import sys

import numpy as np

from . import entangle, evolve, kernel, oracle, params, project
from .errors import BiphotonError, DomainError

SCENARIOS = ("correlated", "uncorrelated", "sps-correlated", "sps-uncorrelated")
DEFAULT_K = (0.1, 1.0, 10.0, 100.0, 1e4)
CSV_HEADER = "scenario,q,K,W,t,concurrence,clamped"

EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(BiphotonError, ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    q: int = 1
    scenario: str = "uncorrelated"
    K_values: tuple = DEFAULT_K
    W_range: tuple = (0.0, 2.0, 41)
    output_path: str = "-"

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        if not isinstance(self.q, int) or self.q < 1:
            raise ConfigError(f"q must be a positive integer, got {self.q!r}")
        if self.scenario.startswith("sps") and self.q not in (1, 2, 3):
            raise ConfigError("closed-form SPS curves exist for q in {1, 2, 3} only")
        lo, hi, count = self.W_range
        if not (lo >= 0 and hi >= lo and int(count) == count and count >= 2):
            raise ConfigError(f"bad W range {self.W_range!r}: need 0 <= min <= max and count >= 2")
        if not self.scenario.startswith("sps"):
            if not self.K_values or any(not k > 0 for k in self.K_values):
                raise ConfigError("K values must all be > 0")
        return self

    @property
    def W_values(self):
        lo, hi, count = self.W_range
        return np.linspace(lo, hi, int(count))


def _parse_K(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"cannot parse K list {text!r}") from None


def _parse_W(text):
    parts = text.split(":")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise ConfigError(f"W range must look like min:max:count, got {text!r}") from None
    return (lo, hi, count)


def _parse_q(text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"q must be an integer, got {text!r}") from None


_KEYS = {
    "q": ("q", _parse_q),
    "scenario": ("scenario", str.strip),
    "k": ("K_values", _parse_K),
    "w": ("W_range", _parse_W),
    "out": ("output_path", str.strip),
    "output": ("output_path", str.strip),
}


def load_config(text, base=None):
    """Parse a flat ``key = value`` config; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        key = key.strip().lower()
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        name, parse = _KEYS[key]
        values[name] = parse(value.strip())
    return replace(base or SweepConfig(), **values)


def _sweep_point(args):
    scenario, q, K, W = args
    correlated = scenario.endswith("correlated") and not scenario.endswith("uncorrelated")
    if scenario.startswith("sps"):
        c = entangle.sps_concurrence(q, entangle.chi(W, correlated))
        return (scenario, q, float("inf"), W, 0.0, c, False)
    t = params.weak_scint_t(W, K)
    evolved = evolve.evolve_spdc(K, t, 1.0, correlated)
    res = entangle.concurrence(project.project_qubit(evolved, q, t))
    return (scenario, q, K, W, t, res.value, res.clamped)


def run_sweep(config, jobs=1):
    """Concurrence rows (scenario, q, K, W, t, concurrence, clamped) in sorted order.

    SPS rows report ``K = inf`` and ``t = 0``: they are the K -> infinity limit.
    """
    config.validate()
    Ks = (float("inf"),) if config.scenario.startswith("sps") else tuple(sorted(config.K_values))
    tasks = [(config.scenario, config.q, K, float(W)) for K in Ks for W in config.W_values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(task) for task in tasks]
    return sorted(rows, key=lambda r: (r[0], r[1], r[2], r[3]))


def _num(x):
    return f"{x:.11e}"


def format_csv(rows):
    out = io.StringIO(newline="")
    out.write(CSV_HEADER + "\n")
    for scenario, q, K, W, t, c, clamped in rows:
        out.write(",".join([scenario, str(q), _num(K), _num(W), _num(t), _num(c), str(clamped).lower()]) + "\n")
    return out.getvalue()


def write_csv(rows, path):
    text = format_csv(rows)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def report_params(cn2, wavelength, waist, distance, crystal_length=None, ordinary_index=None):
    """Plain-text report of all derived turbulence parameters."""
    s = params.TurbulenceScales(cn2, wavelength, waist, distance, crystal_length, ordinary_index)
    lines = [
        "# inputs",
        f"cn2 = {cn2!r} m^-2/3",
        f"lambda = {wavelength!r} m",
        f"waist = {waist!r} m",
        f"z = {distance!r} m",
    ]
    if crystal_length is not None:
        lines.append(f"L = {crystal_length!r} m")
    if ordinary_index is not None:
        lines.append(f"n_o = {ordinary_index!r}")
    K = s.K
    rytov = s.sigma_R2
    rytov_wk = s.sigma_R2_WK
    lines += [
        "# derived",
        f"k = {s.k:.6e} 1/m",
        f"r0 = {s.r0:.6e} m",
        f"W = {s.W:.6e}",
        f"K = {K:.6e}",
        f"t = {s.t:.6e}",
        f"sigma_R2 = {rytov:.6e}",
        f"sigma_R2(W,K) = {rytov_wk:.6e}",
        f"beta = {s.beta:.6e}" if s.beta is not None else "beta = n/a (needs L and n_o)",
        f"zeta = {s.zeta:.6e} m^-7/3",
    ]
    if K > 0 and rytov > 0:
        rel = abs(rytov - rytov_wk) / rytov
        flag = "MISMATCH" if rel > 0.01 else "ok"
        lines.append(f"rytov consistency: {flag} (relative difference {rel:.3e})")
    else:
        lines.append("rytov consistency: n/a (no turbulence)")
    return "\n".join(lines) + "\n"


def verify(rng_seed=0, out=None):
    """Structure constant and oracle pairings; returns True if every check passes."""
    out = out or sys.stdout
    ok = True

    def line(name, passed, detail):
        nonlocal ok
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'} {name}: {detail}\n")

    S = params.verify_structure_constant()
    line("structure constant", abs(S - params.STRUCTURE_CONSTANT) <= 0.01, f"S = {S:.6f}")

    rng = np.random.default_rng(rng_seed)
    k0 = kernel.spdc_kernel(1.0, 0.5)
    pts = rng.normal(scale=0.2, size=(5, 4, 2))
    for xi in (1, 0):
        analytic = evolve.propagate_general(k0, 1.0, 0.5, xi)
        quad = oracle.quad_propagate(k0, 1.0, 0.5, xi, oracle.QuadratureSpec(), pts)
        err = max(abs(q / complex(analytic(*p)) - 1) for q, p in zip(quad, pts))
        line(f"quadrature vs propagation (xi={xi})", err <= 1e-6, f"max rel err {err:.2e}")

    worst = 0.0
    for i in range(6):
        q = 1 + i % 3
        B = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
        B = 0.5 * (B + B.T)
        B /= np.abs(B).max()
        form = project.MuQuadraticForm(1.0, B)
        a = project.extract_element(form, q)
        b = oracle.fd_extract(form, q)
        worst = max(worst, abs(a / b - 1))
    line("finite differences vs series", worst <= 1e-6, f"max rel err {worst:.2e}")
    return ok


def build_parser():
    p = argparse.ArgumentParser(prog="biphoton", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="concurrence curves as CSV")
    sw.add_argument("--config", help="flat key = value file (keys: q, scenario, K, W, out)")
    sw.add_argument("--q", type=str)
    sw.add_argument("--scenario", choices=SCENARIOS)
    sw.add_argument("--K", dest="K", help="comma-separated turbulence strengths")
    sw.add_argument("--W", dest="W", help="min:max:count")
    sw.add_argument("--out", help="output CSV path, '-' for stdout")
    sw.add_argument("--jobs", type=int, default=1)

    pa = sub.add_parser("params", help="report derived turbulence parameters")
    pa.add_argument("--cn2", type=float, required=True)
    pa.add_argument("--lambda", dest="wavelength", type=float, required=True)
    pa.add_argument("--waist", type=float, required=True)
    pa.add_argument("--z", type=float, required=True)
    pa.add_argument("--L", dest="crystal_length", type=float)
    pa.add_argument("--no", dest="ordinary_index", type=float)

    sub.add_parser("verify", help="run the structure-constant and oracle checks")
    return p


def _sweep_config(args):
    cfg = SweepConfig()
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = load_config(fh.read(), cfg)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    overrides = {}
    if args.q is not None:
        overrides["q"] = _parse_q(args.q)
    if args.scenario is not None:
        overrides["scenario"] = args.scenario
    if args.K is not None:
        overrides["K_values"] = _parse_K(args.K)
    if args.W is not None:
        overrides["W_range"] = _parse_W(args.W)
    if args.out is not None:
        overrides["output_path"] = args.out
    return replace(cfg, **overrides).validate()


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = _sweep_config(args)
            write_csv(run_sweep(cfg, jobs=args.jobs), cfg.output_path)
        elif args.command == "params":
            sys.stdout.write(
                report_params(args.cn2, args.wavelength, args.waist, args.z, args.crystal_length, args.ordinary_index)
            )
        elif args.command == "verify":
            return 0 if verify() else EXIT_NUMERIC
    except (ConfigError, DomainError) as exc:
        field_name = getattr(exc, "field", None)
        prefix = f"{field_name}: " if field_name else ""
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BiphotonError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
