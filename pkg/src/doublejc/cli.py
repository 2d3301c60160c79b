"""Command-line front end.

Subcommands::

    doublejc evolve          --config run.json [--set key=value ...]
    doublejc invariant-check --config run.json
    doublejc oracle-check    --seed 42 --n-cases 1000
    doublejc sudden-death    --alpha-min 0 --alpha-max 1.5 --n-alpha 31

Exit codes: 0 success / check passed, 1 check failed, 2 usage or config error.

Random draws use numpy's PCG64 (``numpy.random.default_rng(seed)``).  A
random generic state is 9 complex numbers whose real and imaginary parts are
drawn as ``standard_normal(9)`` twice (real block first), then normalised.
"""
from __future__ import annotations

import argparse
import ast
import copy
import csv
import io
import json
import logging
import math
import operator
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .dissipation import death_revival_scan, jc_to_dissipative_time, sudden_death_onset
from .entanglement import pairwise_concurrences, wedge_entanglement
from .invariants import drift_check
from .model import (CANONICAL_PARTITIONS, DomainError, GenericCoefficients, ModelParams,
                    SubsystemParams, embed, make_bell_phi, make_bell_psi, random_coefficients)
from .propagator import evolve_trajectory, oracle_evolve

log = logging.getLogger("doublejc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INVARIANT_TOL = 1e-10
ORACLE_TOL = 1e-10
RENORM_TOL = 1e-6

EVOLVE_SCHEMA = "doublejc.evolve/1"
SUDDEN_DEATH_SCHEMA = "doublejc.sudden-death/1"

WEDGE_COLUMNS = tuple(f"E_{p.name}" for p in CANONICAL_PARTITIONS)
CONCURRENCE_COLUMNS = ("C_AB", "C_Aa", "C_Bb", "C_ab", "C_Ab", "C_Ba")
EVOLVE_COLUMNS = ("t", "omega_a_t") + WEDGE_COLUMNS + CONCURRENCE_COLUMNS + ("4E_AaBb",)

DEFAULT_CONFIG = {
    "initial_state": {"kind": "psi", "alpha": math.pi / 4, "beta": 0.0},
    "params": {
        "sub_a": {"nu": 1.0, "omega": 1.0, "g": 1.0},
        "sub_b": {"nu": 1.0, "omega": 1.0, "g": 1.0},
    },
    "t_max": math.pi,
    "n_samples": 201,
    "seed": 0,
    "outputs": None,
}


class ConfigError(ValueError):
    pass


def fmt(x) -> str:
    return "" if x is None else format(float(x), ".17g")


# -- config ----------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _arith(node):
    if isinstance(node, ast.Expression):
        return _arith(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return node.value
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _arith(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_arith(node.left), _arith(node.right))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
            and node.func.id in ("sqrt", "atan") and len(node.args) == 1:
        return getattr(math, node.func.id)(_arith(node.args[0]))
    raise ValueError("not arithmetic")


def parse_value(text: str):
    """JSON literal, else arithmetic such as ``pi/6`` or ``atan(0.5)``, else string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    try:
        return float(_arith(ast.parse(text, mode="eval")))
    except (SyntaxError, ValueError, ZeroDivisionError):
        return text


def apply_override(cfg: dict, assignment: str):
    key, sep, raw = assignment.partition("=")
    if not sep or not key:
        raise ConfigError(f"override must look like key.path=value, got {assignment!r}")
    *path, last = key.split(".")
    node = cfg
    for part in path:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"cannot set {key}: {part} is not an object")
    node[last] = parse_value(raw)


def load_config(path: str | None, overrides=()) -> dict:
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if path:
        try:
            with open(path) as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        _merge(cfg, user)
    for item in overrides:
        apply_override(cfg, item)
    return cfg


def _merge(base: dict, extra: dict):
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict) and key != "initial_state":
            _merge(base[key], value)
        else:
            base[key] = value


@dataclass(frozen=True)
class RunConfig:
    coeffs: GenericCoefficients
    state_kind: str
    alpha: float | None
    params: ModelParams
    t_max: float
    n_samples: int
    seed: int
    outputs: tuple

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_samples)


def _num(value, name) -> float:
    if isinstance(value, str):
        value = parse_value(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    return float(value)


def _params(raw) -> ModelParams:
    try:
        subs = [SubsystemParams(**{k: _num(raw[s][k], f"params.{s}.{k}")
                                   for k in ("nu", "omega", "g")})
                for s in ("sub_a", "sub_b")]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"params need sub_a/sub_b with nu, omega, g: {exc}") from exc
    return ModelParams(*subs)


def _state(raw, seed):
    kind = raw.get("kind")
    if kind in ("phi", "psi"):
        alpha = _num(raw.get("alpha"), "initial_state.alpha")
        beta = _num(raw.get("beta", 0.0), "initial_state.beta")
        make = make_bell_phi if kind == "phi" else make_bell_psi
        return make(alpha, beta), alpha
    if kind == "generic":
        values = raw.get("coefficients")
        try:
            z = np.array([complex(_num(re, "re"), _num(im, "im")) for re, im in values])
        except (TypeError, ValueError) as exc:
            raise ConfigError("generic coefficients must be 9 [re, im] pairs") from exc
        if z.shape != (9,):
            raise ConfigError(f"expected 9 coefficients, got {len(z)}")
        norm = float(np.linalg.norm(z))
        if abs(norm**2 - 1) > RENORM_TOL:
            raise ConfigError(f"generic coefficients have |psi|^2 = {norm**2:.9g}; not normalised")
        if abs(norm**2 - 1) > 1e-12:
            log.warning("renormalising generic coefficients (|psi|^2 = %.15g)", norm**2)
        return GenericCoefficients.from_array(z / norm), None
    if kind == "random":
        return random_coefficients(np.random.default_rng(seed)), None
    raise ConfigError(f"initial_state.kind must be phi, psi, generic or random, got {kind!r}")


def build_run_config(cfg: dict) -> RunConfig:
    try:
        seed = int(cfg.get("seed", 0))
        if not 0 <= seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        coeffs, alpha = _state(cfg["initial_state"], seed)
        params = _params(cfg["params"])
        t_max = _num(cfg["t_max"], "t_max")
        n_samples = cfg["n_samples"]
        if isinstance(n_samples, bool) or not isinstance(n_samples, int) or n_samples < 2:
            raise ConfigError("n_samples must be an integer >= 2")
        if not t_max > 0:
            raise ConfigError("t_max must be positive")
        outputs = cfg.get("outputs") or EVOLVE_COLUMNS[2:]
        unknown = set(outputs) - set(EVOLVE_COLUMNS)
        if unknown:
            raise ConfigError(f"unknown outputs {sorted(unknown)}; choose from {EVOLVE_COLUMNS}")
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed config: {exc!r}") from exc
    kind = cfg["initial_state"]["kind"]
    return RunConfig(coeffs, kind, alpha, params, t_max, n_samples, seed,
                     tuple(c for c in EVOLVE_COLUMNS if c in outputs))


# -- output ----------------------------------------------------------------

def _write_table(out, columns, rows, schema, form):
    if form == "json":
        json.dump({"schema": schema, "columns": list(columns), "rows": rows}, out)
        out.write("\n")
        return
    out.write(f"# {schema}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(x) for x in row])


def _write_report(out, report: dict, form):
    if form == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in report.items():
            if isinstance(value, float):
                value = fmt(value)
            elif isinstance(value, (list, dict)):
                value = json.dumps(value)
            writer.writerow([key, value])
        return
    json.dump(report, out, indent=2)
    out.write("\n")


# -- commands --------------------------------------------------------------

def _evolve_row(t, row, rabi_a) -> dict:
    state = embed(GenericCoefficients.from_array(row))
    values = {"t": t, "omega_a_t": rabi_a * t}
    for col, part in zip(WEDGE_COLUMNS, CANONICAL_PARTITIONS):
        values[col] = wedge_entanglement(state, part)
    for col, c in zip(CONCURRENCE_COLUMNS, pairwise_concurrences(state).as_tuple()):
        values[col] = c
    values["4E_AaBb"] = 4 * values["E_Aa-Bb"]
    return values


def cmd_evolve(run: RunConfig, out, form="csv", workers=1):
    times = run.times()
    traj = evolve_trajectory(run.coeffs, run.params, times)
    rabi_a = run.params.sub_a.rabi
    columns = ("t", "omega_a_t") + tuple(c for c in run.outputs if c not in ("t", "omega_a_t"))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda t, row: _evolve_row(t, row, rabi_a), times.tolist(), traj))
    _write_table(out, columns, [[r[c] for c in columns] for r in rows], EVOLVE_SCHEMA, form)
    return EXIT_OK


def corrupted_evolve(coeffs, params, times):
    """Negative control: damps each slot at its own rate, then renormalises."""
    traj = evolve_trajectory(coeffs, params, times)
    rates = 0.5 * params.sub_a.g * np.arange(9) / 8
    traj *= np.exp(-np.outer(np.asarray(times), rates))
    return traj / np.linalg.norm(traj, axis=1, keepdims=True)


def cmd_invariant_check(run: RunConfig, out, form="json", corrupt=False):
    times = run.times()
    evolve = corrupted_evolve if corrupt else None
    quantities = ["invariant_E", "geninv", "eberly_psi"]
    if run.state_kind == "phi" and abs(math.cos(run.alpha)) >= 1e-12:
        quantities.append("eberly_phi")
    reports = [drift_check(run.coeffs, run.params, times, q, alpha=run.alpha, evolve=evolve)
               for q in quantities]
    drift_e = reports[0].max_abs_drift
    passed = drift_e < INVARIANT_TOL
    _write_report(out, {
        "schema": "doublejc.invariant-check/1",
        "state": run.state_kind,
        "n_samples": run.n_samples,
        "t_max": run.t_max,
        "tolerance": INVARIANT_TOL,
        "reports": [r.as_dict() for r in reports],
        "pass": passed,
    }, form)
    return EXIT_OK if passed else EXIT_FAIL


def random_case(rng: np.random.Generator):
    """(coeffs, params, t) with g_B/g_A in [0.2, 5] and Delta_k/g_k in [-2, 2]."""
    coeffs = random_coefficients(rng)
    g_a = rng.uniform(0.2, 2.0)
    g_b = g_a * rng.uniform(0.2, 5.0)
    subs = []
    for g in (g_a, g_b):
        nu = rng.uniform(0.5, 2.0)
        subs.append(SubsystemParams(nu=nu, omega=nu + g * rng.uniform(-2.0, 2.0), g=g))
    t = rng.uniform(0.0, 20.0 / min(g_a, g_b))
    return coeffs, ModelParams(*subs), t


def fidelity(x: np.ndarray, y: np.ndarray) -> float:
    return abs(np.vdot(x, y)) / math.sqrt(np.vdot(x, x).real * np.vdot(y, y).real)


def _oracle_case(case):
    coeffs, params, t = case
    closed = evolve_trajectory(coeffs, params, [t])[0]
    oracle = oracle_evolve(coeffs, params, t).as_array()
    return abs(1.0 - fidelity(closed, oracle)), float(np.max(np.abs(closed - oracle)))


def cmd_oracle_check(seed: int, n_cases: int, out, form="json", time=None, workers=1):
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n_cases):
        coeffs, params, t = random_case(rng)
        cases.append((coeffs, params, t if time is None else time))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_oracle_case, cases))
    fid = max(r[0] for r in results)
    amp = max(r[1] for r in results)
    passed = fid < ORACLE_TOL and amp < ORACLE_TOL
    _write_report(out, {
        "schema": "doublejc.oracle-check/1",
        "seed": seed,
        "n_cases": n_cases,
        "max_fidelity_deviation": fid,
        "max_amplitude_deviation": amp,
        "tolerance": ORACLE_TOL,
        "pass": passed,
    }, form)
    return EXIT_OK if passed else EXIT_FAIL


SUDDEN_DEATH_COLUMNS = ("alpha", "tan_alpha", "tau_jc", "tau_dissipative", "tau_scan")


def _sudden_death_row(alpha, params: ModelParams, n_scan):
    rabi = params.sub_a.rabi
    window = math.pi / (2 * rabi)
    tau = sudden_death_onset(alpha, rabi)
    tau_diss = jc_to_dissipative_time(tau, rabi, 1.0) if tau is not None else None
    scan = death_revival_scan(make_bell_phi(alpha), params, window, n_scan)
    first = scan.death_times[0] if scan.death_times else None
    return [alpha, math.tan(alpha), tau, tau_diss, first]


def cmd_sudden_death(alpha_min, alpha_max, n_alpha, params: ModelParams, out, form="csv",
                     workers=1, n_scan=400):
    a, b = params.sub_a, params.sub_b
    if not (a.delta == 0 and b.delta == 0 and a.g == b.g):
        log.warning("closed-form onset assumes resonant identical pairs; "
                    "tau_jc is not exact for these parameters")
    if n_alpha < 1 or not 0 <= alpha_min <= alpha_max <= math.pi / 2:
        raise ConfigError("need 0 <= alpha-min <= alpha-max <= pi/2 and n-alpha >= 1")
    alphas = np.linspace(alpha_min, alpha_max, n_alpha).tolist()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda al: _sudden_death_row(al, params, n_scan), alphas))
    _write_table(out, SUDDEN_DEATH_COLUMNS, rows, SUDDEN_DEATH_SCHEMA, form)
    return EXIT_OK


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="override a config field, e.g. initial_state.alpha=pi/6")
    common.add_argument("--seed", type=int, help="PRNG seed (overrides config)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="doublejc", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", parents=[common], help="trajectory of entanglement measures")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("invariant-check", parents=[common], help="drift of conserved quantities")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--corrupt-propagator", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("oracle-check", parents=[common],
                       help="closed form vs Hamiltonian diagonalisation")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--n-cases", type=int, default=1000)
    p.add_argument("--time", type=float, help="use this time for every case")

    p = sub.add_parser("sudden-death", parents=[common], help="onset of sudden death vs alpha")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--alpha-min", type=parse_value, default=0.0)
    p.add_argument("--alpha-max", type=parse_value, default=math.pi / 2)
    p.add_argument("--n-alpha", type=int, default=31)
    return parser


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    buf = io.StringIO()
    try:
        cfg = load_config(args.config, args.overrides)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if args.command == "evolve":
            code = cmd_evolve(build_run_config(cfg), buf, args.format, args.workers)
        elif args.command == "invariant-check":
            code = cmd_invariant_check(build_run_config(cfg), buf, args.format,
                                       args.corrupt_propagator)
        elif args.command == "oracle-check":
            if args.n_cases < 1:
                raise ConfigError("--n-cases must be >= 1")
            code = cmd_oracle_check(int(cfg["seed"]), args.n_cases, buf, args.format,
                                    args.time, args.workers)
        else:
            for name in ("alpha_min", "alpha_max"):
                if not isinstance(getattr(args, name), (int, float)):
                    raise ConfigError(f"--{name.replace('_', '-')} must be numeric")
            code = cmd_sudden_death(float(args.alpha_min), float(args.alpha_max), args.n_alpha,
                                    _params(cfg["params"]), buf, args.format, args.workers)
    except (ConfigError, DomainError) as exc:
        print(f"doublejc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
