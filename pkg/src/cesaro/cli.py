"""Command-line front end: reproducible experiments, CSV/JSON artifacts.

Subcommands
-----------
apply         apply the parameter-t operator to a series file
norm          witness norm estimates against the proven bounds, per t
spectrum      finite-section eigenvalue ladder
eigen         an eigenpair (eigenvalue and eigenfunction coefficients)
resolvent     solve (C - nu I) f = g coefficientwise
lemma-bounds  infinite-product growth scan n, p_n, scaled
ergodic       distances of ergodic means from their limit, per checkpoint
report        run the full formula-reproduction suite and tabulate it

Exit codes: 0 success, 1 internal error, 2 validation error, 64 usage error.

Defaults come from an optional flat TOML-style config file (``key = value``
lines; ``--config`` to point at it); explicit flags always win.  CSV output
is deterministic for a fixed config and seed: '.' decimal, ',' separator,
LF line endings, a header row, and a trailing comment with the config hash.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .acceptance import run_all_checks
from .dynamics import ergodic_trace
from .operators import CesaroOperator, apply
from .series import (
    DEFAULT_TRUNCATION,
    TaylorSeries,
    cauchy_product,
    constant_one,
    from_pairs,
    geometric_series,
    log_one_minus_series,
    random_series,
    to_pairs,
)
from .spectral import ResolventQuery, finite_section_spectrum, eigenpair, product_bound_scan, resolvent_apply
from .weights import Weight, norm_upper_bound, operator_norm_witness

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_USAGE = 64


@dataclass(frozen=True)
class ExperimentConfig:
    """Experiment-wide defaults; every field is overridable by a flag."""

    truncation: int = DEFAULT_TRUNCATION
    radii: int = 64
    angles: int = 1024
    t_list: tuple[float, ...] = (0.5,)
    weight: str = "unit"
    seed: int = 0
    degree: int = 64
    out: str | None = None
    fmt: str = "csv"

    def validate(self) -> "ExperimentConfig":
        if self.truncation < 8:
            raise ValueError("truncation must be >= 8")
        if self.radii < 8 or self.angles < 8:
            raise ValueError("grid counts must be >= 8")
        if not self.t_list:
            raise ValueError("t_list must be non-empty")
        if any(not 0.0 <= t <= 1.0 for t in self.t_list):
            raise ValueError("every t must lie in [0, 1]")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be 'csv' or 'json'")
        return self

    def short_hash(self) -> str:
        fields = asdict(self)
        fields.pop("out")  # the artifact destination is not part of the experiment
        payload = json.dumps(fields, sort_keys=True, default=list)
        return hashlib.sha256(payload.encode()).hexdigest()[:12]


# -- flat config files ---------------------------------------------------------


def _parse_scalar(text: str):
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        return [_parse_scalar(part) for part in inner.split(",") if part.strip()] if inner else []
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1]
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def load_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file (a TOML subset: no sections, no nesting)."""
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line is not 'key = value': {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = _parse_scalar(value)
    return values


_CONFIG_KEYS = {"truncation", "radii", "angles", "t_list", "weight", "seed", "degree", "out", "fmt"}


def _config_from(args) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if getattr(args, "config", None):
        raw = load_config_file(args.config)
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "t_list" in raw:
            values = raw["t_list"]
            raw["t_list"] = tuple(float(v) for v in (values if isinstance(values, list) else [values]))
        cfg = replace(cfg, **raw)
    overrides = {}
    if getattr(args, "t", None) is not None:
        overrides["t_list"] = tuple(float(part) for part in str(args.t).split(","))
    for flag, key in (
        ("N", "truncation"),
        ("radii", "radii"),
        ("angles", "angles"),
        ("weight", "weight"),
        ("seed", "seed"),
        ("degree", "degree"),
        ("out", "out"),
        ("format", "fmt"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    return replace(cfg, **overrides).validate()


# -- artifact writing -------------------------------------------------------------


def _fmt_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def write_csv(header, rows, cfg: ExperimentConfig, meta: dict | None = None):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt_cell(cell) for cell in row) for row in rows)
    for key, value in (meta or {}).items():
        lines.append(f"# {key}={_fmt_cell(value)}")
    lines.append(f"# config={cfg.short_hash()}")
    _emit("\n".join(lines) + "\n", cfg.out)


def write_json(payload, cfg: ExperimentConfig):
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.out)


def _series_artifact(f: TaylorSeries, cfg: ExperimentConfig, meta: dict | None = None):
    if cfg.fmt == "json":
        write_json(to_pairs(f), cfg)
    else:
        rows = [(n, float(c.real), float(c.imag)) for n, c in enumerate(f.coeffs)]
        write_csv(("n", "re", "im"), rows, cfg, meta)


def load_series(path: str) -> TaylorSeries:
    """Read a series file: JSON array of [re, im] pairs, or CSV rows n,re,im."""
    p = Path(path)
    if p.suffix.lower() == ".csv":
        rows = np.loadtxt(p, delimiter=",", comments="#", ndmin=2, skiprows=1)
        indices = rows[:, 0].astype(int)
        coeffs = np.zeros(int(indices.max()) + 1, dtype=complex)
        coeffs[indices] = rows[:, 1] + 1j * rows[:, 2]
        return TaylorSeries(coeffs)
    return from_pairs(json.loads(p.read_text()))


def _parse_nu(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"--nu expects 're' or 're,im', got {text!r}")


def _single_t(cfg: ExperimentConfig) -> float:
    if len(cfg.t_list) != 1:
        raise ValueError("this subcommand needs exactly one t")
    return cfg.t_list[0]


def _build_witnesses(specs, t: float, cfg: ExperimentConfig):
    rng = np.random.default_rng(cfg.seed)
    out = []
    for spec in specs:
        spec = spec.strip()
        if spec == "f1":
            out.append(constant_one(cfg.truncation))
        elif spec == "g0":
            if t >= 1.0:
                raise ValueError("the g0 witness needs t < 1")
            out.append(geometric_series(t, cfg.truncation))
        elif spec.startswith("logpow:"):
            n = int(spec.split(":", 1)[1])
            base = log_one_minus_series(cfg.truncation)
            power = base
            for _ in range(n - 1):
                power = cauchy_product(power, base, max_degree=cfg.truncation)
            out.append(power)
        elif spec.startswith("random:"):
            count = int(spec.split(":", 1)[1])
            out.extend(random_series(cfg.degree, rng) for _ in range(count))
        else:
            raise ValueError(f"unknown witness spec {spec!r} (f1, g0, logpow:<n>, random:<k>)")
    return out


# -- subcommands -------------------------------------------------------------------


def cmd_apply(args) -> int:
    cfg = _config_from(args)
    f = load_series(args.input)
    op = CesaroOperator(_single_t(cfg), args.strategy)
    _series_artifact(apply(op, f), cfg, {"t": op.t, "strategy": op.strategy})
    return EXIT_OK


def cmd_norm(args) -> int:
    cfg = _config_from(args)
    if cfg.angles < 4 * cfg.truncation:
        print(
            f"warning: angle grid {cfg.angles} is below 4x truncation {cfg.truncation}; "
            "circle maxima of high-degree images may be under-resolved",
            file=sys.stderr,
        )
    v = Weight.from_spec(cfg.weight)
    witness_specs = (args.witness or "f1").split(",")
    rows = []
    for t in cfg.t_list:
        witnesses = _build_witnesses(witness_specs, t, cfg)
        est = operator_norm_witness(t, v, witnesses, radii=cfg.radii, angles=cfg.angles)
        log_bound = 1.0 if t == 0.0 else -np.log1p(-t) / t
        bound = norm_upper_bound(t, v)
        ok = est.value <= bound + 1e-3
        rows.append((float(t), est.value, float(log_bound), float(bound), ok))
    if cfg.out is None and cfg.fmt == "csv":
        for t, est, log_bound, bound, ok in rows:
            flag = "ok" if ok else "VIOLATION"
            print(
                f"t={t:g}  estimate={est:.6f}  bound[-log(1-t)/t]={log_bound:.6f}  "
                f"weight_bound={bound:.6f}  {flag}"
            )
        return EXIT_OK if all(row[4] for row in rows) else EXIT_INTERNAL
    if cfg.fmt == "json":
        write_json(
            {
                "weight": v.label,
                "rows": [
                    {"t": r[0], "estimate": r[1], "log_bound": r[2], "weight_bound": r[3], "ok": r[4]}
                    for r in rows
                ],
                "config": cfg.short_hash(),
            },
            cfg,
        )
    else:
        write_csv(("t", "estimate", "log_bound", "weight_bound", "ok"), rows, cfg, {"weight": v.label})
    return EXIT_OK if all(row[4] for row in rows) else EXIT_INTERNAL


def cmd_spectrum(args) -> int:
    cfg = _config_from(args)
    values = finite_section_spectrum(_single_t(cfg), cfg.truncation)
    if cfg.fmt == "json":
        write_json({"eigenvalues": [float(v) for v in values], "config": cfg.short_hash()}, cfg)
    else:
        write_csv(("n", "eigenvalue"), list(enumerate(values)), cfg, {"t": _single_t(cfg)})
    return EXIT_OK


def cmd_eigen(args) -> int:
    cfg = _config_from(args)
    pair = eigenpair(_single_t(cfg), args.m, cfg.truncation)
    if cfg.fmt == "json":
        write_json(
            {"m": pair.m, "eigenvalue": pair.eigenvalue, "coefficients": to_pairs(pair.series)},
            cfg,
        )
    else:
        rows = [(n, float(c.real), float(c.imag)) for n, c in enumerate(pair.series.coeffs)]
        write_csv(("n", "re", "im"), rows, cfg, {"m": pair.m, "eigenvalue": pair.eigenvalue})
    return EXIT_OK


def cmd_resolvent(args) -> int:
    cfg = _config_from(args)
    rhs = load_series(args.rhs)
    query = ResolventQuery(_parse_nu(args.nu), rhs)
    series = resolvent_apply(query, _single_t(cfg))
    _series_artifact(series, cfg, {"nu": args.nu, "t": _single_t(cfg)})
    return EXIT_OK


def cmd_lemma_bounds(args) -> int:
    cfg = _config_from(args)
    report = product_bound_scan(_parse_nu(args.nu), args.nmax)
    rows = list(zip(report.n_values, report.p_values, report.scaled))
    meta = {
        "nu": args.nu,
        "alpha": report.alpha,
        "d_hat": report.d_hat,
        "D_hat": report.D_hat,
        "tail_slope": report.tail_slope,
    }
    if cfg.fmt == "json":
        write_json(
            {
                "rows": [{"n": int(n), "p_n": float(p), "scaled": float(s)} for n, p, s in rows],
                **{k: (float(v) if isinstance(v, (int, float)) else v) for k, v in meta.items()},
                "config": cfg.short_hash(),
            },
            cfg,
        )
    else:
        write_csv(("n", "p_n", "scaled"), rows, cfg, meta)
    return EXIT_OK


def cmd_ergodic(args) -> int:
    cfg = _config_from(args)
    f = load_series(args.input)
    checkpoints = []
    n = 1
    while n < args.nmax:
        checkpoints.append(n)
        n *= 2
    checkpoints.append(args.nmax)
    trace = ergodic_trace(_single_t(cfg), f, checkpoints, args.norm)
    rows = list(zip(trace.n_values, trace.distances))
    if cfg.fmt == "json":
        write_json(
            {
                "rows": [{"n": int(n), "distance": float(d)} for n, d in rows],
                "norm": trace.norm_tag,
                "config": cfg.short_hash(),
            },
            cfg,
        )
    else:
        write_csv(("n", "distance"), rows, cfg, {"norm": trace.norm_tag})
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = _config_from(args)
    results = run_all_checks()
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if cfg.out:
        rows = [(r.name, r.passed, r.detail) for r in results]
        write_csv(("name", "passed", "detail"), rows, cfg)
    return EXIT_OK if not failed else EXIT_INTERNAL


# -- parser ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code the artifact contract fixes."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sub):
    sub.add_argument("--config", help="flat key = value config file")
    sub.add_argument("--t", help="operator parameter(s) in [0, 1], comma-separated")
    sub.add_argument("--N", type=int, help="truncation degree")
    sub.add_argument("--radii", type=int, help="radial grid count")
    sub.add_argument("--angles", type=int, help="angle grid count")
    sub.add_argument("--weight", help="unit | gamma:<float> | logpow:<int> | table:<path.csv>")
    sub.add_argument("--seed", type=int, help="seed for random test functions")
    sub.add_argument("--degree", type=int, help="degree of random test functions")
    sub.add_argument("--out", help="artifact path (stdout when omitted)")
    sub.add_argument("--format", choices=("csv", "json"), help="artifact format")


def build_parser() -> _Parser:
    parser = _Parser(prog="cesaro", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", metavar="command")

    sub = commands.add_parser("apply", parents=[], help="apply the operator to a series file")
    _add_common(sub)
    sub.add_argument("--input", required=True, help="series file (.json pairs or .csv n,re,im)")
    sub.add_argument(
        "--strategy", choices=("recurrence", "matrix", "quadrature"), default="recurrence"
    )
    sub.set_defaults(handler=cmd_apply)

    sub = commands.add_parser("norm", help="witness norm estimates vs proven bounds")
    _add_common(sub)
    sub.add_argument("--witness", help="comma list: f1 | g0 | logpow:<n> | random:<k>")
    sub.set_defaults(handler=cmd_norm)

    sub = commands.add_parser("spectrum", help="finite-section eigenvalue ladder")
    _add_common(sub)
    sub.set_defaults(handler=cmd_spectrum)

    sub = commands.add_parser("eigen", help="eigenpair for index m")
    _add_common(sub)
    sub.add_argument("--m", type=int, required=True, help="eigenvalue index (lambda = 1/(m+1))")
    sub.set_defaults(handler=cmd_eigen)

    sub = commands.add_parser("resolvent", help="solve (C - nu I) f = g")
    _add_common(sub)
    sub.add_argument("--nu", required=True, help="complex shift as 're,im'")
    sub.add_argument("--rhs", required=True, help="right-hand-side series file")
    sub.set_defaults(handler=cmd_resolvent)

    sub = commands.add_parser("lemma-bounds", help="infinite-product growth scan")
    _add_common(sub)
    sub.add_argument("--nu", required=True, help="complex point as 're,im'")
    sub.add_argument("--nmax", type=int, default=10_000, help="scan horizon")
    sub.set_defaults(handler=cmd_lemma_bounds)

    sub = commands.add_parser("ergodic", help="ergodic mean distances from the limit")
    _add_common(sub)
    sub.add_argument("--input", required=True, help="series file")
    sub.add_argument("--nmax", type=int, default=1024, help="largest averaging horizon")
    sub.add_argument("--norm", default="ksup:2", help="k:<int> | ksup:<int> | gamma:<float> | unit")
    sub.set_defaults(handler=cmd_ergodic)

    sub = commands.add_parser("report", help="run the formula-reproduction suite")
    _add_common(sub)
    sub.set_defaults(handler=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # pragma: no cover - the catch-all contract line
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
