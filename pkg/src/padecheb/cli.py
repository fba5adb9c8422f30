"""Command-line front end: ``padecheb {approx,table1,table2,autocorrect}``.

Exit status is 0 on success, 1 when a numerical step fails and 2 for an
invalid configuration. Numbers in JSON reports are decimal strings so that
extended-precision values survive serialization.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from padecheb import arith
from padecheb.diagnostics import (
    UndefinedErrorApproximant,
    error_approximant,
    measure,
    perturbation_experiment,
    uniform_grid,
    verify_theorem,
)
from padecheb.functions import UnknownFunctionError, lookup, names
from padecheb.interval import pessimism_profile
from padecheb.linear import ConstructionError
from padecheb.methods import ApproxSpec, Method
from padecheb.rational import DenominatorZeroError, NormTag, Parity, evaluate_grid

EXIT_OK, EXIT_NUMERICAL, EXIT_CONFIG = 0, 1, 2
RATIO_TOLERANCE = 3.0
TABLE2_TOLERANCE = 10.0
AUTOCORRECTION_THRESHOLD = 1e3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    function: str = "exp"
    m: int = 0
    n: int = 0
    method: str = "linear"
    normalization: str = "B0"
    parity: str | None = None
    segment: tuple | None = None
    precision: str | None = None
    precision_b: str | None = None
    s: int | None = None
    taylor_N: int | None = None
    grid: int = 2000
    points: int = 100
    fmt: str = "text"
    output: str | None = None
    rows: tuple = ()
    plain: bool = True
    drop_a0: bool = False

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "output"}
        if self.segment is not None:
            out["segment"] = [str(v) for v in self.segment]
        out["rows"] = list(self.rows)
        return out


def published() -> dict:
    with resources.files("padecheb").joinpath("data/published.json").open() as fh:
        return json.load(fh)


# formatting --------------------------------------------------------------------


def _dec(ctx, value) -> str | None:
    if value is None:
        return None
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return arith.to_decimal(ctx, value)


def _short(value) -> str:
    if value is None:
        return "-"
    v = float(value)
    return f"{v:.3e}" if math.isfinite(v) else str(v)


def _dump(report: dict, cfg: RunConfig, text: str, rows: list[list] | None, out) -> None:
    if cfg.fmt == "json":
        payload = json.dumps(report, indent=2, sort_keys=False) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows or [])
        payload = buf.getvalue()
    else:
        payload = text
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        out.write(payload)


# validation --------------------------------------------------------------------


def _spec(cfg: RunConfig, function=None, **overrides) -> ApproxSpec:
    try:
        entry = lookup(function or cfg.function)
    except UnknownFunctionError as exc:
        raise ConfigError(str(exc)) from None
    if cfg.m < 0 or cfg.n < 0:
        raise ConfigError("--m and --n must be nonnegative")
    for name, value in (("--s", cfg.s), ("--taylor-N", cfg.taylor_N)):
        if value is not None and value <= 0:
            raise ConfigError(f"{name} must be positive")
    method = Method(cfg.method)
    tag = cfg.normalization.upper()
    if tag not in NormTag.__members__:
        raise ConfigError(f"unknown normalization {cfg.normalization!r}")
    if method is Method.CROSS and tag != "B0":
        raise ConfigError("the cross-multiplied construction fixes b0 = 1; use --normalization B0")
    parity = Parity(cfg.parity) if cfg.parity else Parity(entry.parity)
    if parity is Parity.EVEN and entry.parity == Parity.ODD or parity is Parity.ODD and entry.parity == Parity.EVEN:
        raise ConfigError(f"{entry.name} has parity {entry.parity.value}; cannot use the {parity.value} form")
    if parity is not Parity.GENERAL and entry.parity is Parity.GENERAL:
        raise ConfigError(f"{entry.name} has no symmetry; the {parity.value} form does not apply")
    segment = cfg.segment or entry.segment
    if parity is not Parity.GENERAL and tuple(segment) != (-1, 1):
        raise ConfigError("even and odd forms need the segment [-1, 1]")
    if not segment[0] < segment[1]:
        raise ConfigError("segment must satisfy A < B")
    kwargs = dict(function=entry, m=cfg.m, n=cfg.n, method=method, parity=parity,
                  normalization=NormTag[tag], segment=tuple(segment), s=cfg.s, taylor_N=cfg.taylor_N)
    kwargs.update(overrides)
    try:
        return ApproxSpec(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _ctx(text):
    try:
        return arith.parse_precision(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# commands ----------------------------------------------------------------------


def cmd_approx(cfg: RunConfig):
    spec = _spec(cfg)
    ctx = _ctx(cfg.precision)
    built = spec.build(ctx)
    R = built.approximant
    rep = measure(spec.function, R, ctx, cfg.grid)
    notes = [f"arithmetic: {arith.label(ctx)}", f"parity form: {spec.parity.value}",
             f"coefficient basis: {R.basis.value}"]
    if spec.method is Method.LINEAR:
        notes.append(f"quadrature nodes: {spec.node_count}; normalization {spec.normalization.value}")
    elif spec.taylor_N is not None:
        notes.append(f"Chebyshev coefficients from the degree-{spec.taylor_N} Taylor polynomial")
    else:
        notes.append(f"Chebyshev coefficients by quadrature on {spec.node_count} nodes")
    if spec.method is Method.NONLINEAR and cfg.normalization.upper() != "B0":
        notes.append("normalization tag ignored by the nonlinear construction")
    cond = built.condition_value()
    if built.condition is not None and not built.condition.reliable:
        notes.append("condition number flagged unreliable (inverse residual too large)")
    residuals = [] if built.residual_norm is None else [_dec(ctx, built.residual_norm)]
    report = {
        "config": cfg.as_dict(),
        "coefficients": {"a": [_dec(ctx, v) for v in R.numer], "b": [_dec(ctx, v) for v in R.denom]},
        "errors": {"abs": _dec(ctx, rep.abs_error), "rel": _dec(ctx, rep.rel_error)},
        "condition": _dec(ctx, cond),
        "residuals": residuals,
        "notes": notes,
    }
    text = "\n".join([
        f"{spec.function.name}: {spec.method.value} m={spec.m} n={spec.n} ({spec.parity.value} form)",
        "a = " + ", ".join(arith.to_decimal(arith.double(), v) for v in R.numer),
        "b = " + ", ".join(arith.to_decimal(arith.double(), v) for v in R.denom),
        f"abs error {_short(rep.abs_error)}   rel error {_short(rep.rel_error)}   cond {_short(cond)}",
        *notes, "",
    ])
    rows = None
    if cfg.fmt == "csv":
        xs = uniform_grid(spec.segment, cfg.grid, ctx)
        rs = evaluate_grid(R, xs, ctx)
        rows = [["x", "f", "R", "f-R"]]
        for x, r in zip(xs, rs):
            fx = spec.function(ctx, x)
            rows.append([_dec(ctx, x), _dec(ctx, fx), _dec(ctx, r), _dec(ctx, fx - r)])
    return report, text, rows, EXIT_OK


def _within(value, target, factor) -> bool:
    return target / factor <= value <= target * factor


def cmd_table1(cfg: RunConfig):
    ctx = _ctx(cfg.precision)
    data = published()["linear_table"]
    selected = set(cfg.rows)
    out_rows, lines, failures, passed = [], [], 0, 0
    lines.append(f"{'function':9} {'m':>2} {'n':>2} {'abs':>10} {'pub abs':>9} {'rel':>10} {'pub rel':>9}"
                 f" {'best rel':>9} {'cond':>9}  ok")
    for name, parity, m, n, pub_abs, pub_rel, pub_best in data["rows"]:
        if selected and name not in selected:
            continue
        row = {"function": name, "parity": parity, "m": m, "n": n, "published": {
            "abs": pub_abs, "rel": pub_rel, "best_rel": pub_best}}
        try:
            spec = _spec(RunConfig("approx", name, m, n, "linear", "B0", parity, s=cfg.s))
            built = spec.build(ctx)
            rep = measure(spec.function, built.approximant, ctx, cfg.grid)
        except (ArithmeticError, ValueError) as exc:
            failures += 1
            row["error"] = str(exc)
            out_rows.append(row)
            lines.append(f"{name:9} {m:>2} {n:>2}  failed: {exc}")
            continue
        ra = float(rep.abs_error) / float(pub_abs)
        rr = float(rep.rel_error) / float(pub_rel)
        ok = _within(float(rep.abs_error), float(pub_abs), RATIO_TOLERANCE)
        passed += ok
        cond = built.condition_value()
        row.update({"abs": _dec(ctx, rep.abs_error), "rel": _dec(ctx, rep.rel_error),
                    "abs_ratio": repr(ra), "rel_ratio": repr(rr), "condition": _dec(ctx, cond),
                    "within_tolerance": ok})
        out_rows.append(row)
        lines.append(f"{name:9} {m:>2} {n:>2} {_short(rep.abs_error):>10} {float(pub_abs):>9.2e}"
                     f" {_short(rep.rel_error):>10} {float(pub_rel):>9.2e} {float(pub_best):>9.2e}"
                     f" {_short(cond):>9}  {'yes' if ok else 'NO'}")
    lines.append(f"{passed}/{len(out_rows)} rows within x{RATIO_TOLERANCE:g} of the published absolute error")
    report = {"config": cfg.as_dict(), "rows": out_rows,
              "summary": {"within_tolerance": passed, "rows": len(out_rows), "failed": failures},
              "notes": [f"arithmetic: {arith.label(ctx)}", "published values: bundled reference data"]}
    csv_rows = [["function", "parity", "m", "n", "abs", "rel", "pub_abs", "pub_rel", "pub_best_rel", "ok"]]
    for r in out_rows:
        csv_rows.append([r["function"], r["parity"], r["m"], r["n"], r.get("abs"), r.get("rel"),
                         r["published"]["abs"], r["published"]["rel"], r["published"]["best_rel"],
                         r.get("within_tolerance", False)])
    return report, "\n".join(lines) + "\n", csv_rows, EXIT_NUMERICAL if failures else EXIT_OK


def table2_run(ctx, grid: int = 2000, Ns=None):
    """Nonlinear odd-form tan(pi x/4) approximants, m=n=3, from Taylor polynomials of degree N."""
    data = published()["nonlinear_tan_table"]
    Ns = Ns or data["N"]
    f = lookup("tan_pi4")
    builds, rows = {}, []
    for N in Ns:
        spec = ApproxSpec(f, 3, 3, Method.NONLINEAR, Parity.ODD, taylor_N=N)
        built = spec.build(ctx)
        builds[N] = built
        rep = measure(f, built.approximant, ctx, grid)
        rows.append({"N": N, "abs": rep.abs_error, "condition": built.condition_value()})
    pairs = []
    for a, b, pub in data["error_approximant_pairs"]:
        if a not in builds or b not in builds:
            continue
        ea = error_approximant(builds[a].approximant, builds[b].approximant, f, ctx, grid=grid)
        th = verify_theorem(ea, f)
        pairs.append({"pair": [a, b], "quality": ea.quality.abs_error, "published": pub,
                      "roots": list(ea.roots), "suppression": th.suppression})
    return rows, pairs


def cmd_table2(cfg: RunConfig):
    ctx = _ctx(cfg.precision)
    data = published()["nonlinear_tan_table"]
    pub = dict(zip(data["N"], data["abs_error"]))
    pub_cond = dict(zip(data["N"], data["condition"]))
    rows, pairs = table2_run(ctx, cfg.grid)
    lines = [f"{'N':>3} {'abs':>10} {'published':>10} {'cond':>10} {'pub cond':>10}  ok"]
    ok_all = True
    for r in rows:
        ok = _within(float(r["abs"]), float(pub[r["N"]]), TABLE2_TOLERANCE)
        ok_all &= ok
        r["within_tolerance"] = ok
        lines.append(f"{r['N']:>3} {_short(r['abs']):>10} {float(pub[r['N']]):>10.2e} {_short(r['condition']):>10}"
                     f" {float(pub_cond[r['N']]):>10.2e}  {'yes' if ok else 'NO'}")
    monotone = all(a["abs"] >= b["abs"] for a, b in zip(rows, rows[1:]))
    lines.append(f"abs error nonincreasing in N: {'yes' if monotone else 'NO'}")
    for p in pairs:
        lines.append(f"error approximant N={p['pair'][0]} vs N={p['pair'][1]}: abs {_short(p['quality'])}"
                     f" (published {float(p['published']):.1e}); leading residual suppression"
                     f" {_short(p['suppression'])}")
    report = {
        "config": cfg.as_dict(),
        "rows": [{"N": r["N"], "abs": _dec(ctx, r["abs"]), "published_abs": pub[r["N"]],
                  "condition": _dec(ctx, r["condition"]), "published_condition": pub_cond[r["N"]],
                  "within_tolerance": r["within_tolerance"]} for r in rows],
        "error_approximants": [{"pair": p["pair"], "abs": _dec(ctx, p["quality"]), "published_abs": p["published"],
                                "theorem_suppression": _dec(ctx, p["suppression"])} for p in pairs],
        "summary": {"all_within_tolerance": ok_all, "nonincreasing": monotone},
        "notes": [f"arithmetic: {arith.label(ctx)}", "odd form, m=n=3 in the reduced variable"],
    }
    csv_rows = [["N", "abs", "published_abs", "condition"]] + [
        [r["N"], _dec(ctx, r["abs"]), pub[r["N"]], _dec(ctx, r["condition"])] for r in rows]
    status = EXIT_OK if ok_all and monotone else EXIT_NUMERICAL
    return report, "\n".join(lines) + "\n", csv_rows, status


def cmd_autocorrect(cfg: RunConfig):
    spec = _spec(cfg)
    ctx_a = _ctx(cfg.precision or "double")
    ctx_b = _ctx(cfg.precision_b or "extended")
    ref = max(ctx_a, ctx_b, key=arith.bits)
    pr = perturbation_experiment(spec, ctx_a, ctx_b, ref, cfg.grid)
    notes = [f"constructions: {arith.label(ctx_a)} vs {arith.label(ctx_b)}; measured in {arith.label(ref)}"]
    first, second = pr.first.approximant, pr.second.approximant
    reference, perturbed = (first, second) if arith.bits(ctx_a) >= arith.bits(ctx_b) else (second, first)
    dossier = {
        "max_rel_coeff_delta": _dec(ref, pr.max_rel_coeff_delta),
        "abs_error": [_dec(ref, pr.report_first.abs_error), _dec(ref, pr.report_second.abs_error)],
        "rel_error": [_dec(ref, pr.report_first.rel_error), _dec(ref, pr.report_second.rel_error)],
        "rel_change_abs_error": _dec(ref, pr.rel_change_abs_error),
        "max_value_change": _dec(ref, pr.value_change),
        "autocorrection_ratio": repr(pr.autocorrection_ratio),
        "value_ratio": repr(pr.value_ratio),
        "condition": [_dec(ref, pr.first.condition_value()), _dec(ref, pr.second.condition_value())],
    }
    ea_line = "error approximant: undefined (denominator difference vanishes)"
    try:
        drop = (0,) if cfg.drop_a0 else ()
        ea = error_approximant(reference, perturbed, spec.function, ref, drop_numer=drop, grid=cfg.grid)
        th = verify_theorem(ea, spec.function)
        dossier["error_approximant"] = {
            "abs": _dec(ref, ea.quality.abs_error), "rel": _dec(ref, ea.quality.rel_error),
            "excluded_roots": [repr(r) for r in ea.roots],
            "theorem_residuals": [_dec(ref, r) for r in th.residuals],
            "theorem_suppression": _dec(ref, th.suppression),
        }
        ea_line = (f"error approximant: abs {_short(ea.quality.abs_error)} rel {_short(ea.quality.rel_error)};"
                   f" leading residual suppression {_short(th.suppression)}")
    except UndefinedErrorApproximant as exc:
        notes.append(str(exc))
    prof = pessimism_profile(reference, perturbed, cfg.points, ref, plain=cfg.plain)
    summary = prof.summary()
    dossier["pessimism"] = {k: (repr(v) if isinstance(v, float) else v) for k, v in summary.items()}
    dossier["second_order_constant"] = repr(prof.second_order_constant)
    base = measure(spec.function, reference, ref, cfg.grid)
    median = summary["median"]
    significant = median is not None and median >= AUTOCORRECTION_THRESHOLD
    verdict = ("significant error autocorrection" if significant else "no significant autocorrection")
    dossier["verdict"] = verdict
    report = {
        "config": cfg.as_dict(),
        "coefficients": {"a": [_dec(ref, v) for v in reference.numer], "b": [_dec(ref, v) for v in reference.denom]},
        "errors": {"abs": _dec(ref, base.abs_error), "rel": _dec(ref, base.rel_error)},
        "condition": _dec(ref, (pr.first if reference is first else pr.second).condition_value()),
        "residuals": [],
        "autocorrection": dossier,
        "notes": notes,
    }
    text = "\n".join([
        f"{spec.function.name}: {spec.method.value} m={spec.m} n={spec.n} ({spec.parity.value} form)",
        *notes,
        f"max relative coefficient change {_short(pr.max_rel_coeff_delta)}",
        f"abs error {_short(pr.report_first.abs_error)} -> {_short(pr.report_second.abs_error)}"
        f" (relative change {_short(pr.rel_change_abs_error)})",
        f"max change of values {_short(pr.value_change)}",
        ea_line,
        f"naive bound / actual change over {summary['points']} points: min {_short(summary['min'])}"
        f" median {_short(median)} max {_short(summary['max'])}",
        f"verdict: {verdict}", "",
    ])
    csv_rows = [["x", "naive_bound", "measured_delta", "first_order", "ratio"]] + [
        [_dec(ref, r.x), _dec(ref, r.naive_bound), _dec(ref, r.measured_delta), _dec(ref, r.residual),
         repr(r.pessimism_ratio)] for r in prof.reports]
    return report, text, csv_rows, EXIT_OK


COMMANDS = {"approx": cmd_approx, "table1": cmd_table1, "table2": cmd_table2, "autocorrect": cmd_autocorrect}


# argument parsing -----------------------------------------------------------------


def _segment(text: str) -> tuple:
    try:
        a, b = (Fraction(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("segment must look like A,B (e.g. 1/2,1)") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padecheb", description="Pade-Chebyshev rational approximation")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_problem=True):
        p.add_argument("--precision", help="double, extended, extended:BITS or a bit count "
                                           "(default from PADECHEB_PRECISION, else extended)")
        p.add_argument("--grid", type=int, default=2000, help="checkpoints for error measurement")
        p.add_argument("--s", type=int, help="quadrature node count")
        p.add_argument("--format", dest="fmt", choices=["text", "json", "csv"], default="text")
        p.add_argument("--output", help="write the report here instead of stdout")
        if with_problem:
            p.add_argument("--function", default="exp", help="one of: " + ", ".join(names()))
            p.add_argument("--m", type=int, default=2, help="denominator degree")
            p.add_argument("--n", type=int, default=2, help="numerator degree")
            p.add_argument("--method", choices=[m.value for m in Method], default="linear")
            p.add_argument("--normalization", default="B0", help="B0, BM or AN")
            p.add_argument("--parity", choices=[p.value for p in Parity],
                           help="form to use (default: the function's symmetry)")
            p.add_argument("--segment", type=_segment, help="A,B")
            p.add_argument("--taylor-N", dest="taylor_N", type=int,
                           help="Chebyshev coefficients from the degree-N Taylor polynomial")

    common(sub.add_parser("approx", help="construct one approximant and report its errors"))
    t1 = sub.add_parser("table1", help="reproduce the linear reference table")
    common(t1, with_problem=False)
    t1.add_argument("--rows", default="", help="comma-separated function names to keep")
    common(sub.add_parser("table2", help="nonlinear tan(pi x/4) against Taylor degree"), with_problem=False)
    ac = sub.add_parser("autocorrect", help="two-arithmetic perturbation dossier")
    common(ac)
    ac.add_argument("--precision-b", dest="precision_b", help="second arithmetic (default extended)")
    ac.add_argument("--points", type=int, default=100, help="grid for the interval comparison")
    ac.add_argument("--native-form", dest="plain", action="store_false",
                    help="compare coefficient errors in the construction basis instead of powers of x")
    ac.add_argument("--drop-a0", action="store_true", help="zero the a0 difference in the error approximant")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    if isinstance(values.get("rows"), str):
        values["rows"] = tuple(r for r in values["rows"].split(",") if r)
    if values.get("grid", 2) < 2:
        raise ConfigError("--grid must be at least 2")
    if values.get("points", 2) < 2:
        raise ConfigError("--points must be at least 2")
    return RunConfig(**values)


def _fail(cfg_fmt: str, kind: str, message: str, status: int, out, err) -> int:
    if cfg_fmt == "json":
        out.write(json.dumps({"error": {"kind": kind, "message": message}}, indent=2) + "\n")
    else:
        err.write(f"padecheb: {kind}: {message}\n")
    return status


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "fmt", "text")
    try:
        cfg = config_from_args(args)
        report, text, rows, status = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        return _fail(fmt, "config", str(exc), EXIT_CONFIG, out, err)
    except (ConstructionError, DenominatorZeroError, ArithmeticError) as exc:
        return _fail(fmt, "numerical", str(exc), EXIT_NUMERICAL, out, err)
    _dump(report, cfg, text, rows, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
