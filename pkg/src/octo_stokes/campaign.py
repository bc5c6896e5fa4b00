"""Seeded verification campaigns and report assembly.

Reports are plain dicts of JSON-compatible values with no timestamps or
timings, so a fixed ``RunConfig`` always yields the same bytes.
"""
import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ._scalars import Mode
from .lattice import random_field
from .octonion import (
    build_cayley_table,
    classification_census,
    classify_basis_triple,
    enumerate_fano_lines,
    grouped_pair_count,
    norm_sq,
)
from .stokes import INDEX_SETS, stokes_residual

EXPECTED_CENSUS = {"total": 512, "associative": 344, "anti_associative": 168, "grouped_sums": 42, "lines": 7}

FORMATS = ("text", "json", "csv")
COMMANDS = ("table", "classify", "fano", "verify")
DEFAULT_FLOAT_TOL = 1e-10


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    seed: int = 0
    trials: int = 100
    radius: int = 1
    coeff_bound: int = 3
    h: float = 1
    mode: str = "exact"
    tol: Optional[float] = None
    format: str = "text"
    max_points: Optional[int] = None
    field_g: Optional[str] = None
    field_f: Optional[str] = None
    field_out: Optional[str] = None
    out: Optional[str] = None
    list_triples: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.mode not in ("exact", "float"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if self.radius < 0:
            raise ConfigError("radius must be non-negative")
        if self.coeff_bound < 1:
            raise ConfigError("coeff-bound must be at least 1")
        if self.max_points is not None and self.max_points < 1:
            raise ConfigError("max-points must be positive")
        if not self.h > 0:
            raise ConfigError("h must be positive")
        if self.mode == "exact":
            if self.h != 1:
                raise ConfigError("exact mode requires h = 1")
            if self.tol is not None:
                raise ConfigError("--tol applies to float mode only")
        elif self.tol is not None and not self.tol > 0:
            raise ConfigError("tolerance must be positive")
        if (self.field_g is None) != (self.field_f is None):
            raise ConfigError("--field-g and --field-f must be given together")
        return self

    @property
    def tolerance(self):
        if self.mode == "exact":
            return None
        return DEFAULT_FLOAT_TOL if self.tol is None else self.tol

    def echo(self):
        """Config fields that determine report content."""
        d = asdict(self)
        for key in ("out", "format", "field_out"):
            d.pop(key)
        d["tol"] = self.tolerance
        return d


def trial_seeds(seed, trial):
    """Seed sequences for (g, f) of one trial.

    Trial t draws from ``SeedSequence(entropy=seed, spawn_key=(t,))``, whose
    two spawned children seed g and f respectively.
    """
    g_seq, f_seq = np.random.SeedSequence(entropy=seed, spawn_key=(trial,)).spawn(2)
    return g_seq, f_seq


def trial_fields(config, trial):
    g_seq, f_seq = trial_seeds(config.seed, trial)
    kw = dict(h=config.h, mode=config.mode, max_points=config.max_points)
    return (
        random_field(g_seq, config.radius, config.coeff_bound, **kw),
        random_field(f_seq, config.radius, config.coeff_bound, **kw),
    )


def census_block():
    assoc, anti = classification_census()
    lines = sorted(sorted(line) for line in enumerate_fano_lines())
    counts = {
        "total": assoc + anti,
        "associative": assoc,
        "anti_associative": anti,
        "grouped_sums": grouped_pair_count(),
        "lines": len(lines),
    }
    return {
        **counts,
        "index_sets": lines,
        "match": counts == EXPECTED_CENSUS and lines == [sorted(s) for s in INDEX_SETS],
    }


def _thread_count():
    raw = os.environ.get("OCTO_STOKES_THREADS")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"OCTO_STOKES_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError("OCTO_STOKES_THREADS must be positive")
    return n


def _summarize(trial, result, tol):
    lhs_norm_sq = norm_sq(result.lhs)
    summary = {
        "trial": trial,
        "lhs": list(result.lhs.coeffs),
        "correction": list(result.correction.coeffs),
        "oracle_agrees": result.oracle_agrees,
        "max_abs_residual": result.max_residual,
        "lhs_norm_sq": lhs_norm_sq,
    }
    if tol is None:
        summary["passed"] = result.oracle_agrees and result.is_exact_zero()
    else:
        rel = result.relative_residual
        summary["relative_residual"] = rel
        summary["passed"] = result.oracle_agrees and rel <= tol
    return summary


def run_verify(config, pairs=None):
    """Run a campaign; explicit ``pairs`` of (g, f) replace the seeded fields.

    Explicit pairs must match ``config.h`` and ``config.mode``.
    """
    config.validate()
    tol = config.tolerance
    if pairs is None:
        pairs = [lambda t=t: trial_fields(config, t) for t in range(config.trials)]
    else:
        for g, f in pairs:
            for fld in (g, f):
                if fld.mode is not Mode(config.mode) or fld.h != config.h:
                    raise ConfigError("supplied fields disagree with the configured h or mode")
        pairs = [lambda p=p: p for p in pairs]

    def one(t):
        g, f = pairs[t]()
        return _summarize(t, stokes_residual(g, f, oracle_tol=tol or 1e-10, strict=False), tol)

    workers = _thread_count()
    if workers == 1:
        trials = [one(t) for t in range(len(pairs))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(one, range(len(pairs))))

    census = census_block()
    failed = [t["trial"] for t in trials if not t["passed"]]
    summary = {
        "trials": len(trials),
        "failed_trials": failed,
        "max_abs_residual": max(t["max_abs_residual"] for t in trials),
    }
    if tol is not None:
        summary["max_relative_residual"] = max(t["relative_residual"] for t in trials)
    return {
        "command": "verify",
        "config": config.echo(),
        "table_certificate": build_cayley_table().certificate(),
        "census": census,
        "trials": trials,
        "summary": summary,
        "verdict": "pass" if census["match"] and not failed else "fail",
    }


def table_report():
    table = build_cayley_table()
    return {"command": "table", "table": table.to_list(), "table_certificate": table.certificate()}


def classify_report(list_triples=False):
    report = {"command": "classify", "census": census_block()}
    if list_triples:
        report["triples"] = [
            {"i": i, "j": j, "k": k, "class": classify_basis_triple(i, j, k).value}
            for i in range(8)
            for j in range(8)
            for k in range(8)
        ]
    return report


def fano_report():
    lines = sorted(sorted(line) for line in enumerate_fano_lines())
    expected = [sorted(s) for s in INDEX_SETS]
    hits = sum(line in expected for line in lines)
    return {
        "command": "fano",
        "lines": lines,
        "matched": hits,
        "expected": len(expected),
        "verdict": "pass" if hits == len(expected) == len(lines) else "fail",
    }


def _fmt_sb(sign, index):
    return f"{'+' if sign > 0 else '-'}e{index}"


def render(report, fmt):
    """Serialize a report as text, JSON or CSV (always newline-terminated)."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    return _render_text(report)


def _census_lines(c):
    return [
        f"associative={c['associative']} anti={c['anti_associative']} total={c['total']}",
        f"grouped_pairs={c['grouped_sums']}",
        "lines: " + " ".join("{" + ",".join(map(str, s)) + "}" for s in c["index_sets"]),
        f"census: {'match' if c['match'] else 'MISMATCH'}",
    ]


def _render_text(report):
    cmd = report["command"]
    out = []
    if cmd == "table":
        for i, row in enumerate(report["table"]):
            cells = [f"e{i}*e{j} = {_fmt_sb(e['sign'], e['index'])}" for j, e in enumerate(row)]
            out.append(f"row {i}: " + "  ".join(cells))
        out.append(f"certificate: {report['table_certificate']}")
    elif cmd == "classify":
        out.extend(_census_lines(report["census"]))
        for t in report.get("triples", []):
            out.append(f"({t['i']},{t['j']},{t['k']}) {t['class']}")
    elif cmd == "fano":
        for n, line in enumerate(report["lines"], start=1):
            out.append(f"I{n} = {{{','.join(map(str, line))}}}")
        out.append(f"match: {report['matched']}/{report['expected']}")
    else:
        cfg = report["config"]
        out.append("config: " + " ".join(f"{k}={cfg[k]}" for k in sorted(cfg)))
        out.append(f"table certificate: {report['table_certificate']}")
        out.extend(_census_lines(report["census"]))
        for t in report["trials"]:
            line = f"trial {t['trial']}: max|residual|={t['max_abs_residual']} |lhs|^2={t['lhs_norm_sq']}"
            if "relative_residual" in t:
                line += f" relative={t['relative_residual']!r}"
            line += f" oracle={'ok' if t['oracle_agrees'] else 'MISMATCH'} {'pass' if t['passed'] else 'FAIL'}"
            out.append(line)
        s = report["summary"]
        out.append(f"trials={s['trials']} failed={len(s['failed_trials'])} max|residual|={s['max_abs_residual']}")
        out.append(f"verdict: {report['verdict']}")
    return "\n".join(out) + "\n"


def _csv_float(x):
    return "" if x is None else repr(x)


def _render_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cmd = report["command"]
    if cmd == "table":
        w.writerow(["i", "j", "sign", "index"])
        for i, row in enumerate(report["table"]):
            for j, e in enumerate(row):
                w.writerow([i, j, e["sign"], e["index"]])
    elif cmd == "classify":
        c = report["census"]
        w.writerow(["quantity", "value"])
        for key in ("total", "associative", "anti_associative", "grouped_sums", "lines"):
            w.writerow([key, c[key]])
        for t in report.get("triples", []):
            w.writerow([f"({t['i']},{t['j']},{t['k']})", t["class"]])
    elif cmd == "fano":
        w.writerow(["line", "a", "b", "c"])
        for n, line in enumerate(report["lines"], start=1):
            w.writerow([f"I{n}", *line])
    else:
        header = ["trial", "max_abs_residual", "lhs_norm_sq", "relative_residual", "oracle_agrees", "passed"]
        header += [f"lhs{k}" for k in range(8)]
        w.writerow(header)
        for t in report["trials"]:
            w.writerow(
                [t["trial"], t["max_abs_residual"], t["lhs_norm_sq"], _csv_float(t.get("relative_residual")),
                 t["oracle_agrees"], t["passed"], *t["lhs"]]
            )
    return buf.getvalue()

