"""Command-line front end.

Exit status: 0 when every requested verdict holds, 1 when one fails,
2 for unreadable or malformed input, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import report as rpt
from .connection import classify
from .errors import (
    ConfigError,
    EvaluationError,
    ExpressionSyntaxError,
    GeometryError,
    IllConditionedError,
    InadmissiblePointError,
    MetricError,
    SamplerExhaustedError,
)
from .fdiff import fd_expression
from .hermitian import resolve_metric
from .maps import check_map, load_map_file, map_samples
from .morphism import chain_rule_check
from .suite import run_suite
from .wirtinger import eval_jet

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    metric: str | None = None
    source_metric: str | None = None
    target_metric: str | None = None
    map: str | None = None
    psi: str | None = None
    phi: str | None = None
    dim: int | None = None
    samples: int = 32
    seed: int = 42
    tol: float = 1e-9
    fd_step: float = 1e-5
    box: float = 2.0
    format: str = "json"
    out: str | None = None

    def validate(self, *metrics):
        if self.samples < 1:
            raise ConfigError("--samples must be >= 1")
        if self.tol <= 0:
            raise ConfigError("--tol must be > 0")
        for m in metrics:
            if m is not None and self.box <= m.exclusion_radius:
                raise ConfigError(f"--box {self.box} does not exceed the exclusion radius of {m.name}")

    def as_report(self):
        d = asdict(self)
        d.pop("out")
        return d


def _fd_error(exprs, z, h):
    # normwise relative deviation of AD first derivatives from central differences
    worst = 0.0
    for e in exprs:
        ad = eval_jet(e, z, order=1).d
        fd, _ = fd_expression(e, z, h)
        scale = max(float(np.max(np.abs(fd))), 1e-300)
        worst = max(worst, float(np.max(np.abs(ad - fd))) / scale if np.any(fd) else float(np.max(np.abs(ad))))
    return worst


def _sample_rows(samples, rows):
    return [{"point": rpt.point_json(z), "residuals": r} for z, r in zip(samples, rows)]


def cmd_classify(cfg: RunConfig):
    if cfg.metric is None:
        raise ConfigError("classify needs --metric")
    m = resolve_metric(cfg.metric, cfg.dim)
    cfg.validate(m)
    rep = classify(m, tol=cfg.tol, seed=cfg.seed, count=cfg.samples, box=cfg.box)
    entries = [e for row in m.g for e in row]
    fd = max(_fd_error(entries, z, cfg.fd_step) for z in rep.samples)
    summary = {
        "metric": m.name,
        "max_residuals": rep.max_residuals,
        "fd_oracle_relative_error": fd,
        "verdicts": rep.verdicts,
    }
    return {"config": cfg.as_report(), "samples": _sample_rows(rep.samples, rep.residuals), "summary": summary}, True


def cmd_check_map(cfg: RunConfig):
    if cfg.map is None:
        raise ConfigError("check-map needs --map")
    phi = load_map_file(cfg.map)
    source = None if cfg.source_metric in (None, "flat") else resolve_metric(cfg.source_metric, phi.n)
    target = "flat" if cfg.target_metric == "flat" else resolve_metric(cfg.target_metric, phi.r)
    cfg.validate(source)
    rep = check_map(phi, source, target, tol=cfg.tol, seed=cfg.seed, count=cfg.samples, box=cfg.box)
    v = dict(rep.verdicts)
    v["morphism"] = (v["holomorphic"] or v["antiholomorphic"]) and v["pluriharmonic"]
    fd = max(_fd_error(phi.components, z, cfg.fd_step) for z in rep.samples)
    summary = {
        "map": rep.map,
        "max_residuals": rep.max_residuals,
        "fd_oracle_relative_error": fd,
        "verdicts": v,
    }
    return {"config": cfg.as_report(), "samples": _sample_rows(rep.samples, rep.residuals), "summary": summary}, True


def cmd_chain(cfg: RunConfig):
    if cfg.psi is None or cfg.phi is None:
        raise ConfigError("chain needs --psi and --phi")
    psi, phi = load_map_file(cfg.psi), load_map_file(cfg.phi)
    metric_n = psi.target_metric if cfg.source_metric is None else (
        None if cfg.source_metric == "flat" else resolve_metric(cfg.source_metric, psi.r))
    metric_p = "flat" if cfg.target_metric == "flat" else resolve_metric(cfg.target_metric, phi.r)
    cfg.validate()
    samples = map_samples(psi, None, metric_n, cfg.samples, cfg.seed, cfg.box)
    rows = []
    for z in samples:
        rows.append({"chain_rule_difference": chain_rule_check(psi, phi, metric_n, metric_p, z).max_difference})
    worst = max(r["chain_rule_difference"] for r in rows)
    ok = worst <= cfg.tol
    summary = {"max_residuals": {"chain_rule_difference": worst}, "verdicts": {"chain_rule_identity": ok}}
    return {"config": cfg.as_report(), "samples": _sample_rows(samples, rows), "summary": summary}, ok


def cmd_paper_suite(cfg: RunConfig):
    cfg.validate()
    checks = run_suite(cfg.samples, cfg.seed, cfg.tol, cfg.box)
    verdicts = {c["id"]: c["status"] == "pass" for c in checks}
    ok = all(verdicts.values())
    verdicts["overall"] = ok
    return {"config": cfg.as_report(), "samples": [], "summary": {"checks": checks, "verdicts": verdicts}}, ok


COMMANDS = {"classify": cmd_classify, "check-map": cmd_check_map, "chain": cmd_chain, "paper-suite": cmd_paper_suite}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--metric")
    common.add_argument("--source-metric")
    common.add_argument("--target-metric")
    common.add_argument("--map")
    common.add_argument("--psi")
    common.add_argument("--phi")
    common.add_argument("--dim", type=int)
    common.add_argument("--samples", type=int, default=32)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--fd-step", type=float, default=1e-5)
    common.add_argument("--box", type=float, default=2.0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out")
    parser = argparse.ArgumentParser(prog="pluriharm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="classify a Hermitian metric")
    sub.add_parser("check-map", parents=[common], help="map residuals and morphism verdict")
    sub.add_parser("chain", parents=[common], help="chain-rule identity for a composition")
    sub.add_parser("paper-suite", parents=[common], help="run checks P1-P9")
    return parser


def run(cfg: RunConfig):
    """Execute ``cfg``; returns ``(exit_status, report_dict_or_None, message)``."""
    try:
        report, ok = COMMANDS[cfg.command](cfg)
    except (ConfigError, ExpressionSyntaxError) as exc:
        return EXIT_INPUT, None, f"input error: {exc}"
    except (IllConditionedError, SamplerExhaustedError, EvaluationError, InadmissiblePointError) as exc:
        return EXIT_NUMERIC, None, f"numerical error: {exc}"
    except MetricError as exc:
        return EXIT_INPUT, None, f"invalid metric: {exc}"
    except GeometryError as exc:
        return EXIT_NUMERIC, None, f"numerical error: {exc}"
    return (EXIT_OK if ok else EXIT_FAIL), report, ""


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    cfg = RunConfig(**args)
    status, report, message = run(cfg)
    if report is None:
        print(message, file=sys.stderr)
        return status
    text = rpt.dumps(report) + "\n" if cfg.format == "json" else rpt.render_text(report)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            print(f"cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
