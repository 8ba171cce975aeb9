"""Command-line front door: figure presets, free-form sweeps, bound reports.

Preset parameters follow the published figure captions where the captions
fix them (transmit/interference powers, interferer counts, sample sizes).
Per-series ladder levels that only ever appeared inside figure legends are
reconstructions, chosen as decade or doubling ladders, and are marked as
such in each preset description.

CSV schema (fixed): ``scenario,series_label,threshold,n,hits,p_hat,
ci_low,ci_high,markov_bound,closed_form,outage_lower_bound,seed`` with
empty cells for inapplicable columns and 17-significant-digit reals.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bounds, engine
from .logistic import (
    ConditionError,
    ConditionId,
    LogisticParams,
    family_from_dicts,
    params_from_dict,
    select_optimal_k,
)
from .scenarios import ScenarioConfig, Variant, scenario_from_dict
from .streams import StreamKey

CSV_HEADER = (
    "scenario,series_label,threshold,n,hits,p_hat,ci_low,ci_high,"
    "markov_bound,closed_form,outage_lower_bound,seed"
)

DEFAULT_SEED = 0
SEED_ENV_VAR = "SEMLIM_SEED"


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    series: tuple[tuple[str, ScenarioConfig], ...]
    thresholds: tuple[float, ...]
    n: int


_BETA_GRID = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)
_PRACTICAL_GRID = (0.05, 0.075, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5)


def _series(label_field: str, configs: Sequence[ScenarioConfig], values) -> tuple:
    return tuple((f"{label_field}={v:g}", c) for v, c in zip(values, configs))


def _build_presets() -> dict[str, Preset]:
    presets = {}

    sigma_levels = (10.0, 100.0, 1000.0, 10000.0)
    presets["fig3"] = Preset(
        "fig3",
        "no-RFI regime: fixed transmit power 5 W, noise power ladder "
        "(ladder levels reconstructed), N=1e7",
        _series(
            "sigma2",
            [ScenarioConfig(Variant.NO_RFI, p_max_s=5.0, sigma2=s) for s in sigma_levels],
            sigma_levels,
        ),
        _BETA_GRID,
        10_000_000,
    )

    power_levels = (0.05, 0.5, 5.0, 50.0)
    presets["fig4"] = Preset(
        "fig4",
        "no-RFI regime: fixed noise power 100 W, transmit power ladder "
        "(ladder levels reconstructed), N=1e7",
        _series(
            "p_max_s",
            [ScenarioConfig(Variant.NO_RFI, p_max_s=p, sigma2=100.0) for p in power_levels],
            power_levels,
        ),
        _BETA_GRID,
        10_000_000,
    )

    rfi_levels = (1.0, 10.0, 100.0, 1000.0)
    presets["fig5"] = Preset(
        "fig5",
        "single-RFI regime: fixed transmit power 10 W, interferer power ladder "
        "(ladder levels reconstructed), N=1e7",
        _series(
            "p_min_i",
            [ScenarioConfig(Variant.SINGLE_RFI, p_max_s=10.0, p_min_i=p) for p in rfi_levels],
            rfi_levels,
        ),
        _BETA_GRID,
        10_000_000,
    )

    tx_levels = (0.01, 0.1, 1.0, 10.0)
    presets["fig6"] = Preset(
        "fig6",
        "single-RFI regime: fixed interferer power 10 W, transmit power ladder "
        "(ladder levels reconstructed), N=1e7",
        _series(
            "p_max_s",
            [ScenarioConfig(Variant.SINGLE_RFI, p_max_s=p, p_min_i=10.0) for p in tx_levels],
            tx_levels,
        ),
        _BETA_GRID,
        10_000_000,
    )

    u_levels = (2, 4, 8, 16, 32)
    for name, p_tilde in (("fig7", 0.1), ("fig8", 0.15)):
        presets[name] = Preset(
            name,
            f"multi-RFI regime: transmit power 10 W, weakest interferer floor {p_tilde} W, "
            "interferer-count ladder (ladder levels reconstructed), N=1e6",
            _series(
                "u",
                [
                    ScenarioConfig(Variant.MULTI_RFI, p_max_s=10.0, p_tilde_min=p_tilde, u=u)
                    for u in u_levels
                ],
                u_levels,
            ),
            _BETA_GRID,
            1_000_000,
        )

    practical_u = (25, 50, 100)
    for name, p_tilde in (("fig9", 0.8), ("fig10", 1.0)):
        presets[name] = Preset(
            name,
            f"practical limits: unit-power SINR simulation, bound powers "
            f"(p_tilde_min, p_max_s)=({p_tilde}, 1.5) W, U in {{25, 50, 100}}, N=1e6",
            _series(
                "u",
                [
                    ScenarioConfig(
                        Variant.PRACTICAL_SINR, p_max_s=1.5, p_tilde_min=p_tilde, u=u
                    )
                    for u in practical_u
                ],
                practical_u,
            ),
            _PRACTICAL_GRID,
            1_000_000,
        )

    return presets


PRESETS = _build_presets()


def preset_digest(preset: Preset) -> str:
    """Canonical fingerprint of every number a preset feeds the engine."""
    payload = {
        "name": preset.name,
        "n": preset.n,
        "thresholds": [repr(t) for t in preset.thresholds],
        "series": [
            {
                "label": label,
                "variant": cfg.variant.value,
                "p_max_s": repr(cfg.p_max_s),
                "sigma2": repr(cfg.sigma2),
                "p_min_i": repr(cfg.p_min_i),
                "p_tilde_min": repr(cfg.p_tilde_min),
                "u": cfg.u,
            }
            for label, cfg in preset.series
        ],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


# Frozen fingerprints of the registry above; the selftest re-derives and
# compares them so a silently edited preset fails loudly by name.
REGISTRY_DIGESTS = {
    "fig3": "082b4fea994162cc43cf900e809906ba05dde473552366447caae5dcf3cbdc0d",
    "fig4": "719a12ef036c39328d343c5588e3426a51b0575451a1eaf47d9c72dc3c6bb36a",
    "fig5": "8b53006b3017eacd9053495ecfafffe67502d8b7e10ea59a35912d2deab38033",
    "fig6": "685b3d804fa5f7f66a962899f56307a60dc7244683b5138b26195a41c78cec20",
    "fig7": "017b28e466cac2a57a1a6206f707601215d3c6d05262ce2ebce30bed492203e1",
    "fig8": "8b4043018ffc961dfd613785cd6b4d4fe5d767d8fb9db5c31dee4370a80cbc93",
    "fig9": "ddbb32304cdb8ec4a724f0888d78e8f87c3b6660fca886123c6cd1f2c51d3250",
    "fig10": "5987f0fe231db1a7f8b0bf839f3c09bf4f016520650250285f5591ede04a367b",
}


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def _sweep_rows(label: str, result: engine.SweepResult, seed: int) -> list[list[str]]:
    rows = []
    for point in result.points:
        est = point.estimate
        rows.append(
            [
                result.config.variant.value,
                label,
                _fmt(point.threshold),
                str(est.n),
                str(est.hits),
                _fmt(est.p_hat),
                _fmt(est.ci_low),
                _fmt(est.ci_high),
                _fmt(point.markov_bound),
                _fmt(point.closed_form),
                _fmt(point.outage_lower_bound),
                str(seed),
            ]
        )
    return rows


def _write_csv(path: Path, rows: list[list[str]]):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        writer.writerows(rows)


def run_preset(
    name: str,
    master_seed: int,
    sample_override: Optional[int] = None,
    output_path: Optional[Path] = None,
    workers: int = 1,
) -> Path:
    """Run one figure preset and write its CSV; returns the output path."""
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS, key=_preset_order))
        raise ValueError(f"unknown preset {name!r}; available presets: {known}")
    preset = PRESETS[name]
    n = sample_override if sample_override is not None else preset.n
    path = Path(output_path) if output_path is not None else Path(f"{name}.csv")
    rows = []
    for label, config in preset.series:
        result = engine.sweep_tail(
            config, preset.thresholds, n, master_seed, shared_samples=True, workers=workers
        )
        rows.extend(_sweep_rows(label, result, master_seed))
    _write_csv(path, rows)
    return path


def _preset_order(name: str) -> int:
    return int(name.removeprefix("fig"))


def _strip_companions(result: engine.SweepResult) -> engine.SweepResult:
    points = tuple(
        engine.SweepPoint(p.threshold, p.estimate, None, None, None) for p in result.points
    )
    return engine.SweepResult(result.config, points)


def run_sweep_config(
    config: dict,
    master_seed: int,
    output_path: Optional[Path] = None,
    workers: int = 1,
) -> Path:
    """Run a free-form sweep described by a JSON-style mapping.

    The mapping holds ``thresholds``, ``n``, and either a single
    ``scenario`` or a ``series`` list of ``{label, scenario}`` entries.
    ``bounds`` may be true (require the Markov columns, failing loudly if a
    series cannot support them), false (omit them), or "auto" (default:
    populate wherever available).
    """
    raw_series = config.get("series")
    if raw_series is None:
        if "scenario" not in config:
            raise ValueError("sweep config needs 'scenario' or 'series'")
        raw_series = [{"label": "sweep", "scenario": config["scenario"]}]
    thresholds = config.get("thresholds")
    if not thresholds:
        raise ValueError("sweep config needs a non-empty 'thresholds' list")
    n = int(config.get("n", 0))
    if n < 1:
        raise ValueError("sweep config needs a positive sample count 'n'")
    bounds_mode = config.get("bounds", "auto")
    shared = bool(config.get("shared_samples", True))

    if bounds_mode is True:
        for entry in raw_series:
            scen = entry.get("scenario", {})
            u = scen.get("u")
            if scen.get("variant") not in (Variant.MULTI_RFI.value, Variant.PRACTICAL_SINR.value):
                raise ConditionError(
                    ConditionId.POWER_BUDGET,
                    f"bound columns need a multi-interferer scenario, got {scen.get('variant')!r}",
                )
            if u is None or int(u) <= 1:
                raise ConditionError(
                    ConditionId.POWER_BUDGET,
                    f"bound columns need more than one interferer (u > 1), got u={u!r}",
                )
            if scen.get("p_tilde_min") is None:
                raise ConditionError(
                    ConditionId.POWER_BUDGET,
                    "bound columns need the weakest interferer floor p_tilde_min",
                )

    rows = []
    for entry in raw_series:
        label = str(entry.get("label", "sweep"))
        scenario = scenario_from_dict(entry["scenario"])
        result = engine.sweep_tail(
            scenario, thresholds, n, master_seed, shared_samples=shared, workers=workers
        )
        if bounds_mode is False:
            result = _strip_companions(result)
        rows.extend(_sweep_rows(label, result, master_seed))

    path = Path(output_path) if output_path is not None else Path("sweep.csv")
    _write_csv(path, rows)
    return path


def _report_as_dict(report: bounds.BoundReport) -> dict:
    return {
        "value": report.value,
        "applicable": report.applicable,
        "vacuous": report.vacuous,
        "conditions": [
            {"condition_id": c.condition_id.value, "satisfied": c.satisfied, "detail": c.detail}
            for c in report.conditions
        ],
    }


def bound_report(config: dict) -> dict:
    """Markov and outage bound reports for a JSON-style bound request.

    The request carries either a single ``params`` mapping or a ``family``
    list (in which case the threshold-minimizing member is selected), plus
    ``eta_min``, ``p_max_s``, ``p_tilde_min`` and ``u``.
    """
    if "family" in config:
        family = family_from_dicts(config["family"])
        k_label = select_optimal_k(family, float(config["eta_min"]))
        params = next(m for m in family if m.k_label == k_label)
    elif "params" in config:
        params = params_from_dict(config["params"])
    else:
        raise ValueError("bound config needs 'params' or 'family'")
    eta_min = float(config["eta_min"])
    p_max_s = float(config["p_max_s"])
    p_tilde_min = float(config["p_tilde_min"])
    u = int(config["u"])
    markov = bounds.markov_upper_bound(params, eta_min, p_max_s, p_tilde_min, u)
    outage = bounds.outage_lower_bound(params, eta_min, p_max_s, p_tilde_min, u)
    return {
        "k_label": params.k_label,
        "eta_min": eta_min,
        "markov_upper_bound": _report_as_dict(markov),
        "outage_lower_bound": _report_as_dict(outage),
    }


class _SelftestReport:
    def __init__(self):
        self.lines: list[str] = []
        self.failures = 0

    def check(self, name: str, ok: bool, detail: str):
        status = "ok  " if ok else "FAIL"
        if not ok:
            self.failures += 1
        self.lines.append(f"{status} {name}: {detail}")

    def render(self) -> str:
        verdict = "PASS" if self.failures == 0 else f"FAIL ({self.failures} failed)"
        return "\n".join(self.lines + [f"selftest: {verdict}"]) + "\n"


def selftest(master_seed: int = DEFAULT_SEED, n: int = 200_000) -> tuple[str, bool]:
    """Deterministic oracle suite; returns (report text, all-passed)."""
    rep = _SelftestReport()

    for name in sorted(PRESETS, key=_preset_order):
        digest = preset_digest(PRESETS[name])
        expected = REGISTRY_DIGESTS.get(name)
        rep.check(
            f"registry[{name}]",
            digest == expected,
            f"digest {digest[:12]} expected {str(expected)[:12]}",
        )
    rep.check(
        "registry[complete]",
        set(PRESETS) == set(REGISTRY_DIGESTS),
        f"{len(PRESETS)} presets, {len(REGISTRY_DIGESTS)} fingerprints",
    )

    oracle_cases = [
        ("no-rfi tail", ScenarioConfig(Variant.NO_RFI, p_max_s=5.0, sigma2=100.0), 1.0),
        ("single-rfi tail", ScenarioConfig(Variant.SINGLE_RFI, p_max_s=10.0, p_min_i=10.0), 1.0),
        (
            "multi-rfi tail",
            ScenarioConfig(Variant.MULTI_RFI, p_max_s=10.0, p_tilde_min=10.0, u=3),
            1.0,
        ),
        (
            "practical-sinr tail",
            ScenarioConfig(Variant.PRACTICAL_SINR, p_max_s=1.5, p_tilde_min=1.0, u=25),
            0.1,
        ),
    ]
    for name, config, threshold in oracle_cases:
        expected = bounds.closed_form_tail(config, threshold)
        est = engine.estimate_tail(config, threshold, n, master_seed)
        tol = 5.0 * math.sqrt(expected * (1.0 - expected) / n)
        rep.check(
            name,
            abs(est.p_hat - expected) <= tol,
            f"p_hat={est.p_hat:.6f} expected={expected:.6f} tol={tol:.6f}",
        )

    from .streams import f_ratio_stream

    for u in (2, 10):
        draws = f_ratio_stream(StreamKey(master_seed, 1_000 + u), 2, 2 * u, n)
        mean = float(np.mean(draws))
        expected = bounds.f_mean(2 * u)
        tol = 4.0 * float(np.std(draws)) / math.sqrt(n)
        rep.check(
            f"fading ratio mean (u={u})",
            abs(mean - expected) <= tol,
            f"mean={mean:.5f} expected={expected:.5f} tol={tol:.5f}",
        )

    q0 = bounds.arctan_integral_bound(0.0)
    rep.check("arctan integral at 0", abs(q0 - 0.5) <= 1e-9, f"value={q0:.12f} expected 0.5")
    grid = [bounds.arctan_integral_bound(t) for t in (0.0, 0.5, 1.0, 2.0, 10.0)]
    rep.check(
        "arctan integral monotone",
        all(a >= b for a, b in zip(grid, grid[1:])) and all(0.0 <= v <= 0.5 for v in grid),
        "values " + ", ".join(f"{v:.6f}" for v in grid),
    )

    markov = bounds.markov_from_threshold(0.1, 1.5, 1.0, 25)
    practical = engine.estimate_tail(
        ScenarioConfig(Variant.PRACTICAL_SINR, p_max_s=1.5, p_tilde_min=1.0, u=25),
        0.1,
        n,
        master_seed,
    )
    rep.check(
        "markov bound dominates",
        abs(markov - 0.625) < 1e-12 and markov >= practical.p_hat,
        f"bound={markov:.6f} p_hat={practical.p_hat:.6f}",
    )

    low, high = engine.wilson_interval(500_000, 1_000_000, 0.95)
    half = (high - low) / 2.0
    rep.check(
        "wilson half-width",
        abs(half - 0.00097998) <= 1e-7 and low <= 0.5 <= high,
        f"half-width={half:.8f} expected ~0.00097998",
    )
    rep.check(
        "wilson extremes",
        engine.wilson_interval(0, 100)[0] == 0.0 and engine.wilson_interval(100, 100)[1] == 1.0,
        "zero hits pin ci_low=0, full hits pin ci_high=1",
    )

    config = ScenarioConfig(Variant.MULTI_RFI, p_max_s=10.0, p_tilde_min=10.0, u=3)
    first = engine.estimate_tail(config, 1.0, 50_000, master_seed)
    second = engine.estimate_tail(config, 1.0, 50_000, master_seed)
    rep.check(
        "determinism",
        first == second,
        f"repeated estimate hits={first.hits}/{second.hits}",
    )

    return rep.render(), rep.failures == 0


def _resolve_seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semlim",
        description="Monte Carlo and analytic tail-probability sweeps for a semantic link under interference",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"master seed (fallback ${SEED_ENV_VAR}, then {DEFAULT_SEED})")

    p = sub.add_parser("preset", parents=[common], help="run a registered figure preset")
    p.add_argument("name", help="preset name (fig3..fig10)")
    p.add_argument("--samples", type=int, default=None, help="override the preset sample count")
    p.add_argument("--out", type=Path, default=None, help="output CSV path (default <name>.csv)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    s = sub.add_parser("sweep", parents=[common], help="run a free-form sweep from a JSON config")
    s.add_argument("--config", type=Path, required=True)
    s.add_argument("--out", type=Path, default=None, help="output CSV path (default sweep.csv)")
    s.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    b = sub.add_parser("bound", parents=[common], help="print bound reports for a JSON config")
    b.add_argument("--config", type=Path, required=True)

    sub.add_parser("selftest", parents=[common], help="run the built-in oracle suite")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        seed = _resolve_seed(args.seed)
        if args.command == "preset":
            path = run_preset(args.name, seed, args.samples, args.out, max(1, args.workers))
            print(path)
            return 0
        if args.command == "sweep":
            config = json.loads(Path(args.config).read_text())
            path = run_sweep_config(config, seed, args.out, max(1, args.workers))
            print(path)
            return 0
        if args.command == "bound":
            config = json.loads(Path(args.config).read_text())
            print(json.dumps(bound_report(config), indent=2, sort_keys=True))
            return 0
        if args.command == "selftest":
            report, ok = selftest(seed)
            sys.stdout.write(report)
            return 0 if ok else 1
    except ConditionError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable command")  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
