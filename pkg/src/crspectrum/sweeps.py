"""Parameter sweeps over link size and foreign-slot probability."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .access_model import collision_probability, p_grid, spectral_efficiency
from .link_analysis import link_pmf, prefix_pmfs, success_probability
from .montecarlo import GENERATOR_ID, TrialConfig, estimate_success
from .scenario import MODELS, Scenario
from .traffic_models import ValidationError

CSV_HEADER = "sweep_var,model,p_success,p_collision,se,mc_mean,mc_stderr"


@dataclass(frozen=True)
class SweepRow:
    sweep_var: float
    model: str
    p_success: float
    p_collision: float
    se: float
    mc_mean: float | None = None
    mc_stderr: float | None = None


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    # model -> (argmax p, max SE); filled by sweep_p only
    argmax: dict[str, tuple[float, float]] = field(default_factory=dict)

    def column(self, name: str, model: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows if r.model == model], dtype=float)

    def summary(self) -> list[str]:
        return [f"argmax[{m}]: p={p:.12g} se={se:.12g}" for m, (p, se) in self.argmax.items()]


def _meta(scenario: Scenario, cfg: TrialConfig | None, **extra) -> dict:
    meta = {"scenario": scenario.to_dict(), **extra}
    if cfg is not None:
        meta.update(generator=GENERATOR_ID, master_seed=cfg.master_seed, trials=cfg.trials)
    return meta


def _analytic_success(scenario: Scenario, model: str, S: int) -> float:
    return success_probability(link_pmf(scenario.link(model, S), scenario.frame), scenario.coding.needed)


def _mc(scenario: Scenario, model: str, S: int, cfg: TrialConfig | None, workers: int):
    if cfg is None:
        return None, None
    est = estimate_success(scenario.link(model, S), scenario.frame, scenario.coding.needed, cfg, workers)
    return est.mean, est.std_error


def sweep_subchannels(
    scenario: Scenario,
    lambda_vector: Sequence[float] | None = None,
    s_range: Iterable[int] | None = None,
    cfg: TrialConfig | None = None,
    workers: int = 1,
) -> SweepResult:
    """Success probability against link size, for both traffic models.

    The size-S link uses the first S pool entries. Collision probability and
    SE use the scenario's access parameters. ``cfg=None`` skips Monte Carlo.
    """
    if lambda_vector is not None:
        scenario = scenario.with_lambdas(lambda_vector)
    s_values = list(s_range) if s_range is not None else list(range(1, len(scenario.pool) + 1))
    for S in s_values:
        if S < 1:
            raise ValidationError("S", f"S >= 1 required, got {S}")
    pc = collision_probability(scenario.access)
    result = SweepResult(meta=_meta(scenario, cfg, sweep="subchannels"))
    top = max(s_values, default=1)
    prefixes = {m: prefix_pmfs(scenario.link(m, top), scenario.frame) for m in MODELS}
    for S in s_values:
        eff = scenario.efficiency_inputs(S)
        for model in MODELS:
            ps = success_probability(prefixes[model][S - 1], scenario.coding.needed)
            mc_mean, mc_se = _mc(scenario, model, S, cfg, workers)
            result.rows.append(SweepRow(S, model, ps, pc, spectral_efficiency(eff, ps, pc), mc_mean, mc_se))
    return result


def sweep_p(
    scenario: Scenario,
    p_range: Sequence[float] | None = None,
    lambda_vector: Sequence[float] | None = None,
    S: int | None = None,
    cfg: TrialConfig | None = None,
    grid_step: float = 0.005,
    workers: int = 1,
) -> SweepResult:
    """Spectral efficiency against the foreign-slot probability ``p``.

    Only the collision term depends on ``p``; success probability (and its
    Monte-Carlo estimate) is computed once per model at link size ``S``.
    """
    if lambda_vector is not None:
        scenario = scenario.with_lambdas(lambda_vector)
    S = scenario.S_default if S is None else S
    ps_grid = p_grid(grid_step) if p_range is None else np.asarray(p_range, dtype=float)
    eff = scenario.efficiency_inputs(S)
    result = SweepResult(meta=_meta(scenario, cfg, sweep="p", subchannels=S))
    success = {m: _analytic_success(scenario, m, S) for m in MODELS}
    mc = {m: _mc(scenario, m, S, cfg, workers) for m in MODELS}
    best: dict[str, tuple[float, float]] = {}
    for p in ps_grid:
        pc = collision_probability(replace(scenario.access, p=float(p)))
        for model in MODELS:
            se = spectral_efficiency(eff, success[model], pc)
            result.rows.append(SweepRow(float(p), model, success[model], pc, se, *mc[model]))
            # strict '>' keeps the smallest p on ties
            if model not in best or se > best[model][1]:
                best[model] = (float(p), se)
    result.argmax = best
    return result


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12g}"


def format_csv(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    for r in result.rows:
        cells = [r.sweep_var, r.p_success, r.p_collision, r.se, r.mc_mean, r.mc_stderr]
        cells = [_fmt(c) for c in cells]
        cells.insert(1, r.model)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(result: SweepResult, path, write_meta: bool = True) -> None:
    """Write rows under ``CSV_HEADER``; run metadata goes to ``<path>.meta.json``."""
    path = Path(path)
    try:
        with path.open("w", newline="\n") as fh:
            fh.write(format_csv(result))
        if write_meta:
            meta = dict(result.meta)
            if result.argmax:
                meta["argmax"] = {m: {"p": p, "se": se} for m, (p, se) in result.argmax.items()}
            Path(f"{path}.meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    except OSError as e:
        raise OSError(e.errno, f"cannot write {path}: {e.strerror}") from e
