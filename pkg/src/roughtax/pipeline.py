"""End-to-end pipeline: table -> characterizations -> taxonomy -> rules -> files."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .characterize import as_ratio, characterize_all
from .errors import ConfigError
from .grouping import GroupingConfig, TIE_BREAKS, group
from .induction import filter_probabilistic, induce_rules, merge_subrules
from .serialize import (
    characterizations_doc,
    dumps,
    matrix_json,
    rules_doc,
    rules_text,
    taxonomy_dot,
    taxonomy_json,
    trace_json,
)
from .similarity import Measure
from .table import DecisionTable, parse_table

EMIT_KINDS = ("matrices", "dot", "json", "trace")


@dataclass(frozen=True)
class PipelineConfig:
    input: Optional[str] = None
    class_column: Optional[str] = None
    delta_kappa: Fraction = Fraction(1)
    delta_alpha: Fraction = Fraction(3, 4)
    rule_delta_kappa: Fraction = Fraction(1, 2)
    theta_g: Fraction = Fraction(0)
    measure: Measure = Measure.INTERVAL
    single_tree: bool = True
    tie_break: str = "order"
    output_dir: str = "roughtax_output"
    emit: tuple = EMIT_KINDS

    def __post_init__(self):
        for name in ("delta_kappa", "delta_alpha", "rule_delta_kappa", "theta_g"):
            raw = getattr(self, name)
            try:
                value = as_ratio(raw)
            except (TypeError, ValueError, ZeroDivisionError):
                raise ConfigError(f"{name} must be a ratio, got {raw!r}") from None
            if not 0 <= value <= 1:
                raise ConfigError(f"{name} must lie in [0, 1], got {raw}")
            object.__setattr__(self, name, value)
        if self.delta_kappa == 0:
            raise ConfigError("delta_kappa must be positive")
        object.__setattr__(self, "measure", Measure.parse(self.measure))
        if self.tie_break not in TIE_BREAKS:
            raise ConfigError(f"tie_break must be one of {TIE_BREAKS}")
        emit = self.emit
        if isinstance(emit, str):
            emit = [e for e in emit.split(",") if e.strip()]
        emit = tuple(e.strip() for e in emit)
        bad = [e for e in emit if e not in EMIT_KINDS]
        if bad:
            raise ConfigError(f"unknown emit kind(s) {bad}; choose from {EMIT_KINDS}")
        object.__setattr__(self, "emit", emit)

    @classmethod
    def from_sources(cls, config_file: Optional[str] = None, **overrides) -> "PipelineConfig":
        """Defaults, then a JSON config file, then explicit overrides (None = unset)."""
        values = {}
        if config_file:
            try:
                loaded = json.loads(Path(config_file).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config file {config_file}: {exc}") from None
            if not isinstance(loaded, dict):
                raise ConfigError("config file must hold a JSON object")
            known = {f.name for f in fields(cls)}
            unknown = sorted(set(loaded) - known)
            if unknown:
                raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
            values.update(loaded)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def grouping(self) -> GroupingConfig:
        return GroupingConfig(delta_kappa=self.delta_kappa, theta_g=self.theta_g,
                              measure=self.measure, single_tree=self.single_tree,
                              tie_break=self.tie_break)


def load_table(config: PipelineConfig) -> DecisionTable:
    if not config.input:
        raise ConfigError("no input file given")
    path = Path(config.input)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_table(text, class_column=config.class_column)


@dataclass(frozen=True)
class PipelineResult:
    table: DecisionTable
    characterizations: list
    roots: list
    trace: object
    rules: object
    retained: object


def analyse(t: DecisionTable, config: PipelineConfig) -> PipelineResult:
    chars = characterize_all(t, config.delta_kappa)
    roots, trace = group(t, config.grouping())
    rules = induce_rules(roots, t)
    retained = filter_probabilistic(rules, config.delta_alpha, config.rule_delta_kappa)
    return PipelineResult(t, chars, roots, trace, rules, retained)


def group_subrules_doc(roots) -> list:
    out = []
    for root in roots:
        for node in root.nodes():
            pair = merge_subrules(node)
            if pair is None:
                continue
            (neg, neg_target), (pos, pos_target) = pair
            left, right = node.children
            out.append({
                "node": node.id,
                "left": left.id,
                "right": right.id,
                "rules": [
                    {"condition": str(neg), "conclusion": neg_target},
                    {"condition": str(pos), "conclusion": pos_target},
                ],
            })
    return out


def render(result: PipelineResult, config: PipelineConfig) -> dict:
    """Map of output file name -> text content, in a fixed order."""
    files = {}
    emit = set(config.emit)
    if "json" in emit:
        files["characterizations.json"] = dumps(
            characterizations_doc(result.characterizations, config.delta_kappa))
    if "matrices" in emit:
        for m in result.trace.matrices:
            files[f"matrix_step{m.step}.json"] = dumps(matrix_json(m))
    if "json" in emit:
        files["taxonomy.json"] = dumps(taxonomy_json(result.roots, config.delta_kappa))
    if "dot" in emit:
        files["taxonomy.dot"] = taxonomy_dot(result.roots)
    if "json" in emit:
        files["rules.json"] = dumps(rules_doc(result.rules, result.retained,
                                              group_subrules_doc(result.roots)))
    files["rules.txt"] = rules_text(result.rules, result.retained)
    if "trace" in emit:
        files["trace.json"] = dumps(trace_json(result.trace))
    return files


def run_pipeline(config: PipelineConfig) -> dict:
    """Run every stage and write the artifacts; returns ``{name: path}``.

    Nothing is written unless every stage succeeds.
    """
    t = load_table(config)
    files = render(analyse(t, config), config)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for name, text in files.items():
        path = out / name
        path.write_text(text, encoding="utf-8")
        written[name] = path
    return written
