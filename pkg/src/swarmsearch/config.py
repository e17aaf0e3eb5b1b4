"""INI-style experiment configuration.

Sections::

    [habitat]   function, domain (x_min, x_max, y_min, y_max), width, height, goal
    [ssa]       n_ants, t_max, k, eta, beta, gamma, p, direction_weights,
                evaporation, reset_extremes
    [bfoa]      s, nc, ns, n_re, n_ed, p_ed, step_size, d_attract, w_attract,
                h_repel, w_repel
    [schedule]  one "at_step, function, goal" line per event; "-" or an
                empty field leaves that part unchanged
    [output]    snapshot_steps, seeds, out_dir, radius, threshold

At least one of ``[ssa]`` / ``[bfoa]`` must be present; with both, the two
algorithms run side by side on the same landscape.
"""

from __future__ import annotations

import configparser
import dataclasses
import re
from dataclasses import dataclass

from swarmsearch.benchmarks import REGISTRY, get_function
from swarmsearch.bfoa import BfoaParams
from swarmsearch.domain import Domain2D, Goal
from swarmsearch.habitat import ScheduleEvent, validate_schedule
from swarmsearch.metrics import default_radius
from swarmsearch.ssa import SsaParams


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class ExperimentConfig:
    function: str
    domain: Domain2D
    width: int
    height: int
    goal: Goal
    ssa: SsaParams | None = None
    bfoa: BfoaParams | None = None
    schedule: tuple[ScheduleEvent, ...] = ()
    snapshot_steps: tuple[int, ...] = ()
    seeds: tuple[int, ...] = (0,)
    out_dir: str = "runs"
    radius: int = 5
    threshold: float = 0.5

    @property
    def algorithms(self) -> list[str]:
        return [name for name in ("ssa", "bfoa") if getattr(self, name) is not None]

    @property
    def t_max(self) -> int:
        if self.ssa is not None:
            return self.ssa.t_max
        b = self.bfoa
        return b.n_ed * b.n_re * b.nc

    def replace(self, **changes) -> ExperimentConfig:
        return dataclasses.replace(self, **changes)


SSA_KEYS = {
    "n_ants": int, "t_max": int, "k": float, "eta": float, "beta": float, "gamma": float,
    "p": float, "direction_weights": "floats", "evaporation": str, "reset_extremes": bool,
}
BFOA_KEYS = {
    "s": int, "nc": int, "ns": int, "n_re": int, "n_ed": int, "p_ed": float, "step_size": float,
    "d_attract": float, "w_attract": float, "h_repel": float, "w_repel": float,
}
HABITAT_KEYS = {"function", "domain", "width", "height", "goal"}
OUTPUT_KEYS = {"snapshot_steps", "seeds", "out_dir", "radius", "threshold"}
SECTIONS = {"habitat", "ssa", "bfoa", "schedule", "output"}


def _line_index(text: str) -> dict[tuple[str, str], int]:
    """Map (section, key) to its 1-based line number for error messages."""
    index = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#;":
            continue
        m = re.match(r"\[([^\]]+)\]", line)
        if m:
            section = m.group(1).strip()
            index[(section, "")] = lineno
            continue
        key = re.split(r"[=:]", line, maxsplit=1)[0].strip() if section != "schedule" else line
        index.setdefault((section, key), lineno)
    return index


def _to_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered not in ("true", "false"):
        raise ValueError(f"expected true or false, got {text!r}")
    return lowered == "true"


def _to_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _to_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


_CONVERTERS = {int: int, float: float, str: str.strip, bool: _to_bool, "floats": _to_floats, "ints": _to_ints}


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate; raises :class:`ConfigError` carrying a line number
    where one can be attributed."""
    parser = configparser.ConfigParser(
        allow_no_value=True, interpolation=None, inline_comment_prefixes=("#", ";"), delimiters=("=",)
    )
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("content before the first [section]", exc.lineno) from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"duplicate key {exc.option!r} in [{exc.section}]", exc.lineno) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", exc.lineno) from None
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ConfigError("malformed line", lineno) from None

    lines = _line_index(text)

    def fail(section, key, message):
        raise ConfigError(f"{section}.{key}: {message}" if key else f"[{section}]: {message}", lines.get((section, key)))

    for section in parser.sections():
        if section not in SECTIONS:
            fail(section, "", f"unknown section (expected one of {sorted(SECTIONS)})")
    if "habitat" not in parser:
        raise ConfigError("missing [habitat] section")
    if "ssa" not in parser and "bfoa" not in parser:
        raise ConfigError("need an [ssa] and/or [bfoa] section")

    def values(section, allowed):
        out = {}
        for key, value in parser[section].items():
            if key not in allowed:
                fail(section, key, "unknown key")
            if value is None:
                fail(section, key, "missing value")
            out[key] = value
        return out

    def convert(section, key, raw, kind):
        try:
            return _CONVERTERS[kind](raw)
        except (ValueError, TypeError) as exc:
            fail(section, key, f"bad value {raw!r}: {exc}")

    hab = values("habitat", HABITAT_KEYS)
    if "function" not in hab:
        fail("habitat", "", "function is required")
    fn_id = hab["function"].strip()
    if fn_id not in REGISTRY:
        fail("habitat", "function", f"unknown function {fn_id!r}")
    if "domain" in hab:
        bounds = convert("habitat", "domain", hab["domain"], "floats")
        if len(bounds) != 4:
            fail("habitat", "domain", "expected x_min, x_max, y_min, y_max")
        try:
            domain = Domain2D(*bounds)
        except ValueError as exc:
            fail("habitat", "domain", str(exc))
    else:
        domain = get_function(fn_id).default_domain
    width = convert("habitat", "width", hab.get("width", "100"), int)
    height = convert("habitat", "height", hab.get("height", "100"), int)
    if width < 3 or height < 3:
        fail("habitat", "width" if width < 3 else "height", "lattice side must be at least 3")
    try:
        goal = Goal.parse(hab.get("goal", "maximize"))
    except ValueError as exc:
        fail("habitat", "goal", str(exc))

    ssa = None
    if "ssa" in parser:
        raw = values("ssa", SSA_KEYS)
        kwargs = {key: convert("ssa", key, value, SSA_KEYS[key]) for key, value in raw.items()}
        ssa = _build("ssa", SsaParams, kwargs, fail)
        if ssa.n_ants >= width * height:
            fail("ssa", "n_ants", f"{ssa.n_ants} ants do not fit on {width}x{height}")

    bfoa = None
    if "bfoa" in parser:
        raw = values("bfoa", BFOA_KEYS)
        kwargs = {key: convert("bfoa", key, value, BFOA_KEYS[key]) for key, value in raw.items()}
        bfoa = _build("bfoa", BfoaParams, kwargs, fail)
        if bfoa.step_size is None:
            bfoa = bfoa.replace(step_size=bfoa.resolved_step(domain))

    events = []
    if "schedule" in parser:
        for line_key, value in parser["schedule"].items():
            if value is not None:
                fail("schedule", line_key, "schedule lines are 'at_step, function, goal' without '='")
            events.append(_parse_event(line_key, lambda msg, k=line_key: fail("schedule", k, msg)))
    if events and bfoa is not None:
        fail("schedule", "", "schedules apply to [ssa] runs only")

    out = values("output", OUTPUT_KEYS) if "output" in parser else {}
    snapshot_steps = convert("output", "snapshot_steps", out.get("snapshot_steps", ""), "ints")
    seeds = convert("output", "seeds", out.get("seeds", "0"), "ints")
    if not seeds:
        fail("output", "seeds", "at least one seed is required")
    radius = convert("output", "radius", out.get("radius", str(default_radius(width, height))), int)
    threshold = convert("output", "threshold", out.get("threshold", "0.5"), float)
    if radius < 0:
        fail("output", "radius", "must be non-negative")

    config = ExperimentConfig(
        function=fn_id, domain=domain, width=width, height=height, goal=goal, ssa=ssa, bfoa=bfoa,
        schedule=tuple(events), snapshot_steps=tuple(snapshot_steps), seeds=tuple(seeds),
        out_dir=out.get("out_dir", "runs").strip(), radius=radius, threshold=threshold,
    )
    try:
        validate_schedule(config.schedule, config.t_max)
    except ValueError as exc:
        fail("schedule", "", str(exc))
    bad = [s for s in config.snapshot_steps if not 0 <= s <= config.t_max]
    if bad:
        fail("output", "snapshot_steps", f"steps {bad} outside [0, {config.t_max}]")
    return config


def _build(section, cls, kwargs, fail):
    try:
        return cls(**kwargs)
    except ValueError as exc:
        message = str(exc)
        key = next((k for k in kwargs if message.startswith(k + " ") or f" {k} " in f" {message} "), "")
        fail(section, key, message)


def _parse_event(line: str, fail) -> ScheduleEvent:
    parts = [part.strip() for part in line.split(",")]
    if len(parts) != 3:
        fail(f"expected 'at_step, function, goal', got {line!r}")
    step_text, fn_text, goal_text = parts
    try:
        at_step = int(step_text)
    except ValueError:
        fail(f"bad step {step_text!r}")
    fn_id = None if fn_text in ("", "-") else fn_text
    if fn_id is not None and fn_id not in REGISTRY:
        fail(f"unknown function {fn_id!r}")
    goal = None
    if goal_text not in ("", "-"):
        try:
            goal = Goal.parse(goal_text)
        except ValueError as exc:
            fail(str(exc))
    try:
        return ScheduleEvent(at_step, fn_id, goal)
    except ValueError as exc:
        fail(str(exc))


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return ", ".join(_fmt(v) for v in value)
    return str(value)


def dump_config(config: ExperimentConfig) -> str:
    """Every setting with defaults resolved; ``parse_config`` reads it back
    to an equal configuration."""
    lines = ["[habitat]", f"function = {config.function}", f"domain = {_fmt(config.domain.as_tuple())}",
             f"width = {config.width}", f"height = {config.height}", f"goal = {config.goal.value}", ""]
    if config.ssa is not None:
        lines.append("[ssa]")
        for key in SSA_KEYS:
            lines.append(f"{key} = {_fmt(getattr(config.ssa, key))}")
        lines.append("")
    if config.bfoa is not None:
        lines.append("[bfoa]")
        for key in BFOA_KEYS:
            value = getattr(config.bfoa, key)
            if key == "step_size" and value is None:
                value = config.bfoa.resolved_step(config.domain)
            lines.append(f"{key} = {_fmt(value)}")
        lines.append("")
    lines.append("[schedule]")
    for e in config.schedule:
        lines.append(f"{e.at_step}, {e.new_function or '-'}, {e.new_goal.value if e.new_goal else '-'}")
    lines += ["", "[output]", f"snapshot_steps = {_fmt(config.snapshot_steps)}", f"seeds = {_fmt(config.seeds)}",
              f"out_dir = {config.out_dir}", f"radius = {config.radius}", f"threshold = {_fmt(config.threshold)}", ""]
    return "\n".join(lines)
