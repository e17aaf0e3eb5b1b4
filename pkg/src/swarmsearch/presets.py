"""Built-in experiment configurations for the figure experiments.

fig2..fig5 carry the colony parameters (agents, t_max, k, eta,
beta, gamma, p) for the 100x100 runs; sv1..sv3 are the 30x30 ant-versus-
bacteria comparisons (50 agents, 400 steps).  Rows with full per-step
evaporation (k = 1) use the subtractive convention; see ``SsaParams``.
"""

from __future__ import annotations

from swarmsearch.config import ExperimentConfig, parse_config

_COMMON_100 = """\
[habitat]
function = {function}
width = 100
height = 100
goal = {goal}

[ssa]
n_ants = {n_ants}
t_max = {t_max}
k = {k}
eta = {eta}
beta = 3.5
gamma = 0.2
p = {p}
evaporation = {evaporation}

[schedule]
{schedule}
[output]
snapshot_steps = {snapshots}
seeds = 1
out_dir = runs/{name}
radius = 5
threshold = 0.5
"""

_SV = """\
[habitat]
function = {function}
domain = 0.0, 30.0, 0.0, 30.0
width = 30
height = 30
goal = minimize

[ssa]
n_ants = 50
t_max = 400
k = 1.0
eta = 0.1
beta = {beta}
gamma = 0.2
p = 1.9
evaporation = subtract
{bfoa}
[schedule]
{schedule}
[output]
snapshot_steps = 0, 100, 200, 300, 400
seeds = 1
out_dir = runs/{name}
radius = 2
threshold = 0.5
"""

_BFOA = """
[bfoa]
s = 50
nc = 100
n_re = 4
n_ed = 1
"""

PRESETS: dict[str, str] = {
    "fig2": _COMMON_100.format(
        name="fig2", function="F0a", goal="maximize", n_ants=3000, t_max=1000, k=0.015, eta=0.07, p=1.93,
        evaporation="rate", schedule="", snapshots="0, 100, 250, 500, 750, 1000"),
    "fig3": _COMMON_100.format(
        name="fig3", function="F0a", goal="maximize", n_ants=3000, t_max=1150, k=0.015, eta=0.07, p=1.93,
        evaporation="rate", schedule="1001, F0b, -\n",
        snapshots="0, 500, 1000, 1010, 1050, 1080, 1100, 1150"),
    "fig4": _COMMON_100.format(
        name="fig4", function="F0a", goal="maximize", n_ants=2000, t_max=500, k=1.0, eta=0.10, p=1.9,
        evaporation="subtract", schedule="251, -, minimize\n",
        snapshots="50, 150, 250, 300, 350, 400, 450, 500"),
    "fig5": _COMMON_100.format(
        name="fig5", function="F6", goal="minimize", n_ants=3000, t_max=600, k=1.0, eta=0.01, p=1.9,
        evaporation="subtract", schedule="301, F0a, maximize\n",
        snapshots="20, 100, 300, 320, 400, 500, 600"),
    "sv1": _SV.format(name="sv1", function="P1", beta=6.0, bfoa=_BFOA, schedule=""),
    "sv2": _SV.format(name="sv2", function="P2", beta=7.0, bfoa=_BFOA, schedule=""),
    "sv3": _SV.format(name="sv3", function="P1", beta=7.0, bfoa="", schedule="201, -, maximize\n"),
}

# Preset switch steps, used by the summary and acceptance checks.
SWITCH_STEPS = {"fig3": 1001, "fig4": 251, "fig5": 301, "sv3": 201}


def preset_text(name: str) -> str:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


def load_preset(name: str) -> ExperimentConfig:
    return parse_config(preset_text(name))
