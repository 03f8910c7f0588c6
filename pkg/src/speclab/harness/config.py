"""Campaign config files: ``[section]`` headers and ``key = value`` lines.

Recognized layout::

    [campaign]
    name = square-ladder
    suite = ladder               ; ladder | lemma | proof | kernels
    domain = box sides=1,1
    schemes = thm11, melas, bly
    alpha = 2
    k = 1..200
    method = exact               ; exact | fd | fourier
    seed = 0
    trials = 1000

    [solver]
    h = 0.03125
    grid = 512
    pad = 4
    refine = true

    [tolerances]
    gap = 1e-9
    margin = 1e-12

Unknown sections or keys are errors.
"""
from __future__ import annotations

import configparser

from ..errors import ConfigError
from .campaign import Campaign
from .domain_spec import parse_domain

ALLOWED = {
    "campaign": {"name", "suite", "domain", "schemes", "alpha", "k", "method", "seed", "trials"},
    "solver": {"h", "grid", "pad", "refine"},
    "tolerances": {"gap", "margin"},
}


def parse_k_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise ConfigError(f"k range must look like 1..200, got {text!r}") from None


def _get(section, key, cast, default):
    if key not in section:
        return default
    try:
        return cast(section[key])
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {section[key]!r}") from None


def _bool(text):
    low = text.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ValueError(text)


def campaign_from_text(text: str) -> Campaign:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";",), interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    for sec in cp.sections():
        if sec not in ALLOWED:
            raise ConfigError(f"unknown section [{sec}]")
        extra = set(cp[sec]) - ALLOWED[sec]
        if extra:
            raise ConfigError(f"unknown keys in [{sec}]: {sorted(extra)}")
    if "campaign" not in cp:
        raise ConfigError("missing [campaign] section")
    c = cp["campaign"]
    solver = {}
    if "solver" in cp:
        s = cp["solver"]
        for key, cast in (("h", float), ("grid", int), ("pad", float), ("refine", _bool)):
            if key in s:
                solver[key] = _get(s, key, cast, None)
    tolerances = {}
    if "tolerances" in cp:
        for key in cp["tolerances"]:
            tolerances[key] = _get(cp["tolerances"], key, float, None)
    schemes = tuple(x.strip() for x in c.get("schemes", "").split(",") if x.strip())
    domain = parse_domain(c["domain"]) if "domain" in c else None
    try:
        return Campaign(
            name=c.get("name", "campaign"),
            domain=domain,
            schemes=schemes,
            alpha=_get(c, "alpha", float, 2.0),
            k_range=parse_k_range(c.get("k", "1..1")),
            method=c.get("method", "exact"),
            solver=solver,
            seed=_get(c, "seed", int, 0),
            tolerances=tolerances,
            suite=c.get("suite", "ladder"),
            trials=_get(c, "trials", int, 1000),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_campaign(path) -> Campaign:
    try:
        with open(path) as fh:
            return campaign_from_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
