"""Run configuration files.

A run configuration is INI text::

    [problem]
    p = 2
    q = 3
    alpha = 0
    beta = 0
    potential = 0

    [domain]
    spec = disk:1
    modes = 32
    radial_only = no

    [solver]
    frameworks = dual, inversion, ls_reduction
    tolerance = 1e-9
    max_iter = 500
    split = 1
    seed = 0
    perturbation = 0

    [solver.ls_reduction]
    lams = 0.5, 1, 2

    [run]
    out = runs/disk
    henon_weights = 0, 5, 10
    mode_list = 16, 32, 64
    checks = balance, energy_identity

Every key is optional; missing keys take the :class:`RunConfig` defaults.
"""
import configparser
import logging
from dataclasses import fields, replace
from pathlib import Path

from hamsys.exceptions import ConfigError, DomainError
from hamsys.functionals.models import Framework
from hamsys.reports.models import RunConfig
from hamsys.spectral.models import Domain

logger = logging.getLogger(__name__)


def float_list(text):
    return tuple(float(item) for item in text.split(",") if item.strip())


def int_list(text):
    return tuple(int(item) for item in text.split(",") if item.strip())


def _names(text):
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _optional_int(text):
    return None if text.strip().lower() in ("", "none") else int(text)


# (section, key) -> (RunConfig field, parser); booleans are handled by configparser
_KEYS = {
    ("problem", "p"): ("p", float),
    ("problem", "q"): ("q", float),
    ("problem", "alpha"): ("alpha", float),
    ("problem", "beta"): ("beta", float),
    ("problem", "potential"): ("potential", float),
    ("domain", "spec"): ("domain", Domain.parse),
    ("domain", "modes"): ("modes", int),
    ("domain", "radial_only"): ("radial_only", bool),
    ("solver", "frameworks"): ("frameworks", Framework.parse_list),
    ("solver", "tolerance"): ("tolerance", float),
    ("solver", "max_iter"): ("max_iter", _optional_int),
    ("solver", "split"): ("split", float),
    ("solver", "seed"): ("seed", int),
    ("solver", "perturbation"): ("perturbation", float),
    ("solver.ls_reduction", "lams"): ("lams", float_list),
    ("run", "out"): ("output_dir", Path),
    ("run", "henon_weights"): ("henon_weights", float_list),
    ("run", "mode_list"): ("mode_list", int_list),
    ("run", "checks"): ("checks", _names),
}

SECTIONS = sorted({section for section, _ in _KEYS})


def _parser() -> configparser.ConfigParser:
    return configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))


def _read(text: str, source: str) -> configparser.ConfigParser:
    parser = _parser()
    try:
        parser.read_string(text, source=source)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError(f"{source}:{exc.lineno}: keys must follow a [section] header", line=exc.lineno) from exc
    except configparser.ParsingError as exc:
        line, _ = exc.errors[0]
        raise ConfigError(f"{source}:{line}: cannot parse line", line=line) from exc
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as exc:
        field = exc.section if isinstance(exc, configparser.DuplicateSectionError) else f"{exc.section}.{exc.option}"
        raise ConfigError(f"{source}:{exc.lineno}: {exc.message}", field=field, line=exc.lineno) from exc
    return parser


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    """Line number of ``key`` in ``section``, or of the section header when ``key`` is None."""
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if key is None and current == section:
                return number
        elif key is not None and current == section and line.partition("=")[0].strip().lower() == key:
            return number
    return None


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Build a :class:`RunConfig` from INI text.

    Raises:
        ConfigError: With ``line`` set for syntax errors and ``field`` set to
            ``section.key`` for unknown keys or invalid values.
    """
    parser = _read(text, source)
    values = {}
    for section in parser.sections():
        if section not in SECTIONS:
            line = _line_of(text, section)
            raise ConfigError(
                f"{source}:{line}: unknown section [{section}]; expected one of {SECTIONS}",
                field=section,
                line=line,
            )
        for key in parser[section]:
            name = f"{section}.{key}"
            line = _line_of(text, section, key)
            if (section, key) not in _KEYS:
                raise ConfigError(f"{source}:{line}: unknown key {name}", field=name, line=line)
            attribute, convert = _KEYS[section, key]
            try:
                if convert is bool:
                    values[attribute] = parser.getboolean(section, key)
                else:
                    values[attribute] = convert(parser.get(section, key))
            except (ValueError, DomainError) as exc:
                raise ConfigError(f"{source}:{line}: invalid value for {name}: {exc}", field=name, line=line) from exc
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path) -> RunConfig:
    """Read a run configuration file.

    Raises:
        ConfigError: If the file is missing or invalid.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"Cannot read {path}: {exc.strerror}") from exc
    config = parse_config(text, source=str(path))
    logger.debug("Loaded %s: %s", path, config.to_dict())
    return config


def apply_overrides(config: RunConfig, **overrides) -> RunConfig:
    """Replace the fields given as keyword arguments that are not None."""
    names = {f.name for f in fields(RunConfig)}
    unknown = set(overrides) - names
    if unknown:
        raise ConfigError(f"Unknown overrides {sorted(unknown)}")
    changes = {name: value for name, value in overrides.items() if value is not None}
    try:
        return replace(config, **changes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
