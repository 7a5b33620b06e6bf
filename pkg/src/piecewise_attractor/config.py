"""
Builds a RunConfig from built-in defaults, an optional JSON config file and
command-line flags, in increasing order of precedence.
"""
import json
from dataclasses import replace
from typing import Any, Callable, Dict, Optional

import chardet

from .carrier import check_carrier_config
from .errors import ConfigError, DomainError
from .piecewise import check_shape_params
from .reporter import console
from .rossler import check_rossler_params
from .types import (
    CarrierConfig,
    Mode,
    OutputSpec,
    PeriodSettings,
    RosslerParams,
    RunConfig,
    ScanSettings,
    ShapeParams,
)

FORMATS = ("csv", "json", "svg")
PLANES = ("xy", "xz", "yz")
PRESETS = {"worksheet": ShapeParams.worksheet, "illustration": ShapeParams.illustration}
SVG_MODES = (Mode.SYNTHESIZE, Mode.ROSSLER)

SHAPE_KEYS = {
    "m3": "m3", "m4": "m4", "m5": "m5", "m6": "m6", "m7": "m7", "m8": "m8",
    "gauss_a": "a", "c3": "c3", "phase": "phase",
}

KNOWN_KEYS = frozenset({
    "mode", "lambda", "x0", "niter", "npoints", "c", "dt", "t_end", "transient",
    "output", "format", "plane", "preset", "polar", "rossler_a", "rossler_b",
    "initial", "carrier_transient", "max_period", "tol", "lambda_min",
    "lambda_max", "steps", "exclusion", *SHAPE_KEYS,
})


def read_file_with_autodetect(file_path: str) -> str:
    try:
        with open(file_path, 'rb') as f:
            raw_data = f.read()
    except OSError as e:
        raise ConfigError(f"Could not read config file: {e}")
    if not raw_data:
        raise ConfigError(f"Config file {file_path} is empty.")

    # Detect encoding
    detection = chardet.detect(raw_data)
    encoding = detection['encoding']
    confidence = detection['confidence']

    if encoding is None:
        raise ConfigError(f"Could not detect the encoding of {file_path}.")
    console.print(f"📝 Detected encoding: [yellow]{encoding}[/yellow] with {confidence:.0%} confidence.")

    try:
        return raw_data.decode(encoding)
    except (LookupError, UnicodeDecodeError) as e:
        raise ConfigError(f"Could not decode {file_path} as {encoding}: {e}")


def load_config_file(file_path: str) -> Dict[str, Any]:
    """Reads a JSON object whose keys mirror the command-line flags."""
    content = read_file_with_autodetect(file_path)
    try:
        values = json.loads(content)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{file_path} is not valid JSON: {e}")
    if not isinstance(values, dict):
        raise ConfigError(f"{file_path} must hold a JSON object, got {type(values).__name__}.")
    unknown = sorted(set(values) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"Unknown key(s) in {file_path}: {', '.join(unknown)}.")
    return values


def merge_values(file_values: Optional[Dict[str, Any]], flags: Dict[str, Any]) -> Dict[str, Any]:
    """Flags that were actually given override the file; unset flags arrive as None."""
    merged = dict(file_values or {})
    for key, value in flags.items():
        if value is None or value == ():
            continue
        if value is False and key in merged:
            continue
        merged[key] = value
    return merged


def _number(kind: Callable[[Any], Any]) -> Callable[[str, Any], Any]:
    def coerce(key: str, value: Any) -> Any:
        if isinstance(value, bool):
            raise ConfigError(f"'{key}' must be a number, got {value!r}.")
        if kind is int:
            if isinstance(value, float) and value.is_integer():
                return int(value)
            if not isinstance(value, int):
                raise ConfigError(f"'{key}' must be an integer, got {value!r}.")
            return value
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"'{key}' must be a number, got {value!r}.")
    return coerce


_float = _number(float)
_int = _number(int)


def _choice(key: str, value: Any, choices) -> str:
    if value not in choices:
        raise ConfigError(f"'{key}' must be one of {', '.join(choices)}, got {value!r}.")
    return value


def build_run_config(
    mode: Mode, flags: Dict[str, Any], file_values: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """Merges and validates every sub-config. Raises ConfigError before any computation."""
    values = merge_values(file_values, flags)
    unknown = sorted(set(values) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"Unknown setting(s): {', '.join(unknown)}.")
    if "mode" in values and values["mode"] != mode.value:
        raise ConfigError(f"Config file is for mode {values['mode']!r}, but {mode.value} was invoked.")

    def get(key: str, coerce, default):
        return coerce(key, values[key]) if key in values else default

    carrier_defaults = CarrierConfig()
    carrier = CarrierConfig(
        lam=get("lambda", _float, carrier_defaults.lam),
        x0=get("x0", _float, carrier_defaults.x0),
        niter=get("niter", _int, carrier_defaults.niter),
    )

    preset = _choice("preset", values.get("preset", "worksheet"), tuple(PRESETS))
    base_shape = PRESETS[preset]()
    shape_overrides = {
        field_name: _float(key, values[key]) for key, field_name in SHAPE_KEYS.items() if key in values
    }
    if "npoints" in values:
        shape_overrides["npoints"] = _int("npoints", values["npoints"])
    shape = replace(base_shape, **shape_overrides)

    rossler_defaults = RosslerParams()
    initial = values.get("initial", rossler_defaults.initial_state)
    if not isinstance(initial, (list, tuple)) or len(initial) != 3:
        raise ConfigError(f"'initial' must hold three numbers, got {initial!r}.")
    rossler = RosslerParams(
        c=get("c", _float, rossler_defaults.c),
        a=get("rossler_a", _float, rossler_defaults.a),
        b=get("rossler_b", _float, rossler_defaults.b),
        dt=get("dt", _float, rossler_defaults.dt),
        t_end=get("t_end", _float, rossler_defaults.t_end),
        transient=get("transient", _float, rossler_defaults.transient),
        initial_state=tuple(_float("initial", v) for v in initial),
    )

    output = OutputSpec(
        path=values.get("output"),
        format=_choice("format", values.get("format", "csv"), FORMATS),
        plane=_choice("plane", values.get("plane", "xy"), PLANES),
        polar=bool(values.get("polar", False)),
    )
    if output.format == "svg" and mode not in SVG_MODES:
        raise ConfigError(f"svg output is only available for synthesize and rossler, not {mode.value}.")

    period_defaults = PeriodSettings()
    period = PeriodSettings(
        transient=get("carrier_transient", _int, period_defaults.transient),
        max_period=get("max_period", _int, period_defaults.max_period),
        tol=get("tol", _float, period_defaults.tol),
    )
    scan_defaults = ScanSettings()
    scan = ScanSettings(
        lambda_min=get("lambda_min", _float, scan_defaults.lambda_min),
        lambda_max=get("lambda_max", _float, scan_defaults.lambda_max),
        steps=get("steps", _int, scan_defaults.steps),
    )
    exclusion = get("exclusion", _int, 5)

    try:
        check_carrier_config(carrier)
        check_shape_params(shape)
        check_rossler_params(rossler)
    except DomainError as e:
        raise ConfigError(str(e))
    if period.transient < 0 or period.max_period < 1 or not period.tol > 0:
        raise ConfigError("carrier_transient must be >= 0, max_period >= 1 and tol > 0.")
    if scan.steps < 2 or not (scan.lambda_min <= scan.lambda_max <= 4.0) or scan.lambda_min < 0:
        raise ConfigError("Bifurcation scan needs 0 <= lambda_min <= lambda_max <= 4 and steps >= 2.")
    if exclusion < 1:
        raise ConfigError(f"exclusion must be >= 1, got {exclusion}.")

    return RunConfig(
        mode=mode,
        carrier=carrier,
        shape=shape,
        rossler=rossler,
        output=output,
        period=period,
        scan=scan,
        exclusion=exclusion,
    )
