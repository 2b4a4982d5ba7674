"""Kernel configuration surface: named kernels, their parameter schemas, and
validation with parameter-level error messages."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from ..errors import InvalidSpec

KERNEL_NAMES = (
    "vertex_histogram",
    "edge_histogram",
    "shortest_path",
    "graphlet_sampling",
    "random_walk",
    "weisfeiler_lehman",
)


def _parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("true", "1", "yes", "on"):
            return True
        if lowered in ("false", "0", "no", "off"):
            return False
    raise ValueError(f"expected a boolean, got {value!r}")


def _parse_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return int(value.strip())
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ValueError(f"expected an integer, got {value!r}")


def _parse_float(value: Any) -> float:
    if isinstance(value, bool):
        raise ValueError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        return float(value.strip())
    raise ValueError(f"expected a number, got {value!r}")


def _parse_str(value: Any) -> str:
    if isinstance(value, str):
        return value
    raise ValueError(f"expected a string, got {value!r}")


@dataclass(frozen=True)
class Param:
    parse: Callable[[Any], Any]
    default: Any
    check: Callable[[Any], bool] = lambda _: True
    describe: str = ""


_SCHEMAS: dict[str, dict[str, Param]] = {
    "vertex_histogram": {},
    "edge_histogram": {},
    "shortest_path": {
        "with_labels": Param(_parse_bool, True),
    },
    "graphlet_sampling": {
        "k": Param(_parse_int, 5, lambda v: v in (3, 4, 5), "one of 3, 4, 5"),
        "n_samples": Param(_parse_int, 5000, lambda v: v > 0, "positive"),
        "exhaustive": Param(lambda v: None if v is None else _parse_bool(v), None),
    },
    "random_walk": {
        "lambda": Param(_parse_float, 0.1, lambda v: v > 0, "positive"),
        "match_labels": Param(_parse_bool, False),
    },
    "weisfeiler_lehman": {
        "h": Param(_parse_int, 5, lambda v: v >= 0, "non-negative"),
        "base": Param(
            _parse_str,
            "vertex_histogram",
            lambda v: v in KERNEL_NAMES and v != "weisfeiler_lehman",
            "a non-framework kernel name",
        ),
    },
}


@dataclass(frozen=True)
class KernelSpec:
    """Names a kernel and fixes every knob that influences its output.

    ``params`` follow the named kernel's schema; for the Weisfeiler-Lehman
    framework, parameters not consumed by the framework itself are forwarded
    to the base kernel's schema.
    """

    kernel_name: str
    params: Mapping[str, Any] = field(default_factory=dict)
    normalize: bool = False
    nystrom_components: int | None = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))


def _validate_against(name: str, params: Mapping[str, Any], allow_forward: bool) -> dict[str, Any]:
    schema = _SCHEMAS[name]
    out: dict[str, Any] = {}
    forwarded: dict[str, Any] = {}
    for key, value in params.items():
        if key not in schema:
            if allow_forward:
                forwarded[key] = value
                continue
            raise InvalidSpec(f"kernel '{name}': unknown parameter '{key}'")
        param = schema[key]
        try:
            parsed = param.parse(value)
        except (ValueError, TypeError) as e:
            raise InvalidSpec(f"kernel '{name}': parameter '{key}': {e}") from e
        if not param.check(parsed):
            hint = f" (must be {param.describe})" if param.describe else ""
            raise InvalidSpec(f"kernel '{name}': parameter '{key}'={parsed!r} invalid{hint}")
        out[key] = parsed
    for key, param in schema.items():
        out.setdefault(key, param.default)
    if allow_forward:
        out["_base_params"] = forwarded
    return out


def validate_spec(spec: KernelSpec) -> dict[str, Any]:
    """Normalized parameter dict (defaults filled, values cast and checked).

    For weisfeiler_lehman the result carries a nested ``_base_params`` dict
    validated against the base kernel's schema.
    """
    if spec.kernel_name not in _SCHEMAS:
        raise InvalidSpec(
            f"unknown kernel '{spec.kernel_name}'; expected one of {', '.join(KERNEL_NAMES)}"
        )
    if spec.nystrom_components is not None and spec.nystrom_components < 1:
        raise InvalidSpec(
            f"nystrom_components must be a positive integer, got {spec.nystrom_components}"
        )
    if not isinstance(spec.seed, int):
        raise InvalidSpec(f"seed must be an integer, got {spec.seed!r}")
    wl = spec.kernel_name == "weisfeiler_lehman"
    out = _validate_against(spec.kernel_name, spec.params, allow_forward=wl)
    if wl:
        base_params = out.pop("_base_params")
        out["base_params"] = _validate_against(out["base"], base_params, allow_forward=False)
    return out
