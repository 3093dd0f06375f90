"""Loading cuspidal contexts and sigma from JSON configuration."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .classical import SigmaContext
from .cusp import CuspContext, CuspLine, CuspPoint, Paired, SelfDual
from .errors import ValidationError

DEFAULT_CONFIG: dict[str, Any] = {
    "lines": [{"name": "r", "deg": 1, "tilde": {"kind": "self_dual", "t0": 0}, "expo0": "0"}],
    "sigma": {"cuspred": []},
}


def _line(raw: dict) -> CuspLine:
    try:
        tilde = raw["tilde"]
        kind = tilde["kind"]
        if kind == "self_dual":
            tk: Union[SelfDual, Paired] = SelfDual(int(tilde["t0"]))
        elif kind == "paired":
            tk = Paired(str(tilde["partner"]), int(tilde["c"]))
        else:
            raise ValidationError(f"line {raw.get('name')!r}: unknown tilde kind {kind!r}")
        expo0 = raw.get("expo0")
        if expo0 is None:
            if not isinstance(tk, SelfDual):
                raise ValidationError(f"line {raw['name']!r}: paired lines need an explicit expo0")
            expo0 = Fraction(-tk.t0, 2)
        return CuspLine(str(raw["name"]), int(raw.get("deg", 1)), tk, Fraction(str(expo0)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"malformed line entry {raw!r}: {exc}") from None


def config_from_dict(data: dict) -> tuple[CuspContext, SigmaContext]:
    """Build and validate ``(ctx, sigma)`` from the JSON schema."""
    if not isinstance(data, dict) or "lines" not in data:
        raise ValidationError("configuration needs a 'lines' list")
    lines = [_line(raw) for raw in data["lines"]]
    names = [ln.name for ln in lines]
    if len(set(names)) != len(names):
        raise ValidationError(f"duplicate line names in {names}")
    ctx = CuspContext.of(*lines)
    try:
        pts = [CuspPoint(str(p["line"]), int(p["index"])) for p in data.get("sigma", {}).get("cuspred", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed cuspred entry: {exc}") from None
    return ctx, SigmaContext.build(ctx, pts, str(data.get("sigma", {}).get("name", "σ")))


def load_config(path: Union[str, Path, None] = None) -> tuple[CuspContext, SigmaContext]:
    if path is None:
        return config_from_dict(DEFAULT_CONFIG)
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return config_from_dict(data)


def single_line(t0: int = 0, cuspred: tuple[int, ...] = (), name: str = "r") -> tuple[CuspContext, SigmaContext]:
    """A one-line self-dual context with reducibility points at the given indices."""
    ctx = CuspContext.of(CuspLine.self_dual(name, t0))
    return ctx, SigmaContext.build(ctx, [CuspPoint(name, a) for a in cuspred])
