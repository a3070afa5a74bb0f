"""HTTP evaluation API backing the interactive scenario explorer.

Every response is a deterministic function of the request body evaluated
against an immutable snapshot of the loaded configuration; there is no
cross-request state. Model validation failures map to 400 with field-level
diagnostics, dimensioning infeasibility to 400 naming the constraint, and
valid model inputs never produce a 5xx.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Any, Mapping, Optional

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .access import GponCapacityError
from .config import (
    RunConfig,
    factors_from_mapping,
    flags_from_mapping,
    config_to_mapping,
    default_config,
    parse_scenario,
)
from .errors import ConfigError
from .peakstats import ParameterDomainError
from .scenario import (
    CacheVariant,
    EnergyReport,
    HomeCacheDevice,
    OltCacheDevice,
    Scenario,
    evaluate,
    evaluate_dtt_variant,
    evaluate_olt_cache_variant,
)

__all__ = ["create_app"]


def _error_response(status: int, message: str, field: Optional[str] = None) -> JSONResponse:
    body: dict[str, Any] = {"error": {"message": message}}
    if field is not None:
        body["error"]["field"] = field
    return JSONResponse(status_code=status, content=body)


def _resolve_scenario(config: RunConfig, ref: Any, path: str) -> Scenario:
    if isinstance(ref, str):
        return config.scenario(ref)
    if isinstance(ref, Mapping):
        if set(ref) == {"name"}:
            return config.scenario(str(ref["name"]))
        return parse_scenario(ref, path=path)
    raise ConfigError("expected a scenario name or mapping", field=path)


def _parse_variant(ref: Any, path: str) -> Optional[tuple[str, CacheVariant]]:
    if ref is None:
        return None
    if not isinstance(ref, Mapping):
        raise ConfigError("expected a variant mapping", field=path)
    allowed = {"kind", "ott_reduction", "home_cache", "olt_cache"}
    unknown = set(ref) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) {sorted(unknown)}", field=path)
    kind = ref.get("kind", "home-cache")
    if kind not in ("home-cache", "olt-cache"):
        raise ConfigError(f"unknown variant kind {kind!r}", field=f"{path}.kind")
    home = HomeCacheDevice()
    if isinstance(ref.get("home_cache"), Mapping):
        raw = ref["home_cache"]
        home = HomeCacheDevice(
            standby_w=float(raw.get("standby_w", home.standby_w)),
            active_w=float(raw.get("active_w", home.active_w)),
            active_hours=float(raw.get("active_hours", home.active_hours)),
        )
    olt = OltCacheDevice()
    if isinstance(ref.get("olt_cache"), Mapping):
        raw = ref["olt_cache"]
        olt = OltCacheDevice(
            device_w=float(raw.get("device_w", olt.device_w)),
            subscribers_per_olt=int(raw.get("subscribers_per_olt", olt.subscribers_per_olt)),
        )
    variant = CacheVariant(
        ott_reduction=float(ref.get("ott_reduction", 0.25)), home_cache=home, olt_cache=olt
    )
    return kind, variant


def _model_kwargs(config: RunConfig, payload: Mapping[str, Any], path: str) -> dict[str, Any]:
    """Snapshot model inputs with the request's factor/flag overrides applied."""
    kwargs = config.model_kwargs()
    if payload.get("factors") is not None:
        raw = payload["factors"]
        if not isinstance(raw, Mapping):
            raise ConfigError("expected a factors mapping", field=f"{path}.factors")
        kwargs["factors"] = factors_from_mapping(raw, path=f"{path}.factors")
    if payload.get("flags") is not None:
        raw = payload["flags"]
        if not isinstance(raw, Mapping):
            raise ConfigError("expected a flags mapping", field=f"{path}.flags")
        kwargs["flags"] = flags_from_mapping(raw, path=f"{path}.flags")
    if payload.get("dynamic_power") is not None:
        kwargs["flags"] = replace(kwargs["flags"], dynamic_power=bool(payload["dynamic_power"]))
    return kwargs


def _evaluate_request(config: RunConfig, payload: Mapping[str, Any], path: str) -> EnergyReport:
    scenario = _resolve_scenario(config, payload.get("scenario"), f"{path}.scenario")
    parsed = _parse_variant(payload.get("variant"), f"{path}.variant")
    kwargs = _model_kwargs(config, payload, path)
    if parsed is None:
        return evaluate(scenario, **kwargs)
    kind, variant = parsed
    territory = kwargs.pop("territory")
    if kind == "olt-cache":
        return evaluate_olt_cache_variant(scenario, variant, territory=territory, **kwargs)
    return evaluate_dtt_variant(scenario, variant, territory=territory, **kwargs)


def create_app(config: Optional[RunConfig] = None, static_dir: Optional[str] = None) -> FastAPI:
    """Build the API app around an immutable configuration snapshot."""
    snapshot = config if config is not None else default_config()
    app = FastAPI(title="netenergy", docs_url=None, redoc_url=None)

    @app.exception_handler(ConfigError)
    async def _config_error(_, exc: ConfigError) -> JSONResponse:
        return _error_response(400, exc.reason, exc.field)

    @app.exception_handler(ParameterDomainError)
    async def _domain_error(_, exc: ParameterDomainError) -> JSONResponse:
        return _error_response(400, str(exc))

    @app.exception_handler(GponCapacityError)
    async def _infeasible(_, exc: GponCapacityError) -> JSONResponse:
        return _error_response(400, str(exc), field="gpon_capacity")

    @app.get("/health")
    async def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/defaults")
    async def defaults() -> dict[str, Any]:
        return config_to_mapping(snapshot)

    @app.post("/evaluate")
    async def evaluate_endpoint(payload: dict = Body(...)) -> dict[str, Any]:
        report = _evaluate_request(snapshot, payload, "evaluate")
        if payload.get("baseline") is not None:
            base = _resolve_scenario(snapshot, payload["baseline"], "evaluate.baseline")
            # the reference runs under the same factor/flag overrides
            base_report = evaluate(base, **_model_kwargs(snapshot, payload, "evaluate"))
            report = report.with_baseline(base_report)
        return report.to_mapping()

    @app.post("/compare")
    async def compare_endpoint(payload: dict = Body(...)) -> dict[str, Any]:
        if "a" not in payload or "b" not in payload:
            raise ConfigError("compare needs scenarios 'a' and 'b'", field="compare")
        rep_a = _evaluate_request(snapshot, payload["a"], "compare.a")
        rep_b = _evaluate_request(snapshot, payload["b"], "compare.b")
        delta = rep_b.total_gwh - rep_a.total_gwh
        segments = {}
        for name in sorted(set(rep_a.segments) | set(rep_b.segments)):
            in_a = rep_a.segments.get(name)
            in_b = rep_b.segments.get(name)
            segments[name] = {
                "a_gwh": in_a.energy_gwh if in_a else 0.0,
                "b_gwh": in_b.energy_gwh if in_b else 0.0,
                "delta_gwh": (in_b.energy_gwh if in_b else 0.0) - (in_a.energy_gwh if in_a else 0.0),
            }
        return {
            "a": rep_a.to_mapping(),
            "b": rep_b.to_mapping(),
            "delta_gwh": delta,
            "delta_pct": 100.0 * delta / rep_a.total_gwh if rep_a.total_gwh else None,
            "segments": segments,
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
