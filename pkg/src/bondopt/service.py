"""HTTP campaign service exposing the ask-tell loop for lab operators.

Endpoints live under /v1 and exchange JSON whose field names mirror the
canonical key=value records (v1..v6, strength, cost, failure_mode,
visual_damage). Every mutation is persisted to the state directory before
it is acknowledged, so a restarted service resumes exactly where it
stopped; campaign mutations are serialized per campaign id.
"""

from __future__ import annotations

import argparse
import os
import threading
import uuid
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException

from .campaign import Campaign, CampaignSettings
from .domain import (
    Configuration,
    FailureMode,
    Outcome,
    format_configuration,
    parse_configuration,
)
from .errors import BudgetExhaustedError, DomainError, FormatError, StateError

_VAR_IDS = ("v1", "v2", "v3", "v4", "v5", "v6")


class CampaignStore:
    """Disk-backed registry of campaigns with one mutation lock per id."""

    def __init__(self, state_dir: Path):
        self.state_dir = Path(state_dir)
        self.state_dir.mkdir(parents=True, exist_ok=True)
        self._campaigns: dict[str, Campaign] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _path(self, campaign_id: str) -> Path:
        return self.state_dir / f"{campaign_id}.json"

    def create(self, settings: CampaignSettings) -> tuple[str, Campaign]:
        campaign_id = uuid.uuid4().hex
        campaign = Campaign.new(settings)
        with self._registry_lock:
            self._campaigns[campaign_id] = campaign
            self._locks[campaign_id] = threading.Lock()
        campaign.save(self._path(campaign_id))
        return campaign_id, campaign

    def lock(self, campaign_id: str) -> threading.Lock:
        with self._registry_lock:
            if campaign_id not in self._locks:
                self._locks[campaign_id] = threading.Lock()
            return self._locks[campaign_id]

    def get(self, campaign_id: str) -> Campaign:
        with self._registry_lock:
            if campaign_id in self._campaigns:
                return self._campaigns[campaign_id]
        path = self._path(campaign_id)
        if not path.exists():
            raise HTTPException(status_code=404, detail=f"unknown campaign {campaign_id}")
        campaign = Campaign.load(path)
        with self._registry_lock:
            self._campaigns[campaign_id] = campaign
        return campaign

    def persist(self, campaign_id: str) -> None:
        self._campaigns[campaign_id].save(self._path(campaign_id))


def _config_body(config: Configuration) -> dict:
    body = {k: v for k, v in zip(_VAR_IDS, config.values)}
    body["record"] = format_configuration(config)
    return body


def _parse_config(raw, campaign: Campaign) -> Configuration:
    try:
        if isinstance(raw, str):
            return parse_configuration(raw, campaign.settings.space)
        if isinstance(raw, dict):
            record = " ".join(f"{k}={raw[k]}" for k in _VAR_IDS if k in raw)
            return parse_configuration(record, campaign.settings.space)
    except (FormatError, DomainError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    raise HTTPException(status_code=422, detail="config must be a record string or a field object")


def _parse_outcomes(raw, r: int) -> list[Outcome]:
    if not isinstance(raw, list):
        raise HTTPException(status_code=422, detail="outcomes must be a list")
    if len(raw) != r:
        raise HTTPException(
            status_code=422, detail=f"expected exactly {r} outcome rows, got {len(raw)}"
        )
    outcomes = []
    for i, row in enumerate(raw):
        if not isinstance(row, dict):
            raise HTTPException(status_code=422, detail=f"outcome row {i} must be an object")
        try:
            strength = float(row["strength"])
            cost = float(row["cost"])
            mode = FailureMode(str(row["failure_mode"]).strip().lower())
            damage = row["visual_damage"]
            if isinstance(damage, str):
                damage = damage.strip().lower() in ("true", "1", "yes")
            outcomes.append(
                Outcome(strength=strength, cost=cost, failure_mode=mode, visual_damage=bool(damage))
            )
        except KeyError as exc:
            raise HTTPException(status_code=422, detail=f"outcome row {i} missing field {exc}") from None
        except ValueError:
            valid = ", ".join(m.value for m in FailureMode)
            raise HTTPException(
                status_code=422,
                detail=f"outcome row {i} invalid; failure_mode must be one of: {valid}",
            ) from None
    return outcomes


def _phase(campaign: Campaign) -> str:
    if campaign.remaining_design:
        return "design"
    if campaign.iteration >= campaign.settings.iterations and campaign.pending is None:
        return "exhausted"
    return "optimizing"


def create_app(state_dir, ui_dir=None) -> FastAPI:
    app = FastAPI(title="bondopt campaign service")
    store = CampaignStore(Path(state_dir))
    app.state.store = store

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/campaigns", status_code=201)
    def create_campaign(body: dict = Body(default={})):
        init_size = body.get("init_size", 20)
        budget = body.get("budget", 60)
        replications = body.get("replications", 5)
        seed = body.get("seed", 0)
        try:
            if not isinstance(init_size, int) or not isinstance(budget, int):
                raise DomainError("init_size and budget must be integers")
            if budget < init_size:
                raise DomainError(f"budget ({budget}) must be at least init_size ({init_size})")
            settings = CampaignSettings(
                init_size=init_size,
                iterations=budget - init_size,
                replications=int(replications),
                seed=int(seed),
            )
        except (DomainError, TypeError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        campaign_id, campaign = store.create(settings)
        return {
            "id": campaign_id,
            "replications": campaign.settings.replications,
            "budget": campaign.settings.budget,
            "design": [_config_body(c) for c in campaign.remaining_design],
        }

    @app.get("/v1/campaigns/{campaign_id}")
    def campaign_view(campaign_id: str):
        campaign = store.get(campaign_id)
        return {
            "id": campaign_id,
            "phase": _phase(campaign),
            "replications": campaign.settings.replications,
            "budget": campaign.settings.budget,
            "told": len(campaign.observations),
            "iteration": campaign.iteration,
            "remaining_design": [_config_body(c) for c in campaign.remaining_design],
            "has_pending": campaign.pending is not None,
        }

    @app.get("/v1/campaigns/{campaign_id}/suggestion")
    def suggestion(campaign_id: str):
        campaign = store.get(campaign_id)
        with store.lock(campaign_id):
            try:
                config = campaign.suggest()
            except BudgetExhaustedError as exc:
                raise HTTPException(status_code=410, detail=str(exc)) from None
            except StateError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from None
            store.persist(campaign_id)
        return {
            "iteration": campaign.iteration + 1,
            "config": _config_body(config),
        }

    @app.post("/v1/campaigns/{campaign_id}/observations")
    def observations(campaign_id: str, body: dict = Body(...)):
        campaign = store.get(campaign_id)
        if "config" not in body:
            raise HTTPException(status_code=422, detail="body must include a config")
        config = _parse_config(body["config"], campaign)
        outcomes = _parse_outcomes(body.get("outcomes"), campaign.settings.replications)
        with store.lock(campaign_id):
            try:
                obs = campaign.tell(config, outcomes)
            except DomainError as exc:
                # wrong replication counts are caught above; here the config
                # does not match the pending suggestion or an untold point
                raise HTTPException(status_code=409, detail=str(exc)) from None
            store.persist(campaign_id)
        return {
            "pf": obs.pf,
            "majority_feasible": obs.majority_feasible,
            "strength_mean": -obs.mean_objectives.neg_ts,
            "cost_mean": obs.mean_objectives.pc,
            "told": len(campaign.observations),
            "phase": _phase(campaign),
        }

    @app.get("/v1/campaigns/{campaign_id}/front")
    def front(campaign_id: str):
        campaign = store.get(campaign_id)
        report = campaign.current_front()
        return {
            "hv": report.hv,
            "reference": {"cost": report.reference.pc, "strength": -report.reference.neg_ts},
            "points": [
                {
                    "config": _config_body(p.config),
                    "cost_mean": p.cost_mean,
                    "strength_mean": p.strength_mean,
                    "neg_ts_mean": p.objectives.neg_ts,
                    "pc_mean": p.objectives.pc,
                    "pf": p.pf,
                }
                for p in report.points
            ],
        }

    @app.get("/v1/campaigns/{campaign_id}/history")
    def history(campaign_id: str):
        campaign = store.get(campaign_id)
        hv = campaign.hv_history()
        return {"hv": hv, "evaluations": len(hv)}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def main(argv=None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="bondopt-service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument(
        "--state-dir",
        default=os.environ.get("BONDOPT_STATE_DIR", "./campaign-state"),
        help="directory for persisted campaign documents",
    )
    parser.add_argument(
        "--ui-dir",
        default=os.environ.get("BONDOPT_UI_DIR"),
        help="optional directory of built web-UI assets to serve at /",
    )
    args = parser.parse_args(argv)
    uvicorn.run(create_app(args.state_dir, ui_dir=args.ui_dir), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
