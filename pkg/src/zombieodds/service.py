"""HTTP advice service.

Stateless decision support over one shared solver and decision table:
the same engine the CLI uses, so answers match command output exactly.

Endpoints:
    POST /api/advise          AdviceRequest JSON -> Advice JSON
    GET  /api/table           decision table (optionally one shotgun column)
    GET  /api/state/validate  conservation check for query-string state
    GET  /api/health          version, table checksum, row count
"""

from __future__ import annotations

import math
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .model import (
    ColorCounts,
    InvalidStateError,
    TurnState,
    UnknownPolicyError,
    fraction_str,
    validate_turn_state,
)
from .report import table_json_records
from .rolls import brain_dist, expected_brains_next, round_end_prob, shotgun_dist
from .solver import SolverMode, TurnSolver, canonical_completion, table_checksum
from .strategy import Advice, GameContext, advise, advise_params, parse_policy
from .verify import run_verification


class ColorTriple(BaseModel):
    red: int = Field(ge=0)
    yellow: int = Field(ge=0)
    green: int = Field(ge=0)

    def counts(self) -> ColorCounts:
        return ColorCounts(green=self.green, yellow=self.yellow, red=self.red)

    @classmethod
    def of(cls, c: ColorCounts) -> "ColorTriple":
        return cls(red=c.red, yellow=c.yellow, green=c.green)


class ContextModel(BaseModel):
    own_score: int = Field(ge=0, default=0)
    opponent_scores: list[int] = Field(default_factory=list)
    position: int = Field(ge=0, default=0)

    def context(self) -> GameContext:
        return GameContext(
            own_score=self.own_score,
            opponent_scores=tuple(self.opponent_scores),
            position=self.position,
        )


class AsidesModel(BaseModel):
    brains: ColorTriple
    shotguns: ColorTriple


class AdviceRequest(BaseModel):
    cup: ColorTriple
    footprints: ColorTriple
    shotguns: int = Field(ge=0, le=2)
    brains: int = Field(ge=0)
    policy: str = "table"
    context: ContextModel | None = None
    asides: AsidesModel | None = None


def _advice_json(advice: Advice, state_echo: dict) -> dict:
    pe = advice.bust_probability
    threshold = advice.threshold_used
    return {
        "verdict": advice.verdict,
        "threshold": None if math.isinf(threshold) else int(threshold),
        "bust_probability": {
            "fraction": fraction_str(pe) if hasattr(pe, "numerator") else None,
            "decimal": float(pe),
        },
        "expected_value_of_continuing": advice.expected_value_of_continuing,
        "rationale": advice.rationale,
        "state": state_echo,
    }


def _state_echo(state: TurnState, assumed: bool) -> dict:
    return {
        "cup": ColorTriple.of(state.cup).model_dump(),
        "footprints": ColorTriple.of(state.footprints).model_dump(),
        "aside_brains": ColorTriple.of(state.aside_brains).model_dump(),
        "aside_shotguns": ColorTriple.of(state.aside_shotguns).model_dump(),
        "shotguns": state.shotguns,
        "brains_banked": state.brains_banked,
        "asides_assumed": assumed,
    }


def create_app(solver: TurnSolver | None = None,
               frontend_dir: str | Path | None = None) -> FastAPI:
    solver = solver or TurnSolver()
    app = FastAPI(title="zombieodds advice service", version=__version__)

    rows = solver.generate_table(SolverMode.RECURSIVE)
    checksum = table_checksum(rows)
    records = table_json_records(rows)

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"violations": [str(e) for e in exc.errors()]},
        )

    @app.exception_handler(InvalidStateError)
    async def invalid_state(request: Request, exc: InvalidStateError):
        return JSONResponse(
            status_code=400, content={"violations": str(exc).split("; ")}
        )

    @app.exception_handler(UnknownPolicyError)
    async def unknown_policy(request: Request, exc: UnknownPolicyError):
        return JSONResponse(status_code=422, content={"violations": [str(exc)]})

    @app.post("/api/advise")
    async def api_advise(req: AdviceRequest):
        policy = parse_policy(req.policy)
        ctx = req.context.context() if req.context else None
        cup = req.cup.counts()
        fp = req.footprints.counts()
        if req.asides is not None:
            state = TurnState(
                cup=cup,
                footprints=fp,
                aside_brains=req.asides.brains.counts(),
                aside_shotguns=req.asides.shotguns.counts(),
                shotguns=req.shotguns,
                brains_banked=req.brains,
            )
            advice = advise(policy, state, ctx, solver)
            return _advice_json(advice, _state_echo(state, assumed=False))
        advice = advise_params(policy, cup, fp, req.shotguns, req.brains, ctx, solver)
        try:
            echo_state = canonical_completion(
                cup, fp, req.shotguns, brains_banked=req.brains
            )
        except InvalidStateError:
            # fewer dice outside than shotguns: echo the raw parameters
            echo_state = TurnState(
                cup=cup, footprints=fp, shotguns=req.shotguns,
                brains_banked=req.brains,
            )
        return _advice_json(advice, _state_echo(echo_state, assumed=True))

    @app.get("/api/table")
    async def api_table(shotguns: int | None = Query(default=None, ge=0, le=2)):
        if shotguns is None:
            return {"count": len(records), "checksum": checksum, "rows": records}
        col = f"decision_sg{shotguns}"
        slim = [
            {k: r[k] for k in ("r_cup", "y_cup", "g_cup", "r_fp", "y_fp", "g_fp")}
            | {"decision": r[col]}
            for r in records
        ]
        return {"count": len(slim), "shotguns": shotguns, "rows": slim}

    @app.get("/api/state/validate")
    async def api_validate(
        r_cup: int = 3, y_cup: int = 4, g_cup: int = 6,
        r_fp: int = 0, y_fp: int = 0, g_fp: int = 0,
        shotguns: int = 0, brains: int = 0,
        r_ab: int | None = None, y_ab: int | None = None, g_ab: int | None = None,
        r_as: int | None = None, y_as: int | None = None, g_as: int | None = None,
    ):
        cup = ColorCounts(green=g_cup, yellow=y_cup, red=r_cup)
        fp = ColorCounts(green=g_fp, yellow=y_fp, red=r_fp)
        explicit = None not in (r_ab, y_ab, g_ab, r_as, y_as, g_as)
        if explicit:
            state = TurnState(
                cup=cup, footprints=fp,
                aside_brains=ColorCounts(green=g_ab, yellow=y_ab, red=r_ab),
                aside_shotguns=ColorCounts(green=g_as, yellow=y_as, red=r_as),
                shotguns=shotguns, brains_banked=brains,
            )
        else:
            try:
                state = canonical_completion(cup, fp, shotguns, brains_banked=brains)
            except InvalidStateError as exc:
                return {"valid": False, "violations": [str(exc)]}
        violations = validate_turn_state(state)
        return {
            "valid": not violations,
            "violations": violations,
            "state": _state_echo(state, assumed=not explicit),
        }

    @app.get("/api/prob")
    async def api_prob(
        r_cup: int = 3, y_cup: int = 4, g_cup: int = 6,
        r_fp: int = 0, y_fp: int = 0, g_fp: int = 0,
    ):
        cup = ColorCounts(green=g_cup, yellow=y_cup, red=r_cup)
        fp = ColorCounts(green=g_fp, yellow=y_fp, red=r_fp)
        bd = brain_dist(cup, fp)
        sd = shotgun_dist(cup, fp)
        return {
            "brains": [
                {"fraction": fraction_str(p), "decimal": float(p)}
                for p in bd.probabilities
            ],
            "shotguns": [
                {"fraction": fraction_str(p), "decimal": float(p)}
                for p in sd.probabilities
            ],
            "round_end": [
                {
                    "fraction": fraction_str(round_end_prob(cup, fp, s)),
                    "decimal": float(round_end_prob(cup, fp, s)),
                }
                for s in (0, 1, 2)
            ],
            "expected_brains_next": {
                "fraction": fraction_str(expected_brains_next(cup, fp)),
                "decimal": float(expected_brains_next(cup, fp)),
            },
        }

    @app.get("/api/health")
    async def api_health():
        return {
            "status": "ok",
            "version": __version__,
            "table_rows": len(records),
            "table_checksum": checksum,
        }

    @app.get("/api/verify")
    async def api_verify():
        report = run_verification(solver)
        return {
            "passed": report.passed,
            "checks": [
                {
                    "id": c.check_id,
                    "expected": c.expected,
                    "computed": c.computed,
                    "passed": c.passed,
                    "note": c.note,
                }
                for c in report.checks
            ],
        }

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True))

    return app
