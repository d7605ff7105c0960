# Modules
import logging
from datetime import datetime, timezone
from uuid import uuid4
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel
from audit import CheckRecord
from check_status import CheckStatus
from checks import Property, overall_status, run_checks
from config import configure_logging, settings
from errors import LatticeToolError
from expr_parser import run_scenario
from interval import Strategy
from perm import close, parse_group_text
from sample_data import SAMPLE_GROUPS

configure_logging()
logger = logging.getLogger(__name__)

app = FastAPI()

# In-memory audit store
audit_store: dict[str, CheckRecord] = {}


def persist_check_record(record: CheckRecord):
    audit_store[record.record_id] = record
    logger.info('[AUDIT] Stored record %s: %s', record.record_id, record.status.value)


class CheckRequest(BaseModel):
    group_text: str
    name: str = ''
    properties: list[Property] = []
    point: int = settings.default_point
    strategy: Strategy = Strategy.AUTO
    cap: int | None = None
    exhaustive: bool = False


class ScenarioRequest(BaseModel):
    scenario: str


@app.get('/health')
def health_check():
    """Health check endpoint"""
    return {
        'status': 'healthy',
        'service': 'Group Lattice Toolkit',
        'version': '1.0.0',
    }


@app.get('/samples')
def list_samples():
    """The shipped group corpus"""
    return {'samples': [sample.model_dump() for sample in SAMPLE_GROUPS]}


@app.post('/check')
def check_group(request: CheckRequest):
    try:
        G = close(parse_group_text(request.group_text, name=request.name), cap=request.cap)
        results = run_checks(
            G,
            request.point,
            request.properties or None,
            request.strategy,
            request.cap,
            request.exhaustive,
        )
    except LatticeToolError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc

    status = overall_status(results)
    failed = [r.property for r in results if r.status == CheckStatus.FAIL]
    record = CheckRecord(
        record_id=str(uuid4()),
        timestamp=datetime.now(timezone.utc),
        group_name=request.name,
        degree=G.degree,
        order=G.order,
        point=request.point,
        strategy=request.strategy.value,
        status=status,
        reason=f"failed: {', '.join(failed)}" if failed else 'no property failed',
        results=results,
    )
    persist_check_record(record)
    return record


@app.post('/ratfunc/verify')
def verify_scenario(request: ScenarioRequest):
    try:
        result = run_scenario(request.scenario)
    except LatticeToolError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return {'passed': result.passed, 'lines': result.lines}


@app.get('/audit/{record_id}')
def get_check_record(record_id: str):
    """Retrieve a specific check record by ID"""
    if record_id in audit_store:
        return audit_store[record_id]
    raise HTTPException(status_code=404, detail='Check record not found')


@app.get('/audit')
def list_check_records():
    """List all check records"""
    return {
        'total_records': len(audit_store),
        'records': list(audit_store.values()),
    }
