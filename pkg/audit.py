# Modules
from datetime import datetime
from pydantic import BaseModel
from check_result import CheckResult
from check_status import CheckStatus

# Audit
class CheckRecord(BaseModel):
    record_id: str
    timestamp: datetime

    # Request context
    group_name: str
    degree: int
    order: int
    point: int
    strategy: str

    # Verdict
    status: CheckStatus
    reason: str

    # Evidence
    results: list[CheckResult]
