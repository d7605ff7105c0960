# Modules
from pydantic import BaseModel
from check_status import CheckStatus

# Check result
class CheckResult(BaseModel):
    property: str
    status: CheckStatus
    reason: str
    details: dict = {}
