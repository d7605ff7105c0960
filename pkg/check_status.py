# Module
from enum import Enum

# Check status
class CheckStatus(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    NOT_APPLICABLE = 'not_applicable'
