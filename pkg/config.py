from pathlib import Path
from pydantic_settings import BaseSettings
from dotenv import load_dotenv
import logging
import os

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent

class Settings(BaseSettings):
    order_cap: int = int(os.getenv('ORDER_CAP', '20000'))
    default_point: int = int(os.getenv('DEFAULT_POINT', '1'))
    log_level: str = os.getenv('LOG_LEVEL', 'INFO')
    groups_dir: str = os.getenv('GROUPS_DIR', str(BASE_DIR / 'groups'))
    scenarios_dir: str = os.getenv('SCENARIOS_DIR', str(BASE_DIR / 'scenarios'))
    schema_version: str = 'lattice-report/1'

settings = Settings()


# Logging setup shared by the CLI and the service
def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format='[%(levelname)s] %(name)s: %(message)s',
    )
