import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    # Valuation / scan defaults
    VALUATION_CAP = int(os.getenv('TBS_VALUATION_CAP', '64'))
    SCAN_WORKERS = int(os.getenv('TBS_SCAN_WORKERS', '1'))
    SCAN_SLICE_WIDTH = int(os.getenv('TBS_SCAN_SLICE_WIDTH', '25'))
    RECORD_FORMAT = os.getenv('TBS_RECORD_FORMAT', 'jsonl')

    # Wieferich sweep
    WIEFERICH_POWER = int(os.getenv('TBS_WIEFERICH_POWER', '2'))

    # HTTP API
    API_MAX_PRIME_LIMIT = int(os.getenv('TBS_API_MAX_PRIME_LIMIT', '200000'))

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING').upper()

    # Environment Configuration
    ENVIRONMENT = os.getenv('FLASK_ENV', 'development')  # default to development if not specified
