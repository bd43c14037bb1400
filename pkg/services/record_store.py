"""Persistence for scan records: JSONL, CSV and the JSONL checkpoint footer."""
import csv
import json
import logging
import os
from pathlib import Path

from models.scan import RECORD_FORMATS, ScanRecord
from services.errors import DomainError, RecordIOError

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    'a', 'b', 'c', 'n', 'case', 'valuation', 'predicted_bound', 'basis',
    'anomaly', 'exact_violation', 'exceptional', 'extracted_gcd',
]
PROGRESS_KEY = 'progress'


def _require_format(fmt):
    if fmt not in RECORD_FORMATS:
        raise DomainError(f"record format must be one of {RECORD_FORMATS}, got {fmt!r}")


def _jsonl_line(record):
    return json.dumps(record.to_row()) + '\n'


def _csv_row(record):
    row = {key: '' for key in CSV_COLUMNS}
    for key, value in record.to_row().items():
        row[key] = str(value).lower() if isinstance(value, bool) else value
    return row


def write_records(records, fmt, path):
    """Write records to `path`, returning the count written."""
    _require_format(fmt)
    path = Path(path)
    count = 0
    try:
        if fmt == 'jsonl':
            with open(path, 'w', encoding='utf-8', newline='\n') as fh:
                for record in records:
                    fh.write(_jsonl_line(record))
                    count += 1
        else:
            with open(path, 'w', encoding='utf-8', newline='') as fh:
                writer = None
                for record in records:
                    if writer is None:
                        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
                        writer.writeheader()
                    writer.writerow(_csv_row(record))
                    count += 1
    except OSError as e:
        logger.error(f"Error writing records to {path}: {str(e)}")
        raise RecordIOError(f"could not write records: {e}", path, count) from e
    logger.info(f"Wrote {count} {fmt} records to {path}")
    return count


def _parse_jsonl(fh, path):
    """(records, progress) from a binary JSONL stream; any bad line is a RecordIOError."""
    records, progress = [], None
    for index, raw in enumerate(fh):
        where = f"line {index + 1}"
        try:
            line = raw.decode('utf-8')
        except UnicodeDecodeError as e:
            raise RecordIOError(f"invalid UTF-8 on {where}: {e}", path, len(records)) from e
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordIOError(f"malformed JSON on {where}: {e}", path, len(records)) from e
        if not isinstance(obj, dict):
            raise RecordIOError(f"expected a JSON object on {where}, got {type(obj).__name__}", path, len(records))
        if PROGRESS_KEY in obj:
            progress = obj[PROGRESS_KEY]
            if not isinstance(progress, dict) or not isinstance(progress.get('n'), int):
                raise RecordIOError(f"malformed progress footer on {where}", path, len(records))
            continue
        try:
            records.append(ScanRecord.from_row(obj))
        except DomainError as e:
            raise RecordIOError(f"bad record on {where}: {e}", path, len(records)) from e
    return records, progress


def _parse_csv(fh, path):
    records = []
    try:
        for row in csv.DictReader(fh):
            records.append(ScanRecord.from_row(row))
    except (DomainError, csv.Error) as e:
        raise RecordIOError(f"bad CSV row {len(records) + 1}: {e}", path, len(records)) from e
    return records


def read_records(path, fmt='jsonl'):
    _require_format(fmt)
    path = Path(path)
    try:
        if fmt == 'jsonl':
            with open(path, 'rb') as fh:
                return _parse_jsonl(fh, path)[0]
        with open(path, encoding='utf-8', newline='') as fh:
            return _parse_csv(fh, path)
    except UnicodeDecodeError as e:
        logger.error(f"Error decoding records from {path}: {str(e)}")
        raise RecordIOError(f"invalid UTF-8: {e}", path) from e
    except OSError as e:
        if isinstance(e, RecordIOError):
            logger.error(f"Corrupt records file {path}: {str(e)}")
            raise
        logger.error(f"Error reading records from {path}: {str(e)}")
        raise RecordIOError(f"could not read records: {e}", path) from e


class ScanCheckpoint:
    """JSONL output that is valid after every completed n-slice.

    The file holds the records written so far followed by one footer line
    {"progress": {"n": ..., "a": ..., "scan": {...}}}. A commit cuts the old
    footer off, appends the new slice and writes a fresh footer; `scan`
    fingerprints the sweep settings so a resume cannot mix two sweeps.
    """

    def __init__(self, path, scan=None):
        self.path = Path(path)
        self.scan = scan
        self.written = 0
        self._footer_offset = 0

    def load(self):
        """(records, progress) already on disk; ([], None) when there is no file."""
        if not self.path.exists():
            return [], None
        try:
            with open(self.path, 'rb') as fh:
                records, progress = _parse_jsonl(fh, self.path)
        except RecordIOError:
            logger.error(f"Checkpoint {self.path} is corrupt")
            raise
        except OSError as e:
            raise RecordIOError(f"could not read checkpoint: {e}", self.path) from e
        if progress is None and records:
            raise DomainError(f"{self.path} has records but no progress footer; refusing to resume")
        return records, progress

    def start(self, records=()):
        """Rewrite the file with `records` and no footer."""
        body = ''.join(_jsonl_line(record) for record in records).encode('utf-8')
        try:
            with open(self.path, 'wb') as fh:
                fh.write(body)
                fh.flush()
                os.fsync(fh.fileno())
                self._footer_offset = fh.tell()
        except OSError as e:
            raise RecordIOError(f"could not start checkpoint: {e}", self.path, 0) from e
        self.written = len(records)

    def commit(self, records, n, a):
        body = ''.join(_jsonl_line(record) for record in records).encode('utf-8')
        progress = {'n': n, 'a': a}
        if self.scan is not None:
            progress['scan'] = self.scan
        footer = (json.dumps({PROGRESS_KEY: progress}) + '\n').encode('utf-8')
        try:
            with open(self.path, 'r+b') as fh:
                fh.seek(self._footer_offset)
                fh.truncate()
                fh.write(body)
                offset = fh.tell()
                fh.write(footer)
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as e:
            logger.error(f"Checkpoint write failed at n={n}: {str(e)}")
            raise RecordIOError(f"could not write checkpoint: {e}", self.path, self.written) from e
        self._footer_offset = offset
        self.written += len(records)
        logger.info(f"Checkpoint n={n} a={a}: {self.written} records in {self.path}")
