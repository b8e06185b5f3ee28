import json
import datetime
from collections import Counter
from pathlib import Path

from . import config

class DetailedLogger:
    """
    Run logger shared by every module of one command invocation.
    Entries go to log/{command}/{run}/run_main.jsonl, one JSON object per line,
    and a one-line summary goes to the console.
    Entry types: INFO, CHECK_PASS, CHECK_FAIL, CACHE_HIT, CACHE_WRITE, ERROR.
    """
    _instance = None

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super(DetailedLogger, cls).__new__(cls)
        return cls._instance

    def __init__(self, command_name: str, run_name: str):
        if getattr(self, 'run_key', None) == (command_name, run_name):
            return

        self.run_key = (command_name, run_name)
        self.command_name = command_name
        self.counts = Counter()

        self.log_dir = Path(config.LOG_DIR) / command_name / run_name
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.log_file_main = self.log_dir / "run_main.jsonl"

        print(f"Logger initialized for '{command_name}'. Logs will be saved in: {self.log_dir}")

    @classmethod
    def reset(cls):
        """Drops the shared instance so the next command starts a fresh run log."""
        cls._instance = None

    def log(self, message_type: str, data: dict):
        """
        Args:
            message_type (str): One of the entry types above.
            data (dict): Entry payload. Its 'summary' key is what the console shows.
        """
        self.counts[message_type] += 1
        summary = data.get('summary', str(data))
        print(f"LOG [{self.command_name.upper()}|{message_type}]: {summary}")

        entry = {"timestamp": datetime.datetime.now().isoformat(), "type": message_type, "data": data}
        try:
            with open(self.log_file_main, "a", encoding='utf-8') as f:
                f.write(json.dumps(entry, default=str) + "\n")
        except OSError as e:
            print(f"CRITICAL: Failed to write to log file {self.log_file_main}: {e}")

    def tally(self) -> str:
        """Entry counts of this run, e.g. 'CHECK_PASS=12 CHECK_FAIL=1'."""
        return " ".join(f"{kind}={count}" for kind, count in sorted(self.counts.items()))
