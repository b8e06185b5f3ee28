import json
import hashlib
from pathlib import Path
from typing import Any, Optional, Union

PathLike = Union[str, Path]

def load_json_file(filepath: PathLike, entity_name: str = "JSON file") -> Optional[Any]:
    """Reads a JSON document; prints the reason and returns None when it cannot."""
    path = Path(filepath)
    if not path.is_file():
        print(f"ERROR: No {entity_name} at {path}")
        return None
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        print(f"ERROR: {entity_name} at {path} is not valid JSON (line {e.lineno}, col {e.colno}): {e.msg}")
    except OSError as e:
        print(f"ERROR: Could not read {entity_name} at {path}: {e}")
    return None

def save_json_file(filepath: PathLike, data: Any, entity_name: str = "JSON file") -> bool:
    """Writes a report or cache entry. Keys are sorted so identical data gives identical bytes."""
    path = Path(filepath)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, indent=4, sort_keys=True) + "\n", encoding='utf-8')
    except (OSError, TypeError) as e:
        print(f"ERROR: Could not write {entity_name} to {path}: {e}")
        return False
    return True

def canonical_json(data: Any) -> str:
    """Compact, key-sorted JSON used for hashing requests."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))

def request_hash(data: Any) -> str:
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
