"""
Utility functions for the radial-angular lab.

Canonical serialization, config hashing and filesystem helpers.
Follows SRP: Each function has single, well-defined purpose.
"""

import hashlib
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from src.common.errors import DomainError


def _default_handler(o: Any) -> Any:
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "value") and hasattr(o, "name"):  # Enum
        return o.value
    if hasattr(o, "tolist"):  # numpy arrays and scalars
        return o.tolist()
    if hasattr(o, "__dict__"):
        return o.__dict__
    return str(o)


def safe_json_dumps(obj: Any, indent: int = 2) -> str:
    """JSON dumps with fallback for non-serializable objects (sorted keys)"""
    return json.dumps(obj, indent=indent, sort_keys=True, default=_default_handler)


def canonical_json(obj: Any) -> str:
    """Compact, key-sorted JSON used as hashing input"""
    return json.dumps(
        obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True, default=_default_handler
    )


def config_hash(obj: Any, length: int = 12) -> str:
    """Stable short hash of a configuration"""
    digest = hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
    return digest[:length]


def ensure_directory(path: str | Path) -> Path:
    """Ensure directory exists, create if not"""
    dir_path = Path(path)
    dir_path.mkdir(parents=True, exist_ok=True)
    return dir_path


def is_power_of_two(value: float) -> bool:
    """True for 2^k with integer k (negative k allowed)"""
    if value <= 0:
        return False
    mantissa, _ = math.frexp(value)
    return mantissa == 0.5


def log2_exact(value: float) -> int:
    """Exponent k of value = 2^k"""
    if not is_power_of_two(value):
        raise DomainError(f"{value} is not a power of two", field_name="lam")
    return math.frexp(value)[1] - 1
