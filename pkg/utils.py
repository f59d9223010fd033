import json
from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Iterable

import numpy as np


def serializer(val):
    if isinstance(val, np.ndarray):
        return val.tolist()
    if isinstance(val, np.generic):
        return val.item()
    if isinstance(val, Enum):
        return val.value
    if isinstance(val, (tuple, list)):
        return [serializer(v) for v in val]
    if isinstance(val, dict):
        return {k: serializer(v) for k, v in val.items()}
    return val


def convert_to_dict(obj) -> dict:
    if is_dataclass(obj):
        return serializer(asdict(obj))
    raise TypeError(f"Object of type {type(obj)} is not serializable to JSON")


def convert_to_json(obj) -> str:
    return json.dumps(convert_to_dict(obj), default=serializer, ensure_ascii=False)


def format_number(value: float) -> str:
    # 17 значащих цифр достаточно для точного восстановления double
    return '%.17g' % value


def format_row(values: Iterable[float]) -> str:
    return ' '.join(format_number(v) for v in values)


def format_matrix(A) -> str:
    return '\n'.join(format_row(row) for row in np.atleast_2d(np.asarray(A, dtype=float)))
