"""Файл матрицы: JSON-объект {"n": int, "data": [[...], ...], "use_j": bool, "use_delta": bool}."""
import json
from typing import List

import numpy as np
from pydantic import BaseModel, ValidationError, validator

from core.linalg import RealMatrix, SpdPoint, check_spd
from errors import DimensionMismatch, ParseError
from geometry.isometry import IsometrySpec


class MatrixFile(BaseModel):
    n: int
    data: List[List[float]]
    use_j: bool = False
    use_delta: bool = False

    @validator('n')
    def order_at_least_two(cls, v):
        if v < 2:
            raise ValueError(f'n must be at least 2, got {v}')
        return v

    def to_matrix(self) -> RealMatrix:
        if len(self.data) != self.n or any(len(row) != self.n for row in self.data):
            shape = (len(self.data), max((len(row) for row in self.data), default=0))
            raise DimensionMismatch(f'declared order {self.n} but data rows have shape {shape}')
        matrix = np.array(self.data, dtype=float)
        if not np.all(np.isfinite(matrix)):
            raise ParseError('matrix entries must be finite')
        return matrix

    @classmethod
    def from_matrix(cls, A, use_j: bool = False, use_delta: bool = False) -> 'MatrixFile':
        A = np.asarray(A, dtype=float)
        return cls(n=A.shape[0], data=A.tolist(), use_j=use_j, use_delta=use_delta)


def parse_matrix_file(text: str) -> MatrixFile:
    try:
        return MatrixFile.parse_obj(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f'malformed JSON: {e}') from e
    except ValidationError as e:
        raise ParseError(f'invalid matrix file: {e}') from e


def read_matrix_file(path: str) -> MatrixFile:
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f'cannot read {path}: {e}') from e
    return parse_matrix_file(text)


def load_spec(path: str) -> IsometrySpec:
    matrix_file = read_matrix_file(path)
    return IsometrySpec(matrix_file.to_matrix(), use_j=matrix_file.use_j, use_delta=matrix_file.use_delta)


def load_point(path: str) -> SpdPoint:
    return check_spd(read_matrix_file(path).to_matrix())


def dump_matrix(A, use_j: bool = False, use_delta: bool = False) -> str:
    return MatrixFile.from_matrix(A, use_j=use_j, use_delta=use_delta).json()
