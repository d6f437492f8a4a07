"""Constant profiles for the tight recursions.

``literal`` profiles (CLI name ``paper``) carry the full-size constants in
exact form (logarithms of the astronomically large ones are stored as big
integers).  ``desk`` profiles are small surrogates that let every recursion
branch run at feasible sizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import InputError
from .exact import LogExpr


def _frac_json(q: Fraction) -> str:
    q = Fraction(q)
    if max(q.numerator.bit_length(), q.denominator.bit_length()) > 256:
        return f"2^{LogExpr.log2(q).rational_value()}" if _dyadic(q) else "<large rational>"
    return str(q)


def _dyadic(q: Fraction) -> bool:
    a, b = q.numerator, q.denominator
    return a > 0 and (a & (a - 1)) == 0 and (b & (b - 1)) == 0


@dataclass(frozen=True)
class ConstantsTight3:
    """D = 2^log_D, C = 2^log_C, c, and the weighted Ramsey size threshold M."""

    name: str
    log_D: int
    log_C: int
    c: Fraction
    M: int

    @property
    def D(self) -> int:
        return 2 ** self.log_D

    @classmethod
    def literal(cls) -> "ConstantsTight3":
        log_D = 2048
        log_C = 2 ** (8 * log_D)  # C = 2^(D^8)
        c = Fraction(1, 4 * 2 ** (16 * log_D))  # c = log^-2(C^2) = D^-16 / 4
        return cls("literal", log_D, log_C, c, 2 ** 16)

    @classmethod
    def desk(cls) -> "ConstantsTight3":
        # D = 4, C = 16, c = log^-2(C^2) = 1/64, M = 4
        return cls("desk", 2, 4, Fraction(1, 64), 4)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "D": f"2^{self.log_D}",
            "C": f"2^{self.log_C}" if self.log_C < 2 ** 64 else f"2^(2^{self.log_C.bit_length() - 1})",
            "c": _frac_json(self.c),
            "M": self.M,
        }


@dataclass(frozen=True)
class ConstantsGeneral:
    """Constants of the many-color recursion for a palette of r colors and target size s.

    ``log2_c`` is kept as an exact log-form value because c involves a
    d-th root.  ``log_m0`` is None when m0 is too large to represent.
    """

    name: str
    r: int
    s: int
    d: Fraction
    C: Fraction
    delta: Fraction
    delta0: Fraction
    delta1: Fraction
    log2_c: LogExpr
    log_m0: Optional[int]

    @property
    def b(self) -> int:
        return comb(self.r - 2, self.s - 2)

    @property
    def pairs(self) -> int:
        return comb(self.r, 2)

    @classmethod
    def literal(cls, r: int, s: int) -> "ConstantsGeneral":
        _check_rs(r, s)
        R2 = comb(r, 2)
        d = Fraction(r - s, s - 1)
        C = 32 * r * R2 ** 3 * d
        delta = 1 / (4 * comb(r - 2, s - 2) * C)
        delta0 = d / (C * (R2 + 1))
        delta1 = Fraction(1, 2 ** (R2 + 2) * comb(r - 2, s - 1)) / (1 / delta0 + 1) ** (R2 + 1)
        # c = (delta/4)^2 * delta1^(1/d)
        log2_delta1 = (-(R2 + 2) - LogExpr.log2(comb(r - 2, s - 1))
                       - (R2 + 1) * LogExpr.log2(1 / delta0 + 1))
        log2_c = 2 * LogExpr.log2(delta / 4) + log2_delta1 / d
        return cls("literal", r, s, d, C, delta, delta0, delta1, log2_c, None)

    @classmethod
    def desk(cls, r: int, s: int) -> "ConstantsGeneral":
        _check_rs(r, s)
        d = Fraction(r - s, s - 1)
        return cls("desk", r, s, d, Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 2),
                   LogExpr.const(-10), 16)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "s": self.s,
            "d": str(self.d),
            "C": str(self.C),
            "delta": _frac_json(self.delta),
            "delta0": _frac_json(self.delta0),
            "delta1": _frac_json(self.delta1),
            "log2_c": self.log2_c.to_json(),
            "log_m0": self.log_m0 if self.log_m0 is not None else "2^(2^(2^(8r^2)))",
        }


def _check_rs(r: int, s: int) -> None:
    if not 1 < s < r:
        raise InputError(f"need 1 < s < r, got r={r}, s={s}")


def load_tight3(spec: str) -> ConstantsTight3:
    if spec in ("paper", "literal"):
        return ConstantsTight3.literal()
    if spec == "desk":
        return ConstantsTight3.desk()
    obj = _read_json(spec)
    try:
        return ConstantsTight3(obj.get("name", "file"), int(obj["log_D"]), int(obj["log_C"]),
                               Fraction(obj["c"]), int(obj["M"]))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad constants file: {exc}") from exc


def load_general(spec: str, r: int, s: int) -> ConstantsGeneral:
    if spec in ("paper", "literal"):
        return ConstantsGeneral.literal(r, s)
    if spec == "desk":
        return ConstantsGeneral.desk(r, s)
    obj = _read_json(spec)
    try:
        base = ConstantsGeneral.desk(r, s)
        return ConstantsGeneral(
            obj.get("name", "file"), r, s,
            Fraction(obj.get("d", base.d)),
            Fraction(obj["C"]), Fraction(obj["delta"]), Fraction(obj["delta0"]), Fraction(obj["delta1"]),
            LogExpr.log2(Fraction(obj["c"])),
            int(obj["log_m0"]) if obj.get("log_m0") is not None else None,
        )
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad constants file: {exc}") from exc


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read constants {path!r}: {exc}") from exc
