import json
from fractions import Fraction
from typing import Any, Dict, Mapping

from utils.constants import DECIMAL_DIGITS


def rat_to_json(value: Fraction) -> Dict[str, str]:
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rat_from_json(payload: Mapping[str, Any]) -> Fraction:
    num = int(str(payload["num"]))
    den = int(str(payload["den"]))
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    return Fraction(num, den)


def decimal_str(value: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    return f"{float(value):.{digits}g}"


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def canonical(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
