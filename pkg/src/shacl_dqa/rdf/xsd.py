"""Lexical validation and value mapping for the common XSD datatypes.

Datatypes not covered here are treated as opaque: their literals are never
reported as ill-typed and only compare equal to themselves.
"""

from __future__ import annotations

import base64
import binascii
import calendar
import math
import re
from decimal import Decimal, InvalidOperation

from .terms import RDF, XSD, IRI, Literal

_INT_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_RE = re.compile(r"^[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)$")
_FLOAT_RE = re.compile(r"^(?:[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|[+-]?INF|NaN)$")
_BOOL_RE = re.compile(r"^(?:true|false|1|0)$")
_TZ = r"(Z|[+-](?:(?:0[0-9]|1[0-3]):[0-5][0-9]|14:00))?"
_DATE_RE = re.compile(r"^(-?(?:[1-9][0-9]{3,}|0[0-9]{3}))-(0[1-9]|1[0-2])-(0[1-9]|[12][0-9]|3[01])" + _TZ + "$")
_TIME_PART = r"(?:([01][0-9]|2[0-3]):([0-5][0-9]):([0-5][0-9](?:\.[0-9]+)?)|(24):(00):(00(?:\.0+)?))"
_DATETIME_RE = re.compile(
    r"^(-?(?:[1-9][0-9]{3,}|0[0-9]{3}))-(0[1-9]|1[0-2])-(0[1-9]|[12][0-9]|3[01])T" + _TIME_PART + _TZ + "$"
)
_TIME_RE = re.compile("^" + _TIME_PART + _TZ + "$")
_GYEAR_RE = re.compile(r"^(-?(?:[1-9][0-9]{3,}|0[0-9]{3}))" + _TZ + "$")
_GYEARMONTH_RE = re.compile(r"^(-?(?:[1-9][0-9]{3,}|0[0-9]{3}))-(0[1-9]|1[0-2])" + _TZ + "$")
_GMONTH_RE = re.compile(r"^--(0[1-9]|1[0-2])" + _TZ + "$")
_GMONTHDAY_RE = re.compile(r"^--(0[1-9]|1[0-2])-(0[1-9]|[12][0-9]|3[01])" + _TZ + "$")
_GDAY_RE = re.compile(r"^---(0[1-9]|[12][0-9]|3[01])" + _TZ + "$")
_DURATION_RE = re.compile(
    r"^-?P(?=.)(?:([0-9]+)Y)?(?:([0-9]+)M)?(?:([0-9]+)D)?"
    r"(?:T(?=.)(?:([0-9]+)H)?(?:([0-9]+)M)?(?:([0-9]+(?:\.[0-9]+)?)S)?)?$"
)
_HEX_RE = re.compile(r"^(?:[0-9A-Fa-f]{2})*$")
_B64_RE = re.compile(r"^[A-Za-z0-9+/=\s]*$")
_ANYURI_BAD = re.compile(r"[\x00-\x1f\x7f<>\"{}|\\^`]")

_INTEGER_BOUNDS = {
    "integer": (None, None),
    "nonPositiveInteger": (None, 0),
    "negativeInteger": (None, -1),
    "long": (-(2**63), 2**63 - 1),
    "int": (-(2**31), 2**31 - 1),
    "short": (-(2**15), 2**15 - 1),
    "byte": (-128, 127),
    "nonNegativeInteger": (0, None),
    "unsignedLong": (0, 2**64 - 1),
    "unsignedInt": (0, 2**32 - 1),
    "unsignedShort": (0, 2**16 - 1),
    "unsignedByte": (0, 255),
    "positiveInteger": (1, None),
}

INTEGER_TYPES = frozenset(IRI(XSD + n) for n in _INTEGER_BOUNDS)
NUMERIC_TYPES = INTEGER_TYPES | {IRI(XSD + "decimal"), IRI(XSD + "float"), IRI(XSD + "double")}


def _days_in_month(year: int, month: int) -> int:
    # year 0 does not exist in XSD 1.0 but is leap in 1.1; use the 1.1 rules
    if month == 2:
        return 29 if calendar.isleap(year) else 28
    return calendar.monthrange(2001, month)[1]


def _tz_minutes(tz: str | None):
    if tz is None:
        return None
    if tz == "Z":
        return 0
    sign = -1 if tz[0] == "-" else 1
    return sign * (int(tz[1:3]) * 60 + int(tz[4:6]))


def _parse_date(lex: str):
    m = _DATE_RE.match(lex)
    if not m:
        return None
    year, month, day = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if day > _days_in_month(year, month):
        return None
    return ("date", (year, month, day), _tz_minutes(m.group(4)))


def _parse_time_groups(groups) -> tuple:
    if groups[0] is not None:
        return int(groups[0]), int(groups[1]), Decimal(groups[2])
    return 24, 0, Decimal(0)


def _parse_datetime(lex: str):
    m = _DATETIME_RE.match(lex)
    if not m:
        return None
    year, month, day = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if day > _days_in_month(year, month):
        return None
    hour, minute, sec = _parse_time_groups(m.groups()[3:9])
    tz = _tz_minutes(m.group(10))
    # seconds since a proleptic epoch, good enough for ordering
    days = _ordinal(year, month, day)
    total = Decimal(days * 86400 + hour * 3600 + minute * 60) + sec
    if tz is not None:
        total -= tz * 60
    return ("dateTime", total, tz)


def _ordinal(year: int, month: int, day: int) -> int:
    y = year - 1
    days = y * 365 + y // 4 - y // 100 + y // 400
    for mth in range(1, month):
        days += _days_in_month(year, mth)
    return days + day


def _parse_time(lex: str):
    m = _TIME_RE.match(lex)
    if not m:
        return None
    hour, minute, sec = _parse_time_groups(m.groups()[0:6])
    tz = _tz_minutes(m.group(7))
    total = Decimal(hour * 3600 + minute * 60) + sec
    if tz is not None:
        total -= tz * 60
    return ("time", total, tz)


def _parse_simple(regex, kind, lex, check_day=False):
    m = regex.match(lex)
    if not m:
        return None
    groups = m.groups()
    tz = _tz_minutes(groups[-1])
    parts = tuple(int(g) for g in groups[:-1])
    if check_day and len(parts) == 2:
        month, day = parts
        if day > _days_in_month(2000, month):
            return None
    return (kind, parts, tz)


def _parse_duration(lex: str):
    m = _DURATION_RE.match(lex)
    if not m:
        return None
    y, mo, d, h, mi, s = m.groups()
    months = int(y or 0) * 12 + int(mo or 0)
    seconds = Decimal(int(d or 0) * 86400 + int(h or 0) * 3600 + int(mi or 0) * 60) + Decimal(s or 0)
    sign = -1 if lex.startswith("-") else 1
    return ("duration", (sign * months, sign * seconds), None)


def _parse_integer(lex: str, name: str):
    if not _INT_RE.match(lex):
        return None
    value = int(lex)
    lo, hi = _INTEGER_BOUNDS[name]
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        return None
    return ("number", Decimal(value), None)


def _parse_decimal(lex: str):
    if not _DECIMAL_RE.match(lex):
        return None
    return ("number", Decimal(lex), None)


def _parse_float(lex: str):
    if not _FLOAT_RE.match(lex):
        return None
    if lex.endswith("INF"):
        return ("number", -math.inf if lex.startswith("-") else math.inf, None)
    if lex == "NaN":
        return ("number", math.nan, None)
    return ("number", Decimal(lex), None)


def _parse_boolean(lex: str):
    if not _BOOL_RE.match(lex):
        return None
    return ("boolean", lex in ("true", "1"), None)


def _parse_hex(lex: str):
    if not _HEX_RE.match(lex):
        return None
    return ("hexBinary", bytes.fromhex(lex), None)


def _parse_b64(lex: str):
    if not _B64_RE.match(lex):
        return None
    try:
        return ("base64Binary", base64.b64decode("".join(lex.split()), validate=True), None)
    except (binascii.Error, ValueError):
        return None


def _parse_anyuri(lex: str):
    if _ANYURI_BAD.search(lex):
        return None
    return ("anyURI", lex, None)


def _parse_string(lex: str):
    return ("string", lex, None)


_PARSERS = {
    "string": _parse_string,
    "boolean": _parse_boolean,
    "decimal": _parse_decimal,
    "float": _parse_float,
    "double": _parse_float,
    "date": _parse_date,
    "dateTime": _parse_datetime,
    "dateTimeStamp": lambda lex: (r if (r := _parse_datetime(lex)) and r[2] is not None else None),
    "time": _parse_time,
    "gYear": lambda lex: _parse_simple(_GYEAR_RE, "gYear", lex),
    "gYearMonth": lambda lex: _parse_simple(_GYEARMONTH_RE, "gYearMonth", lex),
    "gMonth": lambda lex: _parse_simple(_GMONTH_RE, "gMonth", lex),
    "gMonthDay": lambda lex: _parse_simple(_GMONTHDAY_RE, "gMonthDay", lex, check_day=True),
    "gDay": lambda lex: _parse_simple(_GDAY_RE, "gDay", lex),
    "duration": _parse_duration,
    "dayTimeDuration": lambda lex: _parse_duration(lex) if "Y" not in lex and not re.search(r"P[^T]*M", lex) else None,
    "yearMonthDuration": lambda lex: _parse_duration(lex) if "T" not in lex and "D" not in lex else None,
    "hexBinary": _parse_hex,
    "base64Binary": _parse_b64,
    "anyURI": _parse_anyuri,
}
for _name in _INTEGER_BOUNDS:
    _PARSERS[_name] = (lambda n: lambda lex: _parse_integer(lex, n))(_name)

_BY_IRI = {IRI(XSD + name): fn for name, fn in _PARSERS.items()}
_BY_IRI[IRI(RDF + "langString")] = _parse_string

SUPPORTED_DATATYPES = frozenset(_BY_IRI)
_STRING = IRI(XSD + "string")
_LANGSTRING = IRI(RDF + "langString")
_NUMERIC_WHITESPACE = frozenset(_BY_IRI) - {IRI(XSD + "string"), IRI(RDF + "langString")}


def _lexical(lit: Literal) -> str:
    if lit.datatype in _NUMERIC_WHITESPACE:
        return lit.lexical.strip(" \t\r\n")
    return lit.lexical


def is_supported(datatype: IRI) -> bool:
    return datatype in _BY_IRI


def is_well_formed(lit: Literal) -> bool:
    """False only for a supported datatype whose lexical form is invalid."""
    fn = _BY_IRI.get(lit.datatype)
    if fn is None:
        return True
    return fn(_lexical(lit)) is not None


def literal_is_ill_typed(lit: Literal) -> bool:
    """True for a literal of a known XSD datatype outside its lexical space.

    Unknown datatypes are never ill-typed.
    """
    return not is_well_formed(lit)


def value_of(lit: Literal):
    """Map a literal to a comparable ``(family, value, tz)`` triple.

    Returns None for ill-typed literals and unsupported datatypes.
    """
    fn = _BY_IRI.get(lit.datatype)
    if fn is None:
        return None
    try:
        return fn(_lexical(lit))
    except (InvalidOperation, ValueError):
        return None


def compare(a: Literal, b: Literal):
    """Three-way compare two literals by value.

    Returns -1, 0 or 1, or None when the values are incomparable (different
    value families, ill-typed input, NaN, or one side with a timezone and the
    other without).
    """
    if a.datatype == _LANGSTRING or b.datatype == _LANGSTRING:
        return None
    if a.datatype == _STRING and b.datatype == _STRING:
        return (a.lexical > b.lexical) - (a.lexical < b.lexical)
    va = value_of(a)
    vb = value_of(b)
    if va is None or vb is None:
        return None
    fam_a, x, tz_a = va
    fam_b, y, tz_b = vb
    if fam_a != fam_b:
        return None
    if fam_a == "duration":
        (m1, s1), (m2, s2) = x, y
        if m1 == m2:
            return (s1 > s2) - (s1 < s2)
        if s1 == s2:
            return (m1 > m2) - (m1 < m2)
        return None
    if fam_a in ("hexBinary", "base64Binary", "boolean", "anyURI"):
        if fam_a == "boolean":
            return (x > y) - (x < y)
        return 0 if x == y else None
    if (tz_a is None) != (tz_b is None) and fam_a in ("dateTime", "time", "date", "gYear", "gYearMonth",
                                                    "gMonth", "gMonthDay", "gDay"):
        return None
    if fam_a == "number":
        if isinstance(x, float) or isinstance(y, float):
            xf, yf = float(x), float(y)
            if math.isnan(xf) or math.isnan(yf):
                return None
            return (xf > yf) - (xf < yf)
    if fam_a in ("date", "gYear", "gYearMonth", "gMonth", "gMonthDay", "gDay") and tz_a != tz_b:
        return None
    return (x > y) - (x < y)
