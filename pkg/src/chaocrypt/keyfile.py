"""Key files: decimal rendering for humans, IEEE-754 bit patterns as the
authority.  Line-oriented UTF-8, one field per line:

    version = 1
    a.dec = 2.5
    a.hex = 4004000000000000
    ...

On read the hex bit pattern wins; the decimal must parse back to the same
double or the file is rejected.
"""

from __future__ import annotations

import struct
from pathlib import Path

from .cipher import KeyRecord, validate_key_record
from .errors import FormatError, InvalidInput

FORMAT_VERSION = 1

_FIELDS = ("a", "b", "x0", "y0")


def float_to_hex(v: float) -> str:
    """16 hex digits of the big-endian binary64 bit pattern."""
    return struct.pack(">d", v).hex().upper()


def hex_to_float(s: str) -> float:
    raw = bytes.fromhex(s)
    if len(raw) != 8:
        raise ValueError("expected 16 hex digits")
    return struct.unpack(">d", raw)[0]


def write_key_file(key: KeyRecord, path) -> None:
    validate_key_record(key)
    lines = [f"version = {FORMAT_VERSION}"]
    for name in _FIELDS:
        v = float(getattr(key, name))
        lines.append(f"{name}.dec = {v:.17g}")
        lines.append(f"{name}.hex = {float_to_hex(v)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_key_file(path) -> KeyRecord:
    text = Path(path).read_text(encoding="utf-8")
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'name = value'")
        fields[name.strip()] = value.strip()

    version = fields.get("version")
    if version != str(FORMAT_VERSION):
        raise FormatError(f"unsupported key file version {version!r}")

    values: dict[str, float] = {}
    for name in _FIELDS:
        hex_field, dec_field = f"{name}.hex", f"{name}.dec"
        for field in (hex_field, dec_field):
            if field not in fields:
                raise FormatError(f"missing field {field}")
        try:
            v = hex_to_float(fields[hex_field])
        except ValueError:
            raise FormatError(f"field {hex_field}: invalid bit pattern") from None
        try:
            dec = float(fields[dec_field])
        except ValueError:
            raise FormatError(f"field {dec_field}: not a number") from None
        if dec != v:
            raise FormatError(f"field {name}: decimal and hex encodings disagree")
        values[name] = v

    key = KeyRecord(**values)
    try:
        validate_key_record(key)
    except InvalidInput as exc:
        raise FormatError(str(exc)) from None
    return key
