"""Hierarchical chart-of-accounts codes.

An account code is a dotted string of fixed-width digit groups, one group per
hierarchy level, e.g. ``02.01.03.001.00006`` under the default five-level
schema. Truncating a code to a level keeps its first segments, which coarsens
the partition of accounts: codes that agree on a prefix fall together.
"""

from dataclasses import dataclass

from .errors import LevelOutOfRange, MalformedCode

DEFAULT_SEGMENT_WIDTHS = (2, 2, 2, 3, 5)


@dataclass(frozen=True)
class CodeSchema:
    """Digit count per level and the separator between segments."""

    segment_widths: tuple[int, ...] = DEFAULT_SEGMENT_WIDTHS
    separator: str = "."

    def __post_init__(self):
        widths = tuple(self.segment_widths)
        object.__setattr__(self, "segment_widths", widths)
        if len(widths) < 1:
            raise ValueError("schema needs at least one segment")
        if any(not isinstance(w, int) or w < 1 for w in widths):
            raise ValueError(f"segment widths must be positive integers, got {widths}")
        if len(self.separator) != 1:
            raise ValueError(f"separator must be a single character, got {self.separator!r}")

    @property
    def levels(self) -> int:
        return len(self.segment_widths)

    @classmethod
    def from_string(cls, widths: str, separator: str = ".") -> "CodeSchema":
        """Build a schema from a comma-separated width list such as ``"2,2,2,3,5"``."""
        try:
            parsed = tuple(int(w) for w in widths.split(","))
        except ValueError:
            raise ValueError(f"cannot parse schema widths from {widths!r}") from None
        return cls(segment_widths=parsed, separator=separator)


@dataclass(frozen=True)
class AccountCode:
    """An account identifier, possibly truncated to a prefix of its levels."""

    segments: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def level(self) -> int:
        return len(self.segments)

    def __str__(self) -> str:
        return ".".join(self.segments)


def parse_account_code(text: str, schema: CodeSchema) -> AccountCode:
    """Parse a fully qualified code, validating segment count, digits and widths."""
    parts = text.split(schema.separator)
    if len(parts) != schema.levels:
        raise MalformedCode(
            f"code {text!r}: expected {schema.levels} segments separated by "
            f"{schema.separator!r}, got {len(parts)}"
        )
    for i, (part, width) in enumerate(zip(parts, schema.segment_widths)):
        if not part.isdigit():
            raise MalformedCode(f"code {text!r}: segment {i + 1} ({part!r}) is not all digits")
        if len(part) != width:
            raise MalformedCode(
                f"code {text!r}: segment {i + 1} ({part!r}) must be {width} digits wide"
            )
    return AccountCode(tuple(parts))


def truncate_to_level(code: AccountCode, level: int) -> AccountCode:
    """Keep the first ``level`` segments; level 1 is the most aggregated."""
    if not 1 <= level <= code.level:
        raise LevelOutOfRange(f"level {level} not in 1..{code.level} for code {code}")
    if level == code.level:
        return code
    return AccountCode(code.segments[:level])


def format_code(code: AccountCode, schema: CodeSchema) -> str:
    """Canonical text form: zero-padded segments joined by the schema separator."""
    return schema.separator.join(code.segments)
