"""The .ucf text format: one set per line as strictly ascending element labels.

"-" denotes the empty set, "#" starts a comment line, blank lines are
ignored, duplicate sets are an error.
"""

from __future__ import annotations

from pathlib import Path

from .family import MAX_ELEMENT, SetFamily, set_label


class UcfParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}" if line_no else message)


def parse_ucf(text: str) -> SetFamily:
    masks: list[int] = []
    seen: set[int] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "-":
            mask = 0
        else:
            try:
                values = [int(part) for part in line.split()]
            except ValueError:
                raise UcfParseError(line_no, f"not a set of integers: {line!r}") from None
            mask = 0
            previous = 0
            for v in values:
                if not 1 <= v <= MAX_ELEMENT:
                    raise UcfParseError(line_no, f"element {v} outside 1..{MAX_ELEMENT}")
                if v <= previous:
                    raise UcfParseError(line_no, "elements must be strictly ascending")
                previous = v
                mask |= 1 << (v - 1)
        if mask in seen:
            raise UcfParseError(line_no, f"duplicate set: {set_label(mask)}")
        seen.add(mask)
        masks.append(mask)
    if not masks:
        raise UcfParseError(0, "input contains no sets")
    if max(masks) == 0:
        raise UcfParseError(0, "family must contain at least one nonempty set")
    return SetFamily.from_masks(masks)


def format_ucf(family: SetFamily) -> str:
    return "".join(set_label(m) + "\n" for m in family.members)


def load_ucf(path: str | Path) -> SetFamily:
    return parse_ucf(Path(path).read_text(encoding="utf-8"))


def dump_ucf(family: SetFamily, path: str | Path) -> None:
    Path(path).write_text(format_ucf(family), encoding="utf-8")
