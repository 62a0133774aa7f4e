"""Injectable simulated clock producing DD/MM/YY-HH:MM:SS stamps."""

from __future__ import annotations

import re
from datetime import datetime, timedelta

STAMP_FORMAT = "%d/%m/%y-%H:%M:%S"
_STAMP_RE = re.compile(r"^\d{2}/\d{2}/\d{2}-\d{2}:\d{2}:\d{2}$")


def parse_stamp(text: str) -> datetime:
    if not _STAMP_RE.match(text):
        raise ValueError(f"bad timestamp {text!r}")
    return datetime.strptime(text, STAMP_FORMAT)


def is_valid_stamp(text: str) -> bool:
    try:
        parse_stamp(text)
        return True
    except ValueError:
        return False


class SimClock:
    """Maps simulated seconds-since-epoch to formatted wall-clock stamps."""

    def __init__(self, start: str = "01/06/20-00:00:00"):
        self.epoch = parse_stamp(start)
        self.now_s = 0

    def advance_to(self, at_s: int) -> None:
        if at_s < self.now_s:
            raise ValueError("simulated clock cannot run backwards")
        self.now_s = at_s

    def stamp(self, at_s: int | None = None) -> str:
        at = self.now_s if at_s is None else at_s
        return (self.epoch + timedelta(seconds=at)).strftime(STAMP_FORMAT)
