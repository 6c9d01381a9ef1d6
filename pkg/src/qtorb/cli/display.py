"""CLI display module - formats tables, reports and status messages"""

import json
from typing import Iterable, List, Sequence

from prompt_toolkit import HTML, print_formatted_text
from prompt_toolkit.styles import Style
from pygments import highlight
from pygments.formatters import TerminalFormatter
from pygments.lexers import JsonLexer

from ..extras import align_columns, display_width, jsonable
from ..settings import Settings


class CliDisplay:
    """CLI display module - writes human tables to stdout and styled messages to stderr"""

    def _isatty(self, stream) -> bool:
        isatty = getattr(stream, "isatty", None)
        return bool(isatty and isatty())

    def _styled(self, stream) -> bool:
        mode = Settings.client["color"]
        if mode == "always":
            return True
        if mode == "never":
            return False
        return self._isatty(stream)

    def echo(self, text: str = ""):
        self.stdout.write(f"{text}\n")

    def buildTable(self, headers: Sequence[str], rows: Iterable[Sequence], title: str = None, numeric=()) -> List[str]:
        """Build aligned table lines, with an optional title bar as wide as the table"""
        lines = align_columns(headers, rows, Settings.client["table_margin"], numeric)
        if title:
            width = max(display_width(line) for line in lines)
            title = f" {title} "
            left = max((width - display_width(title)) // 2, 2)
            right = max(width - display_width(title) - left, 2)
            bar = "{}{}{}".format("=" * left, title, "=" * right)
            if self._styled(self.stdout):
                bar = f"{Settings.INFO_STYLE}{bar}{Settings.CLR_STYLE}"
            lines.insert(0, bar)
        return lines

    def table(self, headers, rows, title=None, numeric=()):
        for line in self.buildTable(headers, rows, title, numeric):
            self.echo(line)

    def field(self, name: str, value):
        self.echo(f"{name}: {value}")

    def _message(self, level: str, msg: str):
        if self._styled(self.stderr):
            print_formatted_text(
                HTML("<{0}>{1}</{0}>".format(level, "{}")).format(msg),
                style=Style.from_dict(Settings.styles),
                file=self.stderr,
            )
        else:
            self.stderr.write(f"{Settings.__appname__.lower()}: {level}: {msg}\n")

    def info(self, msg: str):
        """Informational status line on stderr"""
        self._message("info", msg)

    def warning(self, msg: str):
        """Warning line on stderr"""
        self._message("warning", msg)

    def error(self, msg: str):
        """Error line on stderr"""
        self._message("error", msg)

    def diagnostics(self, items: Iterable[str]):
        for item in items:
            self._message("error", f"  {item}")

    def dumpJson(self, report: dict):
        """Write a report as sorted-key JSON, colourised on a terminal"""
        text = json.dumps(
            jsonable(report),
            sort_keys=True,
            indent=Settings.client["json_indent"],
            ensure_ascii=False,
        )
        if Settings.client["highlight_json"] and self._isatty(self.stdout) and self._styled(self.stdout):
            self.stdout.write(highlight(text, JsonLexer(), TerminalFormatter()))
        else:
            self.stdout.write(f"{text}\n")
