"""
Small helpers shared by the CLI: attribute-style dicts, JSON conversion of exact values
and terminal-width aware text alignment.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence

from wcwidth import wcswidth


class DotDict(dict):
    """
    A dict whose key-value pairs can also be reached with a dot. Inherits from dict.

    - Every dict method is available
    - Dot access works for reading and writing:

    Example:
        .. code:: Python

            report = DotDict()

            # the two writes are equivalent
            report["status"] = 0
            report.status = 0

            # so are the two reads
            val = report["status"]
            val = report.status
    """

    def __getattr__(self, __key):
        if (__key not in self.__dict__) and (not __key.startswith("__")):
            return self.__getitem__(__key)

    def __setattr__(self, __name: str, __value):
        if __name in self.__dict__:
            object.__setattr__(self, __name, __value)
        else:
            self.__setitem__(__name, __value)


def jsonable(value):
    """
    Convert a result into plain JSON data.

    Fractions become "p/q" strings, tuples and sets become lists (sets sorted), frozensets
    of facet indices become sorted lists.
    Floats are refused: every number in a report is exact.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        raise TypeError("floating point value in an exact report")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def display_width(text: str) -> int:
    "Printable width of text; unprintable characters count as one column"
    width = wcswidth(text)
    return width if width >= 0 else len(text)


def ljust(text: str, width: int) -> str:
    return text + " " * max(width - display_width(text), 0)


def rjust(text: str, width: int) -> str:
    return " " * max(width - display_width(text), 0) + text


def align_columns(
    headers: Sequence[str], rows: Iterable[Sequence[str]], margin: int = 2, numeric: Sequence[bool] = ()
) -> List[str]:
    """
    Lay out a table as text lines: header, a rule, then rows.

    :param numeric: per-column flags, numeric columns are right aligned
    """
    rows = [[str(c) for c in r] for r in rows]
    widths = [display_width(h) for h in headers]
    for r in rows:
        widths = [max(w, display_width(c)) for w, c in zip(widths, r)]
    numeric = list(numeric) + [False] * (len(headers) - len(numeric))
    sep = " " * margin

    def line(cells):
        padded = [rjust(c, w) if num else ljust(c, w) for c, w, num in zip(cells, widths, numeric)]
        return sep.join(padded).rstrip()

    lines = [line(headers), sep.join("-" * w for w in widths)]
    lines.extend(line(r) for r in rows)
    return lines


def vector_text(values) -> str:
    "(1, 2/3, ...) with exact entries"
    return "(" + ", ".join(str(x) for x in values) + ")"


def group_text(divisors) -> str:
    "Z3xZ3 style name of a finite abelian group from its invariant factors"
    return "x".join(f"Z{d}" for d in divisors) or "1"
