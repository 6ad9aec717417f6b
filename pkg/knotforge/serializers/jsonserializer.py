import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from ..algebra.laurent import format_rational


class JsonSerializer:
    """
    Read / write JSON documents in canonical form.

    Keys are sorted, indentation is fixed and the text ends in a newline, so
    equal documents serialize to equal bytes. Fractions are written as "num/den"
    and objects with a to_json method are written through it.
    """
    __slots__ = "indent", "sort_keys"

    def __init__(self, indent: int = 2, sort_keys: bool = True):
        self.indent = indent
        self.sort_keys = sort_keys

    @staticmethod
    def _default(value):
        if isinstance(value, Fraction):
            return format_rational(value)
        if hasattr(value, "to_json"):
            return value.to_json()
        if isinstance(value, (set, frozenset)):
            return sorted(value)
        raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")

    def dumps(self, data: Any) -> str:
        text = json.dumps(data, indent=self.indent, sort_keys=self.sort_keys,
                          ensure_ascii=False, default=self._default)
        return text + "\n"

    def dump(self, data: Any, path: Union[str, Path]):
        Path(path).write_text(self.dumps(data), encoding="utf-8")

    def loads(self, text: str) -> Any:
        return json.loads(text)

    def load(self, source: Union[str, Path]) -> Any:
        """
        Load JSON from a file, or parse it directly if source is inline JSON.

        :param source: Path of a JSON file or a string starting with [ or {
        :return: Parsed document
        """
        if isinstance(source, str) and source.lstrip()[:1] in ("[", "{"):
            return self.loads(source)
        return self.loads(Path(source).read_text(encoding="utf-8"))


CANONICAL = JsonSerializer()


def dumps(data: Any) -> str:
    """Canonical JSON text of data."""
    return CANONICAL.dumps(data)


def canonical_bytes(data: Any) -> bytes:
    return dumps(data).encode("utf-8")
