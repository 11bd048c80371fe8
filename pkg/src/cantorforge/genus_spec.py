"""Genus specification sequences.

A spec assigns a target genus to every label 1, 2, 3, ...  Each entry is
either a finite integer >= 2 or infinity.  Infinite sequences are made
finitely describable by a finite prefix followed by a tail rule: either a
single constant value or a repeating cycle.

Grammar (no whitespace in canonical form)::

    spec     := entry ("," entry)* (";" tailrule)?
    entry    := integer >= 2 | "inf"
    tailrule := "const:" entry | "cycle:" entry ("," entry)*

When the tail rule is omitted the tail defaults to ``const:2``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Optional, Union

from .errors import SpecSyntaxError, SpecValueError

_ENTRY_RE = re.compile(r"^(inf|\d+)$")


@functools.total_ordering
@dataclass(frozen=True)
class ExtendedGenus:
    """A genus value: a finite integer >= 2, or infinity (``finite is None``).

    Values are totally ordered with infinity above every finite value.
    """

    finite: Optional[int]

    def __post_init__(self) -> None:
        if self.finite is not None and self.finite < 2:
            raise SpecValueError(
                f"genus entries must be >= 2 or inf, got {self.finite}"
            )

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    @property
    def cap(self) -> Optional[int]:
        """Finite cap for arithmetic, ``None`` meaning unbounded."""
        return self.finite

    def __lt__(self, other: "ExtendedGenus") -> bool:
        if not isinstance(other, ExtendedGenus):
            return NotImplemented
        if self.finite is None:
            return False
        if other.finite is None:
            return True
        return self.finite < other.finite

    def __str__(self) -> str:
        return "inf" if self.finite is None else str(self.finite)

    def to_json(self) -> Union[int, str]:
        """JSON form: plain int, or the string ``"inf"`` (never a sentinel number)."""
        return "inf" if self.finite is None else self.finite

    @classmethod
    def parse(cls, token: str) -> "ExtendedGenus":
        token = token.strip()
        if not _ENTRY_RE.match(token):
            raise SpecSyntaxError(f"bad genus entry {token!r}")
        if token == "inf":
            return INFINITY
        return cls(int(token))


INFINITY = ExtendedGenus(None)


@dataclass(frozen=True)
class ConstantTail:
    value: ExtendedGenus

    def entry(self, position: int) -> ExtendedGenus:
        return self.value

    def render(self) -> str:
        return f"const:{self.value}"


@dataclass(frozen=True)
class CycleTail:
    values: tuple[ExtendedGenus, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise SpecSyntaxError("cycle tail must have at least one entry")

    def entry(self, position: int) -> ExtendedGenus:
        # position is 1-based within the tail
        return self.values[(position - 1) % len(self.values)]

    def render(self) -> str:
        return "cycle:" + ",".join(str(v) for v in self.values)


Tail = Union[ConstantTail, CycleTail]

DEFAULT_TAIL = ConstantTail(ExtendedGenus(2))


@dataclass(frozen=True)
class GenusSpec:
    """Immutable genus sequence: finite prefix plus tail rule.

    ``entry(i)`` is total for every i >= 1, deterministic, and safe to call
    from any number of threads.
    """

    prefix: tuple[ExtendedGenus, ...]
    tail: Tail = DEFAULT_TAIL

    def entry(self, i: int) -> ExtendedGenus:
        """The i-th term of the sequence (1-based)."""
        if i < 1:
            raise IndexError(f"entry index must be >= 1, got {i}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail.entry(i - len(self.prefix))

    def cap(self, i: int) -> Optional[int]:
        """Finite cap of the i-th term, ``None`` for infinity."""
        return self.entry(i).cap

    def render(self) -> str:
        """Canonical text form; always spells the tail out explicitly."""
        return ",".join(str(v) for v in self.prefix) + ";" + self.tail.render()

    def __str__(self) -> str:
        return self.render()


def parse_spec(text: str) -> GenusSpec:
    """Parse spec text per the module grammar.

    Raises SpecSyntaxError for malformed text, SpecValueError for entries
    below 2.
    """
    if not isinstance(text, str):
        raise SpecSyntaxError(f"spec must be text, got {type(text).__name__}")
    body = text.strip()
    if not body:
        raise SpecSyntaxError("empty spec")
    parts = body.split(";")
    if len(parts) > 2:
        raise SpecSyntaxError(f"at most one ';' allowed: {text!r}")

    prefix_tokens = parts[0].split(",")
    if any(not tok.strip() for tok in prefix_tokens):
        raise SpecSyntaxError(f"empty entry in prefix: {parts[0]!r}")
    prefix = tuple(ExtendedGenus.parse(tok) for tok in prefix_tokens)

    tail: Tail = DEFAULT_TAIL
    if len(parts) == 2:
        rule = parts[1].strip()
        if rule.startswith("const:"):
            tail = ConstantTail(ExtendedGenus.parse(rule[len("const:"):]))
        elif rule.startswith("cycle:"):
            rest = rule[len("cycle:"):]
            tokens = rest.split(",") if rest else []
            if not tokens or any(not tok.strip() for tok in tokens):
                raise SpecSyntaxError(f"bad cycle tail {rule!r}")
            tail = CycleTail(tuple(ExtendedGenus.parse(tok) for tok in tokens))
        else:
            raise SpecSyntaxError(f"unknown tail rule {rule!r}")
    return GenusSpec(prefix=prefix, tail=tail)
