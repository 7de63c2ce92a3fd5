"""
Text literals for partitions and epsilon strings.

Partition grammar: blocks in braces, elements comma-separated, blocks
concatenated, e.g. "{1,4,5}{2,3}{6,8}{7}". Whitespace is ignored.
Output is always canonical (blocks by minimum, ascending elements).

Epsilon grammar: a string over {1,2}, either packed ("1212") or
comma-separated ("1,2,1,2").
"""

import re
from typing import List, Optional, Tuple

from ncfree.core.ncpart import Partition
from ncfree.errors import LiteralSyntaxError

_BLOCK = re.compile(r"\{([^{}]*)\}")


def parse_partition(text: str, n: Optional[int] = None) -> Partition:
    """
    Parse a partition literal.

    Args:
        text: Literal such as "{1,3}{2}"
        n: Ground-set size; defaults to the largest element

    Returns:
        Partition in canonical form

    Raises:
        LiteralSyntaxError: If the literal is malformed
        DomainError: If the blocks are not a non-crossing partition of {1..n}
    """
    cleaned = "".join(str(text).split())
    if not cleaned:
        raise LiteralSyntaxError("Empty partition literal")

    blocks: List[List[int]] = []
    pos = 0
    for match in _BLOCK.finditer(cleaned):
        if match.start() != pos:
            raise LiteralSyntaxError(
                f"Unexpected text '{cleaned[pos:match.start()]}' at offset {pos} in '{text}'"
            )
        body = match.group(1)
        if not body:
            raise LiteralSyntaxError(f"Empty block at offset {match.start()} in '{text}'")
        try:
            blocks.append([int(tok) for tok in body.split(",")])
        except ValueError:
            raise LiteralSyntaxError(f"Non-integer element in block '{{{body}}}' of '{text}'")
        pos = match.end()
    if pos != len(cleaned):
        raise LiteralSyntaxError(f"Unexpected text '{cleaned[pos:]}' at offset {pos} in '{text}'")

    size = n if n is not None else max(max(b) for b in blocks)
    return Partition(size, blocks)


def format_partition(pi: Partition) -> str:
    """Canonical literal of a partition."""
    return str(pi)


def parse_eps(text: str) -> Tuple[int, ...]:
    """
    Parse an epsilon literal into a tuple of 1s and 2s.

    Raises:
        LiteralSyntaxError: On characters other than 1, 2, commas, whitespace
    """
    cleaned = "".join(str(text).split()).replace(",", "")
    if not cleaned:
        raise LiteralSyntaxError("Empty epsilon literal")
    letters = []
    for ch in cleaned:
        if ch not in "12":
            raise LiteralSyntaxError(f"Epsilon letters must be 1 or 2, got '{ch}' in '{text}'")
        letters.append(int(ch))
    return tuple(letters)


def format_eps(letters) -> str:
    return "".join(str(x) for x in letters)

