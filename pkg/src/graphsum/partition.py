"""Set partitions of {1, ..., k} and the graph G_pi they induce."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .graph import DirectedMultigraph, Edge


@dataclass(frozen=True)
class Partition:
    """A partition of ``{1, ..., k}`` into non-empty disjoint blocks.

    Blocks are stored canonically: elements ascending inside a block, blocks
    ordered by their least element.  Two partitions are equal iff they have
    the same blocks.
    """

    k: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = [tuple(sorted(b)) for b in self.blocks]
        if self.k < 1:
            raise InputError(f"ground set size must be positive, got {self.k}")
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InputError("empty block")
            for x in b:
                if x in seen:
                    raise InputError(f"duplicate element {x}")
                if not 1 <= x <= self.k:
                    raise InputError(f"element {x} outside 1..{self.k}")
                seen.add(x)
        missing = sorted(set(range(1, self.k + 1)) - seen)
        if missing:
            raise InputError(f"missing element {missing[0]} (k={self.k})")
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        blocks = [tuple(b) for b in blocks]
        k = max((max(b) for b in blocks if b), default=0)
        return cls(k, tuple(blocks))

    @classmethod
    def minimal(cls, k: int) -> "Partition":
        """0_k, the partition into k singletons."""
        return cls(k, tuple((i,) for i in range(1, k + 1)))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, p: int) -> tuple[int, ...]:
        for b in self.blocks:
            if p in b:
                return b
        raise KeyError(p)

    def leader_map(self) -> dict[int, int]:
        """Map each element to the least element of its block."""
        return {x: b[0] for b in self.blocks for x in b}

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


_TOKEN = re.compile(r"\s*(?:(\d+)|([{},]))")


def _parse_braces(text: str) -> list[tuple[int, list[tuple[int, int]]]]:
    """Return blocks as (position, [(element, position), ...])."""
    blocks = []
    pos = 0
    current: list[tuple[int, int]] | None = None
    block_pos = 0
    expect_int = False
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise InputError(f"unexpected character {text[pos]!r} at position {pos}")
        start = m.start(1) if m.group(1) else m.start(2)
        num, sym = m.group(1), m.group(2)
        pos = m.end()
        if current is None:
            if sym != "{":
                raise InputError(f"expected '{{' at position {start}")
            current, block_pos, expect_int = [], start, True
        elif expect_int:
            if num is None:
                if sym == "}" and not current:
                    raise InputError(f"empty block at position {block_pos}")
                raise InputError(f"expected integer at position {start}")
            current.append((int(num), start))
            expect_int = False
        elif sym == ",":
            expect_int = True
        elif sym == "}":
            blocks.append((block_pos, current))
            current = None
        else:
            raise InputError(f"expected ',' or '}}' at position {start}")
    if current is not None:
        raise InputError(f"unterminated block starting at position {block_pos}")
    if not blocks:
        raise InputError("no blocks found")
    return blocks


def parse_partition(text: str, k: int | None = None) -> Partition:
    """Parse ``{1,2,4}{3}{5,6}`` or a JSON array of integer arrays.

    ``k`` defaults to the largest element.  Errors carry the character
    position (brace syntax) or the block index (JSON syntax).
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON partition at position {exc.pos}: {exc.msg}") from None
        if not isinstance(data, list):
            raise InputError("JSON partition must be an array of arrays")
        located = []
        for bi, block in enumerate(data):
            if not isinstance(block, list):
                raise InputError(f"block {bi} is not an array")
            if not block:
                raise InputError(f"empty block at index {bi}")
            for x in block:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InputError(f"non-integer element {x!r} in block {bi}")
            located.append((f"block {bi}", [(x, f"block {bi}") for x in block]))
    else:
        located = [(f"position {p}", [(x, f"position {q}") for x, q in blk])
                   for p, blk in _parse_braces(stripped)]

    seen: dict[int, str] = {}
    for _, elems in located:
        for x, where in elems:
            if x < 1:
                raise InputError(f"element {x} at {where} is not positive")
            if x in seen:
                raise InputError(f"duplicate element {x} at {where} (first at {seen[x]})")
            seen[x] = where
    top = max(seen)
    if k is None:
        k = top
    elif top > k:
        raise InputError(f"element {top} at {seen[top]} exceeds k={k}")
    for x in range(1, k + 1):
        if x not in seen:
            raise InputError(f"missing element {x} (elements must cover 1..{k})")
    return Partition(k, tuple(tuple(x for x, _ in elems) for _, elems in located))


def kernel_of(indices: Sequence[int]) -> Partition:
    """ker j: positions p, q share a block iff j_p == j_q."""
    if len(indices) == 0:
        raise InputError("kernel of an empty multi-index is undefined")
    groups: dict[int, list[int]] = {}
    for p, value in enumerate(indices, start=1):
        groups.setdefault(value, []).append(p)
    return Partition(len(indices), tuple(tuple(g) for g in groups.values()))


def dominates(pi: Partition, sigma: Partition) -> bool:
    """True iff pi >= sigma, i.e. every block of pi is a union of blocks of sigma."""
    if pi.k != sigma.k:
        raise InputError(f"ground sets differ: k={pi.k} vs k={sigma.k}")
    lead = pi.leader_map()
    return all(len({lead[x] for x in b}) == 1 for b in sigma.blocks)


def graph_of_partition(pi: Partition) -> DirectedMultigraph:
    """The graph G_pi: one vertex per block, edge e_l from block(2l) to block(2l-1).

    Vertex ids are the least elements of the blocks; edge ids are ``"e1"``,
    ``"e2"``, ...  Loops and parallel edges are kept.
    """
    if pi.k % 2:
        raise InputError(f"G_pi needs an even ground set, got k={pi.k}")
    lead = pi.leader_map()
    vertices = tuple(b[0] for b in pi.blocks)
    edges = tuple(Edge(f"e{l}", lead[2 * l], lead[2 * l - 1]) for l in range(1, pi.k // 2 + 1))
    return DirectedMultigraph(vertices, edges)


def cycle_partition(m: int) -> Partition:
    """{2,3},{4,5},...,{2m,1}: the partition whose graph sum is Tr(T_1 ... T_m)."""
    if m < 1:
        raise InputError("m must be positive")
    if m == 1:
        return Partition(2, ((1, 2),))
    blocks = [(2 * l, 2 * l + 1) for l in range(1, m)] + [(1, 2 * m)]
    return Partition(2 * m, tuple(blocks))
