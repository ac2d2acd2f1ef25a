"""Permutations of {0, ..., n-1} as immutable image tuples.

This is the user-facing element type. Bulk group computations do not loop over
Permutation objects; they run on the parent group's image table (see groups.py).
"""

from __future__ import annotations

from math import lcm


class Permutation:
    """A permutation stored as the tuple of images of 0..n-1.

    Products compose right-to-left: (a * b)(x) = a(b(x)).
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        o = other.images
        s = self.images
        return Permutation(tuple(s[o[x]] for x in range(len(s))))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycle decomposition, each cycle rotated to start at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(cycles, degree: int | None = None) -> "Permutation":
        """Build from an iterable of cycles given as int sequences (0-based)."""
        cycles = [tuple(int(x) for x in c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=-1)
        if degree is None:
            degree = top + 1
        elif top >= degree:
            raise ValueError(f"cycle point {top} exceeds degree {degree}")
        images = list(range(degree))
        for c in cycles:
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c!r}")
            for i, x in enumerate(c):
                if images[x] != x:
                    raise ValueError(f"point {x} appears in two cycles")
            for i, x in enumerate(c):
                images[x] = c[(i + 1) % len(c)]
        return Permutation(images)

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_string()}]"


def parse_cycle_string(text: str) -> list[tuple[int, ...]]:
    """Parse "(0 1 2)(3 4)" into [(0,1,2), (3,4)]. Points are 0-based ints."""
    text = text.strip()
    if text in ("", "()"):
        return []
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = []
    for part in text[1:-1].split(")("):
        points = tuple(int(tok) for tok in part.replace(",", " ").split())
        if not points:
            raise ValueError(f"empty cycle in {text!r}")
        cycles.append(points)
    return cycles
