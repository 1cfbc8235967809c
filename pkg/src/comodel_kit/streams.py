"""Eventually periodic one- and two-sided sequences.

A ``Stream`` is ``prefix`` followed by ``cycle`` repeated forever; an empty
cycle makes it a finite word.  A ``BiStream`` is indexed by all integers:
``core`` sits at positions ``offset ..``, ``right`` repeats after it and
``left`` repeats before it, read leftwards.
"""

from __future__ import annotations

import math


def primitive_root(cycle: tuple) -> tuple:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


class Stream:
    kind = "stream"
    __slots__ = ("prefix", "cycle", "_hash")

    def __init__(self, prefix=(), cycle=()):
        prefix, cycle = tuple(prefix), tuple(cycle)
        if cycle:
            cycle = primitive_root(cycle)
            while prefix and prefix[-1] == cycle[-1]:
                prefix = prefix[:-1]
                cycle = (cycle[-1],) + cycle[:-1]
        self.prefix = prefix
        self.cycle = cycle
        self._hash = hash((self.kind, prefix, cycle))

    @property
    def finite(self):
        return not self.cycle

    def __len__(self):
        if self.cycle:
            raise TypeError("infinite stream has no length")
        return len(self.prefix)

    def length(self):
        return math.inf if self.cycle else len(self.prefix)

    def at(self, k: int):
        """Entry ``k``, or ``None`` past the end of a finite word."""
        if k < 0:
            raise IndexError(k)
        if k < len(self.prefix):
            return self.prefix[k]
        if not self.cycle:
            return None
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def take(self, n: int):
        return tuple(self.at(k) for k in range(n))

    def shift(self, n: int = 1):
        """Drop the first ``n`` entries."""
        if n < 0:
            raise ValueError("negative shift")
        if n <= len(self.prefix):
            return type(self)(self.prefix[n:], self.cycle)
        if not self.cycle:
            return type(self)((), ())
        r = (n - len(self.prefix)) % len(self.cycle)
        return type(self)((), self.cycle[r:] + self.cycle[:r])

    def cons(self, v):
        return type(self)((v,) + self.prefix, self.cycle)

    def horizon(self):
        """Entries at or beyond this index repeat with period ``len(cycle)``."""
        return len(self.prefix)

    def __eq__(self, other):
        return (type(other) is type(self) and self.prefix == other.prefix
                and self.cycle == other.cycle)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({list(self.prefix)}, {list(self.cycle)})"

    def to_json(self):
        return {"kind": self.kind, "prefix": list(self.prefix), "cycle": list(self.cycle)}


def eventually_equal_from(a: Stream, b: Stream, i: int = 0):
    """Least ``m >= max(0, -i)`` with ``a[k] == b[k + i]`` for all ``k >= m``,
    or ``None`` if there is none.  Entries past the end of finite words
    compare equal to each other only."""
    lo = max(0, -i)
    per = math.lcm(max(len(a.cycle), 1), max(len(b.cycle), 1))
    far = max(a.horizon(), b.horizon() - i, lo)
    for k in range(far, far + per):
        if a.at(k) != b.at(k + i):
            return None
    m = far
    while m > lo and a.at(m - 1) == b.at(m - 1 + i):
        m -= 1
    return m


class BiStream:
    kind = "bistream"
    __slots__ = ("left", "core", "right", "offset", "_hash")

    def __init__(self, left, core, right, offset: int = 0):
        left, core, right = tuple(left), tuple(core), tuple(right)
        if not left or not right:
            raise ValueError("both tails of a bi-infinite stream need a cycle")
        left, right = primitive_root(left), primitive_root(right)
        while core and core[-1] == right[-1]:
            core = core[:-1]
            right = (right[-1],) + right[:-1]
        while core and core[0] == left[-1]:
            core = core[1:]
            left = (left[-1],) + left[:-1]
            offset += 1
        self.left, self.core, self.right, self.offset = left, core, right, offset
        self._hash = hash((self.kind,) + tuple(self.at(k) for k in range(-6, 7)))

    @classmethod
    def constant(cls, v):
        return cls((v,), (), (v,), 0)

    def end(self):
        return self.offset + len(self.core)

    def at(self, k: int):
        if k >= self.end():
            return self.right[(k - self.end()) % len(self.right)]
        if k >= self.offset:
            return self.core[k - self.offset]
        return self.left[(self.offset - 1 - k) % len(self.left)]

    def window(self, lo: int, hi: int):
        return tuple(self.at(k) for k in range(lo, hi))

    def shift(self, i: int):
        """The stream ``k -> self[k + i]``."""
        return type(self)(self.left, self.core, self.right, self.offset - i)

    def override(self, values: dict):
        """Replace finitely many entries."""
        if not values:
            return self
        lo = min(min(values), self.offset)
        hi = max(max(values) + 1, self.end())
        core = [values.get(k, self.at(k)) for k in range(lo, hi)]
        left = tuple(self.at(lo - 1 - j) for j in range(len(self.left)))
        right = tuple(self.at(hi + j) for j in range(len(self.right)))
        return type(self)(left, core, right, lo)

    def _bounds(self, other):
        lo = min(self.offset, other.offset) - math.lcm(len(self.left), len(other.left))
        hi = max(self.end(), other.end()) + math.lcm(len(self.right), len(other.right))
        return lo, hi

    def differences(self, other):
        """Positions where the two streams differ, or ``None`` if infinitely
        many."""
        lo, hi = self._bounds(other)
        per_l = math.lcm(len(self.left), len(other.left))
        per_r = math.lcm(len(self.right), len(other.right))
        if any(self.at(k) != other.at(k) for k in range(lo - per_l, lo)):
            return None
        if any(self.at(k) != other.at(k) for k in range(hi, hi + per_r)):
            return None
        return [k for k in range(lo, hi) if self.at(k) != other.at(k)]

    def __eq__(self, other):
        if type(other) is not type(self):
            return False
        lo, hi = self._bounds(other)
        return all(self.at(k) == other.at(k) for k in range(lo, hi))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"{type(self).__name__}(left={list(self.left)}, core={list(self.core)}, "
                f"right={list(self.right)}, offset={self.offset})")

    def to_json(self):
        return {"kind": self.kind, "left": list(self.left), "core": list(self.core),
                "right": list(self.right), "offset": self.offset}
