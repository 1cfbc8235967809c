"""Affine Dyck words, bracketing machines and the Catalan census.

Words are strings over ``U`` (up) and ``D`` (down).  Heights are naturals or
``INF``.
"""

from __future__ import annotations

import itertools
import math

from .errors import InputError, NotDyck

INF = math.inf


def _validate(word):
    if any(ch not in "UD" for ch in word):
        raise InputError(f"not a word over U/D: {word!r}")


def affine_dyck_check(word: str, n, m) -> bool:
    """Is ``word`` a path from height ``n`` to height ``m``?

    Besides the count ``#D - #U = n - m`` we need the ``i``-th ``U`` to come
    before the ``(i + n)``-th ``D``, so the path never dips below zero.
    From infinite height every word goes to infinite height.
    """
    _validate(word)
    if n == INF or m == INF:
        return n == INF and m == INF
    ups = [i for i, ch in enumerate(word) if ch == "U"]
    downs = [i for i, ch in enumerate(word) if ch == "D"]
    if len(downs) - len(ups) != n - m:
        return False
    for j, pos in enumerate(downs):
        i = j - n  # the (j+1)-th D needs the (j+1-n)-th U before it
        if i >= 0 and (i >= len(ups) or ups[i] > pos):
            return False
    return True


def end_height(word: str, n):
    """Height reached from ``n``, or ``None`` if the walk drops below zero."""
    _validate(word)
    if n == INF:
        return INF
    h = n
    for ch in word:
        h += 1 if ch == "U" else -1
        if h < 0:
            return None
    return h


def affine_words(n, max_len: int):
    """All words of length ``<= max_len`` that are paths out of height ``n``."""
    out = [""]
    frontier = [("", n)]
    for _ in range(max_len):
        nxt = []
        for w, h in frontier:
            nxt.append((w + "U", h + 1 if h != INF else INF))
            if h == INF or h > 0:
                nxt.append((w + "D", h - 1 if h != INF else INF))
        out.extend(w for w, _ in nxt)
        frontier = nxt
    return out


def dyck_words(n: int):
    """All Dyck words with ``n`` pairs, by brute force over ``{U, D}^2n``."""
    for letters in itertools.product("UD", repeat=2 * n):
        w = "".join(letters)
        if affine_dyck_check(w, 0, 0):
            yield w


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def census(n: int) -> int:
    return sum(1 for _ in dyck_words(n))


class FreeMagma:
    """Bracketings of ``a``: ``op(x, y)`` is the string ``(xy)``."""

    unit = "a"

    def op(self, x, y):
        return f"({x}{y})"


class BoundedBracketMagma:
    """Bracketings with at most ``max_leaves`` letters plus an absorbing
    overflow element, so the carrier is finite."""

    unit = "a"
    overflow = "⊤"

    def __init__(self, max_leaves: int = 4):
        self.max_leaves = max_leaves
        self.values = tuple(v for k in range(1, max_leaves + 1)
                            for v in bracketings(k)) + (self.overflow,)

    def op(self, x, y):
        if self.overflow in (x, y):
            return self.overflow
        if x.count("a") + y.count("a") > self.max_leaves:
            return self.overflow
        return f"({x}{y})"


class Opposite:
    """The magma with its multiplication flipped."""

    def __init__(self, magma):
        self.magma = magma
        self.unit = magma.unit
        self.values = getattr(magma, "values", None)

    def op(self, x, y):
        return self.magma.op(y, x)


def bracketings(k: int):
    """All full bracketings of ``k`` letters ``a`` (no outer parentheses
    for a single letter)."""
    if k == 1:
        return ["a"]
    out = []
    for i in range(1, k):
        for left in bracketings(i):
            for right in bracketings(k - i):
                out.append(f"({left}{right})")
    return out


def dyck_run_stack(word: str, magma=None):
    """Run a Dyck word on the stack ``[a]``.

    ``U`` pushes ``a``.  ``D`` pops the top ``y`` and the element ``x``
    below it, then pushes ``op(x, y)``.  A Dyck word leaves one element.
    """
    _validate(word)
    magma = magma or FreeMagma()
    stack = [magma.unit]
    for ch in word:
        if ch == "U":
            stack.append(magma.unit)
        else:
            if len(stack) < 2:
                raise NotDyck(f"{word!r} goes below zero")
            y = stack.pop()
            x = stack.pop()
            stack.append(magma.op(x, y))
    if len(stack) != 1:
        raise NotDyck(f"{word!r} does not return to zero")
    return stack[0]
