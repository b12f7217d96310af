"""
Multi-index labels of S-patch control points.

A label of an n-sided depth-``d`` patch is an n-tuple of non-negative
integers summing to ``d``.  Positions are 1-based and cyclic in every public
function (position 0 is position n, position n+1 is position 1); the tuples
themselves are ordinary 0-based Python tuples.
"""

from functools import lru_cache
from math import comb

import numpy as np

from .errors import LabelError, ShiftError

MAX_SIDES = 12
MAX_DEPTH = 16

BOUNDARY = "boundary"
RING = "panel-interior-ring"
FREE = "free"


def _compositions(n, d):
    # lexicographically descending
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


class LabelIndex:
    """Canonical ordering of L_{n,d} with a label -> ordinal map."""

    def __init__(self, n, d):
        if n < 3 or d < 1:
            raise LabelError(f"label set needs n >= 3 and d >= 1, got n={n}, d={d}")
        if n > MAX_SIDES or d > MAX_DEPTH:
            raise LabelError(
                f"n={n}, d={d} exceeds the supported range "
                f"(n <= {MAX_SIDES}, d <= {MAX_DEPTH})"
            )
        self.n = n
        self.d = d
        self.labels = list(_compositions(n, d))
        self._ordinal = {s: o for o, s in enumerate(self.labels)}
        self._array = None

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, s):
        return tuple(s) in self._ordinal

    def __getitem__(self, o):
        return self.labels[o]

    def ordinal(self, s):
        try:
            return self._ordinal[tuple(s)]
        except KeyError:
            raise LabelError(f"{s} is not a label of L_{{{self.n},{self.d}}}") from None

    @property
    def array(self):
        """Labels as an integer array of shape (|L|, n)."""
        if self._array is None:
            self._array = np.array(self.labels, dtype=np.int64)
            self._array.setflags(write=False)
        return self._array

    def __repr__(self):
        return f"LabelIndex(n={self.n}, d={self.d}, size={len(self)})"


@lru_cache(maxsize=64)
def enumerate_labels(n, d):
    """All labels of L_{n,d} in lexicographically descending order."""
    return LabelIndex(n, d)


def label_count(n, d):
    return comb(n + d - 1, d)


def _pos(j, n):
    return (j - 1) % n


def shift(s, j, direction):
    """Move one unit from position ``j`` to ``j+1`` ('+') or ``j-1`` ('-')."""
    n = len(s)
    src = _pos(j, n)
    if direction in ("+", 1):
        dst = _pos(j + 1, n)
    elif direction in ("-", -1):
        dst = _pos(j - 1, n)
    else:
        raise ValueError(f"shift direction must be '+' or '-', got {direction!r}")
    if s[src] <= 0:
        raise ShiftError(f"cannot shift label {tuple(s)} at position {j}: entry is 0")
    out = list(s)
    out[src] -= 1
    out[dst] += 1
    return tuple(out)


def neighbors(s):
    """Labels reachable from ``s`` by one shift, in canonical order."""
    n = len(s)
    out = set()
    for j in range(1, n + 1):
        if s[j - 1] > 0:
            out.add(shift(s, j, "+"))
            out.add(shift(s, j, "-"))
    return sorted(out, reverse=True)


def boundary_label(i, j, n, d):
    """s_{i,j}: entry i is d-j, entry i+1 is j, everything else 0."""
    if not 1 <= i <= n:
        raise LabelError(f"side {i} outside 1..{n}")
    if not 0 <= j <= d:
        raise LabelError(f"boundary position {j} outside 0..{d}")
    s = [0] * n
    s[_pos(i, n)] += d - j
    s[_pos(i + 1, n)] += j
    return tuple(s)


def panel(i, j, n, d):
    """The j-th boundary panel on side i as an ordered list of n labels.

    Element k+1 comes from element k by a forward shift at position i+k-1,
    so element 2 is s_{i,j+1} and one more shift after element n closes the
    cycle.
    """
    if not 0 <= j <= d - 1:
        raise LabelError(f"panel index {j} outside 0..{d - 1}")
    s = boundary_label(i, j, n, d)
    out = [s]
    for k in range(1, n):
        s = shift(s, i + k - 1, "+")
        out.append(s)
    return out


def max_pair_sum(s):
    n = len(s)
    return max(s[k] + s[(k + 1) % n] for k in range(n))


def classify(s, d=None):
    d = sum(s) if d is None else d
    m = max_pair_sum(s)
    if m == d:
        return BOUNDARY
    if m == d - 1:
        return RING
    return FREE


def is_fixed_g1(s, d=None):
    return classify(s, d) != FREE


def class_counts(index):
    counts = {BOUNDARY: 0, RING: 0, FREE: 0}
    for s in index:
        counts[classify(s, index.d)] += 1
    return counts


def format_label(s):
    return ",".join(str(v) for v in s)


def parse_label(text):
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise LabelError(f"malformed label {text!r}") from None
    if any(v < 0 for v in vals):
        raise LabelError(f"negative entry in label {text!r}")
    return vals
