"""
Finite permutations on {1..n} in one-line form.

Composition is a left action: ``a.compose(b)`` is the map x -> a(b(x)).
Internally the images are kept 0-based (``array_form``); the public ``images``
and all text formats are 1-based.
"""

import re
from collections import Counter
from math import lcm
from operator import itemgetter

from .errors import BlockOverflowError, DegreeMismatchError, NotAPermutationError

_CYCLE_RE = re.compile(r'\(([^()]*)\)')


def _mul(a, b):
    """a∘b on 0-based array forms."""
    if len(b) < 2:
        return tuple(a[x] for x in b)
    return itemgetter(*b)(a)


def _inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class Permutation:
    """A bijection on {1..n}, stored in one-line form with explicit degree."""

    __slots__ = ('_af', '_hash')

    def __init__(self, images, check=True):
        af = tuple(int(x) - 1 for x in images)
        if check and sorted(af) != list(range(len(af))):
            raise NotAPermutationError(f'{tuple(images)} is not a bijection on 1..{len(af)}')
        self._af = af
        self._hash = None

    # -- constructors --

    @classmethod
    def from_array_form(cls, af):
        """Build from 0-based images without validation (engine hot path)."""
        p = cls.__new__(cls)
        p._af = tuple(af)
        p._hash = None
        return p

    @classmethod
    def identity(cls, n):
        return cls.from_array_form(range(n))

    @classmethod
    def from_cycles(cls, cycles, n):
        af = list(range(n))
        seen = set()
        for cycle in cycles:
            cycle = [int(x) for x in cycle]
            for x in cycle:
                if not 1 <= x <= n or x in seen:
                    raise NotAPermutationError(f'bad cycle {tuple(cycle)} for degree {n}')
                seen.add(x)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                af[a - 1] = b - 1
        return cls.from_array_form(af)

    @classmethod
    def transposition(cls, i, j, n):
        return cls.from_cycles([(i, j)], n)

    # -- basic protocol --

    @property
    def degree(self):
        return len(self._af)

    @property
    def array_form(self):
        return self._af

    @property
    def images(self):
        return tuple(x + 1 for x in self._af)

    def __call__(self, i):
        return self._af[i - 1] + 1

    def __len__(self):
        return len(self._af)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._af == other._af

    def __lt__(self, other):
        return self._af < other._af

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._af)
        return self._hash

    def __mul__(self, other):
        return self.compose(other)

    def __repr__(self):
        return f'Permutation({self.to_cycle_string()!r}, degree={self.degree})'

    def __str__(self):
        return self.to_cycle_string()

    # -- group operations --

    def compose(self, other):
        if self.degree != other.degree:
            raise DegreeMismatchError(f'cannot compose degree {self.degree} with degree {other.degree}')
        return Permutation.from_array_form(_mul(self._af, other._af))

    def inverse(self):
        return Permutation.from_array_form(_inv(self._af))

    def conjugate(self, g):
        """g∘self∘g⁻¹."""
        return g.compose(self).compose(g.inverse())

    def power(self, e):
        result = Permutation.identity(self.degree)
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        while e:
            if e & 1:
                result = result.compose(base)
            base = base.compose(base)
            e >>= 1
        return result

    def is_identity(self):
        return all(i == x for i, x in enumerate(self._af))

    def moved_points(self):
        return [i + 1 for i, x in enumerate(self._af) if i != x]

    # -- cycle structure --

    def cycles(self, include_fixed=False):
        """Cycles as 1-based tuples, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x + 1)
                x = self._af[x]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self):
        """Multiset of cycle lengths, fixed points included, as a Counter."""
        return Counter(len(c) for c in self.cycles(include_fixed=True))

    def element_order(self):
        return lcm(*self.cycle_type()) if self.degree else 1

    def parity(self):
        """0 for even, 1 for odd: n minus the number of cycles, mod 2."""
        return (self.degree - len(self.cycles(include_fixed=True))) % 2

    # -- text formats --

    def to_cycle_string(self):
        cycles = self.cycles()
        if not cycles:
            return '()'
        return ''.join('(' + ' '.join(str(x) for x in c) + ')' for c in cycles)

    def to_oneline_string(self):
        return ','.join(str(x) for x in self.images)


# ==============================================================================
# MODULE-LEVEL OPERATIONS
# ==============================================================================

def compose(a, b):
    return a.compose(b)


def inverse(a):
    return a.inverse()


def element_order(a):
    return a.element_order()


def parity(a):
    return a.parity()


def cycle_type(a):
    return a.cycle_type()


def double(sigma):
    """The doubling map β_σ on 2m points: 2i-1 -> 2σ(i)-1, 2i -> 2σ(i)."""
    af = []
    for x in sigma.array_form:
        af.extend((2 * x, 2 * x + 1))
    return Permutation.from_array_form(af)


def embed_block(sigma, offset, n):
    """Act as sigma on [offset+1, offset+m] and fix every other point of 1..n."""
    m = sigma.degree
    if offset < 0 or offset + m > n:
        raise BlockOverflowError(f'block of size {m} at offset {offset} does not fit in degree {n}')
    af = list(range(n))
    for i, x in enumerate(sigma.array_form):
        af[offset + i] = offset + x
    return Permutation.from_array_form(af)


def parity_extend(sigma, n):
    """sigma on m points -> sigma∘(m+1, m+2)^χ(sigma) on n >= m+2 points; always even."""
    m = sigma.degree
    if n < m + 2:
        raise BlockOverflowError(f'parity extension of degree {m} needs at least {m + 2} points, got {n}')
    out = embed_block(sigma, 0, n)
    if sigma.parity():
        out = out.compose(Permutation.transposition(m + 1, m + 2, n))
    return out


def parse_cycles(text, n):
    """Parse cycle notation such as "(1 2)(7 8)"; "()" is the identity."""
    text = text.strip()
    if _CYCLE_RE.sub('', text).strip():
        raise NotAPermutationError(f'cannot parse cycle notation {text!r}')
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.replace(',', ' ').split()
        if body:
            cycles.append([int(x) for x in body])
    return Permutation.from_cycles(cycles, n)


def parse_oneline(text):
    """Parse comma-separated 1-based images, e.g. "2,1,3"."""
    parts = [p for p in text.strip().split(',') if p.strip()]
    try:
        return Permutation([int(p) for p in parts])
    except ValueError as e:
        if isinstance(e, NotAPermutationError):
            raise
        raise NotAPermutationError(f'cannot parse one-line form {text!r}') from e
