"""
Portraits of automorphisms of the truncated binary rooted tree X^[k].

A portrait carries one activity bit per internal vertex. Vertex v_{l,i}
(level l in 0..k-1, position i in 1..2^l, left to right) lives at bit
``2^l - 1 + (i - 1)`` of a single integer, so levels are packed contiguously
in heap order. An active vertex swaps the two subtrees hanging below it.

Leaves are numbered 1..2^k left to right; along the root-to-leaf path with
branch bits x_0..x_{k-1}, the leaf number is 1 + sum x_l * 2^(k-1-l).
"""

from dataclasses import dataclass

from .errors import (IncompatibleDepthsError, InvalidDepthError,
                     LeafHasNoStateError, LevelOutOfRangeError,
                     NotATreeAutomorphismError, SerializationError)
from .perm import Permutation


def _level_offset(level):
    return (1 << level) - 1


def _check_depth(k):
    if not isinstance(k, int) or k < 1:
        raise InvalidDepthError(f'tree depth must be a positive integer, got {k!r}')


@dataclass(frozen=True, slots=True)
class VertexAddress:
    level: int
    position: int

    def __post_init__(self):
        if self.level < 0 or not 1 <= self.position <= (1 << self.level):
            raise LevelOutOfRangeError(f'no vertex at level {self.level}, position {self.position}')

    @property
    def index(self):
        """0-based position within the level; its bits are the path from the root."""
        return self.position - 1


@dataclass(frozen=True, slots=True)
class Portrait:
    depth: int
    bits: int = 0

    def __post_init__(self):
        _check_depth(self.depth)
        if not 0 <= self.bits < (1 << _level_offset(self.depth)):
            raise InvalidDepthError(f'label bits do not fit a depth-{self.depth} tree')

    @classmethod
    def from_levels(cls, levels):
        """Build from per-level bit sequences; level l must have 2^l entries."""
        levels = [list(level) for level in levels]
        _check_depth(len(levels))
        bits = 0
        for l, level in enumerate(levels):
            if len(level) != 1 << l:
                raise InvalidDepthError(f'level {l} needs {1 << l} labels, got {len(level)}')
            for i, b in enumerate(level):
                if b not in (0, 1):
                    raise InvalidDepthError(f'labels are bits, got {b!r}')
                if b:
                    bits |= 1 << (_level_offset(l) + i)
        return cls(len(levels), bits)

    def level_bits(self, level):
        """Labels of one level as an integer; bit i is position i+1."""
        if not 0 <= level < self.depth:
            raise LevelOutOfRangeError(f'level {level} outside 0..{self.depth - 1}')
        return (self.bits >> _level_offset(level)) & ((1 << (1 << level)) - 1)

    @property
    def levels(self):
        out = []
        for l in range(self.depth):
            word = self.level_bits(l)
            out.append(tuple((word >> i) & 1 for i in range(1 << l)))
        return tuple(out)

    def label(self, level, index):
        """Activity of the vertex with 0-based index at a level."""
        return (self.bits >> (_level_offset(level) + index)) & 1

    def active_positions(self, level):
        word = self.level_bits(level)
        return [i + 1 for i in range(1 << level) if (word >> i) & 1]

    def __str__(self):
        return dumps(self).rstrip('\n').replace('\n', ' / ')


# ==============================================================================
# CONSTRUCTORS
# ==============================================================================

def identity(k):
    _check_depth(k)
    return Portrait(k, 0)


def vertex_swap(k, v):
    """Portrait whose only active state sits at vertex v."""
    _check_depth(k)
    if v.level == k:
        raise LeafHasNoStateError(f'{v} is a leaf of X^[{k}] and carries no state')
    if v.level > k:
        raise LevelOutOfRangeError(f'{v} is below the leaves of X^[{k}]')
    return Portrait(k, 1 << (_level_offset(v.level) + v.index))


def from_active(k, vertices):
    """Portrait active exactly at the given vertices (addresses or (level, position) pairs)."""
    _check_depth(k)
    bits = 0
    for v in vertices:
        if not isinstance(v, VertexAddress):
            v = VertexAddress(*v)
        if v.level >= k:
            raise LeafHasNoStateError(f'{v} carries no state in X^[{k}]')
        bits ^= 1 << (_level_offset(v.level) + v.index)
    return Portrait(k, bits)


def random_portrait(k, rng):
    _check_depth(k)
    return Portrait(k, rng.getrandbits(_level_offset(k)))


# ==============================================================================
# ACTION ON VERTICES
# ==============================================================================

def _level_maps(a, upto=None):
    """maps[l][i] = image index of vertex (l, i) under a, for l = 0..upto."""
    upto = a.depth if upto is None else upto
    maps = [(0,)]
    for l in range(upto):
        prev = maps[-1]
        cur = [0] * (1 << (l + 1))
        for p, q in enumerate(prev):
            flip = a.label(l, p)
            cur[2 * p] = 2 * q + flip
            cur[2 * p + 1] = 2 * q + (1 - flip)
        maps.append(tuple(cur))
    return maps


def vertex_image(a, v):
    if not 0 <= v.level <= a.depth:
        raise LevelOutOfRangeError(f'{v} is not a vertex of X^[{a.depth}]')
    q = 0
    for j in range(v.level):
        prefix = v.index >> (v.level - j)
        bit = (v.index >> (v.level - 1 - j)) & 1
        q = 2 * q + (bit ^ a.label(j, prefix))
    return VertexAddress(v.level, q + 1)


# ==============================================================================
# GROUP OPERATIONS
# ==============================================================================

def compose(a, b):
    """a∘b (apply b first); label_{a∘b}(v) = label_b(v) XOR label_a(b̂(v))."""
    if a.depth != b.depth:
        raise IncompatibleDepthsError(f'depths {a.depth} and {b.depth} differ')
    maps = _level_maps(b, b.depth - 1)
    bits = b.bits
    for l, image in enumerate(maps):
        off = _level_offset(l)
        for i, j in enumerate(image):
            if a.label(l, j):
                bits ^= 1 << (off + i)
    return Portrait(a.depth, bits)


def inverse(a):
    """label_{a⁻¹}(v) = label_a(â⁻¹(v))."""
    maps = _level_maps(a, a.depth - 1)
    bits = 0
    for l, image in enumerate(maps):
        off = _level_offset(l)
        for i, j in enumerate(image):
            # â(i) = j, so â⁻¹(j) = i
            if a.label(l, i):
                bits |= 1 << (off + j)
    return Portrait(a.depth, bits)


def to_permutation(a):
    """Leaf action of a as a permutation of 1..2^k."""
    return Permutation.from_array_form(_level_maps(a)[-1])


def from_permutation(sigma, k):
    """Recover the portrait whose leaf action is sigma."""
    _check_depth(k)
    if sigma.degree != 1 << k:
        raise NotATreeAutomorphismError(f'degree {sigma.degree} is not 2^{k}')
    af = sigma.array_form
    bits = 0
    for l in range(k):
        span = 1 << (k - l)
        for p in range(1 << l):
            # image of the first leaf under child 0 tells which way v_{l,p+1} turned
            if (af[p * span] >> (k - l - 1)) & 1:
                bits |= 1 << (_level_offset(l) + p)
    a = Portrait(k, bits)
    if to_permutation(a) != sigma:
        raise NotATreeAutomorphismError(f'{sigma} does not preserve the tree X^[{k}]')
    return a


# ==============================================================================
# INVARIANTS
# ==============================================================================

def level_index(a, l):
    """Number of active states on level l."""
    return a.level_bits(l).bit_count()


def restrict(a, m):
    """Keep levels 0..m-1 and drop the rest."""
    if not 1 <= m <= a.depth:
        raise InvalidDepthError(f'cannot restrict depth {a.depth} to {m}')
    return Portrait(m, a.bits & ((1 << _level_offset(m)) - 1))


def vertex_distance(level, i, j):
    """Tree distance between two vertices of one level, given 0-based indices."""
    return 2 * (i ^ j).bit_length()


def vp_distance(a):
    """Largest distance between two active vertices of level k-1; None below two."""
    top = a.depth - 1
    active = [p - 1 for p in a.active_positions(top)]
    if len(active) < 2:
        return None
    return max(vertex_distance(top, i, j)
               for n, i in enumerate(active) for j in active[n + 1:])


def active_distance_multiset(a):
    """Sorted pairwise distances of active vertices of level k-1."""
    top = a.depth - 1
    active = [p - 1 for p in a.active_positions(top)]
    return sorted(vertex_distance(top, i, j)
                  for n, i in enumerate(active) for j in active[n + 1:])


# ==============================================================================
# TEXT FORMAT
# ==============================================================================

def dumps(a):
    """k on the first line, then one line of '0'/'1' per level."""
    lines = [str(a.depth)]
    for level in a.levels:
        lines.append(''.join(str(b) for b in level))
    return '\n'.join(lines) + '\n'


def loads(text):
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise SerializationError('empty portrait text')
    try:
        k = int(lines[0])
    except ValueError as e:
        raise SerializationError(f'first line must be the depth, got {lines[0]!r}') from e
    if k < 1 or len(lines) != k + 1:
        raise SerializationError(f'expected {k} level lines after the depth, got {len(lines) - 1}')
    levels = []
    for l, line in enumerate(lines[1:]):
        if len(line) != 1 << l or set(line) - {'0', '1'}:
            raise SerializationError(f'level {l} must be {1 << l} characters of 0/1, got {line!r}')
        levels.append([int(c) for c in line])
    return Portrait.from_levels(levels)
