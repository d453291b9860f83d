from dataclasses import dataclass, field
from enum import Enum

from .utils import decimal_str


def _text(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return decimal_str(value)
    return str(value)


# ==============================================================================
# VERIFICATION RECORDS
# ==============================================================================

@dataclass(frozen=True)
class CheckReport:
    check: str
    k_or_n: int
    expected: object
    got: object

    @property
    def passed(self):
        return self.expected == self.got

    def to_dict(self):
        return {
            'check': self.check,
            'k_or_n': self.k_or_n,
            'expected': _text(self.expected),
            'got': _text(self.got),
            'pass': self.passed,
        }


class _Report:
    """Shared behaviour of driver reports: a list of checks and a verdict."""

    def checks(self):
        raise NotImplementedError

    @property
    def passed(self):
        return all(c.passed for c in self.checks())

    def to_dict(self):
        return [c.to_dict() for c in self.checks()]


@dataclass(frozen=True)
class SemidirectReport(_Report):
    k: int
    w_order: int
    b_order: int
    g_order: int
    w_normal: bool
    b_normal: bool
    intersection_trivial: bool
    product_is_g: bool
    b_from_doubling: bool

    def checks(self):
        half = 2 ** (2 ** (self.k - 1) - 1)
        k = self.k
        return [
            CheckReport('semidirect.w_order', k, half, self.w_order),
            CheckReport('semidirect.b_order', k, half, self.b_order),
            CheckReport('semidirect.g_order', k, 2 ** (2 ** k - 2), self.g_order),
            CheckReport('semidirect.order_product', k, self.g_order, self.w_order * self.b_order),
            CheckReport('semidirect.w_normal', k, True, self.w_normal),
            CheckReport('semidirect.intersection_trivial', k, True, self.intersection_trivial),
            CheckReport('semidirect.product_is_g', k, True, self.product_is_g),
            CheckReport('semidirect.b_from_doubling', k, True, self.b_from_doubling),
            # recorded as computed; not a pass/fail condition
            CheckReport('semidirect.b_normal', k, self.b_normal, self.b_normal),
        ]


@dataclass(frozen=True)
class MinimalityReport(_Report):
    k: int
    order: int
    rank: int
    cosets: int
    exponent: int
    removal_orders: tuple

    def checks(self):
        k = self.k
        out = [
            CheckReport('minimal.order', k, 2 ** (2 ** k - 2), self.order),
            CheckReport('minimal.rank', k, k, self.rank),
            CheckReport('minimal.quotient_cosets', k, 2 ** k, self.cosets),
            CheckReport('minimal.quotient_exponent', k, 2, self.exponent),
        ]
        for i, sub in enumerate(self.removal_orders):
            out.append(CheckReport(f'minimal.removal_{i}_proper', k, True, sub < self.order))
        return out


@dataclass(frozen=True)
class FrattiniActionReport(_Report):
    k: int
    g_order: int
    phi_order: int
    squares_order: int
    squares_equal_phi: bool
    derived_in_squares: bool
    all_levels_even: bool
    t_in_phi: int
    t_in_g: int
    tau_in_phi: bool

    def checks(self):
        k = self.k
        return [
            CheckReport('frattini.order', k, self.g_order // 2 ** k, self.phi_order),
            CheckReport('frattini.squares_equal_phi', k, True, self.squares_equal_phi),
            CheckReport('frattini.derived_in_squares', k, True, self.derived_in_squares),
            CheckReport('frattini.all_levels_even', k, True, self.all_levels_even),
            CheckReport('frattini.type_t_in_phi', k, 0, self.t_in_phi),
            CheckReport('frattini.type_t_in_g_nonempty', k, True, self.t_in_g > 0),
            CheckReport('frattini.tau_in_phi', k, False, self.tau_in_phi),
        ]


@dataclass(frozen=True)
class OrderRelationsReport(_Report):
    n: int
    entries: tuple = field(default_factory=tuple)

    def checks(self):
        return list(self.entries)


@dataclass(frozen=True)
class AgreementReport(_Report):
    k: int
    sbeta_order: int
    an_order: int
    equal_sets: bool
    relabeling: object = None

    def checks(self):
        k = self.k
        return [
            CheckReport('agreement.orders', k, self.sbeta_order, self.an_order),
            CheckReport('agreement.same_or_conjugate', k, True,
                        self.equal_sets or self.relabeling is not None),
        ]


@dataclass(frozen=True)
class LemmaReport(_Report):
    check: str
    k: int
    holds: bool
    scanned: int
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def checks(self):
        out = [CheckReport(self.check, self.k, True, self.holds)]
        for name, (expected, got) in sorted(self.details.items()):
            out.append(CheckReport(f'{self.check}.{name}', self.k, expected, got))
        return out


@dataclass(frozen=True)
class BoxtimesReport(_Report):
    n: int
    product_order: int
    flat_order: int
    nested_order: int
    blocks: int

    def checks(self):
        n = self.n
        out = [CheckReport('boxtimes.flat_index', n, self.product_order // 2, self.flat_order)]
        if self.blocks >= 3:
            out.append(CheckReport('boxtimes.nested_index', n,
                                   self.product_order // 2 ** (self.blocks - 1), self.nested_order))
        return out


@dataclass(frozen=True)
class SystemsCount:
    k: int
    candidates: int
    generating: int

    def to_dict(self):
        return {
            'k': self.k,
            'candidates': self.candidates,
            'generating': self.generating,
        }


# ==============================================================================
# STRUCTURE RECORDS
# ==============================================================================

@dataclass(frozen=True)
class BinaryDecomposition:
    n: int
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, 'parts', parts)
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise ValueError(f'exponents must be strictly decreasing, got {parts}')
        if sum(2 ** p for p in parts) != self.n:
            raise ValueError(f'parts {parts} do not add up to {self.n}')

    def blocks(self):
        """(offset, exponent) per part, largest block first."""
        out = []
        offset = 0
        for p in self.parts:
            out.append((offset, p))
            offset += 2 ** p
        return out

    def to_dict(self):
        return {'n': self.n, 'parts': list(self.parts)}


@dataclass(frozen=True)
class QuotientStructure:
    cosets: int
    exponent: int
    coset_orders: dict

    def to_dict(self):
        return {
            'cosets': self.cosets,
            'exponent': self.exponent,
            'coset_orders': {str(k): v for k, v in sorted(self.coset_orders.items())},
        }


class Klass(str, Enum):
    T = 'T'
    C = 'C'
    CG = 'CG'
    OTHER = 'other'


@dataclass(frozen=True)
class ElementClass:
    is_level_stabilizer: bool
    first_half_count: int
    second_half_count: int
    klass: Klass
    level_indices: tuple = ()

    @property
    def half_parities(self):
        return (self.first_half_count % 2, self.second_half_count % 2)

    def to_dict(self):
        return {
            'klass': self.klass.value,
            'half_counts': [self.first_half_count, self.second_half_count],
            'level_indices': list(self.level_indices),
            'is_level_stabilizer': self.is_level_stabilizer,
        }
