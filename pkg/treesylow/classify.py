"""
Element types of G_k keyed on the level-(k-1) activity, and exhaustive checks
of their closure, distance and usage-parity properties.
"""

import logging

from . import portrait as pt
from .constants import DEFAULT_CLOSURE_CAP
from .engine import generate_from
from .errors import InvalidDepthError, InvalidParameterError
from .models import ElementClass, Klass, LemmaReport
from .sylow import g_table, tau

logger = logging.getLogger(__name__)


def half_counts(a):
    """Active vertices of level k-1 in the left and right half."""
    top = a.depth - 1
    half = 1 << (top - 1)
    word = a.level_bits(top)
    left = (word & ((1 << half) - 1)).bit_count()
    return left, (word >> half).bit_count()


def is_level_stabilizer(a):
    """Trivial on levels 0..k-2."""
    head = (1 << ((1 << (a.depth - 1)) - 1)) - 1
    return (a.bits & head) == 0


def _restriction_is_alpha(a):
    head = pt.restrict(a, a.depth - 1)
    if head.bits.bit_count() != 1:
        return False
    return any(head.label(l, 0) for l in range(head.depth))


def classify(a):
    if a.depth < 2:
        raise InvalidDepthError(f'classification needs depth >= 2, got {a.depth}')
    first, second = half_counts(a)
    stabilizer = is_level_stabilizer(a)
    if first % 2 and second % 2:
        if stabilizer:
            klass = Klass.T
        elif _restriction_is_alpha(a):
            klass = Klass.CG
        else:
            klass = Klass.C
    else:
        klass = Klass.OTHER
    return ElementClass(is_level_stabilizer=stabilizer, first_half_count=first,
                        second_half_count=second, klass=klass,
                        level_indices=tuple(pt.level_index(a, l) for l in range(a.depth)))


def is_type_t(a):
    return is_level_stabilizer(a) and all(c % 2 for c in half_counts(a))


def _uses_odd_half(a):
    """Member of C, CG or T."""
    return all(c % 2 for c in half_counts(a))


def _portraits(k, cap):
    table = g_table(k, cap)
    return table, [pt.from_permutation(x, k) for x in table.elements]


def _require_k(k, allowed, check):
    if k not in allowed:
        raise InvalidParameterError(f'{check} runs for k in {sorted(allowed)}, got {k}')


def check_T_not_closed(k, cap=DEFAULT_CLOSURE_CAP):
    """No product of two type-T elements, and no square of one, is of type T."""
    _require_k(k, {3, 4}, 'tclass')
    _, elements = _portraits(k, cap)
    t_elements = [a for a in elements if is_type_t(a)]
    closed_pairs = sum(1 for x in t_elements for y in t_elements if is_type_t(pt.compose(x, y)))
    closed_squares = sum(1 for x in t_elements if is_type_t(pt.compose(x, x)))
    report = LemmaReport(
        check='tclass', k=k, holds=closed_pairs == 0 and closed_squares == 0,
        scanned=len(t_elements) ** 2,
        details={
            'type_t_count': (2 ** (2 ** (k - 1) - 2), len(t_elements)),
            'products_of_type_t': (0, closed_pairs),
            'squares_of_type_t': (0, closed_squares),
        })
    logger.info('tclass k=%d: %s', k, 'pass' if report.holds else 'FAIL')
    return report


def check_distance_barrier(k, cap=DEFAULT_CLOSURE_CAP):
    """Level-(k-1) stabilizers of G_k supported in one half never generate a type-T element."""
    _require_k(k, {3, 4}, 'distance')
    table, elements = _portraits(k, cap)
    within = [x for x, a in zip(table.elements, elements)
              if is_level_stabilizer(a) and 0 in half_counts(a)]
    sub = generate_from(within, table.degree, cap, name='within-half')
    hits = sum(1 for x in sub.elements if is_type_t(pt.from_permutation(x, k)))
    report = LemmaReport(
        check='distance', k=k, holds=hits == 0, scanned=len(within),
        details={
            'closure_order': (2 ** (2 ** (k - 1) - 2), sub.order),
            'type_t_in_closure': (0, hits),
            'tau_in_closure': (False, pt.to_permutation(tau(k)) in sub),
        })
    logger.info('distance k=%d: %s', k, 'pass' if report.holds else 'FAIL')
    return report


def check_half_parity_homomorphism(elements):
    """Pairs (x, y) whose half-count parities add under composition."""
    parities = [tuple(c % 2 for c in half_counts(a)) for a in elements]
    good = 0
    for a, pa in zip(elements, parities):
        for b, pb in zip(elements, parities):
            pab = tuple(c % 2 for c in half_counts(pt.compose(a, b)))
            if pab == (pa[0] ^ pb[0], pa[1] ^ pb[1]):
                good += 1
    return good


def check_odd_usage(k=3, cap=DEFAULT_CLOSURE_CAP, max_factors=6):
    """A product equal to a type-T element uses an odd number of C, CG or T factors."""
    _require_k(k, {3}, 'oddusage')
    _, elements = _portraits(k, cap)
    hom_pairs = check_half_parity_homomorphism(elements)

    # reachable (element, parity of C/CG/T factors) after up to max_factors factors
    steps = [(a, int(_uses_odd_half(a))) for a in elements]
    frontier = {(pt.identity(k), 0)}
    seen = set(frontier)
    for _ in range(max_factors):
        frontier = {(pt.compose(x, a), p ^ q) for x, p in frontier for a, q in steps} - seen
        seen |= frontier
    even_t = sum(1 for x, p in seen if p == 0 and is_type_t(x))
    report = LemmaReport(
        check='oddusage', k=k, holds=even_t == 0 and hom_pairs == len(elements) ** 2,
        scanned=len(seen),
        details={
            'half_parity_homomorphism': (len(elements) ** 2, hom_pairs),
            'type_t_from_even_usage': (0, even_t),
        })
    logger.info('oddusage k=%d: %s', k, 'pass' if report.holds else 'FAIL')
    return report
