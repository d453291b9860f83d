# treesylow/utils.py

import json
import os
import tempfile


def is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


def log2_exact(n):
    """Exponent e with 2**e == n; ValueError otherwise."""
    if not is_power_of_two(n):
        raise ValueError(f'{n} is not a power of two')
    return n.bit_length() - 1


def nu2(n):
    """2-adic valuation of a positive integer."""
    if n <= 0:
        raise ValueError('nu2 needs a positive integer')
    return (n & -n).bit_length() - 1


def decimal_str(n):
    # Orders go up to 2^126; never let them become floats.
    return str(int(n))


def gf2_rank(vectors):
    basis = {}  # leading bit -> vector
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def dump_json(data):
    return json.dumps(data, ensure_ascii=False, indent=2)


def atomic_write_text(path, text):
    """Write text to path through a temp file in the same directory, then move it."""
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix='.part_', dir=folder)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except Exception:
        try:
            os.remove(tmp_path)
        except OSError:
            pass
        raise
