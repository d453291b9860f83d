"""
Command line for the tree constructions: orders, generators, verification
drivers, classification and exports.

Exit codes: 0 pass, 1 failed verification, 2 bad arguments, 3 engine cap.
"""

import logging
import os
import random
from functools import wraps

import click

from . import classify as cls
from . import portrait as pt
from . import sylow
from .constants import (CHECK_META, CHECKS, ENGINES, EXIT_FAILED, EXIT_RESOURCE,
                        EXPORT_FAMILIES, EXPORT_MAX_ORDER, GENS_FAMILIES,
                        ORDER_FAMILIES)
from .engine import closure, order_schreier_sims, trivial_gens
from .errors import ClosureCapExceeded, TreeSylowError
from .utils import atomic_write_text, decimal_str, dump_json

logger = logging.getLogger(__name__)

FORMATS = ['text', 'json']


def _cap(ctx):
    return ctx.obj.config['CLOSURE_CAP']


def handle_errors(f):
    """Map domain errors onto the exit-code contract."""
    @wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except ClosureCapExceeded as e:
            logger.error('%s', e)
            click.echo(f'Error: {e}', err=True)
            ctx.exit(EXIT_RESOURCE)
        except (TreeSylowError, ValueError) as e:
            raise click.UsageError(str(e), ctx) from e
    return wrapper


def _emit(data, text, output_format):
    click.echo(dump_json(data) if output_format == 'json' else text)


# ==============================================================================
# FAMILIES
# ==============================================================================

def family_gens(family, param):
    """Generating set for a family name and its parameter (k for sbeta/a2k, n otherwise)."""
    if family in ('sbeta', 'a2k'):
        return sylow.s_beta(param)
    if param < 1:
        raise click.BadParameter(f'degree must be positive, got {param}', param_hint='--param')
    if family == 'sn':
        return sylow.syl2_Sn_gens(param)
    if family == 'an':
        return sylow.syl2_An_gens(param) if param >= 3 else trivial_gens(param)
    if family == 'h':
        return sylow.build_h_subgroup(sylow.HSpec.for_degree(param))
    raise click.BadParameter(f'unknown family {family}', param_hint='--family')


def family_order(family, param):
    if family in ('sbeta', 'a2k'):
        if param < 2:
            raise click.BadParameter(f'k must be at least 2, got {param}', param_hint='--param')
        return 2 ** (2 ** param - 2)
    if family == 'sn':
        return sylow.syl2_order_Sn(param)
    if family == 'an':
        return sylow.syl2_order_An(param)
    # H-subgroups have the order of the Sylow 2-subgroup they stand for
    return sylow.syl2_order_An(param)


# ==============================================================================
# COMMANDS
# ==============================================================================

@click.group()
@click.pass_context
def cli(ctx):
    """Sylow 2-subgroups of S_n and A_n as binary tree automorphisms."""
    if ctx.obj is None:
        from . import create_app
        ctx.obj = create_app()


@cli.command('order')
@click.option('--family', type=click.Choice(ORDER_FAMILIES), required=True)
@click.option('--param', type=int, required=True)
@click.option('--engine', 'engines', type=click.Choice(ENGINES), multiple=True)
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='text')
@click.pass_context
@handle_errors
def order_command(ctx, family, param, engines, output_format):
    """Order of a Sylow 2-subgroup, by formula, closure or stabilizer chain."""
    engines = list(dict.fromkeys(engines or ['formula']))
    if param < 1:
        raise click.BadParameter(f'must be positive, got {param}', param_hint='--param')
    expected = family_order(family, param)
    results = {}
    gens = None
    for engine in engines:
        if engine == 'formula':
            results[engine] = expected
            continue
        gens = gens or family_gens(family, param)
        if engine == 'closure':
            results[engine] = closure(gens, _cap(ctx)).order
        else:
            results[engine] = order_schreier_sims(gens)
    values = set(results.values())
    data = {
        'name': gens.name if gens else f'{family}({param})',
        'degree': 2 ** param if family == 'a2k' else param,
        'order': decimal_str(next(iter(values))),
        'engine': '+'.join(results),
        'engines': {e: decimal_str(v) for e, v in results.items()},
    }
    if len(values) > 1:
        click.echo(f'Error: engines disagree: {data["engines"]}', err=True)
        ctx.exit(EXIT_FAILED)
    _emit(data, data['order'], output_format)


@cli.command('gens')
@click.option('--family', type=click.Choice(GENS_FAMILIES), required=True)
@click.option('--param', type=int, required=True)
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='text')
@click.pass_context
@handle_errors
def gens_command(ctx, family, param, output_format):
    """Generating set in cycle notation; portraits too for sbeta."""
    gens = family_gens(family, param)
    data = gens.to_dict()
    lines = [f'# {gens.name} on {gens.degree} points']
    lines.extend(g.to_cycle_string() for g in gens)
    if family == 'sbeta':
        portraits = sylow.s_beta_portraits(param)
        data['portraits'] = [pt.dumps(a) for a in portraits]
        for name, a in zip(sylow.generator_names(param), portraits):
            lines.append(f'# {name}')
            lines.append(pt.dumps(a).rstrip('\n'))
    _emit(data, '\n'.join(lines), output_format)


def _run_check(ctx, check, param):
    cap = _cap(ctx)
    if check == 'evenness':
        rng = random.Random(ctx.obj.config['RANDOM_SEED'])
        return sylow.sample_evenness(param, ctx.obj.config['SAMPLE_WORDS'], rng)
    drivers = {
        'minimal': sylow.verify_minimal,
        'semidirect': sylow.verify_semidirect,
        'frattini': sylow.verify_frattini_action,
        'relations': sylow.verify_order_relations,
        'agreement': sylow.verify_two_constructions,
        'tclass': cls.check_T_not_closed,
        'distance': cls.check_distance_barrier,
        'oddusage': cls.check_odd_usage,
    }
    if check == 'boxtimes':
        return sylow.verify_boxtimes(param)
    return drivers[check](param, cap)


@cli.command('verify')
@click.option('--check', type=click.Choice(CHECKS), required=True)
@click.option('--param', type=int, required=True)
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='json')
@click.pass_context
@handle_errors
def verify_command(ctx, check, param, output_format):
    """Run one verification driver; exit 1 unless every check passes."""
    meta = CHECK_META[check]
    low, high = meta['range']
    if param < low or (high is not None and param > high):
        bound = f'{low}..{high}' if high is not None else f'>= {low}'
        raise click.BadParameter(f'{check} needs {meta["param"]} in {bound}, got {param}',
                                 param_hint='--param')
    report = _run_check(ctx, check, param)
    rows = report.to_dict()
    text = '\n'.join(
        f'{"PASS" if r["pass"] else "FAIL"} {r["check"]} {r["k_or_n"]}: '
        f'expected {r["expected"]}, got {r["got"]}' for r in rows)
    _emit(rows, text, output_format)
    if not report.passed:
        logger.error('verification %s %d failed', check, param)
        ctx.exit(EXIT_FAILED)


@cli.command('classify')
@click.option('--portrait', 'portrait_file', type=click.Path(exists=True, dir_okay=False), required=True)
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='json')
@handle_errors
def classify_command(portrait_file, output_format):
    """Type T / C / CG / other of a portrait file."""
    with open(portrait_file, encoding='utf-8') as f:
        a = pt.loads(f.read())
    result = cls.classify(a)
    data = result.to_dict()
    text = '\n'.join([
        f'klass: {data["klass"]}',
        'half_counts: ' + ' '.join(str(c) for c in data['half_counts']),
        'level_indices: ' + ' '.join(str(c) for c in data['level_indices']),
        f'level_stabilizer: {"yes" if data["is_level_stabilizer"] else "no"}',
    ])
    _emit(data, text, output_format)


@cli.command('decompose')
@click.option('--n', 'n', type=int, required=True)
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='text')
@handle_errors
def decompose_command(n, output_format):
    """Binary decomposition of n with the Sylow order of every block."""
    decomposition = sylow.binary_decompose(n)
    blocks = [{'offset': offset, 'size': 2 ** e, 'sylow_order': decimal_str(sylow.syl2_order_Sn(2 ** e))}
              for offset, e in decomposition.blocks()]
    data = decomposition.to_dict()
    data.update({
        'blocks': blocks,
        'sn_order': decimal_str(sylow.syl2_order_Sn(n)),
        'an_order': decimal_str(sylow.syl2_order_An(n)),
    })
    lines = [f'{n} = ' + ' + '.join(f'2^{e}' for e in decomposition.parts)]
    lines.extend(f'  block {b["offset"] + 1}..{b["offset"] + b["size"]}: |Syl2(S_{b["size"]})| = {b["sylow_order"]}'
                 for b in blocks)
    lines.append(f'|Syl2(S_{n})| = {data["sn_order"]}')
    lines.append(f'|Syl2(A_{n})| = {data["an_order"]}')
    _emit(data, '\n'.join(lines), output_format)


@cli.command('export')
@click.option('--family', type=click.Choice(EXPORT_FAMILIES), required=True)
@click.option('--param', type=int, required=True)
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_errors
def export_command(ctx, family, param, out_path):
    """Write every group element, one sorted one-line form per line."""
    if family == 'sbeta' and not 2 <= param <= 4:
        raise click.BadParameter(f'sbeta export needs k in 2..4, got {param}', param_hint='--param')
    gens = family_gens(family, param)
    if family != 'sbeta' and family_order(family, param) > EXPORT_MAX_ORDER:
        raise click.BadParameter(f'{family}({param}) is too large to export', param_hint='--param')
    if out_path is None:
        folder = ctx.obj.config.get('EXPORT_FOLDER')
        if not folder:
            raise click.UsageError('no --out given and no export folder configured', ctx)
        out_path = os.path.join(folder, f'{family}_{param}.txt')
    table = closure(gens, _cap(ctx))
    atomic_write_text(out_path, '\n'.join(table.export_lines()) + '\n')
    logger.info('exported %d elements of %s to %s', table.order, gens.name, out_path)
    click.echo(f'{table.order} elements written to {out_path}')


@cli.command('count-systems')
@click.option('--param', type=int, required=True)
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='json')
@handle_errors
def count_systems_command(param, output_format):
    """How many {α_0..α_{k-2}, τ_ij} systems generate G_k."""
    result = sylow.count_tau_systems(param)
    text = f'{result.generating} of {result.candidates} systems generate G_{result.k}'
    _emit(result.to_dict(), text, output_format)
