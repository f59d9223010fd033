import logging
from typing import Dict

import click
import numpy as np
from pydantic import ValidationError

from api.document import build_document, ellipticity_document, render_ellipticity, render_text
from api.matrix_file import dump_matrix, load_point, load_spec
from core.canonical import lambda_matrix, omega_matrix, theta_matrix
from errors import LociError, NotElliptic
from geometry.isometry import classify
from geometry.manifold import distance, geodesic
from locus.fixlocus import membership, membership_residual
from locus.report import locus_report
from settings import LOG_LEVEL, SAMPLE_SCALE, SAMPLES, TOL_EIG, TOL_RESIDUAL, VERSION
from utils import format_matrix, format_number

INPUT_ERRORS = (LociError, ValidationError, ValueError, OSError)


def fail_on_input(ctx: click.Context, e: Exception) -> None:
    logging.error(f'Input error: {e}')
    click.echo(f'error: {e}', err=True)
    ctx.exit(2)


def used_tolerances(tol: float, tol_eig: float, scale: float) -> Dict[str, float]:
    return {'tol_residual': tol, 'tol_eig': tol_eig, 'sample_scale': scale}


@click.group()
@click.version_option(VERSION)
@click.option('--log-level', default=LOG_LEVEL, show_default=True, help='Уровень логирования')
def cli(log_level: str):
    """Неподвижные точки эллиптических изометрий пространства положительно определённых матриц."""
    logging.basicConfig(level=log_level.upper(), format='%(levelname)s %(name)s: %(message)s')


@cli.command('classify')
@click.argument('input_path', type=click.Path())
@click.option('--json/--text', 'as_json', default=True)
@click.option('--tol-eig', default=TOL_EIG, show_default=True, type=float)
@click.pass_context
def classify_command(ctx, input_path, as_json, tol_eig):
    """Эллиптична ли изометрия из файла: 0 да, 1 нет, 2 ошибка входа"""
    try:
        spec = load_spec(input_path)
        document = ellipticity_document(classify(spec, tol_eig=tol_eig))
    except INPUT_ERRORS as e:
        fail_on_input(ctx, e)
        return
    click.echo(document.json() if as_json else render_ellipticity(document))
    ctx.exit(0 if document.elliptic else 1)


def run_locus(ctx, input_path, samples, seed, tol, tol_eig, scale, as_json, point_out):
    try:
        spec = load_spec(input_path)
        report = locus_report(spec, samples=samples, seed=seed, tol=tol, scale=scale, tol_eig=tol_eig)
    except INPUT_ERRORS as e:
        fail_on_input(ctx, e)
        return
    document = build_document(report, seed=seed, tolerances=used_tolerances(tol, tol_eig, scale))
    click.echo(document.json() if as_json else render_text(document))

    if point_out and report.first_point is not None:
        with open(point_out, 'w', encoding='utf-8') as f:
            f.write(dump_matrix(report.first_point))
    if not report.ellipticity.elliptic:
        logging.warning(f'{NotElliptic.__name__}: {report.ellipticity.reason.value}')
    ctx.exit(0 if report.passed else 1)


def locus_options(command):
    for option in reversed(
        [
            click.argument('input_path', type=click.Path()),
            click.option('--samples', default=SAMPLES, show_default=True, type=int),
            click.option('--seed', default=0, show_default=True, type=int),
            click.option('--tol', '--tol-residual', 'tol', default=TOL_RESIDUAL, show_default=True, type=float),
            click.option('--tol-eig', default=TOL_EIG, show_default=True, type=float),
            click.option('--scale', default=SAMPLE_SCALE, show_default=True, type=float),
            click.option('--point-out', type=click.Path(), help='Куда записать первую найденную точку'),
        ]
    ):
        command = option(command)
    return command


@cli.command('locus')
@locus_options
@click.option('--json/--text', 'as_json', default=True)
@click.pass_context
def locus_command(ctx, input_path, samples, seed, tol, tol_eig, scale, point_out, as_json):
    """Полный отчёт о множестве неподвижных точек"""
    run_locus(ctx, input_path, samples, seed, tol, tol_eig, scale, as_json, point_out)


@cli.command('report')
@locus_options
@click.pass_context
def report_command(ctx, input_path, samples, seed, tol, tol_eig, scale, point_out):
    """Тот же отчёт, что и locus --text"""
    run_locus(ctx, input_path, samples, seed, tol, tol_eig, scale, False, point_out)


@cli.command('verify')
@click.argument('input_path', type=click.Path())
@click.argument('point_path', type=click.Path())
@click.option('--tol', '--tol-residual', 'tol', default=TOL_RESIDUAL, show_default=True, type=float)
@click.pass_context
def verify_command(ctx, input_path, point_path, tol):
    """0, если точка неподвижна, иначе 1"""
    try:
        spec = load_spec(input_path)
        P = load_point(point_path)
        residual = membership_residual(spec, P)
    except INPUT_ERRORS as e:
        fail_on_input(ctx, e)
        return
    click.echo(f'residual: {format_number(residual)}')
    ctx.exit(0 if membership(spec, P, tol) else 1)


@cli.command('geodesic')
@click.argument('a_path', type=click.Path())
@click.argument('b_path', type=click.Path())
@click.option('--t', 't', default=0.5, show_default=True, type=float)
@click.option('--json/--text', 'as_json', default=False)
@click.pass_context
def geodesic_command(ctx, a_path, b_path, t, as_json):
    try:
        point = geodesic(load_point(a_path), load_point(b_path), t)
    except INPUT_ERRORS as e:
        fail_on_input(ctx, e)
        return
    click.echo(dump_matrix(point) if as_json else format_matrix(point))


@cli.command('distance')
@click.argument('a_path', type=click.Path())
@click.argument('b_path', type=click.Path())
@click.pass_context
def distance_command(ctx, a_path, b_path):
    try:
        value = distance(load_point(a_path), load_point(b_path))
    except INPUT_ERRORS as e:
        fail_on_input(ctx, e)
        return
    click.echo(format_number(value))


@cli.command('example')
@click.argument('name', type=click.Choice(['omega', 'lambda', 'theta', 'identity']))
@click.option('--n', default=3, show_default=True, type=int)
@click.option('--p', default=1, show_default=True, type=int)
@click.option('--m', default=1, show_default=True, type=int)
@click.option('--theta', default=np.pi / 3, show_default=True, type=float)
@click.option('--mu', default=1, show_default=True, type=int)
@click.option('--nu', default=1, show_default=True, type=int)
@click.option('--use-j', is_flag=True)
@click.option('--use-delta', is_flag=True)
@click.option('--out', type=click.Path(), help='Файл для записи, по умолчанию stdout')
@click.pass_context
def example_command(ctx, name, n, p, m, theta, mu, nu, use_j, use_delta, out):
    """Файл матрицы для одного из стандартных примеров Ω_p, Λ_m, Θ_{θ;μ,ν}, I_n"""
    try:
        if name == 'omega':
            M = omega_matrix(p, n)
        elif name == 'lambda':
            M = lambda_matrix(m)
        elif name == 'theta':
            M = theta_matrix(theta, mu, nu)
        else:
            M = np.eye(n)
        text = dump_matrix(M, use_j=use_j, use_delta=use_delta)
    except INPUT_ERRORS as e:
        fail_on_input(ctx, e)
        return
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        click.echo(text)


if __name__ == '__main__':
    cli()
