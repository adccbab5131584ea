import csv
import io
import json
import math
import os
import typing as ty

from django.template.loader import render_to_string

from sweep.models import CurveTable, CurveRow
from torsion_project.exceptions import DomainError

CSV_HEADER = ('ka', 'lambda', 'delta', 'xi', 're_c_over_beta', 'im_c_over_beta', 'classification')
SIGNIFICANT_DIGITS = 9

#   Plotted quantity of a chart
PHASE = 'phase'
DAMPING = 'damping'
FIGURE_QUANTITIES = {'fig1': DAMPING, 'fig2': PHASE, 'fig3': PHASE}
AXIS_LABELS = {PHASE: 'c/β (phase velocity)', DAMPING: '|Im(c/β)| (damping velocity)'}

VIEWBOX_WIDTH = 640
VIEWBOX_HEIGHT = 400
PLOT_LEFT, PLOT_TOP, PLOT_RIGHT, PLOT_BOTTOM = 72.0, 40.0, 500.0, 344.0
LEGEND_X = 516.0
MAX_TICKS = 6
PALETTE = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b')
PARAMETER_SYMBOLS = (('xi', 'ξ'), ('lambda_', 'λ'), ('delta', 'δ'))


def format_number(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    #   + 0.0 turns -0.0 into 0.0
    return f"{value + 0.0:.{digits}g}"


def format_coordinate(value: float) -> str:
    return f"{value + 0.0:.3f}"


def csv_lines(rows: ty.Iterable[CurveRow]) -> ty.Iterator[ty.List[str]]:
    yield list(CSV_HEADER)
    for row in rows:
        yield [format_number(value) for value in row[:-1]] + [str(row.classification)]


def table_to_csv(table: CurveTable) -> str:
    """
    :return: the table in the stable CSV schema, '\n' line endings
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerows(csv_lines(table.rows))
    return buffer.getvalue()


def write_text(path: str, text: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    #   newline='' keeps '\n' on every platform
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)


def load_config(path: str) -> ty.Dict[str, ty.Any]:
    """
    :param path: a JSON file holding one object whose keys are long flag names, e.g. {"ka": 2, "scan-max": 12}
    :return: the object with keys turned into option names ("scan-max" -> "scan_max", "lambda" -> "lambda_")
    :raise OSError: when the file cannot be read
    :raise DomainError: when it is not a JSON object
    """
    with open(path, encoding='utf-8') as f:
        try:
            config = json.load(f)
        except json.JSONDecodeError as e:
            raise DomainError(f"config {path} is not valid JSON: {e}")
    if not isinstance(config, dict):
        raise DomainError(f"config {path} must hold a JSON object, got {type(config).__name__}")
    options = {}
    for key, value in config.items():
        name = key.lstrip('-').replace('-', '_')
        options['lambda_' if name == 'lambda' else name] = value
    return options


def tick_step(span: float, max_ticks: int = MAX_TICKS) -> float:
    """
    :return: the smallest of 1, 2, 5 times a power of ten that fits at most max_ticks intervals into span
    """
    raw = span / max_ticks
    base = 10.0 ** math.floor(math.log10(raw))
    for multiple in (1, 2, 5):
        if base * multiple >= raw:
            return base * multiple
    return base * 10


def axis_range(values: ty.Sequence[float]) -> ty.Tuple[float, float, float]:
    """
    :return: (low, high, step) with low and high on whole ticks enclosing every value
    """
    low, high = min(values), max(values)
    if high - low < 1e-12 * max(1.0, abs(high)):
        low, high = low - 0.5, high + 0.5
    step = tick_step(high - low)
    return math.floor(low / step + 1e-9) * step, math.ceil(high / step - 1e-9) * step, step


def _ticks(low: float, high: float, step: float) -> ty.List[float]:
    count = int(round((high - low) / step))
    return [round(low + i * step, 10) for i in range(count + 1)]


def curve_label(key: ty.Tuple[float, float, float], varying: ty.Sequence[int]) -> str:
    shown = varying or range(len(key))
    return ', '.join(f"{PARAMETER_SYMBOLS[i][1]} = {key[i]:g}" for i in shown)


def chart_context(table: CurveTable, quantity: str, title: str) -> ty.Dict[str, ty.Any]:
    """
    :param table: the evaluated sweep, one polyline per (xi, lambda, delta) curve
    :param quantity: PHASE plots Re(c/beta), DAMPING plots |Im(c/beta)|
    :param title: chart title
    :return: the template context of cli/figure.svg, every coordinate already formatted
    """
    if quantity not in AXIS_LABELS:
        raise DomainError(f"quantity must be one of {sorted(AXIS_LABELS)}, got {quantity!r}")
    curves = table.curves()
    keys = list(curves)
    varying = [i for i in range(3) if len({key[i] for key in keys}) > 1]

    def value_of(row: CurveRow) -> float:
        return row.re_c_over_beta if quantity == PHASE else abs(row.im_c_over_beta)

    x_low, x_high, x_step = axis_range([row.ka for row in table.rows])
    y_low, y_high, y_step = axis_range([value_of(row) for row in table.rows])

    def to_x(ka: float) -> float:
        return PLOT_LEFT + (ka - x_low) / (x_high - x_low) * (PLOT_RIGHT - PLOT_LEFT)

    def to_y(value: float) -> float:
        return PLOT_BOTTOM - (value - y_low) / (y_high - y_low) * (PLOT_BOTTOM - PLOT_TOP)

    context_curves = []
    for index, (key, rows) in enumerate(curves.items()):
        points = ' '.join(f"{format_coordinate(to_x(row.ka))},{format_coordinate(to_y(value_of(row)))}"
                          for row in rows)
        context_curves.append({
            'points': points,
            'color': PALETTE[index % len(PALETTE)],
            'label': curve_label(key, varying),
            'legend_y': format_coordinate(PLOT_TOP + 8 + 20 * index),
        })

    return {
        'width': VIEWBOX_WIDTH,
        'height': VIEWBOX_HEIGHT,
        'title': title,
        'x_label': 'ka',
        'y_label': AXIS_LABELS[quantity],
        'plot': {name: format_coordinate(value) for name, value in
                 (('left', PLOT_LEFT), ('top', PLOT_TOP), ('right', PLOT_RIGHT), ('bottom', PLOT_BOTTOM),
                  ('width', PLOT_RIGHT - PLOT_LEFT), ('height', PLOT_BOTTOM - PLOT_TOP))},
        'x_ticks': [{'position': format_coordinate(to_x(tick)), 'label': f"{tick:g}"}
                    for tick in _ticks(x_low, x_high, x_step)],
        'y_ticks': [{'position': format_coordinate(to_y(tick)), 'label': f"{tick:g}"}
                    for tick in _ticks(y_low, y_high, y_step)],
        'tick_label_y': format_coordinate(PLOT_BOTTOM + 18),
        'tick_label_x': format_coordinate(PLOT_LEFT - 8),
        'x_label_position': (format_coordinate((PLOT_LEFT + PLOT_RIGHT) / 2), format_coordinate(PLOT_BOTTOM + 40)),
        'y_label_position': (format_coordinate(PLOT_LEFT - 52), format_coordinate((PLOT_TOP + PLOT_BOTTOM) / 2)),
        'legend_x': format_coordinate(LEGEND_X),
        'legend_text_x': format_coordinate(LEGEND_X + 28),
        'curves': context_curves,
        'provenance': table.provenance,
    }


def render_chart(table: CurveTable, quantity: str, title: str) -> str:
    return render_to_string('cli/figure.svg', chart_context(table, quantity, title))


def write_figure(table: CurveTable, out_dir: str, name: str, quantity: str = None) -> ty.List[str]:
    """
    :param table: the evaluated sweep
    :param out_dir: created when missing
    :param name: base file name, e.g. 'fig2'
    :param quantity: plotted quantity, by default the one the figure name calls for
    :return: paths of the CSV and the SVG written
    """
    quantity = quantity or FIGURE_QUANTITIES.get(name, PHASE)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    svg_path = os.path.join(out_dir, f"{name}.svg")
    write_text(csv_path, table_to_csv(table))
    write_text(svg_path, render_chart(table, quantity, title=f"{name}: {AXIS_LABELS[quantity]} versus ka"))
    return [csv_path, svg_path]
