"""
Chart generation utilities using Plotly

Every chart is built from a results CSV (long format: axes, metric, analytic, simulated, stderr).
"""
import plotly.express as px
import plotly.graph_objects as go
import pandas as pd

ENGINE_DASH = {
    'analytic': 'solid',
    'simulated': 'dot'
}


def _long_form(data, x):
    """Stack the analytic and simulated columns into one 'value' column tagged by 'engine'"""
    keep = [c for c in data.columns if c not in ('analytic', 'simulated', 'stderr', 'gap')]
    stacked = data.melt(id_vars=keep, value_vars=['analytic', 'simulated'], var_name='engine', value_name='value')
    stacked = stacked.dropna(subset=['value'])
    return stacked.sort_values(x)


def _series_label(data, columns):
    """Legend label per row: the metric plus every non-empty extra column"""
    labels = []
    for _, row in data.iterrows():
        parts = [row['metric']] + [f"{c}={row[c]:g}" for c in columns if pd.notna(row[c])]
        labels.append(', '.join(parts))
    return pd.Series(labels, index=data.index, dtype=object)


def create_coverage_chart(data, title='Coverage probability'):
    """
    Create a line chart of coverage against the SINR threshold
    data: DataFrame with columns ['gamma_db', 'metric', 'analytic', 'simulated', ...sweep axes]
    """
    axes = [c for c in data.columns if c not in ('gamma_db', 'metric', 'analytic', 'simulated', 'stderr', 'gap')]
    stacked = _long_form(data, 'gamma_db')
    stacked['series'] = _series_label(stacked, axes)

    fig = px.line(
        stacked,
        x='gamma_db',
        y='value',
        color='series',
        line_dash='engine',
        line_dash_map=ENGINE_DASH,
        markers=True,
        title=title,
        labels={'gamma_db': 'SINR threshold (dB)', 'value': 'Coverage probability', 'series': ''},
        height=500
    )

    fig.update_layout(
        yaxis_range=[0, 1.02],
        hovermode='x unified',
        showlegend=True
    )

    return fig


def create_sweep_chart(data, x, title):
    """
    Create a line chart of each metric against one sweep axis
    data: DataFrame with columns [x, 'metric', 'analytic', 'simulated', ...other sweep axes]
    """
    others = [c for c in data.columns if c not in (x, 'gamma_db', 'metric', 'analytic', 'simulated', 'stderr', 'gap')]
    stacked = _long_form(data, x)
    label_columns = others + (['gamma_db'] if 'gamma_db' in data.columns and data['gamma_db'].notna().any() else [])
    stacked['series'] = _series_label(stacked, label_columns)

    fig = px.line(
        stacked,
        x=x,
        y='value',
        color='series',
        line_dash='engine',
        line_dash_map=ENGINE_DASH,
        markers=True,
        title=title,
        labels={'value': 'Probability', 'series': ''},
        height=500
    )

    fig.update_layout(
        yaxis_range=[0, 1.02],
        hovermode='x unified',
        showlegend=True
    )

    return fig


def create_gap_chart(data, x='gamma_db'):
    """
    Create a bar chart of simulated minus analytic per metric
    data: DataFrame with columns [x, 'metric', 'gap']
    """
    fig = go.Figure()

    for metric, group in data.dropna(subset=['gap']).groupby('metric', sort=True):
        fig.add_trace(go.Bar(
            name=metric,
            x=group[x],
            y=group['gap']
        ))

    fig.update_layout(
        title='Simulated minus analytic',
        xaxis_title=x,
        yaxis_title='Gap',
        barmode='group',
        height=400
    )

    return fig


def chart_for_results(data, experiment):
    """Pick the chart that fits an experiment's CSV"""
    sweep_axes = [c for c in data.columns if c not in ('gamma_db', 'metric', 'analytic', 'simulated', 'stderr', 'gap')]
    title = experiment.replace('_', ' ')
    if 'gamma_db' in data.columns and data['gamma_db'].notna().all() and data['gamma_db'].nunique() > 1:
        return create_coverage_chart(data, title=title)
    if sweep_axes:
        return create_sweep_chart(data, sweep_axes[0], title=title)
    return create_gap_chart(data.assign(point=0), x='point')


def write_chart_svg(csv_path, experiment, path):
    """Render the chart of a written results CSV as SVG"""
    fig = chart_for_results(pd.read_csv(csv_path), experiment)
    fig.write_image(str(path), format='svg')
    return fig
