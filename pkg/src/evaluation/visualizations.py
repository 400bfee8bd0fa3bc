"""
Visualization functions for verification reports.
"""

import os
import logging
from typing import Dict, List, Optional

import numpy as np
import matplotlib.pyplot as plt
import seaborn as sns
import pandas as pd

from .reports import summary_frame, verdict_counts

logger = logging.getLogger(__name__)

# Set style
plt.style.use('seaborn-v0_8-darkgrid' if 'seaborn-v0_8-darkgrid' in plt.style.available else 'default')
sns.set_palette("husl")


def _finish(save_path: Optional[str], show: bool, what: str) -> None:
    plt.tight_layout()
    if save_path:
        os.makedirs(os.path.dirname(save_path) if os.path.dirname(save_path) else '.', exist_ok=True)
        plt.savefig(save_path, dpi=200, bbox_inches='tight')
        logger.info(f"{what} saved to {save_path}")
    if show:
        plt.show()
    else:
        plt.close()


def plot_gram_constant_terms(constant_terms: np.ndarray,
                             labels: List[str],
                             save_path: Optional[str] = None,
                             show: bool = False) -> None:
    """
    Heatmap of the Gram matrix at q = 0.

    Args:
        constant_terms: Square array of c0 values (NaN marks a pole)
        labels: Basis word labels in matrix order
        save_path: Optional path to save the figure
        show: Whether to display the plot
    """
    size = max(6, 0.35 * len(labels))
    plt.figure(figsize=(size, size))
    annotate = len(labels) <= 20
    sns.heatmap(constant_terms,
                annot=annotate,
                fmt='.0f',
                cmap='RdBu_r',
                center=0,
                cbar_kws={'label': 'value at q = 0'},
                xticklabels=labels,
                yticklabels=labels,
                linewidths=0.5,
                linecolor='gray')
    plt.title('Gram matrix constant terms', fontsize=14, fontweight='bold', pad=20)
    plt.xticks(rotation=90, fontsize=7)
    plt.yticks(rotation=0, fontsize=7)
    _finish(save_path, show, "Gram heatmap")


def plot_verdict_summary(rows: List[Dict],
                         save_path: Optional[str] = None,
                         show: bool = False) -> None:
    """
    Stacked bars of passed / failed instances per verdict family.
    """
    counts = verdict_counts(summary_frame(rows))
    if counts.empty:
        logger.warning("No verdicts to plot")
        return

    x = np.arange(len(counts))
    fig, ax = plt.subplots(figsize=(max(8, 1.2 * len(counts)), 6))
    ax.bar(x, counts['passed'], label='passed', color='#4c9f70', edgecolor='black')
    ax.bar(x, counts['failed'], bottom=counts['passed'], label='failed', color='#d1495b', edgecolor='black')
    ax.set_xticks(x)
    ax.set_xticklabels(counts['verdict'], rotation=45, ha='right')
    ax.set_ylabel('Instances', fontsize=12, fontweight='bold')
    ax.set_title('Verdicts by family', fontsize=14, fontweight='bold', pad=20)
    ax.legend(fontsize=11, loc='upper right')
    ax.grid(axis='y', alpha=0.3, linestyle='--')

    for i, (p, f) in enumerate(zip(counts['passed'], counts['failed'])):
        if f:
            ax.text(i, p + f, str(f), ha='center', va='bottom', fontsize=9, fontweight='bold')
    _finish(save_path, show, "Verdict summary")


def plot_case_frequencies(rows: List[Dict],
                          save_path: Optional[str] = None,
                          show: bool = False) -> None:
    """
    Star case ids per window, split by whether the straightened product is ordered.
    """
    df = pd.DataFrame([{'case': r['case'], 'ordered': not r.get('residuals')}
                       for r in rows if r.get('case')])
    if df.empty:
        logger.warning("No star cases to plot")
        return
    order = sorted(df['case'].unique())
    plt.figure(figsize=(10, 6))
    sns.countplot(data=df, x='case', hue='ordered', order=order)
    plt.xlabel('Case', fontsize=12, fontweight='bold')
    plt.ylabel('Generator pairs', fontsize=12, fontweight='bold')
    plt.title('Star product cases', fontsize=14, fontweight='bold', pad=20)
    _finish(save_path, show, "Case frequencies")


def create_verification_plots(suite: str,
                              rows: List[Dict],
                              output_dir: str,
                              gram: Optional[Dict] = None,
                              show_plots: bool = False) -> List[str]:
    """
    Save every plot that applies to a suite's rows.

    Args:
        suite: Suite name
        rows: Report rows
        output_dir: Directory for the PNG files
        gram: Optional {'constant_terms': array, 'labels': [...]} for the heatmap
        show_plots: Whether to display plots

    Returns:
        Paths of the saved figures
    """
    os.makedirs(output_dir, exist_ok=True)
    saved = []
    if rows:
        path = os.path.join(output_dir, f'{suite}_verdicts.png')
        plot_verdict_summary(rows, save_path=path, show=show_plots)
        saved.append(path)
    if any(r.get('case') and 'residuals' in r for r in rows):
        path = os.path.join(output_dir, f'{suite}_cases.png')
        plot_case_frequencies(rows, save_path=path, show=show_plots)
        saved.append(path)
    if gram is not None and len(gram['labels']):
        path = os.path.join(output_dir, f'{suite}_gram_c0.png')
        plot_gram_constant_terms(gram['constant_terms'], gram['labels'], save_path=path, show=show_plots)
        saved.append(path)
    return saved
