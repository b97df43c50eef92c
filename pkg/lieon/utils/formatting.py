"""
Text formatting utilities for lieon output
"""

import os
import sys

# Colors only on interactive terminals
USE_COLORS = hasattr(sys.stdout, 'isatty') and sys.stdout.isatty()


class Color:
    RESET = '\033[0m'
    BOLD = '\033[1m'
    BLUE = '\033[94m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    MAGENTA = '\033[95m'

    if os.name == 'nt' and not os.environ.get('TERM'):
        RESET = BOLD = BLUE = GREEN = YELLOW = RED = MAGENTA = ''


class Icon:
    SUCCESS = '✅ '
    WARNING = '⚠️  '
    HEADER = '🚀 '


def colored(text, color='', icon=''):
    if USE_COLORS and color:
        return f"{color}{icon}{text}{Color.RESET}"
    return f"{icon}{text}"


def format_check(report):
    """One-line check report: jacobi: ok, theta: (-1,0), rank: 2, lieon: dee(2)."""
    if not report['jacobi']:
        return f"jacobi: FAIL, defect: {report['defect']}"
    theta = report['theta']
    theta = '0' if not any(theta) else '(' + ','.join(str(c) for c in theta) + ')'
    return f"jacobi: ok, theta: {theta}, rank: {report['rank']}, lieon: {report['lieon']}"


def format_cluster_report(report):
    """Lines of the low-dimensional comparison, header first."""
    lines = [
        colored(f"n={report['n']}: enumerated {report['enumerated']}, named {report['named']}",
                Color.BOLD + Color.MAGENTA, Icon.HEADER),
    ]
    for row in report['clusters']:
        mark = Icon.SUCCESS if row['dimension_ok'] else Icon.WARNING
        name = f" [{row['name']}]" if row['name'] else ''
        lines.append(f"  {mark}{row['family']}  card {row['card']}{name}")
    for entry in report.get('unmatched', ()):
        lines.append(colored(f"{entry['name']}: {entry['family']} is not a cluster, completes to {entry['completes_to']}",
                             Color.YELLOW, Icon.WARNING))
    for name in report.get('unlisted', ()):
        lines.append(colored(f"{name}: enumerated but not on the named list", Color.YELLOW, Icon.WARNING))
    if report['enumerated'] != report['named']:
        lines.append(colored(f"count differs from the named list by {report['enumerated'] - report['named']}",
                             Color.YELLOW, Icon.WARNING))
    return lines
