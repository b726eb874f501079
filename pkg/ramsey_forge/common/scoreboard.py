"""
Scoreboard generation for acceptance results
"""
import csv
import logging
import os
from datetime import datetime
from typing import Any, Dict, List

logger = logging.getLogger("ramsey_forge.scoreboard")

FIELDS = ['Criterion', 'Name', 'Metric', 'Value', 'Status', 'Runtime (s)', 'Notes']


def _status(result: Dict[str, Any]) -> str:
    if 'error' in result:
        return 'ERROR'
    return 'PASS' if result.get('passed') else 'FAIL'


def generate_scoreboard(results: List[Dict[str, Any]], output_dir: str) -> str:
    """Write the acceptance scoreboard as CSV and Markdown; returns the Markdown path"""

    tables_dir = os.path.join(output_dir, "tables")
    os.makedirs(tables_dir, exist_ok=True)

    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")

    rows = []
    for result in results:
        runtime = result.get('runtime_seconds')
        rows.append({
            'Criterion': result.get('criterion', '?'),
            'Name': result.get('name', 'Unknown'),
            'Metric': result.get('metric', 'Unknown'),
            'Value': result.get('value', 'ERROR'),
            'Status': _status(result),
            'Runtime (s)': f"{runtime:.2f}" if isinstance(runtime, (int, float)) else 'N/A',
            'Notes': result.get('error', result.get('notes', '')),
        })

    csv_path = os.path.join(tables_dir, "scoreboard.csv")
    with open(csv_path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=FIELDS)
        writer.writeheader()
        writer.writerows(rows)

    md_path = os.path.join(tables_dir, "scoreboard.md")
    passed = sum(1 for r in rows if r['Status'] == 'PASS')
    with open(md_path, 'w') as f:
        f.write("# ramsey-forge Acceptance Results\n\n")
        f.write(f"Generated: {timestamp}\n\n")
        f.write(f"**{passed} of {len(rows)} criteria pass.**\n\n")

        f.write("## Summary\n\n")
        f.write("| " + " | ".join(FIELDS) + " |\n")
        f.write("|" + "|".join("-" * (len(h) + 2) for h in FIELDS) + "|\n")
        for row in rows:
            f.write("| " + " | ".join(str(row[h]) for h in FIELDS) + " |\n")

        f.write("\n## Scope\n\n")
        f.write("- Every verdict comes from exhaustive search at fixed parameters; nothing is extrapolated.\n")
        f.write("- Budget or cap exhaustion is reported as ERROR, never as a verdict.\n")

    logger.info(f"Scoreboard generated: {csv_path} and {md_path}")
    return md_path
