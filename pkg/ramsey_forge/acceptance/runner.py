"""
Acceptance runner: executes criteria and collects scoreboard rows
"""
import logging
import time
from typing import Any, Dict, List

from ramsey_forge.acceptance.criteria import EVALUATIONS
from ramsey_forge.config import CRITERIA, RunConfig

logger = logging.getLogger("ramsey_forge.acceptance")


def run_single_criterion(number: int, config: RunConfig) -> Dict[str, Any]:
    """Run one criterion by number"""
    if number not in EVALUATIONS:
        raise ValueError(f"Unknown criterion: {number}")
    meta = CRITERIA[number]
    logger.info(f"Running criterion {number}: {meta['name']}")

    start_time = time.time()
    result = EVALUATIONS[number](config)
    result.update({
        "criterion": number,
        "name": meta["name"],
        "metric": meta["metric"],
        "runtime_seconds": time.time() - start_time,
    })

    logger.info(f"Criterion {number} {'passed' if result['passed'] else 'FAILED'} "
                f"in {result['runtime_seconds']:.1f}s")
    return result


def run_all_criteria(config: RunConfig) -> List[Dict[str, Any]]:
    """Run every criterion; a crashing criterion becomes an ERROR row"""
    results = []
    for number in sorted(EVALUATIONS):
        try:
            results.append(run_single_criterion(number, config))
        except Exception as e:
            logger.error(f"Criterion {number} failed: {e}")
            results.append({
                "criterion": number,
                "name": CRITERIA[number]["name"],
                "metric": CRITERIA[number]["metric"],
                "error": str(e),
                "passed": False,
            })
    return results
