"""
Structured run logging for ramsey-forge
"""
import json
import logging
import os
from datetime import datetime
from typing import Any, Dict, List, Optional

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_console(verbose: bool = False) -> logging.Logger:
    """Attach a stderr handler to the package logger"""
    root = logging.getLogger("ramsey_forge")
    level = logging.INFO if verbose else logging.WARNING
    root.setLevel(level)
    if not any(getattr(h, "_forge_console", False) for h in root.handlers):
        ch = logging.StreamHandler()
        ch.setFormatter(logging.Formatter(FORMAT))
        ch._forge_console = True
        root.addHandler(ch)
    for h in root.handlers:
        if getattr(h, "_forge_console", False):
            h.setLevel(level)
    return root


class ForgeLogger:
    def __init__(self, output_dir: str, run_name: str):
        self.output_dir = output_dir
        self.run_name = run_name
        self.run_id = datetime.now().strftime("%Y%m%d_%H%M%S")

        self.log_dir = os.path.join(output_dir, "results", f"{run_name}_{self.run_id}")
        os.makedirs(self.log_dir, exist_ok=True)

        self.logger = logging.getLogger(f"ramsey_forge.{run_name}")
        self.logger.setLevel(logging.INFO)

        fh = logging.FileHandler(os.path.join(self.log_dir, "run.log"))
        fh.setLevel(logging.INFO)
        fh.setFormatter(logging.Formatter(FORMAT))
        self.logger.addHandler(fh)
        self._file_handler = fh

        self.results: List[Dict[str, Any]] = []
        self.candidates: List[Dict[str, Any]] = []
        self.verdicts: List[Dict[str, Any]] = []

    def log_result(self, item_id: str, result: Dict[str, Any]):
        """Log a single criterion or command result"""
        entry = {
            "timestamp": datetime.now().isoformat(),
            "item_id": item_id,
            "result": result,
        }
        self.results.append(entry)
        self.logger.info(f"Result {item_id}: {result}")

    def log_candidate(self, candidate: str, verdict: str, bad_coloring: Optional[List[int]] = None):
        """Log one candidate examined by a minimal-witness search"""
        entry = {
            "timestamp": datetime.now().isoformat(),
            "candidate": candidate,
            "verdict": verdict,
            "bad_coloring": bad_coloring,
        }
        self.candidates.append(entry)
        self.logger.info(f"Candidate {candidate} -> {verdict}")

    def log_verdict(self, command: str, payload: Dict[str, Any]):
        entry = {
            "timestamp": datetime.now().isoformat(),
            "command": command,
            "payload": payload,
        }
        self.verdicts.append(entry)
        self.logger.info(f"Verdict [{command}]: {payload.get('verdict', 'n/a')}")

    def save_results(self) -> str:
        """Save all logged data to JSONL files"""
        for name, rows in (("results", self.results),
                           ("candidates", self.candidates),
                           ("verdicts", self.verdicts)):
            with open(os.path.join(self.log_dir, f"{name}.jsonl"), "w") as f:
                for row in rows:
                    f.write(json.dumps(row, default=str) + "\n")

        self.logger.info(f"Results saved to {self.log_dir}")
        self.logger.removeHandler(self._file_handler)
        self._file_handler.close()
        return self.log_dir
