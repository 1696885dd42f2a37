"""Write the fingerprint tables for several primes and characteristics.

    python3 scripts/report_tables.py --primes 2 3 5 --out results/
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from pointedhopf.classify import report_table
from pointedhopf.exactfield import smallest_prime_1_mod


@dataclass
class ReportConfig:
    primes: list[int] = field(default_factory=lambda: [2, 3])
    out: Path = Path("results")
    fmt: str = "markdown"

    def char_modes(self, p: int) -> list[str]:
        return ["equal-p", f"taft:{smallest_prime_1_mod(p)}"]


def main(cfg: ReportConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    suffix = "md" if cfg.fmt == "markdown" else "json"
    for p in cfg.primes:
        for mode in cfg.char_modes(p):
            t0 = time.perf_counter()
            text = report_table(p, mode, cfg.fmt)
            path = cfg.out / f"types_p{p}_{mode.replace(':', '')}.{suffix}"
            path.write_text(text)
            print(f"{path}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--format", dest="fmt", choices=("markdown", "json"), default="markdown")
    main(ReportConfig(**vars(ap.parse_args())))
