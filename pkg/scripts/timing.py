"""Time construction, axiom checks, grouplike search and fingerprinting per type.

    python3 scripts/timing.py --p 3
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from pointedhopf import analysis as an
from pointedhopf.classify import fingerprint
from pointedhopf.exactfield import FieldSpec, smallest_prime_1_mod
from pointedhopf.families import all_types, build
from pointedhopf.hopfcore import verify_axioms


@dataclass
class TimingConfig:
    p: int = 3
    include_taft: bool = True


def _clock(f, *args):
    t0 = time.perf_counter()
    out = f(*args)
    return out, time.perf_counter() - t0


def main(cfg: TimingConfig) -> None:
    fields = [FieldSpec(cfg.p)]
    if cfg.include_taft:
        fields.append(FieldSpec(smallest_prime_1_mod(cfg.p)))
    print("| type | field | build s | axioms s | grouplikes s | fingerprint s |")
    print("|---|---|---|---|---|---|")
    for F in fields:
        for fid in all_types(cfg.p, F):
            H, tb = _clock(build, fid, False)
            _, ta = _clock(verify_axioms, H)
            _, tg = _clock(an.auto_grouplikes, H)
            _, tf = _clock(fingerprint, H)
            print(f"| {fid.label} | {F} | {tb:.3f} | {ta:.3f} | {tg:.3f} | {tf:.3f} |")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--no-taft", dest="include_taft", action="store_false")
    main(TimingConfig(**vars(ap.parse_args())))
