"""Thin one maximal stalk of the deformed-cube fan and see what survives.

The cube fan is complete and not projective.  Each maximal stalk S is
replaced by a submonoid with the same saturation (one irreducible h removed,
h + S and 2h, 3h added back); is_fan is re-checked before anything else.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from _config import parse
from monofan import classify as cl
from monofan import corpus
from monofan import fanspace as fs
from monofan import monoid as mon
from monofan import polyhedral as poly


@dataclass
class Config:
    """Non-normal separated fans over the non-projective cube fan."""

    which: int = -1  # index of the irreducible generator to remove; -1 tries all
    full_verdict: bool = False


def main(cfg: Config):
    F = corpus.cube_fan()
    print(f"cube fan: {len(F.cones)} cones, {len(F.maximal_cones)} maximal, complete={poly.is_complete(F)}")
    X = fs.from_classic_fan(F)
    print("base verdict:", "classic toric" if cl.classify(X) else "not classic toric")
    for top in sorted(X.maximal_points):
        S = X.stalks[top]
        irr = mon.irreducible_generators(S)
        picks = range(len(irr)) if cfg.which < 0 else [cfg.which]
        for k in picks:
            t = time.perf_counter()
            T = mon.remove_irreducible(S, irr[k])
            Y = fs.replace_stalk(X, top, T)
            if fs.is_fan(Y) is None:
                print(f"{top:12s} drop {irr[k]}: not a fan ({fs.fan_obstruction(Y)[1]})")
                continue
            sep = cl.is_separated(Y)[0]
            normal, wit = cl.is_normal(Y)
            line = f"{top:12s} drop {irr[k]}: fan, separated={sep}, normal={normal}"
            if wit:
                line += f", missing {wit[0][1]}"
            print(line + f"  [{time.perf_counter() - t:.2f}s]")
            if cfg.full_verdict:
                print("    failures:", cl.classify(Y).failures)


if __name__ == "__main__":
    main(parse(Config))
