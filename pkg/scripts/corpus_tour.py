"""Classify every corpus space and print one row per space."""
from __future__ import annotations

import time
from dataclasses import dataclass

from _config import parse
from monofan import classify as cl
from monofan import corpus
from monofan import fanspace as fs


@dataclass
class Config:
    """Verdict table for the built-in corpus."""

    include_cube: bool = False
    show_notes: bool = False


def main(cfg: Config):
    spaces = corpus.spaces()
    if cfg.include_cube:
        spaces["cube"] = fs.from_classic_fan(corpus.cube_fan())
    cols = ("is_fan", "irreducible", "normal", "separated")
    print(f"{'space':28s} {'pts':>4s} " + " ".join(f"{c:>11s}" for c in cols) + "  verdict")
    for name, X in sorted(spaces.items()):
        t = time.perf_counter()
        v = cl.classify(X)
        dt = time.perf_counter() - t
        flags = " ".join(f"{str(getattr(v, c)):>11s}" for c in cols)
        verdict = "classic toric" if v else "failed " + ",".join(v.failures)
        print(f"{name:28s} {len(X.points):4d} {flags}  {verdict}  [{dt:.2f}s]")
        if cfg.show_notes:
            for n in v.notes:
                print(f"{'':33s}- {n}")


if __name__ == "__main__":
    main(parse(Config))
