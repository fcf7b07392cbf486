"""How far the degree bound must go before chart presentations stabilise.

For every maximal stalk of every corpus fan, compare two numbers: the least
D whose D+1 check passes, and the least D whose relation list already equals
the one at ``max_degree``.  The first can be smaller than the second, since
the check only looks one degree ahead.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from _config import parse
from monofan import algebra as alg
from monofan import corpus
from monofan import fanspace as fs


@dataclass
class Config:
    """Stabilising degree of chart presentations."""

    max_degree: int = 7
    include_cube: bool = True


def main(cfg: Config):
    fans = corpus.fans()
    if not cfg.include_cube:
        fans.pop("cube")
    for name, F in sorted(fans.items()):
        X = fs.from_classic_fan(F)
        for p in sorted(X.maximal_points):
            S = X.stalks[p]
            t = time.perf_counter()
            final = alg.monoid_algebra(S, D=cfg.max_degree)
            first_cert = stable = None
            for D in range(1, cfg.max_degree + 1):
                P = alg.monoid_algebra(S, D=D)
                if first_cert is None and P.certified_next_degree:
                    first_cert = D
                if stable is None and P.relations == final.relations:
                    stable = D
            top = max((sum(u) for u, _ in final.relations), default=0)
            dt = time.perf_counter() - t
            print(f"{name:18s} {p:14s} gens={len(S.generators):2d} relations={len(final.relations):3d} "
                  f"top degree={top} first check passes at D={first_cert} stable from D={stable}  [{dt:.2f}s]")

if __name__ == "__main__":
    main(parse(Config))
