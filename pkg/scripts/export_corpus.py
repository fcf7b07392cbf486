"""Write the corpus as JSON input documents for the command line tool."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _config import parse
from monofan import cli
from monofan import corpus


@dataclass
class Config:
    """Export corpus documents (monoids, fans, spaces, polytopes, presentations)."""

    out: str = "corpus_json"


def documents() -> dict:
    docs = {}
    for name, S in corpus.monoids().items():
        docs[f"monoid_{name}"] = cli.monoid_doc(S)
    for name, F in corpus.fans().items():
        docs[f"fan_{name}"] = cli.fan_doc(F)
    for name, X in corpus.spaces().items():
        docs[f"space_{name}"] = cli.space_doc(X)
    for name, P in corpus.polytopes().items():
        docs[f"polytope_{name}"] = {"kind": "polytope", "ambient_rank": P.ambient_rank,
                                    "vertices": [list(v) for v in P.vertices]}
    for name, P in corpus.presented().items():
        docs[f"presented_{name}"] = {"kind": "presented_monoid", "generators": P.generator_count,
                                     "relations": [[list(u), list(v)] for u, v in P.relations]}
    return docs


def main(cfg: Config):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in sorted(documents().items()):
        (out / f"{name}.json").write_text(cli._dump(doc))
    print(f"wrote {len(documents())} documents to {out}")


if __name__ == "__main__":
    main(parse(Config))
