"""Turn a dataclass of defaults into command-line overrides."""
import argparse
import dataclasses


def parse(cls, argv=None):
    ap = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        if f.type in (bool, "bool"):
            ap.add_argument(flag, action=argparse.BooleanOptionalAction, default=f.default)
        else:
            typ = {"int": int, "str": str, "float": float}.get(f.type, f.type)
            ap.add_argument(flag, type=typ, default=f.default)
    return cls(**vars(ap.parse_args(argv)))
