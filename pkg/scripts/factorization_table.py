"""Tabulate quotients h_k / x^(N) for Hahn-type families on a parameter grid."""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from hiddensl2.exactpoly import rat_str
from hiddensl2.families import Hahn, HahnTilde, hahn_factorization, preset_params, preset_to_json
from hiddensl2.solvable import DegenerateSpectrum, eigenpolys
from hiddensl2.opalg import HeisenbergRep


@dataclass
class Config:
    n_min: int = 2
    n_max: int = 5
    extra: int = 3  # k runs over N..N+extra
    grid: tuple = (Fraction(0), Fraction(1), Fraction(1, 2))


def fmt(q) -> str:
    return "[" + ", ".join(rat_str(c) for c in q.coeffs) + "]"


def label(f) -> str:
    obj = preset_to_json(f)
    name = obj.pop("family")
    return f"{name}(" + ", ".join(f"{k}={v}" for k, v in obj.items()) + ")"


def route(f, k) -> str:
    try:
        eigenpolys(preset_params(f), HeisenbergRep.difference(1), k)
        return "direct"
    except DegenerateSpectrum:
        return "subspace"


def run(cfg: Config):
    print(f"{'family':<32} {'k':>2}  {'route':<8}  quotient (lowest first)")
    families = []
    for N in range(cfg.n_min, cfg.n_max + 1):
        families += [Hahn(a, b, N) for a in cfg.grid for b in cfg.grid]
        families += [HahnTilde(m, v, N) for m in (0, 1) for v in (0, 1)]
    for f in families:
        N = int(f.N)
        for k in range(N, N + cfg.extra + 1):
            print(f"{label(f):<32} {k:>2}  {route(f, k):<8}  {fmt(hahn_factorization(f, k))}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=Config.n_min)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--extra", type=int, default=Config.extra)
    args = ap.parse_args()
    run(Config(args.n_min, args.n_max, args.extra))
