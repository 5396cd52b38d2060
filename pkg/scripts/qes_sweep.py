"""Sweep the QES block size n and compare spectra across representations.

For each n the characteristic polynomial of the invariant block is computed
in the differential rep and in the difference rep for several step sizes;
the script reports whether they coincide and the worst root residual.
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from hiddensl2.exactpoly import rat
from hiddensl2.opalg import DIFFERENTIAL, HeisenbergRep
from hiddensl2.qes import QesParams, char_poly, invariant_block, qes_spectrum, root_residual


@dataclass
class Config:
    aplus: Fraction = Fraction(1)
    a1: Fraction = Fraction(1, 2)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(1)
    a4: Fraction = Fraction(-1, 3)
    a5: Fraction = Fraction(0)
    n_max: int = 8
    deltas: list = field(default_factory=lambda: [Fraction(1), Fraction(1, 2), Fraction(-2, 3), Fraction(5)])


def run(cfg: Config):
    print(f"{'n':>2}  {'iso':<5}  {'max residual':>12}  roots")
    for n in range(cfg.n_max + 1):
        iso = True
        worst = 0.0
        for d in cfg.deltas:
            qp = QesParams(cfg.aplus, cfg.a1, cfg.a2, cfg.a3, cfg.a4, cfg.a5, d, n)
            ref = char_poly(invariant_block(qp, DIFFERENTIAL))
            iso &= char_poly(invariant_block(qp, HeisenbergRep.difference(d))) == ref
            s = qes_spectrum(qp)
            worst = max([worst] + [root_residual(s.charpoly, r) for r in s.roots])
        roots = ", ".join(f"{r.real:.6g}{r.imag:+.3g}j" for r in sorted(s.roots, key=lambda r: (r.real, r.imag)))
        print(f"{n:>2}  {str(iso):<5}  {worst:>12.2e}  {roots}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    for name in ("aplus", "a1", "a2", "a3", "a4", "a5"):
        ap.add_argument(f"--{name}", type=rat, default=None)
    args = ap.parse_args()
    cfg = Config(n_max=args.n_max)
    for name in ("aplus", "a1", "a2", "a3", "a4", "a5"):
        if getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    run(cfg)
