#!/usr/bin/env python3
"""Sweep staffing levels for every (phase, size) slice and print which level
gives the best chance of landing in the desirable-or-better depth band.

Smoothing 1 keeps sparse slices from declaring levels impossible outright.
"""

from inspectkit import bbn
from inspectkit.dataset import PHASE_ORDER, SizeCategory, reference_dataset
from inspectkit.metrics import DiLevel


def main() -> None:
    ds = reference_dataset()
    target = {DiLevel.DESIRABLE, DiLevel.EXCELLENT}
    print(f"{'phase':<6} {'size':<8} {'best staffing':<14} {'target mass':<12} runner-up")
    for phase in PHASE_ORDER:
        for size in SizeCategory:
            model = bbn.build_model(ds, phase, size, smoothing=1.0)
            grid = bbn.level_grid(model, [bbn.ParamNode.NUM_INSPECTORS])
            ranked = bbn.recommend(model, target, grid)
            best, second = ranked[0], ranked[1]
            print(
                f"{phase.value:<6} {size.value:<8} "
                f"{best.evidence[bbn.ParamNode.NUM_INSPECTORS]:<14} "
                f"{best.target_mass:<12.4f} "
                f"{second.evidence[bbn.ParamNode.NUM_INSPECTORS]} ({second.target_mass:.4f})"
            )


if __name__ == "__main__":
    main()
