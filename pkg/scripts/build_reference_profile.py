#!/usr/bin/env python3
"""Rebuild the bundled reference profile.

The ring/bridge/hanger tallies come from the published measurements of
a full 19,936-node AS-relationship snapshot. Fitted coefficients,
per-ring degree bounds, and the provider histogram are calibration
parameters of this toolkit (the raw snapshot is not distributed with
the package); regeneration fidelity for these is checked by the test
suite rather than against the source data.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from jellytopo.fileio import save_profile
from jellytopo.profile import BridgeStats, HangerStats, JellyfishProfile, RingStats

TOTAL_NODES = 19936

# ring -> (nodes, p2p_intra, cp_intra)
RING_ROWS = {
    0: (9, 36, 0),
    1: (6419, 12873, 7396),
    2: (6102, 1167, 1481),
    3: (1245, 165, 190),
    4: (151, 3, 8),
    5: (6, 0, 0),
}

# origin ring -> hanger count
HANGER_ROWS = {0: 1254, 1: 2912, 2: 1420, 3: 377, 4: 39, 5: 1}

# (low, high) -> (p2p, cp)
BRIDGE_ROWS = {
    (0, 1): (521, 9104),
    (0, 2): (91, 0),
    (0, 3): (2, 0),
    (1, 2): (5532, 11679),
    (1, 3): (261, 930),
    (1, 4): (24, 56),
    (1, 5): (2, 0),
    (2, 3): (514, 1216),
    (2, 4): (27, 87),
    (3, 4): (24, 106),
    (3, 5): (1, 2),
    (4, 5): (0, 6),
}

# Calibration parameters, per ring:
# gamma: intra-ring P2P power-law exponent (None where no intra P2P exists)
GAMMA = {0: None, 1: 2.0, 2: 2.3, 3: 2.4, 4: 2.5, 5: None}
# alpha: rich-gets-richer pace for endpoint selection
ALPHA = {0: 2.8, 1: 1.3, 2: 0.9, 3: 2.2, 4: 1.8, 5: 0.5}
# per-node degree bounds (p2p_min, p2p_max, cp_min, cp_max)
BOUNDS = {
    0: (8, 150, 60, 2500),
    1: (0, 120, 0, 250),
    2: (0, 60, 0, 120),
    3: (0, 30, 0, 80),
    4: (0, 10, 0, 25),
    5: (0, 3, 0, 8),
}

# Fraction of nodes by provider count (calibration target for the
# generator's 2-provider bias).
PROVIDER_HISTOGRAM = {0: 0.12, 1: 0.42, 2: 0.22, 3: 0.11, 4: 0.07, 5: 0.03, 6: 0.02, 7: 0.01}


def build() -> JellyfishProfile:
    rings = []
    for r, (nodes, p2p, cp) in sorted(RING_ROWS.items()):
        pmin, pmax, cmin, cmax = BOUNDS[r]
        rings.append(
            RingStats(
                ring=r,
                node_fraction=nodes / TOTAL_NODES,
                p2p_intra=p2p,
                cp_intra=cp,
                p2p_powerlaw_exponent=GAMMA[r],
                rgr_coefficient=ALPHA[r],
                p2p_min=pmin,
                p2p_max=pmax,
                cp_min=cmin,
                cp_max=cmax,
            )
        )
    bridges = [
        BridgeStats(low, high, p2p, cp)
        for (low, high), (p2p, cp) in sorted(BRIDGE_ROWS.items())
    ]
    hangers = [
        HangerStats(origin, count / TOTAL_NODES)
        for origin, count in sorted(HANGER_ROWS.items())
    ]
    total_edges = (
        sum(p + c for _, p, c in RING_ROWS.values())
        + sum(p + c for p, c in BRIDGE_ROWS.values())
        + sum(HANGER_ROWS.values())
    )
    profile = JellyfishProfile(
        total_nodes=TOTAL_NODES,
        total_edges=total_edges,
        core_size=RING_ROWS[0][0],
        rings=rings,
        bridges=bridges,
        hangers=hangers,
        provider_count_histogram=dict(PROVIDER_HISTOGRAM),
    )
    profile.validate()
    return profile


if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parents[1] / "src/jellytopo/data/reference_profile.json"
    save_profile(build(), str(out))
    print(f"wrote {out}")
