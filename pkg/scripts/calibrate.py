#!/usr/bin/env python3
"""Dev harness: regenerate from the bundled profile and report fidelity.

Prints everything the acceptance suite checks so calibration parameters
in build_reference_profile.py can be tuned: re-decomposed ring/hanger
fractions, intra and bridge edge counts, degree extremes, clustering,
effective diameter, provider histogram.
"""

import sys
import time

import numpy as np

from jellytopo import (
    GeneratorConfig,
    compute_report,
    decompose,
    extract_profile,
    generate,
    layer_distance_bound_check,
    reference_profile,
)
from jellytopo.graph import connected_components


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    bias = float(sys.argv[2]) if len(sys.argv) > 2 else 0.5
    nodes = int(sys.argv[3]) if len(sys.argv) > 3 else None
    prof = reference_profile()
    t0 = time.time()
    g, built, rep = generate(prof, GeneratorConfig(target_nodes=nodes, seed=seed, bias_strength=bias))
    t1 = time.time()
    print(f"generated {g.node_count} nodes / {g.edge_count} edges in {t1-t0:.1f}s "
          f"(repair={rep.repair_edges} retries={rep.retries} reduced={rep.total_reduced()})")

    d = decompose(g)
    t2 = time.time()
    core_match = d.core == built.core
    print(f"decomposed in {t2-t1:.1f}s; core recovered exactly: {core_match} (|core|={len(d.core)})")

    re_prof = extract_profile(g, d)
    t3 = time.time()
    print(f"re-profiled in {t3-t2:.1f}s")

    scale = g.node_count / prof.total_nodes
    print("\nring fractions (target vs re-decomposed, pts delta):")
    for r in prof.rings:
        got = next((x for x in re_prof.rings if x.ring == r.ring), None)
        gf = got.node_fraction if got else 0.0
        print(f"  ring {r.ring}: {r.node_fraction:8.4%} -> {gf:8.4%}  delta {100*(gf-r.node_fraction):+6.2f}pt")
    print("hanger fractions:")
    for h in prof.hangers:
        gf = re_prof.hanger_fraction(h.origin_ring)
        print(f"  origin {h.origin_ring}: {h.node_fraction:8.4%} -> {gf:8.4%}  delta {100*(gf-h.node_fraction):+6.2f}pt")

    print("\nintra-ring counts (scaled target vs re-profiled, rel):")
    for r in prof.rings:
        got = next((x for x in re_prof.rings if x.ring == r.ring), None)
        for name in ("p2p_intra", "cp_intra"):
            tgt = round(getattr(r, name) * scale) if r.ring else getattr(r, name)
            val = getattr(got, name) if got else 0
            rel = (val - tgt) / tgt if tgt else 0.0
            flag = "" if (abs(rel) <= 0.03 if tgt else val == 0) else "  <-- off"
            print(f"  ring {r.ring} {name}: {tgt} -> {val} ({rel:+.2%}){flag}")
    print("bridge counts:")
    seen = set()
    for b in prof.bridges:
        got = re_prof.bridge(b.low, b.high)
        seen.add((b.low, b.high))
        for name in ("p2p_count", "cp_count"):
            tgt = round(getattr(b, name) * scale)
            val = getattr(got, name) if got else 0
            rel = (val - tgt) / tgt if tgt else 0.0
            flag = "" if (abs(rel) <= 0.03 if tgt else val == 0) else "  <-- off"
            print(f"  bridge {b.low}-{b.high} {name}: {tgt} -> {val} ({rel:+.2%}){flag}")
    for b in re_prof.bridges:
        if (b.low, b.high) not in seen:
            print(f"  bridge {b.low}-{b.high} UNEXPECTED: p2p={b.p2p_count} cp={b.cp_count}")

    t4 = time.time()
    mr = compute_report(g)
    t5 = time.time()
    print(f"\nmetrics in {t5-t4:.1f}s:")
    print(f"  max degree {mr.max_degree} (want 1620..3645)")
    print(f"  clustering {mr.clustering_coefficient:.4f} (want 0.03..0.09), max local {mr.max_local_clustering}")
    print(f"  effective diameter {mr.effective_diameter:.3f} (want 4.5..5.5), diameter {mr.diameter}")
    print(f"  MIR {mr.mutual_information_ratio:.4f}")
    print(f"  components: {len(connected_components(g))}")

    top = sorted(range(g.node_count), key=g.degree, reverse=True)[:12]
    print("  top degrees:", [(v, g.degree(v), built.ring_of.get(v, 'h')) for v in top])

    print("\nprovider histogram (profile target vs generated):")
    for k in sorted(set(prof.provider_count_histogram) | set(re_prof.provider_count_histogram))[:8]:
        a = prof.provider_count_histogram.get(k, 0.0)
        b = re_prof.provider_count_histogram.get(k, 0.0)
        print(f"  {k}: {a:.4f} -> {b:.4f}")

    ok, viol = layer_distance_bound_check(g, d)
    print(f"\nlayer distance bound: ok={ok} violations={len(viol)}")
    print(f"total wall time {time.time()-t0:.1f}s")


if __name__ == "__main__":
    main()
