"""Synthetic AS-graph construction from a jellyfish profile.

Phases run in a fixed order: core clique, ring population, intra-ring
P2P wiring, bridge P2P wiring, intra-ring CP, bridge CP, connectivity
repair, hangers. All randomness flows from one seeded stream, so a
given (profile, config) pair always rebuilds the identical graph.

Constraint enforcement while placing CP edges:
  1. the customer -> provider subgraph stays acyclic;
  2. a provider sits in the same or a lower-index ring than its
     customer (violating customers are promoted and counted);
  3. the final graph is connected (repair edges are added when needed);
  4. per-node, per-type edge counts stay inside the ring's observed
     bounds, with nodes below the minimum served first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .decompose import BRIDGE, HANGER, RING, EdgeClass, JellyfishDecomposition
from .errors import InfeasibleProfile, InfeasibleQuota
from .graph import AsGraph, Edge, RelType
from .profile import JellyfishProfile
from . import kernels

log = logging.getLogger(__name__)

_DEFAULT_ALPHA = 1.0
_DEFAULT_GAMMA = 2.0
_PAIRING_ROUNDS = 40


@dataclass
class GeneratorConfig:
    """Knobs for one generation run."""

    target_nodes: int | None = None  # None: regenerate at the profile's full size
    seed: int = 0
    bias_strength: float = 0.5       # chance a CP customer draw targets 1-provider nodes
    max_retries_per_edge: int = 100
    hanger_rel: RelType = RelType.CP

    def validate(self) -> None:
        if not 0.0 <= self.bias_strength <= 1.0:
            raise ValueError("bias_strength must lie in [0, 1]")
        if self.max_retries_per_edge < 1:
            raise ValueError("max_retries_per_edge must be >= 1")
        if self.target_nodes is not None and self.target_nodes < 1:
            raise ValueError("target_nodes must be positive")


@dataclass
class GenerationReport:
    """Per-phase accounting of what the generator placed."""

    target_nodes: int = 0
    scale: float = 1.0
    phase_targets: dict[str, int] = field(default_factory=dict)
    phase_placed: dict[str, int] = field(default_factory=dict)
    retries: int = 0
    reductions: dict[str, int] = field(default_factory=dict)
    repair_edges: int = 0
    promotions: int = 0
    cap_exemptions: int = 0
    notes: list[str] = field(default_factory=list)

    def total_reduced(self) -> int:
        return sum(self.reductions.values())

    def render(self) -> str:
        lines = [
            f"generation report: target_nodes={self.target_nodes} scale={self.scale:.4f}",
            f"  retries={self.retries} repair_edges={self.repair_edges}"
            f" promotions={self.promotions} cap_exemptions={self.cap_exemptions}",
        ]
        for key in self.phase_targets:
            placed = self.phase_placed.get(key, 0)
            tgt = self.phase_targets[key]
            mark = "" if placed == tgt else "  (short)"
            lines.append(f"  {key}: placed {placed} / {tgt}{mark}")
        for key, cnt in self.reductions.items():
            lines.append(f"  reduced {key} by {cnt}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


class _Fenwick:
    """Weighted sampling tree over a fixed index range with mutable weights."""

    __slots__ = ("n", "tree", "weight", "total", "_top")

    def __init__(self, weights: list[float]):
        n = len(weights)
        self.n = n
        self.weight = list(weights)
        tree = [0.0] * (n + 1)
        for i in range(1, n + 1):
            tree[i] += self.weight[i - 1]
            j = i + (i & -i)
            if j <= n:
                tree[j] += tree[i]
        self.tree = tree
        self.total = float(sum(self.weight))
        top = 1
        while top * 2 <= n:
            top *= 2
        self._top = top

    def set(self, i: int, w: float) -> None:
        delta = w - self.weight[i]
        if delta == 0.0:
            return
        self.weight[i] = w
        self.total += delta
        pos = i + 1
        tree = self.tree
        while pos <= self.n:
            tree[pos] += delta
            pos += pos & -pos

    def sample(self, u: float) -> int | None:
        """Index drawn proportionally to weight, or None when all weights are zero."""
        if self.total <= 1e-9:
            return None
        r = u * self.total
        idx = 0
        bit = self._top
        tree = self.tree
        while bit:
            nxt = idx + bit
            if nxt <= self.n and tree[nxt] < r:
                r -= tree[nxt]
                idx = nxt
            bit >>= 1
        if idx >= self.n:
            idx = self.n - 1
        if self.weight[idx] <= 0.0:
            # float drift can land on a zeroed slot; step to the nearest live one
            for j in range(idx + 1, self.n):
                if self.weight[j] > 0.0:
                    return j
            for j in range(idx - 1, -1, -1):
                if self.weight[j] > 0.0:
                    return j
            return None
        return idx


class _Rng:
    """Buffered uniform draws over one numpy generator."""

    __slots__ = ("g", "_buf", "_i")

    def __init__(self, seed: int):
        self.g = np.random.default_rng(int(seed) & ((1 << 64) - 1))
        self._buf = np.empty(0)
        self._i = 0

    def u(self) -> float:
        if self._i >= self._buf.size:
            self._buf = self.g.random(8192)
            self._i = 0
        v = self._buf[self._i]
        self._i += 1
        return float(v)

    def index(self, k: int) -> int:
        return min(int(self.u() * k), k - 1)


def _round_even(x: float) -> int:
    return int(round(x))


def _scale_family(entries: list[tuple[str, int]], scale: float) -> dict[str, int]:
    """Scale a family of counts, keeping the family total at round(scale * sum).

    Each count is rounded half-to-even, then the residual against the
    scaled total is folded into the largest entry.
    """
    out = {key: _round_even(c * scale) for key, c in entries}
    if not entries:
        return out
    residual = _round_even(sum(c for _, c in entries) * scale) - sum(out.values())
    if residual:
        key = max(entries, key=lambda kv: (kv[1], kv[0]))[0]
        out[key] = max(0, out[key] + residual)
    return out


def _integer_sequence_with_sum(weights: np.ndarray, total: int, cap: int) -> np.ndarray:
    """Apportion ``total`` units proportionally to weights, each entry <= cap."""
    n = len(weights)
    if total > cap * n:
        raise InfeasibleQuota(f"cannot spread {total} units over {n} slots capped at {cap}")
    w = np.maximum(np.asarray(weights, dtype=np.float64), 1e-12)
    raw = w * (total / w.sum())
    seq = np.minimum(raw.astype(np.int64), cap)
    deficit = total - int(seq.sum())
    while deficit > 0:
        frac = np.where(seq < cap, raw - seq, -np.inf)
        order = np.argsort(-frac, kind="stable")
        for i in order:
            if deficit == 0:
                break
            if seq[i] < cap:
                seq[i] += 1
                deficit -= 1
    return seq


def build_core(core_size: int) -> AsGraph:
    """A standalone core: ``core_size`` nodes joined into a full P2P clique."""
    if core_size < 1:
        raise InfeasibleProfile("core_size must be >= 1")
    g = AsGraph(core_size)
    for a in range(core_size):
        for b in range(a + 1, core_size):
            g.add(a, b, RelType.P2P)
    return g


class Generator:
    """Stateful builder for one generation run. Use :func:`generate` for the
    one-shot API; instantiate this directly to drive phases from tests."""

    def __init__(self, profile: JellyfishProfile, cfg: GeneratorConfig | None = None):
        self.profile = profile
        self.cfg = cfg or GeneratorConfig()
        self.cfg.validate()
        profile.validate()
        self.target = self.cfg.target_nodes or profile.total_nodes
        self.scale = self.target / profile.total_nodes
        self.report = GenerationReport(target_nodes=self.target, scale=self.scale)
        self.rng = _Rng(self.cfg.seed)
        self._plan_nodes()
        self._plan_edges()
        self._init_state()

    # -- planning -------------------------------------------------------------

    def _plan_nodes(self) -> None:
        prof = self.profile
        R = prof.ring_count
        core = prof.core_size
        nonempty = sum(1 for r in prof.rings if r.ring == 0 or r.node_fraction > 0)
        if self.target < core + nonempty:
            raise InfeasibleProfile(
                f"target_nodes={self.target} cannot cover the core plus one node per ring"
            )
        if prof.rings and prof.rings[0].p2p_max < core - 1:
            raise InfeasibleProfile("ring-0 P2P bound cannot accommodate the core clique")

        ring_quota = [0] * R
        ring_quota[0] = core
        for r in range(1, R):
            ring_quota[r] = _round_even(self.target * prof.rings[r].node_fraction)
        hang_quota = [
            _round_even(self.target * prof.hanger_fraction(r)) for r in range(R)
        ]
        residual = self.target - sum(ring_quota) - sum(hang_quota)
        if residual:
            # fold into the largest non-core quota
            best_r = max(range(1, R), key=lambda r: ring_quota[r], default=None)
            if best_r is None or max(hang_quota) > ring_quota[best_r]:
                h = int(np.argmax(hang_quota))
                hang_quota[h] = max(0, hang_quota[h] + residual)
            else:
                ring_quota[best_r] = max(0, ring_quota[best_r] + residual)
        # every ring that exists in the profile keeps at least one node
        donor = max(range(1, R), key=lambda r: ring_quota[r], default=None)
        for r in range(1, R):
            if prof.rings[r].node_fraction > 0 and ring_quota[r] == 0:
                ring_quota[r] = 1
                if donor is not None and ring_quota[donor] > 1:
                    ring_quota[donor] -= 1
        self.ring_quota = ring_quota
        self.hang_quota = hang_quota

    def _plan_edges(self) -> None:
        prof = self.profile
        p2p_entries = [
            (f"p2p_intra[{r.ring}]", r.p2p_intra) for r in prof.rings if r.ring >= 1
        ] + [(f"p2p_bridge[{b.low}-{b.high}]", b.p2p_count) for b in prof.bridges]
        cp_entries = [(f"cp_intra[{r.ring}]", r.cp_intra) for r in prof.rings] + [
            (f"cp_bridge[{b.low}-{b.high}]", b.cp_count) for b in prof.bridges
        ]
        quotas = _scale_family(p2p_entries, self.scale)
        quotas.update(_scale_family(cp_entries, self.scale))
        # rings too small at this scale cannot host intra edges
        for r in range(1, prof.ring_count):
            if self.ring_quota[r] < 2:
                for key in (f"p2p_intra[{r}]", f"cp_intra[{r}]"):
                    if quotas.get(key):
                        self.report.notes.append(
                            f"dropped {key}={quotas[key]}: ring {r} holds <2 nodes at this scale"
                        )
                        quotas[key] = 0
        self.quotas = quotas
        self.report.phase_targets["core"] = (
            prof.core_size * (prof.core_size - 1) // 2
        )
        for key, v in quotas.items():
            self.report.phase_targets[key] = v
        for r in range(prof.ring_count):
            self.report.phase_targets[f"hangers[{r}]"] = self.hang_quota[r]

    def _init_state(self) -> None:
        n = self.target
        R = self.profile.ring_count
        self.n_nodes = n
        self.ring_ix = [-1] * n
        self.ring_members: list[list[int]] = [[] for _ in range(R)]
        self.pos_in_ring = [0] * n
        nxt = 0
        for r in range(R):
            for _ in range(self.ring_quota[r]):
                self.ring_ix[nxt] = r
                self.pos_in_ring[nxt] = len(self.ring_members[r])
                self.ring_members[r].append(nxt)
                nxt += 1
        self.hanger_base = nxt  # ids >= this are hangers
        self.hanger_origin: dict[int, int] = {}

        self.p2p_deg = [0] * n
        self.cp_deg = [0] * n
        self.prov_cnt = [0] * n
        self.cust_cnt = [0] * n
        self.providers_of: list[list[int]] = [[] for _ in range(n)]
        self.pairs: set[tuple[int, int]] = set()
        self.edge_rows: list[tuple[int, int, RelType]] = []
        # has this ring node an edge to any lower ring yet? (core: trivially yes)
        self.uplinked = [self.ring_ix[v] == 0 for v in range(n)]
        # does it hold a long-range edge (to a ring two or more below its own)?
        self.pulled = [False] * n

        # per-ring caps and preferences from the profile
        self.alpha = [
            r.rgr_coefficient if r.rgr_coefficient is not None else _DEFAULT_ALPHA
            for r in self.profile.rings
        ]
        self.gamma = [
            r.p2p_powerlaw_exponent
            if r.p2p_powerlaw_exponent is not None
            else _DEFAULT_GAMMA
            for r in self.profile.rings
        ]
        self.p2p_cap = [r.p2p_max for r in self.profile.rings]
        self.p2p_low = [r.p2p_min for r in self.profile.rings]
        self.cp_cap = [r.cp_max for r in self.profile.rings]
        self.cp_low = [r.cp_min for r in self.profile.rings]

        self._p2p_trees: dict[int, tuple[_Fenwick, _Fenwick]] = {}
        self._cp_trees: dict[int, dict[str, _Fenwick]] = {}
        self._cov_trees: dict[int, _Fenwick] = {}
        self._needy_trees: dict[int, _Fenwick] = {}
        self._pulled_trees: dict[int, _Fenwick] = {}

    # -- low-level edge state ---------------------------------------------------

    def _pair(self, a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def _has_pair(self, a: int, b: int) -> bool:
        return self._pair(a, b) in self.pairs

    def _add_p2p(self, a: int, b: int) -> None:
        self.pairs.add(self._pair(a, b))
        self.edge_rows.append((a, b, RelType.P2P))
        self.p2p_deg[a] += 1
        self.p2p_deg[b] += 1
        self._mark_uplink(a, b)
        self._touch_p2p(a)
        self._touch_p2p(b)
        self._touch_needy(a)
        self._touch_needy(b)

    def _add_cp(self, customer: int, provider: int) -> None:
        self.pairs.add(self._pair(customer, provider))
        self.edge_rows.append((customer, provider, RelType.CP))
        self.cp_deg[customer] += 1
        self.cp_deg[provider] += 1
        self.prov_cnt[customer] += 1
        self.cust_cnt[provider] += 1
        self.providers_of[customer].append(provider)
        self._mark_uplink(customer, provider)
        self._touch_cp(customer)
        self._touch_cp(provider)
        self._touch_needy(customer)
        self._touch_needy(provider)

    def _mark_uplink(self, a: int, b: int) -> None:
        ra, rb = self.ring_ix[a], self.ring_ix[b]
        if ra < 0 or rb < 0 or ra == rb:
            return  # hanger edges and intra-ring edges carry no uplink
        outer = a if ra > rb else b
        if not self.uplinked[outer]:
            self.uplinked[outer] = True
            tree = self._cov_trees.get(self.ring_ix[outer])
            if tree is not None:
                tree.set(self.pos_in_ring[outer], 0.0)
        if abs(ra - rb) >= 2 and not self.pulled[outer]:
            self.pulled[outer] = True
            tree = self._pulled_trees.get(self.ring_ix[outer])
            if tree is not None:
                tree.set(self.pos_in_ring[outer], 1.0)

    # -- tree maintenance ---------------------------------------------------------

    def _p2p_weight(self, v: int, r: int) -> float:
        # once a node holds long-range edges it leaves the ordinary pools:
        # piling local edges onto it would blur the layer it now sits in
        if self.pulled[v]:
            return 0.0
        d = self.p2p_deg[v]
        return float(1 + d) ** self.alpha[r] if d < self.p2p_cap[r] else 0.0

    def _cp_weight(self, v: int, r: int) -> float:
        if self.pulled[v]:
            return 0.0
        d = self.cp_deg[v]
        return float(1 + d) ** self.alpha[r] if d < self.cp_cap[r] else 0.0

    def _build_p2p_trees(self, r: int) -> tuple[_Fenwick, _Fenwick]:
        members = self.ring_members[r]
        full = _Fenwick([self._p2p_weight(v, r) for v in members])
        under = _Fenwick(
            [
                self._p2p_weight(v, r) if self.p2p_deg[v] < self.p2p_low[r] else 0.0
                for v in members
            ]
        )
        self._p2p_trees[r] = (full, under)
        return full, under

    def _build_cp_trees(self, r: int) -> dict[str, _Fenwick]:
        members = self.ring_members[r]
        full = _Fenwick([self._cp_weight(v, r) for v in members])
        biased = _Fenwick(
            [
                self._cp_weight(v, r)
                if self.prov_cnt[v] == 1 and self.cust_cnt[v] != 2
                else 0.0
                for v in members
            ]
        )
        under = _Fenwick(
            [
                self._cp_weight(v, r) if self.cp_deg[v] < self.cp_low[r] else 0.0
                for v in members
            ]
        )
        trees = {"full": full, "biased": biased, "under": under}
        self._cp_trees[r] = trees
        return trees

    def _cov_tree(self, r: int) -> _Fenwick:
        """Uniform tree over ring members still lacking an edge to a lower ring."""
        tree = self._cov_trees.get(r)
        if tree is None:
            tree = _Fenwick(
                [0.0 if self.uplinked[v] else 1.0 for v in self.ring_members[r]]
            )
            self._cov_trees[r] = tree
        return tree

    def _is_needy(self, v: int) -> bool:
        """Ring nodes need total degree >= 2 to be valid shell members
        (a degree-1 node is a hanger by definition)."""
        return (self.p2p_deg[v] + self.cp_deg[v]) < 2

    def _needy_tree(self, r: int) -> _Fenwick:
        tree = self._needy_trees.get(r)
        if tree is None:
            tree = _Fenwick(
                [1.0 if self._is_needy(v) else 0.0 for v in self.ring_members[r]]
            )
            self._needy_trees[r] = tree
        return tree

    def _touch_needy(self, v: int) -> None:
        r = self.ring_ix[v]
        if r < 0:
            return
        tree = self._needy_trees.get(r)
        if tree is not None:
            tree.set(self.pos_in_ring[v], 1.0 if self._is_needy(v) else 0.0)

    def _touch_p2p(self, v: int) -> None:
        r = self.ring_ix[v]
        trees = self._p2p_trees.get(r)
        if trees is None:
            return
        full, under = trees
        pos = self.pos_in_ring[v]
        w = self._p2p_weight(v, r)
        full.set(pos, w)
        under.set(pos, w if self.p2p_deg[v] < self.p2p_low[r] else 0.0)

    def _touch_cp(self, v: int) -> None:
        r = self.ring_ix[v]
        if r < 0:
            return  # hangers live outside the ring trees
        trees = self._cp_trees.get(r)
        if trees is None:
            return
        pos = self.pos_in_ring[v]
        w = self._cp_weight(v, r)
        trees["full"].set(pos, w)
        trees["biased"].set(
            pos, w if self.prov_cnt[v] == 1 and self.cust_cnt[v] != 2 else 0.0
        )
        trees["under"].set(pos, w if self.cp_deg[v] < self.cp_low[r] else 0.0)

    # -- phases ------------------------------------------------------------------

    def place_core(self) -> None:
        """Wire the core clique with P2P edges."""
        c = self.profile.core_size
        for a in range(c):
            for b in range(a + 1, c):
                self._add_p2p(a, b)
        self.report.phase_placed["core"] = c * (c - 1) // 2

    def place_intra_ring_p2p(self, r: int) -> int:
        """Realize the ring's scaled P2P quota through a sampled power-law
        degree sequence and repeated stub pairing."""
        key = f"p2p_intra[{r}]"
        quota = self.quotas.get(key, 0)
        self.report.phase_placed[key] = 0
        if quota <= 0:
            return 0
        members = self.ring_members[r]
        n = len(members)
        cap = min(self.p2p_cap[r], n - 1)
        total_stubs = 2 * quota
        if cap < 1 or total_stubs > cap * n:
            raise InfeasibleQuota(
                f"{key}: {quota} edges cannot fit {n} nodes capped at {cap}"
            )
        ks = np.arange(1, cap + 1, dtype=np.float64)
        pmf = ks ** -self.gamma[r]
        pmf /= pmf.sum()
        draws = self.rng.g.choice(np.arange(1, cap + 1), size=n, p=pmf)
        seq = _integer_sequence_with_sum(draws, total_stubs, cap)

        member_arr = np.asarray(members, dtype=np.int64)
        pending = np.repeat(member_arr, seq)
        placed = 0
        for _ in range(_PAIRING_ROUNDS):
            if placed >= quota or pending.size < 2:
                break
            self.rng.g.shuffle(pending)
            leftovers: list[int] = []
            m = pending.size - (pending.size % 2)
            for i in range(0, m, 2):
                u = int(pending[i])
                v = int(pending[i + 1])
                if u == v or self._has_pair(u, v):
                    leftovers.append(u)
                    leftovers.append(v)
                    continue
                self._add_p2p(u, v)
                placed += 1
            if pending.size % 2:
                leftovers.append(int(pending[-1]))
            pending = np.asarray(leftovers, dtype=np.int64)

        if placed < quota:
            placed += self._top_up_p2p(members, r, quota - placed, key)
        self.report.phase_placed[key] = placed
        return placed

    def _top_up_p2p(self, members: list[int], r: int, missing: int, key: str) -> int:
        """Place leftover intra-ring edges between nodes with spare capacity."""
        added = 0
        budget = self.cfg.max_retries_per_edge * missing
        while added < missing and budget > 0:
            spare = [v for v in members if self.p2p_deg[v] < self.p2p_cap[r]]
            if len(spare) < 2:
                break
            placed_one = False
            for _ in range(self.cfg.max_retries_per_edge):
                budget -= 1
                u = spare[self.rng.index(len(spare))]
                v = spare[self.rng.index(len(spare))]
                self.report.retries += 1
                if u == v or self._has_pair(u, v):
                    continue
                self._add_p2p(u, v)
                added += 1
                placed_one = True
                break
            if not placed_one:
                break
        if added < missing:
            self.report.reductions[key] = (
                self.report.reductions.get(key, 0) + missing - added
            )
            self.report.notes.append(f"{key}: dropped {missing - added} unpaired stubs")
        return added

    def place_bridge_p2p(self, low: int, high: int) -> int:
        """Wire one bridge's P2P quota, endpoints drawn rich-gets-richer per side."""
        key = f"p2p_bridge[{low}-{high}]"
        quota = self.quotas.get(key, 0)
        self.report.phase_placed[key] = 0
        if quota <= 0:
            return 0
        lo_trees = self._p2p_trees.get(low) or self._build_p2p_trees(low)
        hi_trees = self._p2p_trees.get(high) or self._build_p2p_trees(high)
        adjacent = high == low + 1
        placed = 0
        for _ in range(quota):
            done = False
            for attempt in range(self.cfg.max_retries_per_edge):
                u = self._draw_p2p(low, lo_trees)
                v = None
                if adjacent:
                    v = self._draw_priority(high, self.p2p_deg, self.p2p_cap[high])
                elif attempt == 0:
                    # retries leave the long-range pool so fresh pairs stay reachable
                    v = self._draw_longrange(high, self.p2p_deg, self.p2p_cap[high])
                if v is None:
                    v = self._draw_p2p(high, hi_trees)
                if u is None or v is None:
                    break
                if self._has_pair(u, v):
                    self.report.retries += 1
                    continue
                self._add_p2p(u, v)
                placed += 1
                done = True
                break
            if not done:
                self.report.reductions[key] = self.report.reductions.get(key, 0) + (
                    quota - placed
                )
                self.report.notes.append(f"{key}: stopped {quota - placed} short")
                break
        self.report.phase_placed[key] = placed
        return placed

    def _draw_p2p(self, r: int, trees: tuple[_Fenwick, _Fenwick]) -> int | None:
        full, under = trees
        tree = under if under.total > 1e-9 else full
        idx = tree.sample(self.rng.u())
        return None if idx is None else self.ring_members[r][idx]

    def _draw_priority(self, r: int, deg_of: list[int], cap: int) -> int | None:
        """A ring-r node that still lacks structural validity, if any fit
        under cap.

        Keeps the generated layers jellyfish-consistent: a shell node
        belongs to shell r precisely because something links it to shell
        r-1 and it is not a hanger, so adjacent-bridge placement serves
        unlinked nodes first, then nodes below the degree-2 floor.
        """
        for tree in (self._cov_tree(r), self._needy_tree(r)):
            if tree.total <= 1e-9:
                continue
            idx = tree.sample(self.rng.u())
            if idx is None:
                continue
            v = self.ring_members[r][idx]
            if deg_of[v] < cap:
                return v
        return None  # capped but needy nodes fall back to the normal pools

    def _draw_needy(
        self, r: int, deg_of: list[int], cap: int, uplinked_only: bool = False
    ) -> int | None:
        """Degree-deficient ring-r node.

        With ``uplinked_only`` the candidate must already have a downward
        edge: wiring two cold nodes to each other would start an island
        rather than thicken the shell.
        """
        tree = self._needy_tree(r)
        if tree.total <= 1e-9:
            return None
        idx = tree.sample(self.rng.u())
        if idx is None:
            return None
        v = self.ring_members[r][idx]
        if uplinked_only and not self.uplinked[v]:
            return None
        return v if deg_of[v] < cap else None

    def _pulled_tree(self, r: int) -> _Fenwick:
        tree = self._pulled_trees.get(r)
        if tree is None:
            tree = _Fenwick(
                [1.0 if self.pulled[v] else 0.0 for v in self.ring_members[r]]
            )
            self._pulled_trees[r] = tree
        return tree

    def _draw_pulled(self, r: int, deg_of: list[int], cap: int) -> int | None:
        """Ring-r node already holding a long-range downlink, if any has room.

        Long-range edges concentrate on the few nodes that already made
        them, keeping the rest of the ring's layer structure intact.
        """
        tree = self._pulled_tree(r)
        if tree.total <= 1e-9:
            return None
        idx = tree.sample(self.rng.u())
        if idx is None:
            return None
        v = self.ring_members[r][idx]
        return v if deg_of[v] < cap else None

    def _draw_longrange(self, r: int, deg_of: list[int], cap: int) -> int | None:
        """Far endpoint for a non-adjacent bridge: an established long-range
        node when possible, otherwise a cold one (no downlink yet, and
        ideally no edges at all, so the fewest local edges get relabeled
        by the long-range attachment)."""
        v = self._draw_pulled(r, deg_of, cap)
        if v is not None:
            return v
        tree = self._cov_tree(r)
        if tree.total <= 1e-9:
            return None
        pick: int | None = None
        for _ in range(4):
            idx = tree.sample(self.rng.u())
            if idx is None:
                break
            cand = self.ring_members[r][idx]
            if deg_of[cand] >= cap:
                continue
            if pick is None:
                pick = cand
            if self.p2p_deg[cand] + self.cp_deg[cand] == 0:
                return cand
        return pick

    def _draw_provider(self, r: int, needy_first: bool = False) -> int | None:
        if needy_first:
            v = self._draw_needy(r, self.cp_deg, self.cp_cap[r], uplinked_only=True)
            if v is not None:
                return v
        trees = self._cp_trees.get(r) or self._build_cp_trees(r)
        tree = trees["under"] if trees["under"].total > 1e-9 else trees["full"]
        idx = tree.sample(self.rng.u())
        return None if idx is None else self.ring_members[r][idx]

    def _draw_customer(self, r: int, biased: bool = True) -> int | None:
        trees = self._cp_trees.get(r) or self._build_cp_trees(r)
        if (
            biased
            and self.rng.u() < self.cfg.bias_strength
            and trees["biased"].total > 1e-9
        ):
            tree = trees["biased"]
        elif trees["under"].total > 1e-9:
            tree = trees["under"]
        else:
            tree = trees["full"]
        idx = tree.sample(self.rng.u())
        return None if idx is None else self.ring_members[r][idx]

    def _creates_cp_cycle(self, customer: int, provider: int) -> bool:
        """Would customer->provider close a provider loop?

        Provider chains never leave a node's ring for a higher one, so a
        loop can only form inside a single ring: walk same-ring provider
        chains from the proposed provider and look for the customer.
        """
        r = self.ring_ix[customer]
        if self.ring_ix[provider] != r:
            return False
        stack = [provider]
        seen = {provider}
        while stack:
            x = stack.pop()
            for q in self.providers_of[x]:
                if self.ring_ix[q] != r or q in seen:
                    continue
                if q == customer:
                    return True
                seen.add(q)
                stack.append(q)
        return False

    def _promote(self, v: int, new_ring: int) -> None:
        """Move a customer into its provider's ring to restore the hierarchy.

        Never reached by the standard draw pools (they respect the
        hierarchy by construction); kept as the documented escape hatch
        and exercised directly by tests.
        """
        old = self.ring_ix[v]
        members = self.ring_members[old]
        pos = self.pos_in_ring[v]
        last = members[-1]
        members[pos] = last
        self.pos_in_ring[last] = pos
        members.pop()
        self.ring_ix[v] = new_ring
        self.pos_in_ring[v] = len(self.ring_members[new_ring])
        self.ring_members[new_ring].append(v)
        self.report.promotions += 1
        for r in (old, new_ring):
            if r in self._cp_trees:
                self._build_cp_trees(r)
            if r in self._p2p_trees:
                self._build_p2p_trees(r)
            self._cov_trees.pop(r, None)
            self._needy_trees.pop(r, None)
            self._pulled_trees.pop(r, None)

    def _place_cp_quota(self, key: str, prov_ring: int, cust_ring: int, quota: int) -> int:
        placed = 0
        self.report.phase_placed[key] = 0
        if quota <= 0:
            return 0
        adjacent = cust_ring == prov_ring + 1
        intra = cust_ring == prov_ring
        # outer rings have few edges to spread, so both CP roles there serve
        # degree-deficient nodes first; ring 1 has mass to spare and keeps
        # its selection purely rich-gets-richer
        outer = prov_ring >= 2
        for _ in range(quota):
            done = False
            for attempt in range(self.cfg.max_retries_per_edge):
                p = self._draw_provider(prov_ring, needy_first=outer)
                c = None
                if adjacent:
                    c = self._draw_priority(cust_ring, self.cp_deg, self.cp_cap[cust_ring])
                elif intra and outer:
                    c = self._draw_needy(
                        cust_ring, self.cp_deg, self.cp_cap[cust_ring], uplinked_only=True
                    )
                elif not intra and attempt == 0:
                    # retries leave the long-range pool so fresh pairs stay reachable
                    c = self._draw_longrange(cust_ring, self.cp_deg, self.cp_cap[cust_ring])
                if c is None:
                    # long-range links come from established players: skip the
                    # 2-provider bias on non-adjacent bridges
                    c = self._draw_customer(cust_ring, biased=adjacent or intra)
                if p is None or c is None:
                    break
                if c == p or self._has_pair(c, p):
                    self.report.retries += 1
                    continue
                if self._creates_cp_cycle(c, p):
                    self.report.retries += 1
                    continue
                if self.ring_ix[p] > self.ring_ix[c]:
                    self._promote(c, self.ring_ix[p])
                self._add_cp(c, p)
                placed += 1
                done = True
                break
            if not done:
                self.report.reductions[key] = self.report.reductions.get(key, 0) + (
                    quota - placed
                )
                self.report.notes.append(f"{key}: stopped {quota - placed} short")
                break
        self.report.phase_placed[key] = placed
        return placed

    def place_cp_edges(self) -> int:
        """Fill intra-ring CP quotas, then bridges, under constraints 1-4."""
        total = 0
        for r in range(self.profile.ring_count):
            key = f"cp_intra[{r}]"
            if key in self.quotas:
                total += self._place_cp_quota(key, r, r, self.quotas[key])
        for b in self.profile.bridges:
            key = f"cp_bridge[{b.low}-{b.high}]"
            # provider on the inner (lower-index) side keeps the hierarchy valid
            total += self._place_cp_quota(key, b.low, b.high, self.quotas.get(key, 0))
        return total

    def repair_connectivity(self) -> int:
        """Attach stranded fragments to the core's component with CP edges."""
        n = self.n_nodes
        indptr, indices = self._current_csr()
        labels = kernels.component_labels(indptr, indices)
        main = int(labels[0])
        fragments: dict[int, list[int]] = {}
        for v in range(self.hanger_base):
            lbl = int(labels[v])
            if lbl != main:
                fragments.setdefault(lbl, []).append(v)
        added = 0
        for lbl in sorted(fragments):
            frag = fragments[lbl]
            u = min(frag, key=lambda v: (self.ring_ix[v], v))
            r = self.ring_ix[u]
            if self.cp_deg[u] >= self.cp_cap[r]:
                spare = [v for v in frag if self.cp_deg[v] < self.cp_cap[self.ring_ix[v]]]
                if spare:
                    u = min(spare, key=lambda v: (self.ring_ix[v], v))
                    r = self.ring_ix[u]
                else:
                    self.report.cap_exemptions += 1
            t = r - 1
            while t >= 0:
                cands = [
                    w
                    for w in self.ring_members[t]
                    if int(labels[w]) == main
                    and self.cp_deg[w] < self.cp_cap[t]
                    and not self._has_pair(u, w)
                ]
                if not cands and t == 0:
                    cands = [
                        w
                        for w in self.ring_members[0]
                        if int(labels[w]) == main and not self._has_pair(u, w)
                    ]
                    if cands:
                        self.report.cap_exemptions += 1
                        self.report.notes.append(
                            "repair exceeded a core CP bound to restore connectivity"
                        )
                if cands:
                    w = cands[self.rng.index(len(cands))]
                    self._add_cp(u, w)
                    added += 1
                    break
                t -= 1
        self.report.repair_edges = added
        if added:
            self.report.notes.append(f"connectivity repair added {added} CP edges")
        return added

    def place_hangers(self) -> int:
        """Attach degree-1 nodes to each origin ring, rich-gets-richer on
        total degree, respecting the CP (or P2P) cap of the attachment."""
        placed = 0
        next_id = self.hanger_base
        as_cp = self.cfg.hanger_rel is RelType.CP
        for origin in range(self.profile.ring_count):
            quota = self.hang_quota[origin]
            key = f"hangers[{origin}]"
            self.report.phase_placed[key] = 0
            if quota <= 0:
                continue
            members = self.ring_members[origin]
            if not members:
                raise InfeasibleQuota(f"{key}: origin ring is empty at this scale")
            a = self.alpha[origin]
            cap = self.cp_cap[origin] if as_cp else self.p2p_cap[origin]
            deg_of = self.cp_deg if as_cp else self.p2p_deg

            def weight(v: int) -> float:
                # long-range nodes sit in a different effective layer, so
                # hangers stay off them to keep origin labels faithful
                if deg_of[v] >= cap or self.pulled[v]:
                    return 0.0
                total_deg = self.p2p_deg[v] + self.cp_deg[v]
                return float(1 + total_deg) ** a

            tree = _Fenwick([weight(v) for v in members])
            for _ in range(quota):
                # degree-1 ring nodes take the first hangers: the extra edge
                # keeps them valid shell members without distorting bridges
                attach = self._draw_needy(origin, deg_of, cap, uplinked_only=True)
                if attach is not None and self.pulled[attach]:
                    attach = None
                idx = None
                if attach is None:
                    idx = tree.sample(self.rng.u())
                    if idx is None:
                        raise InfeasibleQuota(f"{key}: no attachment capacity left")
                    attach = members[idx]
                h = next_id
                next_id += 1
                self.hanger_origin[h] = origin
                if as_cp:
                    self._add_cp(h, attach)
                else:
                    self._add_p2p(h, attach)
                tree.set(self.pos_in_ring[attach], weight(attach))
                placed += 1
                self.report.phase_placed[key] += 1
        return placed

    # -- orchestration ---------------------------------------------------------

    def _current_csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n_nodes
        deg = np.zeros(n + 1, dtype=np.int64)
        for a, b, _ in self.edge_rows:
            deg[a + 1] += 1
            deg[b + 1] += 1
        indptr = np.cumsum(deg)
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        fill = indptr[:-1].copy()
        for a, b, _ in self.edge_rows:
            indices[fill[a]] = b
            fill[a] += 1
            indices[fill[b]] = a
            fill[b] += 1
        return indptr, indices

    def run(self) -> tuple[AsGraph, JellyfishDecomposition, GenerationReport]:
        prof = self.profile
        self.place_core()
        for r in range(1, prof.ring_count):
            self.place_intra_ring_p2p(r)
        for b in prof.bridges:
            self.place_bridge_p2p(b.low, b.high)
        self.place_cp_edges()
        self.repair_connectivity()
        self.place_hangers()

        g = AsGraph(self.n_nodes)
        for a, b, rel in self.edge_rows:
            g.add_edge(Edge(a, b, rel))
        return g, self.as_built_decomposition(), self.report

    def as_built_decomposition(self) -> JellyfishDecomposition:
        """Construction-time layer assignment (not re-derived from the graph)."""
        ring_of = {
            v: self.ring_ix[v] for v in range(self.hanger_base) if self.ring_ix[v] >= 0
        }
        edge_class: dict[tuple[int, int, int], EdgeClass] = {}
        for a, b, rel in self.edge_rows:
            key = Edge(a, b, rel).key()
            if a in self.hanger_origin:
                o = self.hanger_origin[a]
                edge_class[key] = EdgeClass(HANGER, o, o)
            elif b in self.hanger_origin:
                o = self.hanger_origin[b]
                edge_class[key] = EdgeClass(HANGER, o, o)
            else:
                ra, rb = ring_of[a], ring_of[b]
                if ra == rb:
                    edge_class[key] = EdgeClass(RING, ra, ra)
                else:
                    lo, hi = (ra, rb) if ra < rb else (rb, ra)
                    edge_class[key] = EdgeClass(BRIDGE, lo, hi)
        ring_count = max(ring_of.values(), default=0) + 1
        return JellyfishDecomposition(
            core=frozenset(range(self.profile.core_size)),
            ring_of=ring_of,
            hanger_origin=dict(self.hanger_origin),
            ring_count=ring_count,
            edge_class=edge_class,
        )


def generate(
    profile: JellyfishProfile, cfg: GeneratorConfig | None = None
) -> tuple[AsGraph, JellyfishDecomposition, GenerationReport]:
    """Build a synthetic graph from a profile. Deterministic per (profile, cfg)."""
    return Generator(profile, cfg).run()
