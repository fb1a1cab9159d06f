"""Distributed connected set cover protocol, simulated in synchronous rounds.

Self-elected leaders grow tree-shaped partitions by SelectReq/Include/Confirm
exchanges. Each round delivers all queued messages at once: every growing
partition aggregates proposals leaf-to-root, its leader picks a candidate,
and contended candidates arbitrate between inviters. Message accounting per
growth step of a k-member partition is (k-1) SelectReq + k Include +
k Confirm transmissions.

The simulator also provides single-fault recovery (subtree release and
re-growth led by the failed node's parent) and a round-robin lifetime
simulation with a simple energy drain model.

Everything is deterministic for a fixed (graph, leader probability, seed).
"""

import random
from dataclasses import dataclass, field

from .ccsp import Partition
from .comm_graph import CommGraph
from .geometry import Deployment

GROWING = "growing"
FROZEN = "frozen"
DISMANTLED = "dismantled"

KINDS = ("SelectReq", "Include", "Confirm", "Failed", "Successful")


@dataclass
class NodeState:
    id: int
    flag: bool = False
    is_leader: bool = False
    leader_id: int = None
    parent: int = None
    children: set = field(default_factory=set)
    block_status: bool = False
    covered_blocks: set = field(default_factory=set)
    free_degree: int = 0
    energy: float = None


@dataclass(frozen=True)
class Message:
    kind: str
    leader_id: int
    origin: int
    target: object        # node id or "*" for a broadcast
    candidate: int = None


@dataclass(frozen=True)
class DcspOutcome:
    partitions: tuple
    failed_partition_count: int
    free_nodes: frozenset
    rounds: int
    tx_per_node: dict
    tx_total: int
    tx_growth: int        # SelectReq/Include/Confirm only, no status broadcasts


@dataclass(frozen=True)
class RecoveryOutcome:
    leader: int
    repaired: bool
    dismantled: bool
    released: frozenset
    added: tuple
    messages: int


@dataclass(frozen=True)
class EnergyConfig:
    initial: float
    active_cost: float
    tx_cost: float
    threshold: float

    def validate(self):
        if self.initial <= 0:
            raise ValueError("initial energy must be positive")
        if self.active_cost <= 0:
            raise ValueError("per-round active cost must be positive")
        if self.tx_cost < 0:
            raise ValueError("per-transmission cost must be >= 0")
        if not 0 <= self.threshold < self.initial:
            raise ValueError("threshold must satisfy 0 <= threshold < initial")


@dataclass(frozen=True)
class LifetimeReport:
    lifetime_rounds: int
    partition_count: int
    service_rounds: dict      # leader id -> rounds served
    repair_messages: int
    dcsp: DcspOutcome


class _Part:
    __slots__ = ("leader", "members", "covered", "status")

    def __init__(self, leader, block):
        self.leader = leader
        self.members = [leader]
        self.covered = {block}
        self.status = GROWING


def leader_election(dep: Deployment, L_P, seed):
    """Each node independently self-elects with probability L_P."""
    if not 0 <= L_P <= 1:
        raise ValueError("leader probability must be in [0, 1]")
    rng = random.Random(seed)
    leaders = set()
    for node in dep.nodes:
        if rng.random() < L_P:
            leaders.add(node.id)
    return leaders


def select_candidate(state: NodeState, own_neighbors, child_proposals):
    """Per-node candidate selection rule.

    Both lists hold (candidate, block, free_degree, proposer) entries.
    Candidates covering a block outside state.covered_blocks win over all
    others; within a class the minimum free degree wins, ties by lower id.
    Returns the winning entry or None.
    """
    if not state.flag:
        raise ValueError("only partition members select candidates")
    best = None
    best_key = None
    for entry in list(own_neighbors) + list(child_proposals):
        cand, block, deg, _ = entry
        key = (0 if block not in state.covered_blocks else 1, deg, cand)
        if best is None or key < best_key:
            best, best_key = entry, key
    return best


class DcspSim:
    """Deterministic state machine for the distributed protocol.

    Construct, call run() once, then optionally inject faults with recover().
    A trace list collects one formatted line per transmission when given.
    """

    def __init__(self, g: CommGraph, dep: Deployment, L_P, seed, trace=None):
        self.g = g
        self.dep = dep
        self.L_P = L_P
        self.seed = seed
        self.trace = trace
        self.all_blocks = frozenset(range(dep.grid.m))
        self.states = {nd.id: NodeState(id=nd.id) for nd in dep.nodes}
        for st in self.states.values():
            st.free_degree = len(g.adj[st.id])
        self.dead = set()
        self.partitions = {}
        self.failed_count = 0
        self.rounds = 0
        self.tx_per_node = {nd.id: 0 for nd in dep.nodes}
        self.tx_total = 0
        self.tx_growth = 0
        self.threshold = None     # energy threshold, set by the lifetime loop
        self._ran = False
        self._charge_log = None   # transmitting node ids, for energy billing
        for lid in sorted(leader_election(dep, L_P, seed)):
            st = self.states[lid]
            st.flag = True
            st.is_leader = True
            st.leader_id = lid
            st.block_status = True
            block = dep.nodes[lid].block
            st.covered_blocks = {block}
            self.partitions[lid] = _Part(lid, block)
            self._on_assigned(lid)

    # -- bookkeeping ------------------------------------------------------

    def _on_assigned(self, u):
        for v in self.g.adj[u]:
            self.states[v].free_degree -= 1

    def _on_released(self, u):
        for v in self.g.adj[u]:
            self.states[v].free_degree += 1

    def _is_free(self, u):
        return not self.states[u].flag and u not in self.dead

    def _has_energy(self, u):
        st = self.states[u]
        if st.energy is None or self.threshold is None:
            return True
        return st.energy > self.threshold

    def _tx(self, kind, origin, target, leader, candidate, growth):
        self.tx_per_node[origin] += 1
        self.tx_total += 1
        if growth:
            self.tx_growth += 1
        if self._charge_log is not None:
            self._charge_log.append(origin)
        if self.trace is not None:
            msg = Message(kind, leader, origin, target, candidate)
            self.trace.append(
                f"round {self.rounds} tx {msg.kind} {msg.origin}->{msg.target} "
                f"L={msg.leader_id} k={msg.candidate}"
            )

    def _join(self, part, cand, proposer):
        st = self.states[cand]
        st.flag = True
        st.parent = proposer
        st.leader_id = part.leader
        st.block_status = True
        self.states[proposer].children.add(cand)
        part.members.append(cand)
        part.covered.add(self.dep.nodes[cand].block)
        self.states[part.leader].covered_blocks = part.covered
        self._on_assigned(cand)

    def _release(self, u):
        st = self.states[u]
        st.flag = False
        st.is_leader = False
        st.leader_id = None
        st.parent = None
        st.children = set()
        st.block_status = False
        st.covered_blocks = set()
        if u not in self.dead:
            self._on_released(u)

    def _dismantle(self, part):
        for u in list(part.members):
            if u not in self.dead:
                self._release(u)
        part.status = DISMANTLED

    def _growth_tx(self, part, phase, candidate):
        """Account one aggregation/dissemination sweep over the partition."""
        lid = part.leader
        if phase == "SelectReq":
            for u in part.members:
                if u != lid:
                    self._tx("SelectReq", u, self.states[u].parent, lid,
                             candidate, growth=True)
        elif phase == "Include":
            for u in part.members:
                self._tx("Include", u, "*", lid, candidate, growth=True)
        else:
            raise ValueError(f"unknown phase {phase!r}")

    # -- candidate search -------------------------------------------------

    def _partition_candidate(self, part):
        """Best (cand, block, degree, proposer) over the whole partition.

        Equivalent to leaf-to-root aggregation of select_candidate: the
        minimum is associative, so the leader's final pick is the global one.
        """
        nodes = self.dep.nodes
        best = None
        best_key = None
        seen = set()
        for u in part.members:
            for v in self.g.adj[u]:
                if v in seen or not self._is_free(v) or not self._has_energy(v):
                    continue
                seen.add(v)
                blk = nodes[v].block
                key = (0 if blk not in part.covered else 1,
                       self.states[v].free_degree, v)
                if best is None or key < best_key:
                    best, best_key = v, key
        if best is None:
            return None
        proposer = min(
            (u for u in part.members if self.g.has_edge(u, best)),
            key=lambda u: (self.states[u].free_degree, u),
        )
        return (best, nodes[best].block, self.states[best].free_degree, proposer)

    # -- main protocol ----------------------------------------------------

    def run(self) -> DcspOutcome:
        if self._ran:
            raise RuntimeError("run() may only be called once")
        self._ran = True
        max_rounds = 100 + 20 * max(1, self.dep.n)
        while True:
            growing = [lid for lid in sorted(self.partitions)
                       if self.partitions[lid].status == GROWING]
            if not growing:
                break
            self.rounds += 1
            if self.rounds > max_rounds:
                raise RuntimeError("protocol failed to terminate")
            proposals = {}
            for lid in growing:
                part = self.partitions[lid]
                if part.covered >= self.all_blocks:
                    continue
                sel = self._partition_candidate(part)
                if sel is None:
                    self._tx("Failed", lid, "*", lid, None, growth=False)
                    self._dismantle(part)
                    self.failed_count += 1
                else:
                    proposals[lid] = sel
                    self._growth_tx(part, "SelectReq", sel[0])
                    self._growth_tx(part, "Include", sel[0])
            by_cand = {}
            for lid, (cand, blk, deg, proposer) in proposals.items():
                sender_deg = self.states[proposer].free_degree
                by_cand.setdefault(cand, []).append((sender_deg, lid, proposer))
            for cand in sorted(by_cand):
                _, lid, proposer = min(by_cand[cand])
                part = self.partitions[lid]
                # Confirm: the candidate answers its inviter, then the news
                # floods back through the partition (k transmissions total).
                self._tx("Confirm", cand, proposer, lid, cand, growth=True)
                for u in part.members:
                    if u != lid:
                        self._tx("Confirm", u, self.states[u].parent, lid,
                                 cand, growth=True)
                self._join(part, cand, proposer)
            for lid in growing:
                part = self.partitions[lid]
                if part.status == GROWING and part.covered >= self.all_blocks:
                    self._tx("Successful", lid, "*", lid, None, growth=False)
                    part.status = FROZEN
        return self._outcome()

    def _outcome(self) -> DcspOutcome:
        partitions = []
        for lid in sorted(self.partitions):
            part = self.partitions[lid]
            if part.status != FROZEN:
                continue
            parents = {u: self.states[u].parent for u in part.members}
            partitions.append(Partition(len(partitions), frozenset(part.members),
                                        leader=lid, parents=parents))
        free = frozenset(u for u in self.tx_per_node if self._is_free(u))
        return DcspOutcome(tuple(partitions), self.failed_count, free,
                           self.rounds, dict(self.tx_per_node),
                           self.tx_total, self.tx_growth)

    # -- fault recovery ---------------------------------------------------

    def _subtree(self, root):
        out = []
        stack = [root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(sorted(self.states[u].children))
        return out

    def recover(self, failed) -> RecoveryOutcome:
        """Handle the energy-depletion failure of one partition member.

        The subtree under the failed node is released to the free pool and
        its parent re-grows the partition over eligible free nodes until
        every block is covered again; if that is impossible the whole
        partition dismantles.
        """
        st = self.states[failed]
        lid = st.leader_id
        part = self.partitions.get(lid)
        if not st.flag or part is None or part.status != FROZEN \
                or failed not in part.members:
            raise ValueError(f"node {failed} is not in an active partition")
        len_before = self.tx_total
        self.rounds += 1
        self._tx("Failed", failed, "*", lid, None, growth=False)
        self.dead.add(failed)
        if failed == lid:
            self._dismantle(part)
            released = frozenset(u for u in part.members if u != failed)
            return RecoveryOutcome(lid, False, True, released, (),
                                   self.tx_total - len_before)
        acting = st.parent
        subtree = self._subtree(failed)
        self.states[acting].children.discard(failed)
        for u in subtree:
            part.members.remove(u)
            self._release(u)
        released = set(subtree) - {failed}
        part.covered = {self.dep.nodes[u].block for u in part.members}
        self.states[lid].covered_blocks = part.covered
        nodes = self.dep.nodes
        group = [acting]
        added = []
        while part.covered < self.all_blocks:
            best = None
            best_key = None
            seen = set()
            for u in group:
                for v in self.g.adj[u]:
                    if v in seen or not self._is_free(v) or not self._has_energy(v):
                        continue
                    seen.add(v)
                    key = (0 if nodes[v].block not in part.covered else 1,
                           self.states[v].free_degree, v)
                    if best is None or key < best_key:
                        best, best_key = v, key
            if best is None:
                self._dismantle(part)
                released |= set(part.members)
                return RecoveryOutcome(lid, False, True, frozenset(released),
                                       tuple(added), self.tx_total - len_before)
            proposer = min((u for u in group if self.g.has_edge(u, best)),
                           key=lambda u: (self.states[u].free_degree, u))
            self.rounds += 1
            # Repair party: acting leader + nodes added so far; 3k-1 messages
            # to recruit the next node, mirroring the growth accounting.
            for u in group:
                if u != acting:
                    self._tx("SelectReq", u, self.states[u].parent, lid,
                             best, growth=True)
            for u in group:
                self._tx("Include", u, "*", lid, best, growth=True)
            self._join(part, best, proposer)
            self._tx("Confirm", best, proposer, lid, best, growth=True)
            for u in group:
                if u != acting:
                    self._tx("Confirm", u, self.states[u].parent, lid,
                             best, growth=True)
            group.append(best)
            added.append(best)
        return RecoveryOutcome(lid, True, False, frozenset(released),
                               tuple(added), self.tx_total - len_before)


def run_dcsp(g: CommGraph, dep: Deployment, L_P, seed, trace=None) -> DcspOutcome:
    """Run the protocol once on a fresh simulator."""
    return DcspSim(g, dep, L_P, seed, trace=trace).run()


def lifetime_simulation(g: CommGraph, dep: Deployment, L_P,
                        energy: EnergyConfig, seed, trace=None) -> LifetimeReport:
    """Round-robin rotation of the partitions produced by the protocol.

    Exactly one partition is active per round. Active nodes drain the
    per-round cost; transmissions during fault repair drain the transmitter.
    A member crossing the threshold triggers recovery (faults serialized).
    The lifetime is the number of rounds until no partition covers the
    region. Initialization messages predate the energy accounting and are
    not charged.
    """
    energy.validate()
    sim = DcspSim(g, dep, L_P, seed, trace=trace)
    outcome = sim.run()
    for st in sim.states.values():
        st.energy = energy.initial
    sim.threshold = energy.threshold
    rotation = [p.leader for p in outcome.partitions]
    service = {lid: 0 for lid in rotation}
    rounds = 0
    repair_messages = 0
    idx = 0
    while rotation:
        chosen = None
        for step in range(len(rotation)):
            lid = rotation[(idx + step) % len(rotation)]
            if sim.partitions[lid].status == FROZEN:
                chosen = lid
                idx = (idx + step + 1) % len(rotation)
                break
        if chosen is None:
            break
        part = sim.partitions[chosen]
        rounds += 1
        service[chosen] += 1
        for u in part.members:
            sim.states[u].energy -= energy.active_cost
        while part.status == FROZEN:
            crossed = [u for u in part.members
                       if u not in sim.dead
                       and sim.states[u].energy <= energy.threshold]
            if not crossed:
                break
            sim._charge_log = charge = []
            out = sim.recover(min(crossed))
            sim._charge_log = None
            repair_messages += out.messages
            for u in charge:
                sim.states[u].energy -= energy.tx_cost
    return LifetimeReport(rounds, len(rotation), service, repair_messages, outcome)
