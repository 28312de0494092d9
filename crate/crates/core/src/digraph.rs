//! The metatile-generating digraph of a comb and the cycle data that the
//! recursion theorems are stated in terms of.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{capacity, Result};
use crate::qset::Comb;

/// Largest `q` the bit-packed gap states can hold.
pub const DIGRAPH_Q_CAP: u32 = 62;

/// Remaining gaps after the completed prefix of a partial tiling.
///
/// Bit `i` is cell `i` counted from the first empty cell; the zero node has
/// no digits at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapState {
    bits: u64,
    len: u32,
}

impl GapState {
    pub const ZERO: GapState = GapState { bits: 0, len: 0 };

    /// Builds a state from its digits, as in `[false, false, true]` for `001`.
    pub fn from_bits(digits: &[bool]) -> GapState {
        let bits = digits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        GapState::stripped(bits, digits.len() as u32)
    }

    /// Removes the leading run of filled cells.
    fn stripped(bits: u64, len: u32) -> GapState {
        let lead = bits.trailing_ones().min(len);
        if lead == len {
            GapState::ZERO
        } else {
            GapState {
                bits: bits >> lead,
                len: len - lead,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    /// Number of digits `d`.
    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.bits >> i & 1 == 1).collect()
    }

    /// Successor after placing a square in the first empty cell.
    fn after_square(self) -> GapState {
        GapState::stripped(self.bits | 1, self.len.max(1))
    }

    /// Successor after placing a comb with its cell 0 in the first empty cell.
    fn after_comb(self, pattern: u64, comb_len: u32) -> GapState {
        GapState::stripped(self.bits | pattern, self.len.max(comb_len))
    }
}

impl fmt::Display for GapState {
    /// Run-length form such as `0^21`; the zero node is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let bits = self.bits();
        let mut i = 0;
        while i < bits.len() {
            let run = bits[i..].iter().take_while(|&&b| b == bits[i]).count();
            write!(f, "{}", if bits[i] { '1' } else { '0' })?;
            match run {
                1 => {}
                2..=9 => write!(f, "^{run}")?,
                _ => write!(f, "^{{{run}}}")?,
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TileKind {
    Square,
    Comb,
}

impl TileKind {
    pub fn letter(self) -> char {
        match self {
            TileKind::Square => 'S',
            TileKind::Comb => 'C',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub kind: TileKind,
    /// Growth of the tiled length along this arc.
    pub increment: u32,
    /// 1 for a comb arc, 0 for a square arc.
    pub combs: u32,
}

impl Arc {
    /// `S`, `S[1]`, `C[5]`: the increment is shown unless it is zero.
    pub fn label(&self) -> String {
        if self.increment == 0 {
            self.kind.letter().to_string()
        } else {
            format!("{}[{}]", self.kind.letter(), self.increment)
        }
    }
}

/// Nodes in breadth-first order from the zero node (index 0); each node has
/// its square arc followed by its comb arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    comb: Comb,
    nodes: Vec<GapState>,
    arcs: Vec<Arc>,
    out: Vec<[usize; 2]>,
}

/// Index of the zero node.
pub const ZERO: usize = 0;

pub fn build_digraph(comb: &Comb) -> Result<Digraph> {
    if comb.q() > DIGRAPH_Q_CAP {
        return Err(capacity("q", comb.q(), DIGRAPH_Q_CAP));
    }
    let comb_len = comb.q() + 1;
    let pattern = comb
        .pattern()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);

    let mut index = HashMap::from([(GapState::ZERO, ZERO)]);
    let mut nodes = vec![GapState::ZERO];
    let mut arcs = Vec::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([ZERO]);
    while let Some(u) = queue.pop_front() {
        let state = nodes[u];
        let succ = [
            (TileKind::Square, state.after_square(), u32::from(state.is_zero())),
            (
                TileKind::Comb,
                state.after_comb(pattern, comb_len),
                comb_len - state.len(),
            ),
        ];
        let mut pair = [0; 2];
        for (slot, (kind, next, increment)) in succ.into_iter().enumerate() {
            let target = *index.entry(next).or_insert_with(|| {
                nodes.push(next);
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            pair[slot] = arcs.len();
            arcs.push(Arc {
                source: u,
                target,
                kind,
                increment,
                combs: u32::from(kind == TileKind::Comb),
            });
        }
        out.push(pair);
    }
    Ok(Digraph {
        comb: comb.clone(),
        nodes,
        arcs,
        out,
    })
}

/// A closed walk or path given by its arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub arcs: Vec<usize>,
    pub length: u64,
    pub combs: u64,
}

impl Digraph {
    pub fn comb(&self) -> &Comb {
        &self.comb
    }

    pub fn nodes(&self) -> &[GapState] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn square_arc(&self, node: usize) -> &Arc {
        &self.arcs[self.out[node][0]]
    }

    pub fn comb_arc(&self, node: usize) -> &Arc {
        &self.arcs[self.out[node][1]]
    }

    pub fn node_label(&self, node: usize) -> String {
        self.nodes[node].to_string()
    }

    fn walk(&self, arcs: Vec<usize>) -> Cycle {
        let length = arcs.iter().map(|&a| u64::from(self.arcs[a].increment)).sum();
        let combs = arcs.iter().map(|&a| u64::from(self.arcs[a].combs)).sum();
        Cycle {
            arcs,
            length,
            combs,
        }
    }

    /// Nodes visited by a walk, starting with its source.
    pub fn walk_nodes(&self, cycle: &Cycle) -> Vec<usize> {
        let mut nodes: Vec<usize> = cycle.arcs.iter().map(|&a| self.arcs[a].source).collect();
        if let Some(&last) = cycle.arcs.last() {
            let end = self.arcs[last].target;
            if nodes.first() != Some(&end) {
                nodes.push(end);
            }
        }
        nodes
    }

    /// The walk as a tile word, e.g. `C[5]S^2`.
    pub fn word(&self, cycle: &Cycle) -> String {
        let labels: Vec<String> = cycle.arcs.iter().map(|&a| self.arcs[a].label()).collect();
        let mut out = String::new();
        let mut i = 0;
        while i < labels.len() {
            let run = labels[i..].iter().take_while(|l| **l == labels[i]).count();
            out.push_str(&labels[i]);
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }

    /// All paths `from → to` whose intermediate nodes are distinct and avoid
    /// `from`, `to` and `blocked`. With `from == to` these are simple cycles.
    pub fn simple_paths(&self, from: usize, to: usize, blocked: &dyn Fn(usize) -> bool) -> Vec<Cycle> {
        self.simple_paths_upto(from, to, blocked, usize::MAX)
    }

    /// As [`Digraph::simple_paths`], stopping once `limit` paths are found.
    fn simple_paths_upto(
        &self,
        from: usize,
        to: usize,
        blocked: &dyn Fn(usize) -> bool,
        limit: usize,
    ) -> Vec<Cycle> {
        // Only intermediate nodes that can still reach `to` are worth visiting.
        let n = self.nodes.len();
        let mut live = vec![false; n];
        let mut stack = vec![to];
        while let Some(v) = stack.pop() {
            for arc in self.arcs.iter().filter(|a| a.target == v) {
                let u = arc.source;
                if !live[u] && u != to && u != from && !blocked(u) {
                    live[u] = true;
                    stack.push(u);
                }
            }
        }
        let mut found = Vec::new();
        let mut on_path = vec![false; n];
        let mut arcs = Vec::new();
        self.extend_paths(from, to, &live, limit, &mut on_path, &mut arcs, &mut found);
        found
    }

    fn extend_paths(
        &self,
        at: usize,
        to: usize,
        live: &[bool],
        limit: usize,
        on_path: &mut [bool],
        arcs: &mut Vec<usize>,
        found: &mut Vec<Cycle>,
    ) {
        for a in self.out[at] {
            if found.len() >= limit {
                return;
            }
            let next = self.arcs[a].target;
            arcs.push(a);
            if next == to {
                found.push(self.walk(arcs.clone()));
            } else if live[next] && !on_path[next] {
                on_path[next] = true;
                self.extend_paths(next, to, live, limit, on_path, arcs, found);
                on_path[next] = false;
            }
            arcs.pop();
        }
    }

    /// Simple cycles avoiding the zero node, each listed once starting at its
    /// lowest-index node.
    pub fn inner_cycles(&self) -> Vec<Cycle> {
        self.inner_cycles_upto(usize::MAX)
    }

    fn inner_cycles_upto(&self, limit: usize) -> Vec<Cycle> {
        let mut found = Vec::new();
        for s in 1..self.nodes.len() {
            let room = limit - found.len();
            found.extend(self.simple_paths_upto(s, s, &|v| v == ZERO || v < s, room));
            if found.len() >= limit {
                break;
            }
        }
        found
    }

    /// Simple cycles through the zero node.
    pub fn zero_cycles(&self) -> Vec<Cycle> {
        self.simple_paths(ZERO, ZERO, &|_| false)
    }

    /// Zero-node cycles that avoid `common`.
    pub fn outer_cycles(&self, common: usize) -> Vec<Cycle> {
        self.simple_paths(ZERO, ZERO, &|v| v == common)
    }

    /// Concatenations of a simple path `0 → common` with a simple path
    /// `common → 0`, neither touching the zero node or `common` in between.
    pub fn common_circuits(&self, common: usize) -> Vec<Cycle> {
        let blocked = |v: usize| v == ZERO || v == common;
        let into = self.simple_paths(ZERO, common, &blocked);
        let back = self.simple_paths(common, ZERO, &blocked);
        into.iter()
            .flat_map(|a| {
                back.iter().map(move |b| {
                    let mut arcs = a.arcs.clone();
                    arcs.extend(&b.arcs);
                    arcs
                })
            })
            .map(|arcs| self.walk(arcs))
            .collect()
    }

    /// True iff the subgraph on the nodes accepted by `keep`, without the arcs
    /// rejected by `keep_arc`, has a cycle.
    fn has_cycle(&self, keep: &dyn Fn(usize) -> bool, keep_arc: &dyn Fn(usize) -> bool) -> bool {
        // Kahn's algorithm on the induced subgraph.
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        let live = |a: usize| {
            let arc = &self.arcs[a];
            keep(arc.source) && keep(arc.target) && keep_arc(a)
        };
        for a in (0..self.arcs.len()).filter(|&a| live(a)) {
            indeg[self.arcs[a].target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| keep(v) && indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for a in self.out[v] {
                if live(a) {
                    let t = self.arcs[a].target;
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        removed < (0..n).filter(|&v| keep(v)).count()
    }

    fn has_inner_cycle(&self) -> bool {
        self.has_cycle(&|v| v != ZERO, &|_| true)
    }

    /// Nodes lying on every inner cycle, in breadth-first order.
    fn common_nodes(&self, keep_arc: &dyn Fn(usize) -> bool) -> Vec<usize> {
        (1..self.nodes.len())
            .filter(|&p| !self.has_cycle(&|v| v != ZERO && v != p, keep_arc))
            .collect()
    }

    /// Numbers of walks `0 → 0` of each total length `n ≤ n_max`, refined by
    /// the number of combs. Entry `[n][k]` is the number of `n`-board tilings
    /// using `k` combs.
    pub fn walk_counts(&self, n_max: usize) -> Vec<Vec<BigUint>> {
        let order = self.zero_increment_order();
        let n = self.nodes.len();
        // f[len][node][k]
        let mut f = vec![vec![vec![BigUint::zero(); n_max + 1]; n]; n_max + 1];
        f[0][ZERO][0] = BigUint::from(1u32);
        for len in 0..=n_max {
            for &u in &order {
                for a in self.out[u] {
                    let arc = &self.arcs[a];
                    let to_len = len + arc.increment as usize;
                    if to_len > n_max {
                        continue;
                    }
                    let dk = arc.combs as usize;
                    for k in 0..=n_max - dk {
                        if f[len][u][k].is_zero() {
                            continue;
                        }
                        let v = f[len][u][k].clone();
                        f[to_len][arc.target][k + dk] += v;
                    }
                }
            }
        }
        f.into_iter().map(|mut row| row.swap_remove(ZERO)).collect()
    }

    /// Topological order of the nodes under the zero-increment arcs.
    fn zero_increment_order(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for arc in self.arcs.iter().filter(|a| a.increment == 0) {
            indeg[arc.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in self.out[v] {
                let arc = &self.arcs[a];
                if arc.increment == 0 {
                    indeg[arc.target] -= 1;
                    if indeg[arc.target] == 0 {
                        stack.push(arc.target);
                    }
                }
            }
        }
        assert_eq!(order.len(), n, "zero-increment arcs form a cycle");
        order
    }

    /// First-return walks at the zero node of total length at most `max_len`.
    pub fn enumerate_metatiles(&self, max_len: u64) -> Vec<Metatile> {
        let mut found = Vec::new();
        let mut arcs = Vec::new();
        self.extend_metatiles(ZERO, 0, max_len, &mut arcs, &mut found);
        found.sort_by(|a, b| (a.length, &a.word).cmp(&(b.length, &b.word)));
        found
    }

    fn extend_metatiles(&self, at: usize, len: u64, max_len: u64, arcs: &mut Vec<usize>, found: &mut Vec<Metatile>) {
        for a in self.out[at] {
            let arc = &self.arcs[a];
            let next_len = len + u64::from(arc.increment);
            if next_len > max_len {
                continue;
            }
            arcs.push(a);
            if arc.target == ZERO {
                let walk = self.walk(arcs.clone());
                found.push(Metatile {
                    length: walk.length,
                    combs: walk.combs,
                    word: self.word(&walk),
                });
            } else {
                self.extend_metatiles(arc.target, next_len, max_len, arcs, found);
            }
            arcs.pop();
        }
    }

    /// Graphviz rendering with nodes in breadth-first order.
    pub fn export_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n", self.comb);
        for (i, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{node}\"];\n"));
        }
        for arc in &self.arcs {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                arc.source,
                arc.target,
                arc.label()
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "comb": self.comb.to_json(),
            "nodes": self.nodes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|a| json!({
                "source": a.source,
                "target": a.target,
                "tile": a.kind.letter().to_string(),
                "increment": a.increment,
                "combs": a.combs,
            })).collect::<Vec<_>>(),
        })
    }

    fn cycle_json(&self, c: &Cycle) -> Value {
        json!({ "length": c.length, "combs": c.combs, "word": self.word(c) })
    }
}

/// A first-return walk at the zero node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metatile {
    pub length: u64,
    pub combs: u64,
    pub word: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureClass {
    NoInnerCycles,
    CommonNode,
    FourInnerTwoErrant,
    Other,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureClass::NoInnerCycles => "no-inner-cycles",
            StructureClass::CommonNode => "common-node",
            StructureClass::FourInnerTwoErrant => "four-inner-two-errant",
            StructureClass::Other => "other",
        })
    }
}

/// Where an errant loop sits relative to the pseudo-common node along the
/// common circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CommonFirst,
    ErrantFirst,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrantLoop {
    pub node: usize,
    /// Index into [`CycleStructure::inner`] of the non-loop cycle it hangs on.
    pub attached_to: usize,
}

/// Cycle data of a digraph, tagged with the recursion theorem that applies.
///
/// For [`StructureClass::FourInnerTwoErrant`], `inner` is ordered as the two
/// cycles through the pseudo-common node followed by their errant loops, and
/// `circuits[i]` is the circuit sharing a part with `inner[i]`.
#[derive(Debug, Clone)]
pub struct CycleStructure {
    pub class: StructureClass,
    pub digraph: Digraph,
    pub inner: Vec<Cycle>,
    /// Zero-node cycles avoiding the common node, or every zero-node cycle
    /// when there are no inner cycles. Cycle lists stay empty for
    /// [`StructureClass::Other`].
    pub outer: Vec<Cycle>,
    pub circuits: Vec<Cycle>,
    pub common: Option<usize>,
    pub errant: Vec<ErrantLoop>,
    pub orientation: Option<Orientation>,
}

impl CycleStructure {
    pub fn inner_lengths(&self) -> Vec<u64> {
        self.inner.iter().map(|c| c.length).collect()
    }

    pub fn outer_lengths(&self) -> Vec<u64> {
        self.outer.iter().map(|c| c.length).collect()
    }

    pub fn circuit_lengths(&self) -> Vec<u64> {
        self.circuits.iter().map(|c| c.length).collect()
    }

    pub fn to_json(&self) -> Value {
        let g = &self.digraph;
        let cycles = |cs: &[Cycle]| cs.iter().map(|c| g.cycle_json(c)).collect::<Vec<_>>();
        let mut v = g.to_json();
        let obj = v.as_object_mut().expect("digraph json is an object");
        obj.insert("class".into(), json!(self.class.to_string()));
        obj.insert("inner_cycles".into(), json!(cycles(&self.inner)));
        obj.insert("outer_cycles".into(), json!(cycles(&self.outer)));
        obj.insert("common_circuits".into(), json!(cycles(&self.circuits)));
        obj.insert(
            "common_node".into(),
            json!(self.common.map(|p| g.node_label(p))),
        );
        obj.insert(
            "errant_loops".into(),
            json!(self
                .errant
                .iter()
                .map(|e| json!({ "node": g.node_label(e.node), "attached_to": e.attached_to }))
                .collect::<Vec<_>>()),
        );
        v
    }
}

/// Classifies the digraph and gathers the cycle data for its class.
pub fn classify_structure(g: &Digraph) -> CycleStructure {
    let mut cs = CycleStructure {
        class: StructureClass::Other,
        digraph: g.clone(),
        inner: Vec::new(),
        outer: Vec::new(),
        circuits: Vec::new(),
        common: None,
        errant: Vec::new(),
        orientation: None,
    };
    if !g.has_inner_cycle() {
        cs.class = StructureClass::NoInnerCycles;
        cs.outer = g.zero_cycles();
        return cs;
    }
    if let Some(&p) = g.common_nodes(&|_| true).first() {
        cs.class = StructureClass::CommonNode;
        cs.inner = g.inner_cycles();
        cs.outer = g.outer_cycles(p);
        cs.circuits = g.common_circuits(p);
        cs.common = Some(p);
        return cs;
    }
    // Five are enough to rule out the four-cycle shape.
    let inner = g.inner_cycles_upto(5);
    if let Some(found) = four_inner_two_errant(g, &inner) {
        cs.class = StructureClass::FourInnerTwoErrant;
        cs.inner = found.inner;
        cs.outer = found.outer;
        cs.circuits = found.circuits;
        cs.common = Some(found.common);
        cs.errant = found.errant;
        cs.orientation = Some(found.orientation);
        return cs;
    }
    cs
}

struct FourInner {
    inner: Vec<Cycle>,
    outer: Vec<Cycle>,
    circuits: Vec<Cycle>,
    common: usize,
    errant: Vec<ErrantLoop>,
    orientation: Orientation,
}

/// Checks the hypothesis of the four-inner-cycle theorem and, when it holds,
/// labels the cycles and circuits accordingly.
fn four_inner_two_errant(g: &Digraph, inner: &[Cycle]) -> Option<FourInner> {
    if inner.len() != 4 {
        return None;
    }
    let (loops, through): (Vec<&Cycle>, Vec<&Cycle>) = inner.iter().partition(|c| c.arcs.len() == 1);
    if loops.len() != 2 {
        return None;
    }
    let loop_arcs: BTreeSet<usize> = loops.iter().map(|c| c.arcs[0]).collect();
    let p = *g.common_nodes(&|a| !loop_arcs.contains(&a)).first()?;

    // Order the errant loops by breadth-first index of their node.
    let mut loops = loops;
    loops.sort_by_key(|c| g.arcs[c.arcs[0]].source);
    let errant_nodes: Vec<usize> = loops.iter().map(|c| g.arcs[c.arcs[0]].source).collect();
    if errant_nodes.contains(&p) {
        return None;
    }

    let on = |c: &Cycle, v: usize| g.walk_nodes(c).contains(&v);
    let mut ordered = Vec::new();
    for &e in &errant_nodes {
        let hosts: Vec<&&Cycle> = through.iter().filter(|c| on(c, e)).collect();
        if hosts.len() != 1 {
            return None;
        }
        ordered.push((*hosts[0]).clone());
    }
    if ordered[0] == ordered[1] {
        return None;
    }

    let all_circuits = g.common_circuits(p);
    if all_circuits.len() != 2 {
        return None;
    }
    let mut circuits = Vec::new();
    for (i, &e) in errant_nodes.iter().enumerate() {
        let other = errant_nodes[1 - i];
        let hosts: Vec<&Cycle> = all_circuits
            .iter()
            .filter(|c| on(c, e) && !on(c, other))
            .collect();
        if hosts.len() != 1 {
            return None;
        }
        circuits.push(hosts[0].clone());
    }

    let orientation = orientation(g, &ordered, &circuits, p, &errant_nodes)?;

    let outer = g.outer_cycles(p);
    if outer.iter().any(|c| errant_nodes.iter().any(|&e| on(c, e))) {
        return None;
    }

    let mut labelled = ordered;
    labelled.extend(loops.into_iter().cloned());
    Some(FourInner {
        inner: labelled,
        outer,
        circuits,
        common: p,
        errant: errant_nodes
            .iter()
            .enumerate()
            .map(|(i, &node)| ErrantLoop { node, attached_to: i })
            .collect(),
        orientation,
    })
}

/// The stretch of inner cycle `i` between the pseudo-common node and its
/// errant node must also be a stretch of circuit `i`, on the same side of the
/// pseudo-common node for both cycles.
fn orientation(
    g: &Digraph,
    cycles: &[Cycle],
    circuits: &[Cycle],
    p: usize,
    errant: &[usize],
) -> Option<Orientation> {
    let mut seen = None;
    for i in 0..2 {
        let cyc = rotate_to(g, &cycles[i], p);
        let circ = &circuits[i].arcs;
        let circ_nodes: Vec<usize> = circ.iter().map(|&a| g.arcs[a].source).collect();
        let at_p = circ_nodes.iter().position(|&v| v == p)?;
        let at_e = circ_nodes.iter().position(|&v| v == errant[i])?;
        let cyc_nodes: Vec<usize> = cyc.iter().map(|&a| g.arcs[a].source).collect();
        let cyc_e = cyc_nodes.iter().position(|&v| v == errant[i])?;
        let this = if at_p < at_e {
            // Leaving the pseudo-common node, both walks reach the errant node
            // along the same arcs.
            (circ[at_p..at_e] == cyc[..cyc_e]).then_some(Orientation::CommonFirst)?
        } else {
            (circ[at_e..at_p] == cyc[cyc_e..]).then_some(Orientation::ErrantFirst)?
        };
        if seen.is_some_and(|s| s != this) {
            return None;
        }
        seen = Some(this);
    }
    seen
}

/// Arcs of a cycle rotated to start at node `p`.
fn rotate_to(g: &Digraph, cycle: &Cycle, p: usize) -> Vec<usize> {
    let start = cycle
        .arcs
        .iter()
        .position(|&a| g.arcs[a].source == p)
        .expect("cycle passes through the node");
    let mut arcs = cycle.arcs[start..].to_vec();
    arcs.extend_from_slice(&cycle.arcs[..start]);
    arcs
}
