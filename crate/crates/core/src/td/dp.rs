//! Maximum minimal separator by dynamic programming over a tree decomposition.
//!
//! A solution is a triple `(S, A, B)` where `A` and `B` are distinct full
//! components of `S`. Every vertex gets one of four roles: in `S`, in `A`, in
//! `B`, or elsewhere (`OUT`). The triple is valid exactly when
//!
//! * no edge joins `A`–`B`, `A`–`OUT` or `B`–`OUT` (so `N(A), N(B) ⊆ S`),
//! * every `S` vertex has a neighbour in `A` and one in `B`,
//! * `A` and `B` are nonempty and connected.
//!
//! States over a bag record the role of each bag vertex, the connectivity
//! blocks of the partial `A` and `B`, two "has an `A`/`B` neighbour" flags per
//! `S` vertex, and whether a side has already been closed off. The tree is
//! walked as a nice decomposition (introduce, forget, join) without building
//! it explicitly.

use std::collections::HashMap;

use crate::error::{contract, Error, Result};
use crate::graph::{is_minimal_separator, Graph, Separator, VertexSet};

use super::{validate_td, TreeDecomposition, UnionFind};

/// Widest bag the state encoding supports.
const MAX_BAG: usize = 60;

// One byte per bag position: 0..=3 is an S vertex with its touched-A (1) and
// touched-B (2) bits, OUT is 4, A and B carry the position of their block's
// smallest member.
const TOUCH_A: u8 = 1;
const TOUCH_B: u8 = 2;
const OUT: u8 = 4;
const A_BASE: u8 = 8;
const B_BASE: u8 = A_BASE + MAX_BAG as u8;

// Trailing byte of each key.
const DONE_A: u8 = 1;
const DONE_B: u8 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Role {
    Sep,
    A,
    B,
    Out,
}

fn role(code: u8) -> Role {
    match code {
        0..=3 => Role::Sep,
        OUT => Role::Out,
        c if c < B_BASE => Role::A,
        _ => Role::B,
    }
}

/// Decoded state: `aux` holds the S flags or an arbitrary block id.
#[derive(Clone)]
struct State {
    roles: Vec<Role>,
    aux: Vec<u8>,
    done: u8,
}

impl State {
    fn decode(key: &[u8]) -> State {
        let (body, done) = key.split_at(key.len() - 1);
        let roles = body.iter().map(|&c| role(c)).collect();
        let aux = body
            .iter()
            .map(|&c| match role(c) {
                Role::Sep => c,
                Role::Out => 0,
                Role::A => c - A_BASE,
                Role::B => c - B_BASE,
            })
            .collect();
        State { roles, aux, done: done[0] }
    }

    /// Canonical key: blocks renamed to the position of their first member.
    fn encode(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(self.roles.len() + 1);
        for (i, &r) in self.roles.iter().enumerate() {
            let first = || {
                (0..=i)
                    .find(|&j| self.roles[j] == r && self.aux[j] == self.aux[i])
                    .expect("position i matches itself") as u8
            };
            key.push(match r {
                Role::Sep => self.aux[i],
                Role::Out => OUT,
                Role::A => A_BASE + first(),
                Role::B => B_BASE + first(),
            });
        }
        key.push(self.done);
        key
    }

    fn relabel(&mut self, r: Role, from: &[u8], to: u8) {
        for i in 0..self.roles.len() {
            if self.roles[i] == r && from.contains(&self.aux[i]) {
                self.aux[i] = to;
            }
        }
    }
}

struct Entry {
    key: Vec<u8>,
    value: u64,
    /// Forgotten S vertices behind this value.
    witness: VertexSet,
}

/// States over one bag, keyed canonically, keeping the best value per key.
/// Insertion order is kept so ties resolve deterministically.
struct Table {
    bag: Vec<usize>,
    entries: Vec<Entry>,
    index: HashMap<Vec<u8>, usize>,
}

impl Table {
    fn new(bag: Vec<usize>) -> Table {
        Table {
            bag,
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// The empty bag with its single empty state.
    fn start() -> Table {
        let mut t = Table::new(Vec::new());
        t.offer(vec![0], 0, VertexSet::default());
        t
    }

    fn offer(&mut self, key: Vec<u8>, value: u64, witness: VertexSet) {
        match self.index.get(&key) {
            Some(&i) => {
                if value > self.entries[i].value {
                    self.entries[i].value = value;
                    self.entries[i].witness = witness;
                }
            }
            None => {
                self.index.insert(key.clone(), self.entries.len());
                self.entries.push(Entry { key, value, witness });
            }
        }
    }
}

struct Dp<'g> {
    g: &'g Graph,
    weighted: bool,
}

impl Dp<'_> {
    fn weight(&self, v: usize) -> u64 {
        if self.weighted {
            self.g.weight(v)
        } else {
            1
        }
    }

    fn introduce(&self, t: Table, v: usize) -> Table {
        let i = t.bag.partition_point(|&x| x < v);
        let mut bag = t.bag.clone();
        bag.insert(i, v);
        let nbrs: Vec<usize> = (0..bag.len()).filter(|&j| j != i && self.g.has_edge(v, bag[j])).collect();
        let mut out = Table::new(bag);
        // Fresh block id; decoded ids are positions below MAX_BAG.
        const NEW: u8 = u8::MAX;
        for e in t.entries {
            let mut base = State::decode(&e.key);
            base.roles.insert(i, Role::Out);
            base.aux.insert(i, 0);
            let touches = |r: Role| nbrs.iter().any(|&j| base.roles[j] == r);
            let (has_a, has_b, has_out) = (touches(Role::A), touches(Role::B), touches(Role::Out));

            let mut s = base.clone();
            s.roles[i] = Role::Sep;
            s.aux[i] = if has_a { TOUCH_A } else { 0 } | if has_b { TOUCH_B } else { 0 };
            out.offer(s.encode(), e.value, e.witness.clone());

            if !has_a && !has_b {
                out.offer(base.encode(), e.value, e.witness.clone());
            }

            for (side, other, done, touch) in [(Role::A, Role::B, DONE_A, TOUCH_A), (Role::B, Role::A, DONE_B, TOUCH_B)] {
                if base.done & done != 0 || touches(other) || has_out {
                    continue;
                }
                let mut s = base.clone();
                let joined: Vec<u8> = nbrs.iter().filter(|&&j| s.roles[j] == side).map(|&j| s.aux[j]).collect();
                s.relabel(side, &joined, NEW);
                s.roles[i] = side;
                s.aux[i] = NEW;
                for &j in &nbrs {
                    if s.roles[j] == Role::Sep {
                        s.aux[j] |= touch;
                    }
                }
                out.offer(s.encode(), e.value, e.witness.clone());
            }
        }
        out
    }

    fn forget(&self, t: Table, v: usize) -> Table {
        let i = t.bag.binary_search(&v).expect("forgotten vertex is in the bag");
        let mut bag = t.bag.clone();
        bag.remove(i);
        let mut out = Table::new(bag);
        for e in t.entries {
            let mut s = State::decode(&e.key);
            let (mut value, mut witness) = (e.value, e.witness);
            match s.roles[i] {
                Role::Sep => {
                    if s.aux[i] != TOUCH_A | TOUCH_B {
                        continue;
                    }
                    value += self.weight(v);
                    witness.insert(v);
                }
                Role::Out => {}
                side => {
                    let others = |same_block: bool| {
                        (0..s.roles.len())
                            .any(|j| j != i && s.roles[j] == side && (!same_block || s.aux[j] == s.aux[i]))
                    };
                    if !others(true) {
                        // Closing a block: it must be the whole side.
                        if others(false) {
                            continue;
                        }
                        s.done |= if side == Role::A { DONE_A } else { DONE_B };
                    }
                }
            }
            s.roles.remove(i);
            s.aux.remove(i);
            out.offer(s.encode(), value, witness);
        }
        out
    }

    fn join(&self, left: Table, right: Table) -> Table {
        debug_assert_eq!(left.bag, right.bag);
        let width = left.bag.len();
        let mut by_roles: HashMap<Vec<Role>, Vec<(State, &Entry)>> = HashMap::new();
        for e in &right.entries {
            let s = State::decode(&e.key);
            by_roles.entry(s.roles.clone()).or_default().push((s, e));
        }
        let mut out = Table::new(left.bag.clone());
        for e in &left.entries {
            let l = State::decode(&e.key);
            let Some(matches) = by_roles.get(&l.roles) else {
                continue;
            };
            for (r, re) in matches {
                if l.done & r.done != 0 {
                    continue;
                }
                let mut uf = UnionFind::new(width);
                let mut s = l.clone();
                for j in 0..width {
                    match l.roles[j] {
                        Role::Sep => s.aux[j] = l.aux[j] | r.aux[j],
                        Role::Out => {}
                        _ => {
                            // Block ids are positions of first members.
                            uf.union(j, l.aux[j] as usize);
                            uf.union(j, r.aux[j] as usize);
                        }
                    }
                }
                for j in 0..width {
                    if matches!(l.roles[j], Role::A | Role::B) {
                        s.aux[j] = uf.find(j) as u8;
                    }
                }
                s.done = l.done | r.done;
                out.offer(s.encode(), e.value + re.value, e.witness.union(&re.witness));
            }
        }
        out
    }

    /// Moves a table onto `target`: forget what leaves, introduce what enters.
    fn transfer(&self, mut t: Table, target: &VertexSet) -> Table {
        let leaving: Vec<usize> = t.bag.iter().copied().filter(|&v| !target.contains(v)).collect();
        for v in leaving {
            t = self.forget(t, v);
        }
        let present: VertexSet = t.bag.iter().copied().collect();
        for v in target.difference(&present).iter() {
            t = self.introduce(t, v);
        }
        t
    }

    /// A leaf bag processed vertex by vertex: vertices absent from the parent
    /// are forgotten as soon as all their neighbours have been introduced.
    fn leaf(&self, bag: &VertexSet, parent: &VertexSet) -> Table {
        let private = bag.difference(parent);
        let mut pending = bag.clone();
        let mut seen = VertexSet::new(self.g.n());
        let mut t = Table::start();
        let ready = |seen: &VertexSet, v: usize| self.g.neighbors(v).is_subset(seen);
        while !pending.is_empty() {
            // Greedy: keep the live set small after forgetting what we can.
            let v = pending
                .iter()
                .min_by_key(|&v| {
                    let mut after = seen.clone();
                    after.insert(v);
                    let live = t.bag.len() + 1;
                    let freed = t
                        .bag
                        .iter().copied()
                        .chain(std::iter::once(v))
                        .filter(|&x| private.contains(x) && ready(&after, x))
                        .count();
                    (live - freed, v)
                })
                .expect("pending is nonempty");
            pending.remove(v);
            seen.insert(v);
            t = self.introduce(t, v);
            let done: Vec<usize> = t
                .bag
                .iter()
                .copied()
                .filter(|&x| private.contains(x) && ready(&seen, x))
                .collect();
            for x in done {
                t = self.forget(t, x);
            }
        }
        t
    }

    fn node(&self, td: &TreeDecomposition, adj: &[Vec<usize>], node: usize, parent: Option<usize>) -> Table {
        let bag = &td.bags[node];
        let children: Vec<usize> = adj[node].iter().copied().filter(|&c| Some(c) != parent).collect();
        if children.is_empty() {
            let parent_bag = parent.map_or_else(VertexSet::default, |p| td.bags[p].clone());
            return self.leaf(bag, &parent_bag);
        }
        let mut acc: Option<Table> = None;
        for c in children {
            let sub = self.node(td, adj, c, Some(node));
            let sub = self.transfer(sub, bag);
            acc = Some(match acc {
                None => sub,
                Some(prev) => self.join(prev, sub),
            });
        }
        acc.expect("at least one child")
    }
}

/// Maximum-size (or weight) minimal separator of `g` via a valid tree
/// decomposition `t`. `None` when `g` has no minimal separator.
pub fn max_minimal_separator_dp(g: &Graph, t: &TreeDecomposition, weighted: bool) -> Result<Option<(Separator, u64)>> {
    if !validate_td(g, t) {
        return Err(contract("not a valid tree decomposition of the graph"));
    }
    if t.bags.is_empty() {
        return Ok(None);
    }
    if t.width() + 1 > MAX_BAG {
        return Err(Error::Precondition(format!(
            "bags of size {} exceed the supported {MAX_BAG}",
            t.width() + 1
        )));
    }
    let dp = Dp { g, weighted };
    let adj = t.adjacency();
    let root = dp.node(t, &adj, 0, None);
    let root = dp.transfer(root, &VertexSet::default());
    let best = root
        .entries
        .iter()
        .filter(|e| e.key == [DONE_A | DONE_B])
        .max_by(|x, y| x.value.cmp(&y.value).then_with(|| y.witness.cmp(&x.witness)));
    let Some(best) = best else {
        return Ok(None);
    };
    let sep = is_minimal_separator(g, &best.witness)
        .ok_or_else(|| Error::Internal(format!("DP witness {} is not a minimal separator", best.witness)))?;
    Ok(Some((sep, best.value)))
}
