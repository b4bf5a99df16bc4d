//! Oriented link diagrams as PD codes.
//!
//! A crossing `X(a,b,c,d)` lists the four edge labels counterclockwise
//! starting from the incoming under-strand `a`; the under-strand runs
//! `a -> c`. The over-strand direction is recovered from global orientation
//! consistency, and the crossing sign is `+1` when the over-strand runs
//! `d -> b`, `-1` when it runs `b -> d`. Crossingless circles are encoded by
//! `O(k)` tokens with a fresh edge label.
//!
//! Resolutions: the type-0 smoothing joins the arc ends `(a,b)` and `(c,d)`,
//! the type-1 smoothing joins `(a,d)` and `(b,c)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
}

/// A choice of resolution for every crossing, `0` or `1` per coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionState {
    bits: u32,
    len: u8,
}

impl ResolutionState {
    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= 32);
        ResolutionState { bits: bits & mask(len), len: len as u8 }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut b = 0u32;
        for (i, &v) in bits.iter().enumerate() {
            if v != 0 {
                b |= 1 << i;
            }
        }
        ResolutionState::new(b, bits.len())
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> u8 {
        ((self.bits >> i) & 1) as u8
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of 1-resolutions, `|ξ|`.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn with_bit(&self, i: usize, v: u8) -> Self {
        let mut b = self.bits & !(1 << i);
        if v != 0 {
            b |= 1 << i;
        }
        ResolutionState { bits: b, len: self.len }
    }

    /// All `2^n` states in increasing numeric order.
    pub fn all(n: usize) -> impl Iterator<Item = ResolutionState> {
        assert!(n <= 32);
        (0u64..(1u64 << n)).map(move |b| ResolutionState::new(b as u32, n))
    }
}

fn mask(len: usize) -> u32 {
    if len == 32 { u32::MAX } else { (1u32 << len) - 1 }
}

impl fmt::Debug for ResolutionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

/// The circles of a resolved diagram. Each circle is a sorted list of edge
/// labels; circles are ordered by their minimal label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleSet {
    pub circles: Vec<Vec<usize>>,
}

impl CircleSet {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn circle_of(&self, edge: usize) -> Option<usize> {
        self.circles.iter().position(|c| c.binary_search(&edge).is_ok())
    }
}

/// A resolution state together with an orientation (+ or -) per circle.
#[derive(Clone, Debug)]
pub struct EnhancedState {
    pub state: ResolutionState,
    /// `true` for a positively oriented circle.
    pub orientation: Vec<bool>,
}

impl EnhancedState {
    /// `σ = d_+ - d_-`.
    pub fn sigma(&self) -> i64 {
        let plus = self.orientation.iter().filter(|&&b| b).count() as i64;
        plus * 2 - self.orientation.len() as i64
    }
}

/// Per crossing, the circle containing its first local arc (`(a,b)` in a
/// type-0 resolution, `(a,d)` in type 1) and its second (`(c,d)` resp.
/// `(b,c)`).
pub type ArcCircles = (usize, usize);

/// A stub is one of the four local arc ends of a crossing, index `4k + slot`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Stub {
    crossing: usize,
    slot: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[usize; 4]>,
    free_loops: Vec<usize>,
    signs: Vec<i8>,
    arrows: Vec<bool>,
    succ: BTreeMap<usize, usize>,
    components: Vec<Vec<usize>>,
}

impl LinkDiagram {
    /// Build and validate from quadruples whose first slot is the incoming
    /// under-strand, plus crossingless circles.
    pub fn new(crossings: Vec<[usize; 4]>, free_loops: Vec<usize>) -> Result<Self, DiagramError> {
        Self::build(crossings, free_loops, true)
    }

    /// Build from quadruples whose under-strand may enter at either of the
    /// slots `a`/`c`; orientations are chosen deterministically and the
    /// quadruples rotated so that the first slot becomes the incoming
    /// under-strand.
    pub fn from_unoriented(
        crossings: Vec<[usize; 4]>,
        free_loops: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        Self::build(crossings, free_loops, false)
    }

    fn build(
        mut crossings: Vec<[usize; 4]>,
        mut free_loops: Vec<usize>,
        anchored: bool,
    ) -> Result<Self, DiagramError> {
        free_loops.sort_unstable();
        let mut occurrences: BTreeMap<usize, Vec<Stub>> = BTreeMap::new();
        for (k, q) in crossings.iter().enumerate() {
            for (slot, &e) in q.iter().enumerate() {
                occurrences.entry(e).or_default().push(Stub { crossing: k, slot });
            }
        }
        for (&e, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(DiagramError::Validation(format!(
                    "edge label {e} appears {} times, expected 2",
                    occ.len()
                )));
            }
        }
        for &l in &free_loops {
            if occurrences.contains_key(&l) {
                return Err(DiagramError::Validation(format!(
                    "free-loop label {l} also appears at a crossing"
                )));
            }
        }
        if free_loops.windows(2).any(|w| w[0] == w[1]) {
            return Err(DiagramError::Validation("duplicate free-loop label".into()));
        }

        // Planarity: the quadruples are a rotation system; the diagram is
        // realizable in the plane iff every connected piece of the 4-valent
        // graph has genus zero, i.e. faces = edges - vertices + 1 + pieces.
        if !crossings.is_empty() {
            let n = crossings.len();
            // Face tracing with darts (edge occurrences directed into a
            // crossing): the face turns to the next stub counterclockwise.
            let mut next_dart: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
            for (k, _) in crossings.iter().enumerate() {
                for slot in 0..4 {
                    let out_slot = (slot + 1) % 4;
                    let e = crossings[k][out_slot];
                    let occ = &occurrences[&e];
                    let here = Stub { crossing: k, slot: out_slot };
                    let other = if occ[0] == here { occ[1] } else { occ[0] };
                    next_dart.insert((k, slot), (other.crossing, other.slot));
                }
            }
            let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
            let mut faces = 0usize;
            for &start in next_dart.keys() {
                if seen.contains(&start) {
                    continue;
                }
                faces += 1;
                let mut cur = start;
                loop {
                    seen.insert(cur);
                    cur = next_dart[&cur];
                    if cur == start {
                        break;
                    }
                }
            }
            // Connected pieces of the crossing graph.
            let mut piece: Vec<usize> = (0..n).collect();
            fn root(piece: &mut Vec<usize>, mut x: usize) -> usize {
                while piece[x] != x {
                    piece[x] = piece[piece[x]];
                    x = piece[x];
                }
                x
            }
            for occ in occurrences.values() {
                let (a, b) = (root(&mut piece, occ[0].crossing), root(&mut piece, occ[1].crossing));
                if a != b {
                    piece[a] = b;
                }
            }
            let pieces = (0..n).filter(|&k| root(&mut piece, k) == k).count();
            // Per piece, V - E + F = 2 on the sphere; E = 2V here, so the
            // traced face count must be n + 2 * pieces.
            if faces != n + 2 * pieces {
                return Err(DiagramError::Validation(format!(
                    "diagram is not planar: {faces} faces for {n} crossings in {pieces} pieces"
                )));
            }
        }


        // Trace strand cycles: entering a crossing at one stub, the strand
        // leaves at the paired stub (a<->c, b<->d). Each cycle is a list of
        // (edge, head stub), the head being where the edge terminates in the
        // walk direction.
        let other_occurrence = |e: usize, s: Stub| -> Stub {
            let occ = &occurrences[&e];
            if occ[0] == s { occ[1] } else { occ[0] }
        };
        let mut visited: BTreeSet<usize> = BTreeSet::new();
        let mut cycles: Vec<Vec<(usize, Stub)>> = Vec::new();
        for &start in occurrences.keys() {
            if visited.contains(&start) {
                continue;
            }
            let start_head = occurrences[&start][1];
            let mut cycle: Vec<(usize, Stub)> = Vec::new();
            let mut edge = start;
            let mut head = start_head;
            loop {
                visited.insert(edge);
                cycle.push((edge, head));
                let exit = Stub { crossing: head.crossing, slot: head.slot ^ 2 };
                let next = crossings[exit.crossing][exit.slot];
                edge = next;
                head = other_occurrence(next, exit);
                if edge == start && head == start_head {
                    break;
                }
                if cycle.len() > 4 * crossings.len() + 4 {
                    return Err(DiagramError::Validation(
                        "strand tracing failed to close".into(),
                    ));
                }
            }
            cycles.push(cycle);
        }

        // Orient each cycle. A head at slot 0 says the walk agrees with the
        // under-in convention there, a head at slot 2 says it disagrees.
        for cycle in &mut cycles {
            let agree = cycle.iter().filter(|&&(_, h)| h.slot == 0).count();
            let disagree = cycle.iter().filter(|&&(_, h)| h.slot == 2).count();
            if anchored && agree > 0 && disagree > 0 {
                return Err(DiagramError::Validation(
                    "broken orientation: under-strand directions conflict".into(),
                ));
            }
            if disagree > agree {
                reverse_cycle(cycle, &occurrences);
            }
            // All-over components (no under stubs) keep the deterministic
            // walk direction.
        }

        // Head stubs of the final orientation.
        let mut incoming: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
        for cycle in &cycles {
            let n = cycle.len();
            for i in 0..n {
                let (e, head) = cycle[i];
                succ.insert(e, cycle[(i + 1) % n].0);
                incoming.insert((head.crossing, head.slot));
            }
        }
        for &l in &free_loops {
            succ.insert(l, l);
        }

        // Normalize: slot 0 must be the incoming under edge.
        for k in 0..crossings.len() {
            if !incoming.contains(&(k, 0)) {
                if anchored {
                    return Err(DiagramError::Validation(format!(
                        "crossing {k}: under-strand does not enter at the first slot"
                    )));
                }
                crossings[k].rotate_left(2);
                let flags: Vec<usize> = (0..4).filter(|&s| incoming.contains(&(k, s))).collect();
                for s in [0usize, 1, 2, 3] {
                    incoming.remove(&(k, s));
                }
                for s in flags {
                    incoming.insert((k, (s + 2) % 4));
                }
            }
        }

        // Signs: +1 when the over-strand enters at slot 3 (runs d -> b).
        let mut signs = Vec::with_capacity(crossings.len());
        for k in 0..crossings.len() {
            let b_in = incoming.contains(&(k, 1));
            let d_in = incoming.contains(&(k, 3));
            if b_in == d_in {
                return Err(DiagramError::Validation(format!(
                    "crossing {k}: over-strand direction is inconsistent"
                )));
            }
            signs.push(if d_in { 1 } else { -1 });
        }

        // Components as oriented label cycles, rotated to start at their
        // minimal label and sorted by it.
        let mut components: Vec<Vec<usize>> = cycles
            .iter()
            .map(|cycle| cycle.iter().map(|&(e, _)| e).collect::<Vec<_>>())
            .collect();
        for &l in &free_loops {
            components.push(vec![l]);
        }
        for comp in &mut components {
            let min_pos =
                comp.iter().enumerate().min_by_key(|&(_, &e)| e).map(|(i, _)| i).unwrap();
            comp.rotate_left(min_pos);
        }
        components.sort_by_key(|c| c[0]);

        let arrows = vec![false; crossings.len()];
        Ok(LinkDiagram { crossings, free_loops, signs, arrows, succ, components })
    }

    /// Parse PD text: whitespace-separated `X(a,b,c,d)` and `O(k)` tokens,
    /// `#` starts a comment. Empty input yields the unknot.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let mut crossings = Vec::new();
        let mut free_loops = Vec::new();
        let mut stripped = String::new();
        for line in text.lines() {
            let line = match line.find('#') {
                Some(i) => &line[..i],
                None => line,
            };
            stripped.push_str(line);
            stripped.push(' ');
        }
        let mut rest = stripped.trim();
        while !rest.is_empty() {
            let (token, tail) = next_token(rest)?;
            rest = tail.trim_start();
            let token = token.trim();
            if let Some(args) = token.strip_prefix('X') {
                let nums = parse_args(args, 4)?;
                crossings.push([nums[0], nums[1], nums[2], nums[3]]);
            } else if let Some(args) = token.strip_prefix('O') {
                let nums = parse_args(args, 1)?;
                free_loops.push(nums[0]);
            } else {
                return Err(DiagramError::Parse(format!("unexpected token {token:?}")));
            }
        }
        if crossings.is_empty() && free_loops.is_empty() {
            // Empty PD: one marked unknot component.
            free_loops.push(1);
        }
        LinkDiagram::new(crossings, free_loops)
    }

    /// Canonical PD text; `parse_pd` round-trips it exactly.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|q| format!("X({},{},{},{})", q[0], q[1], q[2], q[3]))
            .collect();
        for &l in &self.free_loops {
            parts.push(format!("O({})", l));
        }
        parts.join(" ")
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[usize] {
        &self.free_loops
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn arrows(&self) -> &[bool] {
        &self.arrows
    }

    /// Flip the arrow choice at one crossing.
    pub fn set_arrow(&mut self, crossing: usize, flipped: bool) {
        self.arrows[crossing] = flipped;
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, edge: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&edge))
    }

    /// `lk(c1, c2) = 1/2 Σ sgn` over crossings between the two components.
    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, DiagramError> {
        if c1 >= self.components.len() {
            return Err(DiagramError::UnknownComponent(c1));
        }
        if c2 >= self.components.len() {
            return Err(DiagramError::UnknownComponent(c2));
        }
        let mut total = 0i64;
        for (k, q) in self.crossings.iter().enumerate() {
            let under = self.component_of(q[0]).unwrap();
            let over = self.component_of(q[1]).unwrap();
            if (under == c1 && over == c2) || (under == c2 && over == c1) {
                total += self.signs[k] as i64;
            }
        }
        debug_assert_eq!(total % 2, 0);
        Ok(total / 2)
    }

    /// Linking number of one component with the rest of the link.
    pub fn linking_with_rest(&self, c: usize) -> Result<i64, DiagramError> {
        if c >= self.components.len() {
            return Err(DiagramError::UnknownComponent(c));
        }
        let mut total = 0i64;
        for (k, q) in self.crossings.iter().enumerate() {
            let under = self.component_of(q[0]).unwrap();
            let over = self.component_of(q[1]).unwrap();
            if (under == c) ^ (over == c) {
                total += self.signs[k] as i64;
            }
        }
        Ok(total / 2)
    }

    /// Trace the circles of the resolved diagram.
    pub fn resolve(&self, state: ResolutionState) -> CircleSet {
        self.resolve_arcs(state).0
    }

    /// Trace circles and report, per crossing, which circle contains each of
    /// its two local arcs in this resolution.
    pub fn resolve_arcs(&self, state: ResolutionState) -> (CircleSet, Vec<ArcCircles>) {
        assert_eq!(state.len(), self.crossings.len(), "state length mismatch");
        let n = self.crossings.len();
        // Type 0 joins stubs (0,1) and (2,3); type 1 joins (0,3) and (1,2).
        let smooth_partner = |stub: usize| -> usize {
            let k = stub / 4;
            let slot = stub % 4;
            let p = if state.bit(k) == 0 { slot ^ 1 } else { 3 - slot };
            4 * k + p
        };
        let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, q) in self.crossings.iter().enumerate() {
            for (slot, &e) in q.iter().enumerate() {
                occ.entry(e).or_default().push(4 * k + slot);
            }
        }
        let mut stub_circle: Vec<Option<usize>> = vec![None; 4 * n];
        let mut circles: Vec<Vec<usize>> = Vec::new();
        for (&edge, stubs) in &occ {
            if stub_circle[stubs[0]].is_some() {
                continue;
            }
            let idx = circles.len();
            let mut edges = BTreeSet::new();
            let mut cur_edge = edge;
            let mut cur_stub = stubs[0];
            loop {
                edges.insert(cur_edge);
                stub_circle[cur_stub] = Some(idx);
                let partner = smooth_partner(cur_stub);
                stub_circle[partner] = Some(idx);
                let e2 = self.crossings[partner / 4][partner % 4];
                let e2_occ = &occ[&e2];
                let next = if e2_occ[0] == partner { e2_occ[1] } else { e2_occ[0] };
                cur_edge = e2;
                cur_stub = next;
                if cur_edge == edge && cur_stub == stubs[0] {
                    break;
                }
            }
            circles.push(edges.into_iter().collect());
        }
        for &l in &self.free_loops {
            circles.push(vec![l]);
        }
        // Canonical order: ascending minimal edge label.
        let mut order: Vec<usize> = (0..circles.len()).collect();
        order.sort_by_key(|&i| circles[i][0]);
        let mut rank = vec![0usize; circles.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let sorted: Vec<Vec<usize>> = order.iter().map(|&i| circles[i].clone()).collect();
        let arcs: Vec<ArcCircles> = (0..n)
            .map(|k| {
                (rank[stub_circle[4 * k].unwrap()], rank[stub_circle[4 * k + 2].unwrap()])
            })
            .collect();
        (CircleSet { circles: sorted }, arcs)
    }

    /// Mirror image: every crossing swaps over- and under-strand; every sign
    /// negates.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(q, &s)| {
                // The new under-in is the old over-in: slot 3 for positive
                // crossings (over d -> b), slot 1 for negative ones.
                let mut q = *q;
                if s > 0 {
                    q.rotate_left(3);
                } else {
                    q.rotate_left(1);
                }
                q
            })
            .collect();
        LinkDiagram::new(crossings, self.free_loops.clone())
            .expect("mirror of a valid diagram is valid")
    }

    /// Reverse the orientation of one component.
    pub fn reverse_component(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        if c >= self.components.len() {
            return Err(DiagramError::UnknownComponent(c));
        }
        let comp: BTreeSet<usize> = self.components[c].iter().copied().collect();
        let crossings = self
            .crossings
            .iter()
            .map(|q| {
                let mut q = *q;
                if comp.contains(&q[0]) {
                    // Reversed under-strand: the incoming edge is now the old
                    // outgoing one.
                    q.rotate_left(2);
                }
                q
            })
            .collect();
        LinkDiagram::new(crossings, self.free_loops.clone())
    }

    /// Swap over- and under-strand at a single crossing.
    pub fn crossing_change(&self, k: usize) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        if self.signs[k] > 0 {
            crossings[k].rotate_left(3);
        } else {
            crossings[k].rotate_left(1);
        }
        LinkDiagram::new(crossings, self.free_loops.clone())
            .expect("crossing change of a valid diagram is valid")
    }

    /// The oriented smoothing of one crossing: type 0 for positive crossings,
    /// type 1 for negative ones. Edge labels are renumbered afterwards.
    pub fn smooth_crossing(&self, k: usize) -> LinkDiagram {
        let q = self.crossings[k];
        let joins: [(usize, usize); 2] = if self.signs[k] > 0 {
            [(q[0], q[1]), (q[2], q[3])]
        } else {
            [(q[0], q[3]), (q[1], q[2])]
        };
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        fn find(rename: &BTreeMap<usize, usize>, mut x: usize) -> usize {
            while let Some(&y) = rename.get(&x) {
                x = y;
            }
            x
        }
        let mut new_circles: Vec<usize> = Vec::new();
        for (u, v) in joins {
            let (u, v) = (find(&rename, u), find(&rename, v));
            if u == v {
                new_circles.push(u);
            } else {
                rename.insert(v, u);
            }
        }
        let crossings: Vec<[usize; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, q)| q.map(|e| find(&rename, e)))
            .collect();
        let mut free: Vec<usize> = self.free_loops.iter().map(|&l| find(&rename, l)).collect();
        for c in new_circles {
            let c = find(&rename, c);
            // A closed-up strand is a free circle only if it no longer meets
            // any crossing.
            if !crossings.iter().any(|q| q.contains(&c)) {
                free.push(c);
            }
        }
        free.sort_unstable();
        free.dedup();
        renumber(crossings, free)
    }

    /// Disjoint union with an extra crossingless unknot circle.
    pub fn with_extra_circle(&self) -> LinkDiagram {
        let fresh = self
            .crossings
            .iter()
            .flatten()
            .copied()
            .chain(self.free_loops.iter().copied())
            .max()
            .unwrap_or(0)
            + 1;
        let mut free = self.free_loops.clone();
        free.push(fresh);
        LinkDiagram::new(self.crossings.clone(), free).expect("adding a circle keeps validity")
    }
}

fn reverse_cycle(cycle: &mut Vec<(usize, Stub)>, occurrences: &BTreeMap<usize, Vec<Stub>>) {
    let mut rev: Vec<(usize, Stub)> = cycle
        .iter()
        .map(|&(e, head)| {
            let occ = &occurrences[&e];
            let other = if occ[0] == head { occ[1] } else { occ[0] };
            (e, other)
        })
        .collect();
    rev.reverse();
    *cycle = rev;
}

fn renumber(crossings: Vec<[usize; 4]>, free: Vec<usize>) -> LinkDiagram {
    let mut labels: BTreeSet<usize> = BTreeSet::new();
    for q in &crossings {
        labels.extend(q.iter().copied());
    }
    labels.extend(free.iter().copied());
    let map: BTreeMap<usize, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
    let crossings = crossings.into_iter().map(|q| q.map(|e| map[&e])).collect();
    let free = free.into_iter().map(|l| map[&l]).collect();
    LinkDiagram::new(crossings, free).expect("renumbered diagram stays valid")
}

fn next_token(text: &str) -> Result<(&str, &str), DiagramError> {
    let close = text
        .find(')')
        .ok_or_else(|| DiagramError::Parse("missing closing parenthesis".into()))?;
    Ok((&text[..=close], &text[close + 1..]))
}

fn parse_args(args: &str, count: usize) -> Result<Vec<usize>, DiagramError> {
    let inner = args
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| DiagramError::Parse(format!("malformed argument list {args:?}")))?;
    let nums: Result<Vec<usize>, _> =
        inner.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let nums = nums.map_err(|_| DiagramError::Parse(format!("bad integer in {args:?}")))?;
    if nums.len() != count {
        return Err(DiagramError::Parse(format!(
            "expected {count} arguments, got {} in {args:?}",
            nums.len()
        )));
    }
    if nums.iter().any(|&n| n == 0) {
        return Err(DiagramError::Parse("edge labels must be positive".into()));
    }
    Ok(nums)
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Standard diagrams used across the test suites.
pub mod standard {
    use super::LinkDiagram;

    /// Left-handed trefoil, `(n+, n-) = (0, 3)`.
    pub fn left_trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
    }

    pub fn right_trefoil() -> LinkDiagram {
        left_trefoil().mirror()
    }

    /// Positive Hopf link, both crossings `+1`.
    pub fn hopf_link() -> LinkDiagram {
        LinkDiagram::parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap()
    }

    pub fn unknot() -> LinkDiagram {
        LinkDiagram::parse_pd("").unwrap()
    }

    pub fn unlink(n: usize) -> LinkDiagram {
        let text: Vec<String> = (1..=n).map(|k| format!("O({k})")).collect();
        LinkDiagram::parse_pd(&text.join(" ")).unwrap()
    }

    /// Figure-eight knot.
    pub fn figure_eight() -> LinkDiagram {
        LinkDiagram::parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_parses_with_three_negative_crossings() {
        let d = standard::left_trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.n_plus(), 0);
        assert_eq!(d.n_minus(), 3);
        assert_eq!(d.writhe(), -3);
    }

    #[test]
    fn empty_pd_is_unknot() {
        let d = standard::unknot();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn hopf_link_parses_with_equal_signs() {
        let d = standard::hopf_link();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.signs()[0], d.signs()[1]);
        assert_eq!(d.writhe(), 2 * d.linking_number(0, 1).unwrap());
        assert_eq!(d.linking_number(0, 1).unwrap().abs(), 1);
    }

    #[test]
    fn unlink_has_no_linking() {
        let d = standard::unlink(2);
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap(), 0);
    }

    #[test]
    fn linking_number_unknown_component() {
        let d = standard::unknot();
        assert_eq!(d.linking_number(0, 1), Err(DiagramError::UnknownComponent(1)));
    }

    #[test]
    fn trefoil_resolutions_hand_traced() {
        // Hand-traced circle counts for the left trefoil, states in numeric
        // order 000..111 (bit i = crossing i).
        let d = standard::left_trefoil();
        let expected = [3, 2, 2, 1, 2, 1, 1, 2];
        for (i, state) in ResolutionState::all(3).enumerate() {
            assert_eq!(d.resolve(state).len(), expected[i], "state {:?}", state);
        }
    }

    #[test]
    fn unknot_resolution() {
        let d = standard::unknot();
        assert_eq!(d.resolve(ResolutionState::new(0, 0)).len(), 1);
    }

    #[test]
    fn saddle_changes_circle_count_by_one() {
        for d in [standard::left_trefoil(), standard::figure_eight(), standard::hopf_link()] {
            let n = d.crossing_count();
            for state in ResolutionState::all(n) {
                let c0 = d.resolve(state).len() as i64;
                for i in 0..n {
                    if state.bit(i) == 0 {
                        let c1 = d.resolve(state.with_bit(i, 1)).len() as i64;
                        assert_eq!((c1 - c0).abs(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn mirror_negates_writhe_and_is_involutive() {
        for d in [standard::left_trefoil(), standard::figure_eight(), standard::hopf_link()] {
            let m = d.mirror();
            assert_eq!(m.writhe(), -d.writhe());
            assert_eq!(m.mirror(), d);
        }
        assert_eq!(standard::unknot().mirror(), standard::unknot());
        assert_eq!(standard::right_trefoil().writhe(), 3);
    }

    #[test]
    fn reverse_component_shifts_signs() {
        let d = standard::hopf_link();
        let l = d.linking_number(0, 1).unwrap();
        let r = d.reverse_component(0).unwrap();
        assert_eq!(r.n_plus() as i64, d.n_plus() as i64 - 2 * l);
        assert_eq!(r.n_minus() as i64, d.n_minus() as i64 + 2 * l);
        // Knots keep their signs under full reversal.
        let k = standard::left_trefoil();
        let rk = k.reverse_component(0).unwrap();
        assert_eq!(rk.writhe(), k.writhe());
        // Reversing twice restores the diagram.
        assert_eq!(r.reverse_component(0).unwrap(), d);
    }

    #[test]
    fn render_parse_round_trip() {
        for d in [
            standard::left_trefoil(),
            standard::figure_eight(),
            standard::hopf_link(),
            standard::unlink(3),
        ] {
            let text = d.render();
            assert_eq!(LinkDiagram::parse_pd(&text).unwrap(), d);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(LinkDiagram::parse_pd("X(1,2,3)").is_err());
        assert!(LinkDiagram::parse_pd("Y(1,2,3,4)").is_err());
        assert!(LinkDiagram::parse_pd("X(1,4,2,5)").is_err());
        assert!(LinkDiagram::parse_pd("X(1,1,1,1)").is_err());
    }

    #[test]
    fn comments_are_ignored() {
        let d = LinkDiagram::parse_pd("# a trefoil\nX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n").unwrap();
        assert_eq!(d, standard::left_trefoil());
    }

    #[test]
    fn smoothing_reduces_crossing_number() {
        // The oriented smoothing of a self-crossing splits the knot into two
        // components; for the trefoil that leaves a Hopf link.
        let d = standard::left_trefoil();
        let s = d.smooth_crossing(0);
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.components().len(), 2);
        assert_eq!(s.linking_number(0, 1).unwrap().abs(), 1);
    }

    #[test]
    fn extra_circle_is_tracked() {
        let d = standard::left_trefoil().with_extra_circle();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.free_loops().len(), 1);
    }
}
