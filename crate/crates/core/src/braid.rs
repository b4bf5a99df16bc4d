//! Constructions of PD diagrams from braid words, plat closures and rational
//! (2-bridge) twist vectors. These feed the bundled knot table and the
//! Reidemeister-move verification suites; they are not an input format of
//! the diagram parser.

use crate::diagram::{DiagramError, LinkDiagram};

/// A braid word: letter `+i` is the positive generator crossing strands
/// `i, i+1` (1-based), `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Self {
        assert!(strands >= 1);
        for &l in &letters {
            assert!(l != 0 && (l.unsigned_abs() as usize) < strands, "letter out of range");
        }
        BraidWord { strands, letters }
    }

    /// Insert `σ_i σ_i^{-1}` after position `at` (a Reidemeister-2 pair).
    pub fn with_r2_pair(&self, at: usize, i: i32) -> BraidWord {
        let mut letters = self.letters.clone();
        let at = at.min(letters.len());
        letters.insert(at, -i);
        letters.insert(at, i);
        BraidWord::new(self.strands, letters)
    }

    /// Markov stabilization: one extra strand and a final `σ_n^{±1}`
    /// (a Reidemeister-1 kink on the closure).
    pub fn stabilized(&self, positive: bool) -> BraidWord {
        let mut letters = self.letters.clone();
        let g = self.strands as i32;
        letters.push(if positive { g } else { -g });
        BraidWord::new(self.strands + 1, letters)
    }

    /// Replace `σ_i σ_{i+1} σ_i` at position `at` by `σ_{i+1} σ_i σ_{i+1}`
    /// (a Reidemeister-3 slide), honoring signs.
    pub fn with_r3_slide(&self, at: usize) -> Option<BraidWord> {
        let l = &self.letters;
        if at + 2 >= l.len() + 1 && l.len() < at + 3 {
            return None;
        }
        if at + 3 > l.len() {
            return None;
        }
        let (a, b, c) = (l[at], l[at + 1], l[at + 2]);
        if a != c {
            return None;
        }
        let (i, j) = (a.unsigned_abs(), b.unsigned_abs());
        if j != i + 1 && i != j + 1 {
            return None;
        }
        let mut letters = l.clone();
        letters[at] = b;
        letters[at + 1] = a;
        letters[at + 2] = b;
        Some(BraidWord::new(self.strands, letters))
    }

    /// PD code of the trace closure.
    pub fn closure(&self) -> Result<LinkDiagram, DiagramError> {
        let k = self.strands;
        let mut next_label = 1usize;
        let mut fresh = || {
            let l = next_label;
            next_label += 1;
            l
        };
        // Current edge label on each strand position.
        let start: Vec<usize> = (0..k).map(|_| fresh()).collect();
        let mut current = start.clone();
        let mut crossings: Vec<[usize; 4]> = Vec::new();
        for &letter in &self.letters {
            let i = (letter.unsigned_abs() as usize) - 1;
            let (inc_l, inc_r) = (current[i], current[i + 1]);
            let out_l = fresh();
            let out_r = fresh();
            // Strands flow downward. Positive letter: the strand entering on
            // the left passes over. Under-in `u`, over-in `o`, under-out
            // `u'`, over-out `o'`; counterclockwise from the under-in the
            // stubs read (u, o, u', o') when the over-strand enters on the
            // left and (u, o', u', o) when it enters on the right.
            let (u, o, u2, o2) = if letter > 0 {
                (inc_r, inc_l, out_l, out_r)
            } else {
                (inc_l, inc_r, out_r, out_l)
            };
            if letter > 0 {
                crossings.push([u, o, u2, o2]);
            } else {
                crossings.push([u, o2, u2, o]);
            }
            current[i] = out_l;
            current[i + 1] = out_r;
        }
        // Close up: identify the bottom labels with the top ones.
        let mut rename: Vec<(usize, usize)> = Vec::new();
        let mut free: Vec<usize> = Vec::new();
        for pos in 0..k {
            let (top, bottom) = (start[pos], current[pos]);
            if top == bottom {
                // Untouched strand: a crossingless circle.
                free.push(top);
            } else {
                rename.push((bottom, top));
            }
        }
        for (from, to) in rename {
            for q in crossings.iter_mut() {
                for e in q.iter_mut() {
                    if *e == from {
                        *e = to;
                    }
                }
            }
        }
        relabel_dense(crossings, free)
    }
}

fn relabel_dense(
    crossings: Vec<[usize; 4]>,
    free: Vec<usize>,
) -> Result<LinkDiagram, DiagramError> {
    use std::collections::BTreeMap;
    let mut labels: Vec<usize> = crossings.iter().flatten().copied().collect();
    labels.extend(free.iter().copied());
    labels.sort_unstable();
    labels.dedup();
    let map: BTreeMap<usize, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
    let crossings: Vec<[usize; 4]> =
        crossings.into_iter().map(|q| q.map(|e| map[&e])).collect();
    let free: Vec<usize> = free.into_iter().map(|l| map[&l]).collect();
    LinkDiagram::from_unoriented(crossings, free)
}

/// The standard alternating diagram of the 2-bridge link with continued
/// fraction `[a_1, ..., a_k]` (all entries positive), built as a 4-plat.
///
/// Odd positions twist the two middle strands, even positions the two
/// left-hand strands, with alternating sign so the diagram alternates.
pub fn rational_link(cf: &[i64]) -> Result<LinkDiagram, DiagramError> {
    assert!(!cf.is_empty() && cf.iter().all(|&a| a > 0), "positive continued fraction");
    // The plat form needs an odd number of twist regions so the word ends on
    // a middle-pair region; [..., a] and [..., a-1, 1] name the same tangle.
    let mut cf: Vec<i64> = cf.to_vec();
    while cf.len() % 2 == 0 {
        let last = *cf.last().unwrap();
        if last > 1 {
            *cf.last_mut().unwrap() = last - 1;
            cf.push(1);
        } else {
            cf.pop();
            *cf.last_mut().unwrap() += 1;
        }
    }
    let cf = &cf[..];
    let mut next_label = 1usize;
    let mut fresh = || {
        let l = next_label;
        next_label += 1;
        l
    };
    // Four strand positions; top caps join (0,1) and (2,3).
    let cap_left = fresh();
    let cap_right = fresh();
    let mut current = [cap_left, cap_left, cap_right, cap_right];
    let mut crossings: Vec<[usize; 4]> = Vec::new();
    // A twist of strands i, i+1. `positive`: the left incoming strand passes
    // over; otherwise it passes under. Counterclockwise quadruples from the
    // under-in stub: (inc_r, inc_l, out_l, out_r) resp.
    // (inc_l, out_l, out_r, inc_r).
    let mut twist = |current: &mut [usize; 4], i: usize, positive: bool| {
        let (inc_l, inc_r) = (current[i], current[i + 1]);
        let out_l = next_label;
        next_label += 1;
        let out_r = next_label;
        next_label += 1;
        if positive {
            crossings.push([inc_r, inc_l, out_l, out_r]);
        } else {
            crossings.push([inc_l, out_l, out_r, inc_r]);
        }
        current[i] = out_l;
        current[i + 1] = out_r;
    };
    for (idx, &a) in cf.iter().enumerate() {
        let (pos, positive) = if idx % 2 == 0 { (1, true) } else { (0, false) };
        for _ in 0..a {
            twist(&mut current, pos, positive);
        }
    }
    // Bottom caps join (0,1) and (2,3).
    let mut rename: Vec<(usize, usize)> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for (a, b) in [(current[0], current[1]), (current[2], current[3])] {
        if a == b {
            free.push(a);
        } else {
            rename.push((b, a));
        }
    }
    let mut crossings = crossings;
    for (from, to) in rename {
        for q in crossings.iter_mut() {
            for e in q.iter_mut() {
                if *e == from {
                    *e = to;
                }
            }
        }
        if !crossings.iter().flatten().any(|&e| e == to) {
            free.push(to);
        }
    }
    free.sort_unstable();
    free.dedup();
    free.retain(|l| !crossings.iter().flatten().any(|e| e == l));
    relabel_dense(crossings, free)
}

/// A Montesinos link: a cyclic chain of rational tangle regions.
///
/// Each region is a twist vector in the same convention as `rational_link`:
/// entries alternate between middle-pair and left-pair twist layers, and a
/// negative entry mirrors its crossings. The regions are joined in a
/// necklace and closed up. `montesinos_link(&[&[3], &[3], &[2]])` is the
/// (3,3,2)-pretzel; a region `[1,1,1]` is the 3/2-tangle written `2 1` in
/// twist notation.
pub fn montesinos_link(regions: &[&[i64]]) -> Result<LinkDiagram, DiagramError> {
    assert!(!regions.is_empty());
    let mut next_label = 1usize;
    let mut crossings: Vec<[usize; 4]> = Vec::new();
    let mut ends: Vec<[usize; 4]> = Vec::new();
    for cf in regions {
        let a = next_label;
        next_label += 1;
        let b = next_label;
        next_label += 1;
        let mut current = [a, a, b, b];
        for (idx, &t) in cf.iter().enumerate() {
            let (pos, mut positive) = if idx % 2 == 0 { (1usize, true) } else { (0usize, false) };
            if t < 0 {
                positive = !positive;
            }
            for _ in 0..t.unsigned_abs() {
                let (inc_l, inc_r) = (current[pos], current[pos + 1]);
                let out_l = next_label;
                next_label += 1;
                let out_r = next_label;
                next_label += 1;
                if positive {
                    crossings.push([inc_r, inc_l, out_l, out_r]);
                } else {
                    crossings.push([inc_l, out_l, out_r, inc_r]);
                }
                current[pos] = out_l;
                current[pos + 1] = out_r;
            }
        }
        ends.push(current);
    }
    // Necklace closure: the right pair of hanging ends of each region joins
    // the left pair of the next, crosswise, wrapping around.
    let k = ends.len();
    let mut rename: Vec<(usize, usize)> = Vec::new();
    for t in 0..k {
        let nx = (t + 1) % k;
        rename.push((ends[t][2], ends[nx][1]));
        rename.push((ends[t][3], ends[nx][0]));
    }
    resolve_renames(crossings, rename)
}

fn resolve_renames(
    mut crossings: Vec<[usize; 4]>,
    rename: Vec<(usize, usize)>,
) -> Result<LinkDiagram, DiagramError> {
    use std::collections::BTreeMap;
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(parent: &BTreeMap<usize, usize>, mut x: usize) -> usize {
        while let Some(&y) = parent.get(&x) {
            x = y;
        }
        x
    }
    let mut free: Vec<usize> = Vec::new();
    for (a, b) in rename {
        let (ra, rb) = (find(&parent, a), find(&parent, b));
        if ra == rb {
            free.push(ra);
        } else {
            parent.insert(ra.max(rb), ra.min(rb));
        }
    }
    for q in crossings.iter_mut() {
        for e in q.iter_mut() {
            *e = find(&parent, *e);
        }
    }
    let free: Vec<usize> = free
        .into_iter()
        .map(|l| find(&parent, l))
        .filter(|l| !crossings.iter().flatten().any(|e| e == l))
        .collect();
    relabel_dense(crossings, free)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_braid_closure() {
        let b = BraidWord::new(2, vec![1, 1, 1]);
        let d = b.closure().unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.writhe().abs(), 3);
    }

    #[test]
    fn hopf_braid_closure() {
        let b = BraidWord::new(2, vec![1, 1]);
        let d = b.closure().unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap().abs(), 1);
    }

    #[test]
    fn figure_eight_braid_closure() {
        let b = BraidWord::new(3, vec![1, -2, 1, -2]);
        let d = b.closure().unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn identity_braid_closure_is_unlink() {
        let b = BraidWord::new(3, vec![]);
        let d = b.closure().unwrap();
        assert_eq!(d.components().len(), 3);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn rational_trefoil() {
        let d = rational_link(&[3]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components().len(), 1);
    }

    #[test]
    fn rational_figure_eight() {
        let d = rational_link(&[2, 2]).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn rational_hopf() {
        let d = rational_link(&[2]).unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap().abs(), 1);
    }

    #[test]
    fn rational_whitehead_has_zero_linking() {
        let d = rational_link(&[2, 1, 2]).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap(), 0);
    }

    #[test]
    fn r_moves_preserve_closure_component_count() {
        let b = BraidWord::new(2, vec![1, 1, 1]);
        let r2 = b.with_r2_pair(1, 1);
        assert_eq!(r2.closure().unwrap().components().len(), 1);
        let st = b.stabilized(true);
        assert_eq!(st.closure().unwrap().components().len(), 1);
        let b3 = BraidWord::new(3, vec![1, 2, 1, 2]);
        let r3 = b3.with_r3_slide(0).unwrap();
        assert_eq!(r3.letters, vec![2, 1, 2, 2]);
    }
}
