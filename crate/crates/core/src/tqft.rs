//! The chronological Frobenius algebra `V = R_U v+ ⊕ R_U v-` and the linear
//! maps it assigns to saddles.
//!
//! Tensor factors are ordered: position `k` of a word is the `k`-th circle of
//! the state in canonical order. Only a generator acting on the leading
//! tensor factors is applied directly; a generator acting elsewhere is
//! conjugated by braidings that first carry the affected circles to the
//! front and afterwards carry the outputs to their canonical positions. The
//! braiding is order-sensitive, which is where the `x`, `y`, `z` coefficients
//! of the theory enter.

use crate::ring::{RingElem, UnitMonomial};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TqftError {
    #[error("braiding position {0} out of range for word length {1}")]
    PositionOutOfRange(usize, usize),
    #[error("saddle circle data does not match the circle sets")]
    InconsistentCircleMap,
}

/// A basis word of `V^{⊗n}`: bit `k` set means `v-` in position `k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord {
    pub mask: u32,
    pub len: usize,
}

impl TensorWord {
    pub fn new(mask: u32, len: usize) -> Self {
        TensorWord { mask, len }
    }

    pub fn letter(&self, k: usize) -> bool {
        (self.mask >> k) & 1 == 1
    }

    /// Quantum degree `#(+) - #(-)`.
    pub fn degree(&self) -> i64 {
        self.len as i64 - 2 * self.mask.count_ones() as i64
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            write!(f, "{}", if self.letter(k) { '-' } else { '+' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A linear combination of basis words of a fixed length.
pub type Lin = BTreeMap<u32, RingElem>;

fn lin_add(acc: &mut Lin, mask: u32, coeff: RingElem) {
    if coeff.is_zero() {
        return;
    }
    let e = acc.entry(mask).or_insert_with(RingElem::zero);
    *e = &*e + &coeff;
    if e.is_zero() {
        acc.remove(&mask);
    }
}

/// Structure constants of the universal chronological Frobenius algebra.
///
/// All nonzero constants are unit monomials of `R_U`; the tables are those of
/// the universal theory, with `mu(v-, v-) = 0` the single vanishing product.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    /// `mu[(a, b)]`: coefficient and output letter, `None` when the product
    /// vanishes. Index by `(a as usize) * 2 + b as usize`.
    pub mu: [Option<(UnitMonomial, bool)>; 4],
    /// `delta[a]`: list of `(coefficient, (first, second))` outputs; the
    /// second slot is the arrow-distinguished one.
    pub delta: [Vec<(UnitMonomial, (bool, bool))>; 2],
    /// `eta`: image of 1.
    pub eta: (UnitMonomial, bool),
    /// `eps[a]`: coefficient of the counit, `None` when it vanishes.
    pub eps: [Option<UnitMonomial>; 2],
    /// `braid[(a, b)]`: coefficient of `S(v_a ⊗ v_b) = c · v_b ⊗ v_a`.
    pub braid: [UnitMonomial; 4],
}

const PLUS: bool = false;
const MINUS: bool = true;

impl FrobeniusData {
    /// The universal algebra over `R_U`:
    /// `mu(-,+) = xz·-`, `Δ(+) = -⊗+ + yz·+⊗-`, `S(+,+)=x`, `S(-,-)=y`,
    /// `S(-,+)=z`, `S(+,-)=z^-1`.
    pub fn universal() -> Self {
        let one = UnitMonomial::one();
        let x = UnitMonomial::x();
        let y = UnitMonomial::y();
        let z = UnitMonomial::z();
        let zinv = UnitMonomial::z_inv();
        let xz = x * z;
        let yz = y * z;
        FrobeniusData {
            mu: [
                Some((one, PLUS)),  // (+,+) -> +
                Some((one, MINUS)), // (+,-) -> -
                Some((xz, MINUS)),  // (-,+) -> xz -
                None,               // (-,-) -> 0
            ],
            delta: [
                vec![(one, (MINUS, PLUS)), (yz, (PLUS, MINUS))], // Δ(+)
                vec![(one, (MINUS, MINUS))],                     // Δ(-)
            ],
            eta: (one, PLUS),
            eps: [None, Some(one)],
            braid: [x, zinv, z, y], // (+,+),(+,-),(-,+),(-,-)
        }
    }

    pub fn braid_coeff(&self, a: bool, b: bool) -> UnitMonomial {
        self.braid[(a as usize) * 2 + b as usize]
    }

    pub fn mu_coeff(&self, a: bool, b: bool) -> Option<(UnitMonomial, bool)> {
        self.mu[(a as usize) * 2 + b as usize]
    }
}

/// A sparse matrix between word bases, columns indexed by source words.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub src_len: usize,
    pub dst_len: usize,
    cols: Vec<Lin>,
}

impl LinearMap {
    pub fn zero(src_len: usize, dst_len: usize) -> Self {
        LinearMap { src_len, dst_len, cols: vec![Lin::new(); 1 << src_len] }
    }

    pub fn identity(len: usize) -> Self {
        let mut m = LinearMap::zero(len, len);
        for w in 0..(1u32 << len) {
            lin_add(&mut m.cols[w as usize], w, RingElem::one());
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, src: u32) -> &Lin {
        &self.cols[src as usize]
    }

    pub fn set_column(&mut self, src: u32, lin: Lin) {
        self.cols[src as usize] = lin;
    }

    pub fn entry(&self, dst: u32, src: u32) -> RingElem {
        self.cols[src as usize].get(&dst).cloned().unwrap_or_else(RingElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Matrix composition `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        assert_eq!(first.dst_len, self.src_len, "composition length mismatch");
        let mut out = LinearMap::zero(first.src_len, self.dst_len);
        for (src, col) in first.cols.iter().enumerate() {
            let mut acc = Lin::new();
            for (&mid, c) in col {
                for (&dst, c2) in &self.cols[mid as usize] {
                    lin_add(&mut acc, dst, &*c * c2);
                }
            }
            out.cols[src] = acc;
        }
        out
    }

    pub fn scale(&self, u: UnitMonomial) -> LinearMap {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for c in col.values_mut() {
                *c = c.scale(u);
            }
        }
        out
    }

    pub fn add(&self, rhs: &LinearMap) -> LinearMap {
        assert_eq!(self.src_len, rhs.src_len);
        assert_eq!(self.dst_len, rhs.dst_len);
        let mut out = self.clone();
        for (src, col) in rhs.cols.iter().enumerate() {
            for (&dst, c) in col {
                lin_add(&mut out.cols[src], dst, c.clone());
            }
        }
        out
    }

    /// The unique unit `u` with `self = u · rhs` entrywise, if any.
    pub fn unit_ratio(&self, rhs: &LinearMap) -> Option<UnitMonomial> {
        if self.src_len != rhs.src_len || self.dst_len != rhs.dst_len {
            return None;
        }
        if self.is_zero() || rhs.is_zero() {
            return None;
        }
        let mut ratio: Option<UnitMonomial> = None;
        for (src, col) in self.cols.iter().enumerate() {
            let rcol = &rhs.cols[src];
            if col.len() != rcol.len() {
                return None;
            }
            for (&dst, c) in col {
                let rc = rcol.get(&dst)?;
                let u = c.unit_ratio(rc)?;
                match ratio {
                    None => ratio = Some(u),
                    Some(v) if v == u => {}
                    Some(_) => return None,
                }
            }
        }
        ratio
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}->{} [", self.src_len, self.dst_len)?;
        for (src, col) in self.cols.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            let w = TensorWord::new(src as u32, self.src_len);
            let terms: Vec<String> = col
                .iter()
                .map(|(&dst, c)| {
                    format!("({}) {}", c, TensorWord::new(dst, self.dst_len))
                })
                .collect();
            writeln!(f, "  {} -> {}", w, terms.join(" + "))?;
        }
        write!(f, "]")
    }
}

/// Swap the letters at positions `k`, `k+1` of every word, with the braiding
/// coefficient, extended linearly.
pub fn apply_braiding(alg: &FrobeniusData, lin: &Lin, len: usize, k: usize) -> Result<Lin, TqftError> {
    if k + 1 >= len {
        return Err(TqftError::PositionOutOfRange(k, len));
    }
    let mut out = Lin::new();
    for (&mask, coeff) in lin {
        let a = (mask >> k) & 1 == 1;
        let b = (mask >> (k + 1)) & 1 == 1;
        let u = alg.braid_coeff(a, b);
        let mut m = mask & !(0b11 << k);
        if b {
            m |= 1 << k;
        }
        if a {
            m |= 1 << (k + 1);
        }
        lin_add(&mut out, m, coeff.scale(u));
    }
    Ok(out)
}

/// Permute word positions from the order `current` to the order `target`
/// (both are lists of distinct tags), accumulating braiding coefficients.
fn route<T: Copy + Eq + fmt::Debug>(
    alg: &FrobeniusData,
    mut lin: Lin,
    len: usize,
    current: &mut Vec<T>,
    target: &[T],
) -> Lin {
    debug_assert_eq!(current.len(), target.len());
    debug_assert_eq!(current.len(), len);
    for t in 0..target.len() {
        let j = current[t..]
            .iter()
            .position(|&c| c == target[t])
            .expect("routing target tag missing")
            + t;
        for k in (t..j).rev() {
            lin = apply_braiding(alg, &lin, len, k).expect("in-range braiding");
            current.swap(k, k + 1);
        }
    }
    lin
}

// Tags circles while routing: source circles keep their index, generator
// outputs get fresh tags.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tag {
    Src(usize),
    Out(usize),
}

/// Multiplication of the circles at source positions `pos1` (first slot) and
/// `pos2` (second, arrow-distinguished slot); the merged circle is routed to
/// `out` among the `n-1` target positions.
pub fn mu_at(alg: &FrobeniusData, n: usize, pos1: usize, pos2: usize, out: usize) -> LinearMap {
    assert!(pos1 != pos2 && pos1 < n && pos2 < n);
    let mut map = LinearMap::zero(n, n - 1);
    let spectators: Vec<usize> = (0..n).filter(|&i| i != pos1 && i != pos2).collect();
    let front: Vec<Tag> = [Tag::Src(pos1), Tag::Src(pos2)]
        .into_iter()
        .chain(spectators.iter().map(|&i| Tag::Src(i)))
        .collect();
    let mut target: Vec<Tag> = spectators.iter().map(|&i| Tag::Src(i)).collect();
    target.insert(out, Tag::Out(0));
    for src in 0..(1u32 << n) {
        let mut lin = Lin::new();
        lin.insert(src, RingElem::one());
        let mut current: Vec<Tag> = (0..n).map(Tag::Src).collect();
        let lin = route(alg, lin, n, &mut current, &front);
        // Apply mu on the two leading letters.
        let mut applied = Lin::new();
        for (&mask, coeff) in &lin {
            let a = mask & 1 == 1;
            let b = (mask >> 1) & 1 == 1;
            if let Some((u, o)) = alg.mu_coeff(a, b) {
                let rest = mask >> 2;
                let m = (rest << 1) | o as u32;
                lin_add(&mut applied, m, coeff.scale(u));
            }
        }
        let mut current: Vec<Tag> = std::iter::once(Tag::Out(0))
            .chain(spectators.iter().map(|&i| Tag::Src(i)))
            .collect();
        let finald = route(alg, applied, n - 1, &mut current, &target);
        map.set_column(src, finald);
    }
    map
}

/// Comultiplication of the circle at `pos`; the first output is routed to
/// `out1`, the arrow-distinguished second output to `out2`.
pub fn delta_at(alg: &FrobeniusData, n: usize, pos: usize, out1: usize, out2: usize) -> LinearMap {
    assert!(pos < n && out1 != out2 && out1 < n + 1 && out2 < n + 1);
    let mut map = LinearMap::zero(n, n + 1);
    let spectators: Vec<usize> = (0..n).filter(|&i| i != pos).collect();
    let front: Vec<Tag> = std::iter::once(Tag::Src(pos))
        .chain(spectators.iter().map(|&i| Tag::Src(i)))
        .collect();
    let mut target: Vec<Tag> = spectators.iter().map(|&i| Tag::Src(i)).collect();
    if out1 < out2 {
        target.insert(out1, Tag::Out(0));
        target.insert(out2, Tag::Out(1));
    } else {
        target.insert(out2, Tag::Out(1));
        target.insert(out1, Tag::Out(0));
    }
    for src in 0..(1u32 << n) {
        let mut lin = Lin::new();
        lin.insert(src, RingElem::one());
        let mut current: Vec<Tag> = (0..n).map(Tag::Src).collect();
        let lin = route(alg, lin, n, &mut current, &front);
        let mut applied = Lin::new();
        for (&mask, coeff) in &lin {
            let a = mask & 1 == 1;
            let rest = mask >> 1;
            for &(u, (o1, o2)) in &alg.delta[a as usize] {
                let m = (rest << 2) | ((o2 as u32) << 1) | o1 as u32;
                lin_add(&mut applied, m, coeff.scale(u));
            }
        }
        let mut current: Vec<Tag> = [Tag::Out(0), Tag::Out(1)]
            .into_iter()
            .chain(spectators.iter().map(|&i| Tag::Src(i)))
            .collect();
        let finald = route(alg, applied, n + 1, &mut current, &target);
        map.set_column(src, finald);
    }
    map
}

/// Birth of a circle routed to position `pos` among `n+1` outputs.
pub fn eta_at(alg: &FrobeniusData, n: usize, pos: usize) -> LinearMap {
    assert!(pos <= n);
    let mut map = LinearMap::zero(n, n + 1);
    let mut target: Vec<Tag> = (0..n).map(Tag::Src).collect();
    target.insert(pos, Tag::Out(0));
    let (u, letter) = alg.eta;
    for src in 0..(1u32 << n) {
        let mut lin = Lin::new();
        lin.insert((src << 1) | letter as u32, RingElem::from(u));
        let mut current: Vec<Tag> =
            std::iter::once(Tag::Out(0)).chain((0..n).map(Tag::Src)).collect();
        let finald = route(alg, lin, n + 1, &mut current, &target);
        map.set_column(src, finald);
    }
    map
}

/// Death of the circle at position `pos`.
pub fn eps_at(alg: &FrobeniusData, n: usize, pos: usize) -> LinearMap {
    assert!(pos < n);
    let mut map = LinearMap::zero(n, n - 1);
    let spectators: Vec<usize> = (0..n).filter(|&i| i != pos).collect();
    let front: Vec<Tag> = std::iter::once(Tag::Src(pos))
        .chain(spectators.iter().map(|&i| Tag::Src(i)))
        .collect();
    for src in 0..(1u32 << n) {
        let mut lin = Lin::new();
        lin.insert(src, RingElem::one());
        let mut current: Vec<Tag> = (0..n).map(Tag::Src).collect();
        let lin = route(alg, lin, n, &mut current, &front);
        let mut applied = Lin::new();
        for (&mask, coeff) in &lin {
            let a = mask & 1 == 1;
            if let Some(u) = alg.eps[a as usize] {
                lin_add(&mut applied, mask >> 1, coeff.scale(u));
            }
        }
        map.set_column(src, applied);
    }
    map
}

/// The braiding of adjacent positions `k`, `k+1` as a matrix.
pub fn s_at(alg: &FrobeniusData, n: usize, k: usize) -> LinearMap {
    let mut map = LinearMap::zero(n, n);
    for src in 0..(1u32 << n) {
        let mut lin = Lin::new();
        lin.insert(src, RingElem::one());
        let out = apply_braiding(alg, &lin, n, k).expect("braid position in range");
        map.set_column(src, out);
    }
    map
}

/// The linear map of a cube edge: merges route the arrow-distinguished
/// circle into the second slot of `mu`, splits put the distinguished output
/// into the second slot of `delta`.
pub fn apply_saddle(
    alg: &FrobeniusData,
    saddle: &crate::cube::SaddleInfo,
    source_circles: usize,
) -> LinearMap {
    use crate::cube::SaddleKind;
    match saddle.kind {
        SaddleKind::Merge => {
            let dist = saddle.source[saddle.arrow_target];
            let other = saddle.source[1 - saddle.arrow_target];
            mu_at(alg, source_circles, other, dist, saddle.target[0])
        }
        SaddleKind::Split => {
            let dist = saddle.target[saddle.arrow_target];
            let other = saddle.target[1 - saddle.arrow_target];
            delta_at(alg, source_circles, saddle.source[0], other, dist)
        }
    }
}

/// One line of the relation report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Evaluate the sphere, torus and four-tube relations plus every axiom of the
/// chronological Frobenius algebra, exactly over `R_U`.
pub fn relation_suite(alg: &FrobeniusData) -> Vec<RelationCheck> {
    let mut report = Vec::new();
    let mut check = |name: &'static str, holds: bool| report.push(RelationCheck { name, holds });

    // Sphere: ε ∘ η = 0.
    let sphere = eps_at(alg, 1, 0).compose(&eta_at(alg, 0, 0));
    check("S: eps(eta(1)) = 0", sphere.is_zero());

    // Torus: ε ∘ μ ∘ Δ ∘ η = z(x + y).
    let torus = eps_at(alg, 1, 0)
        .compose(&mu_at(alg, 2, 0, 1, 0))
        .compose(&delta_at(alg, 1, 0, 0, 1))
        .compose(&eta_at(alg, 0, 0));
    let zxy = {
        let zx = RingElem::from(UnitMonomial::x() * UnitMonomial::z());
        let zy = RingElem::from(UnitMonomial::y() * UnitMonomial::z());
        &zx + &zy
    };
    check("T: eps mu delta eta = z(x+y)", torus.entry(0, 0) == zxy);

    // Four tubes, as maps V⊗V -> V⊗V. M1 and M2 cut one tube each (death,
    // then birth back in place). M3 connects the upper remaining parts of
    // both cut tubes — with inputs on top that is a merge followed by a
    // death, then two births — and M4 is its dual: two deaths, a birth and a
    // split. The chronology below is the one under which the identity holds
    // exactly over R_U; the suite verifies rather than assumes it.
    let m1 = eta_at(alg, 1, 0).compose(&eps_at(alg, 2, 0));
    let m2 = eta_at(alg, 1, 1).compose(&eps_at(alg, 2, 1));
    let m3 = eta_at(alg, 1, 1)
        .compose(&eta_at(alg, 0, 0))
        .compose(&eps_at(alg, 1, 0))
        .compose(&mu_at(alg, 2, 1, 0, 0));
    let m4 = delta_at(alg, 1, 0, 0, 1)
        .compose(&eta_at(alg, 0, 0))
        .compose(&eps_at(alg, 1, 0))
        .compose(&eps_at(alg, 2, 0));
    let z = UnitMonomial::z();
    let lhs = m1.scale(z).add(&m2.scale(z));
    let rhs = m3.scale(UnitMonomial::x()).add(&m4.scale(UnitMonomial::y()));
    check("4Tu: z M1 + z M2 = x M3 + y M4", lhs == rhs);

    // Associativity up to X: mu (mu ⊗ id) = x mu (id ⊠ mu).
    let mu_mu_first = mu_at(alg, 2, 0, 1, 0).compose(&mu_at(alg, 3, 0, 1, 0));
    let mu_mu_second = mu_at(alg, 2, 0, 1, 0).compose(&mu_at(alg, 3, 1, 2, 1));
    check(
        "assoc: mu(mu x id) = x mu(id x mu)",
        mu_mu_first == mu_mu_second.scale(UnitMonomial::x()),
    );

    // Coassociativity up to Y: (Δ ⊗ id) Δ = y (id ⊠ Δ) Δ.
    let d_first = delta_at(alg, 2, 0, 0, 1).compose(&delta_at(alg, 1, 0, 0, 1));
    let d_second = delta_at(alg, 2, 1, 1, 2).compose(&delta_at(alg, 1, 0, 0, 1));
    check(
        "coassoc: (delta x id) delta = y (id x delta) delta",
        d_first == d_second.scale(UnitMonomial::y()),
    );

    // Twisted commutativity: mu S = x mu.
    let mu = mu_at(alg, 2, 0, 1, 0);
    let mu_s = mu.compose(&s_at(alg, 2, 0));
    check("mu S = x mu", mu_s == mu.scale(UnitMonomial::x()));

    // Twisted cocommutativity: S Δ = y Δ.
    let delta = delta_at(alg, 1, 0, 0, 1);
    let s_delta = s_at(alg, 2, 0).compose(&delta);
    check("S delta = y delta", s_delta == delta.scale(UnitMonomial::y()));

    // Unit and counit.
    let unit_left = mu_at(alg, 2, 0, 1, 0).compose(&eta_at(alg, 1, 0));
    check("mu(eta x id) = id", unit_left == LinearMap::identity(1));
    let counit_left = eps_at(alg, 2, 0).compose(&delta_at(alg, 1, 0, 0, 1));
    check("(eps x id) delta = id", counit_left == LinearMap::identity(1));

    // Frobenius equation up to Z, as maps V⊗V -> V⊗V: splitting the first
    // factor and merging across equals merging first and splitting after,
    // and both equal z · Δ∘mu.
    let lhs_f = mu_at(alg, 3, 1, 2, 1).compose(&delta_at(alg, 2, 0, 0, 1));
    let rhs_f = mu_at(alg, 3, 0, 1, 0).compose(&delta_at(alg, 2, 1, 1, 2));
    let mid_f = delta_at(alg, 1, 0, 0, 1).compose(&mu_at(alg, 2, 0, 1, 0));
    check("frobenius: (delta x id)(id x mu) = (id x delta)(mu x id)", lhs_f == rhs_f);
    check("frobenius: = z (mu then delta)", lhs_f == mid_f.scale(UnitMonomial::z()));

    // Degree law: mu, Δ lower the quantum degree by one; eta, eps raise it.
    let mut deg_ok = true;
    for (i, entry) in alg.mu.iter().enumerate() {
        if let Some((_, o)) = entry {
            let (a, b) = (i / 2 == 1, i % 2 == 1);
            let din = (1 - 2 * (a as i64)) + (1 - 2 * (b as i64));
            let dout = 1 - 2 * (*o as i64);
            deg_ok &= dout == din - 1;
        }
    }
    for (a, outs) in alg.delta.iter().enumerate() {
        let din = 1 - 2 * (a as i64);
        for &(_, (o1, o2)) in outs {
            let dout = (1 - 2 * (o1 as i64)) + (1 - 2 * (o2 as i64));
            deg_ok &= dout == din - 1;
        }
    }
    deg_ok &= (1 - 2 * (alg.eta.1 as i64)) == 1;
    for (a, e) in alg.eps.iter().enumerate() {
        if e.is_some() {
            deg_ok &= -(1 - 2 * (a as i64)) == 1;
        }
    }
    check("degree: deg mu = deg delta = -1, deg eta = deg eps = +1", deg_ok);

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn alg() -> FrobeniusData {
        FrobeniusData::universal()
    }

    #[test]
    fn braiding_matches_table() {
        let alg = alg();
        // (-,+) at position 0 -> z (+,-)
        let mut lin = Lin::new();
        lin.insert(0b01, RingElem::one());
        let out = apply_braiding(&alg, &lin, 2, 0).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[&0b10], RingElem::from(UnitMonomial::z()));
        // (+,+) -> x (+,+)
        let mut lin = Lin::new();
        lin.insert(0b00, RingElem::one());
        let out = apply_braiding(&alg, &lin, 2, 0).unwrap();
        assert_eq!(out[&0b00], RingElem::from(UnitMonomial::x()));
        // out of range
        assert!(apply_braiding(&alg, &Lin::new(), 2, 1).is_err());
    }

    #[test]
    fn braiding_is_involutive() {
        let alg = alg();
        for len in 1..5usize {
            for k in 0..len.saturating_sub(1) {
                let m = s_at(&alg, len, k);
                assert_eq!(m.compose(&m), LinearMap::identity(len));
            }
        }
    }

    #[test]
    fn braid_relations_hold() {
        let alg = alg();
        // S_k S_j = S_j S_k for |k-j| > 1 on V^4.
        let s0 = s_at(&alg, 4, 0);
        let s2 = s_at(&alg, 4, 2);
        assert_eq!(s0.compose(&s2), s2.compose(&s0));
        // S_0 S_1 S_0 = S_1 S_0 S_1 on V^3.
        let s0 = s_at(&alg, 3, 0);
        let s1 = s_at(&alg, 3, 1);
        assert_eq!(
            s0.compose(&s1).compose(&s0),
            s1.compose(&s0).compose(&s1)
        );
    }

    #[test]
    fn merge_examples() {
        let alg = alg();
        // merge of circles 0,1 with the arrow at circle 1: word (-,+) -> xz (-)
        let m = mu_at(&alg, 2, 0, 1, 0);
        let col = m.column(0b01);
        assert_eq!(col.len(), 1);
        assert_eq!(col[&0b1], RingElem::from(UnitMonomial::x() * UnitMonomial::z()));
        // (-,-) -> 0
        assert!(m.column(0b11).is_empty());
    }

    #[test]
    fn split_example() {
        let alg = alg();
        // split with the arrow at the second output: (+) -> (-,+) + yz (+,-)
        let d = delta_at(&alg, 1, 0, 0, 1);
        let col = d.column(0b0);
        assert_eq!(col.len(), 2);
        assert_eq!(col[&0b01], RingElem::one());
        assert_eq!(col[&0b10], RingElem::from(UnitMonomial::y() * UnitMonomial::z()));
    }

    #[test]
    fn routing_strategies_agree() {
        // Applying mu via the generic front-routing must be independent of
        // the order in which spectators were carried around: compare against
        // an alternative realization through explicit braidings.
        let alg = alg();
        let mut rng = StdRng::seed_from_u64(31337);
        for _ in 0..40 {
            let n = rng.gen_range(2..6usize);
            let p = rng.gen_range(0..n);
            let mut q = rng.gen_range(0..n);
            while q == p {
                q = rng.gen_range(0..n);
            }
            let out = rng.gen_range(0..n - 1);
            let direct = mu_at(&alg, n, p, q, out);
            // Alternative: braid q next to p step by step, then use mu with
            // adjacent positions... realized as conjugation by full S-matrices.
            let mut alt = LinearMap::identity(n);
            // Move p to 0.
            for k in (0..p).rev() {
                alt = s_at(&alg, n, k).compose(&alt);
            }
            // p now at 0; q shifted if it was left of p.
            let q_now = if q < p { q + 1 } else { q };
            for k in (1..q_now).rev() {
                alt = s_at(&alg, n, k).compose(&alt);
            }
            let merged = mu_at(&alg, n, 0, 1, 0).compose(&alt);
            let mut res = merged;
            for k in 0..out {
                res = s_at(&alg, n - 1, k).compose(&res);
            }
            assert_eq!(res, direct, "n={n} p={p} q={q} out={out}");
        }
    }

    #[test]
    fn relation_suite_all_pass() {
        let report = relation_suite(&alg());
        for r in &report {
            assert!(r.holds, "relation failed: {}", r.name);
        }
        assert!(report.len() >= 12);
    }

    #[test]
    fn mu_s_example_from_table() {
        // mu S on (-,+): S gives z (+,-), mu gives z (-); x mu(-,+) = x xz (-) = z (-).
        let alg = alg();
        let mu = mu_at(&alg, 2, 0, 1, 0);
        let mu_s = mu.compose(&s_at(&alg, 2, 0));
        let lhs = mu_s.entry(0b1, 0b01);
        assert_eq!(lhs, RingElem::from(UnitMonomial::z()));
        let rhs = mu.entry(0b1, 0b01).scale(UnitMonomial::x());
        assert_eq!(lhs, rhs);
    }
}
