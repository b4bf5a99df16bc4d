//! Classical polynomial invariants: the Kauffman bracket (plain and enhanced
//! state sums), the Jones polynomial, and the q-bracket whose normalization
//! is the graded Euler characteristic of the Khovanov complex.
//!
//! The bracket uses the state sum
//! `Σ_S (-1)^{|S|-1} A^{τ(S)} (A^-2 + A^2)^{|S|-1}` with `τ = n₀ - n₁` in
//! our resolution convention (type 0 joins `(a,b)`/`(c,d)`); the Jones
//! normalization is `(-A)^{-3w(D)}` with `t = A^-4`, the convention under
//! which the skein relation closes on the trefoil.

use crate::diagram::{EnhancedState, LinkDiagram, ResolutionState};
use crate::ring::{LaurentPoly, LaurentRule, RingError, Var};
use num_bigint::BigInt;
use num_traits::One;

/// A resolution together with the quantities entering the state sum.
#[derive(Clone, Debug)]
pub struct KauffmanState {
    pub state: ResolutionState,
    pub circles: usize,
    /// `τ = n₀ - n₁`.
    pub tau: i64,
}

impl KauffmanState {
    pub fn of(diagram: &LinkDiagram, state: ResolutionState) -> Self {
        let circles = diagram.resolve(state).len();
        let n1 = state.weight() as i64;
        let n0 = state.len() as i64 - n1;
        KauffmanState { state, circles, tau: n0 - n1 }
    }
}

/// `⟨D⟩ ∈ Z[A, A^-1]` by the plain state sum; the empty diagram gives 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> LaurentPoly {
    if d.crossing_count() == 0 && d.components().is_empty() {
        return LaurentPoly::one(Var::A);
    }
    let n = d.crossing_count();
    let mut bracket = LaurentPoly::zero(Var::A);
    let loop_factor = {
        // A^-2 + A^2
        let mut p = LaurentPoly::zero(Var::A);
        p.add_term(-2, BigInt::one());
        p.add_term(2, BigInt::one());
        p
    };
    for state in ResolutionState::all(n) {
        let ks = KauffmanState::of(d, state);
        let sign = if (ks.circles + 1) % 2 == 0 { 1 } else { -1 };
        let mut term = LaurentPoly::monomial(Var::A, ks.tau, sign);
        term = &term * &loop_factor.pow((ks.circles - 1) as u32);
        bracket = &bracket + &term;
    }
    bracket
}

/// `⟨D⟩` by the enhanced state sum `Σ (-1)^{|S|-1} A^{τ + 2σ}` over states
/// with oriented circles, normalized by one loop factor; equals the plain
/// bracket exactly.
pub fn kauffman_bracket_enhanced(d: &LinkDiagram) -> LaurentPoly {
    if d.crossing_count() == 0 && d.components().is_empty() {
        return LaurentPoly::one(Var::A);
    }
    let n = d.crossing_count();
    let mut sum = LaurentPoly::zero(Var::A);
    for state in ResolutionState::all(n) {
        let ks = KauffmanState::of(d, state);
        let sign = if (ks.circles + 1) % 2 == 0 { 1 } else { -1 };
        for orient in 0u32..(1 << ks.circles) {
            let enhanced = EnhancedState {
                state,
                orientation: (0..ks.circles).map(|k| (orient >> k) & 1 == 0).collect(),
            };
            let exp = ks.tau + 2 * enhanced.sigma();
            sum.add_term(exp, BigInt::from(sign));
        }
    }
    let mut loop_factor = LaurentPoly::zero(Var::A);
    loop_factor.add_term(-2, BigInt::one());
    loop_factor.add_term(2, BigInt::one());
    sum.div_exact(&loop_factor)
        .expect("enhanced sum is divisible by one loop factor")
}

/// `V_D ∈ Z[s, s^-1]` with `s = t^(1/2)`:
/// `(-1)^{w} A^{-3w} ⟨D⟩` evaluated at `A = s^{-1/2}`.
pub fn jones_polynomial(d: &LinkDiagram) -> Result<LaurentPoly, RingError> {
    let bracket = kauffman_bracket(d);
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let norm = LaurentPoly::monomial(Var::A, -3 * w, sign);
    let v = (&norm * &bracket).substitute(LaurentRule::AToSNegHalf)?;
    // Knots land in integer powers of t, i.e. even powers of s.
    if d.components().len() == 1 {
        debug_assert!(v.coeffs().all(|(&e, _)| e.rem_euclid(2) == 0));
    }
    Ok(v)
}

/// `⟨D⟩_q = Σ_s (-q)^{n₁(s)} (q + q^-1)^{|s|}`.
pub fn q_bracket(d: &LinkDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    let mut bracket = LaurentPoly::zero(Var::Q);
    let loop_factor = {
        let mut p = LaurentPoly::zero(Var::Q);
        p.add_term(-1, BigInt::one());
        p.add_term(1, BigInt::one());
        p
    };
    for state in ResolutionState::all(n) {
        let circles = d.resolve(state).len();
        let n1 = state.weight() as i64;
        let sign = if n1.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut term = LaurentPoly::monomial(Var::Q, n1, sign);
        term = &term * &loop_factor.pow(circles as u32);
        bracket = &bracket + &term;
    }
    bracket
}

/// `J_D(q) = (-1)^{n₋} q^{n₊ - 2n₋} ⟨D⟩_q`, the graded Euler characteristic
/// of the Khovanov complex.
pub fn jones_unnormalized(d: &LinkDiagram) -> LaurentPoly {
    let bracket = q_bracket(d);
    let n_minus = d.n_minus() as i64;
    let sign = if n_minus.rem_euclid(2) == 0 { 1 } else { -1 };
    let norm = LaurentPoly::monomial(Var::Q, d.n_plus() as i64 - 2 * n_minus, sign);
    &norm * &bracket
}

/// `V_D(t) = J_D(-t^{1/2}) / (-t^{1/2} - t^{-1/2})`, exactly.
pub fn jones_from_unnormalized(j: &LaurentPoly) -> Result<LaurentPoly, RingError> {
    let in_s = j.substitute(LaurentRule::QToNegS)?;
    let mut denom = LaurentPoly::zero(Var::S);
    denom.add_term(1, BigInt::from(-1));
    denom.add_term(-1, BigInt::from(-1));
    in_s.div_exact(&denom)
}

/// The three diagrams of a skein triple at one crossing: positive, negative
/// and the oriented smoothing.
pub fn skein_triple(d: &LinkDiagram, k: usize) -> (LinkDiagram, LinkDiagram, LinkDiagram) {
    let (pos, neg) = if d.signs()[k] > 0 {
        (d.clone(), d.crossing_change(k))
    } else {
        (d.crossing_change(k), d.clone())
    };
    let zero = d.smooth_crossing(k);
    (pos, neg, zero)
}

/// `t^-1 V₊ - t V₋ = (t^{1/2} - t^{-1/2}) V₀` in `s`.
pub fn skein_relation_holds(
    pos: &LinkDiagram,
    neg: &LinkDiagram,
    zero: &LinkDiagram,
) -> Result<bool, RingError> {
    let vp = jones_polynomial(pos)?;
    let vn = jones_polynomial(neg)?;
    let v0 = jones_polynomial(zero)?;
    let lhs = &(&LaurentPoly::monomial(Var::S, -2, 1) * &vp)
        - &(&LaurentPoly::monomial(Var::S, 2, 1) * &vn);
    let mut bracket = LaurentPoly::zero(Var::S);
    bracket.add_term(1, BigInt::one());
    bracket.add_term(-1, BigInt::from(-1));
    Ok(lhs == &bracket * &v0)
}

/// `q^-2 J₊ - q^2 J₋ = (q^-1 - q) J₀`.
pub fn q_skein_relation_holds(
    pos: &LinkDiagram,
    neg: &LinkDiagram,
    zero: &LinkDiagram,
) -> bool {
    let jp = jones_unnormalized(pos);
    let jn = jones_unnormalized(neg);
    let j0 = jones_unnormalized(zero);
    let lhs = &(&LaurentPoly::monomial(Var::Q, -2, 1) * &jp)
        - &(&LaurentPoly::monomial(Var::Q, 2, 1) * &jn);
    let mut bracket = LaurentPoly::zero(Var::Q);
    bracket.add_term(-1, BigInt::one());
    bracket.add_term(1, BigInt::from(-1));
    lhs == &bracket * &j0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;

    fn poly_s(pairs: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(Var::S);
        for &(e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    #[test]
    fn bracket_of_trivial_links() {
        assert_eq!(kauffman_bracket(&standard::unknot()), LaurentPoly::one(Var::A));
        let two = kauffman_bracket(&standard::unlink(2));
        let mut expect = LaurentPoly::zero(Var::A);
        expect.add_term(2, BigInt::from(-1));
        expect.add_term(-2, BigInt::from(-1));
        assert_eq!(two, expect);
    }

    #[test]
    fn jones_of_trefoils() {
        // V(left 3₁) = -t^-4 + t^-3 + t^-1, V(right 3₁) = -t^4 + t^3 + t.
        let left = jones_polynomial(&standard::left_trefoil()).unwrap();
        assert_eq!(left, poly_s(&[(-8, -1), (-6, 1), (-2, 1)]));
        let right = jones_polynomial(&standard::right_trefoil()).unwrap();
        assert_eq!(right, poly_s(&[(8, -1), (6, 1), (2, 1)]));
        assert_eq!(left.render_t(), "-t^-4 + t^-3 + t^-1");
    }

    #[test]
    fn jones_of_unlinks() {
        // V(nU) = (-t^{1/2} - t^{-1/2})^{n-1}
        for n in 1..=4usize {
            let v = jones_polynomial(&standard::unlink(n)).unwrap();
            let mut factor = LaurentPoly::zero(Var::S);
            factor.add_term(1, BigInt::from(-1));
            factor.add_term(-1, BigInt::from(-1));
            assert_eq!(v, factor.pow((n - 1) as u32));
        }
    }

    #[test]
    fn enhanced_equals_plain() {
        for d in [
            standard::unknot(),
            standard::unlink(2),
            standard::left_trefoil(),
            standard::hopf_link(),
            standard::figure_eight(),
        ] {
            assert_eq!(kauffman_bracket_enhanced(&d), kauffman_bracket(&d));
        }
    }

    #[test]
    fn q_bracket_of_trivial_links() {
        let mut qq = LaurentPoly::zero(Var::Q);
        qq.add_term(1, BigInt::one());
        qq.add_term(-1, BigInt::one());
        assert_eq!(jones_unnormalized(&standard::unknot()), qq);
        assert_eq!(jones_unnormalized(&standard::unlink(3)), qq.pow(3));
    }

    #[test]
    fn two_jones_routes_agree() {
        for d in [
            standard::unknot(),
            standard::left_trefoil(),
            standard::right_trefoil(),
            standard::figure_eight(),
            standard::hopf_link(),
        ] {
            let direct = jones_polynomial(&d).unwrap();
            let via_q = jones_from_unnormalized(&jones_unnormalized(&d)).unwrap();
            assert_eq!(direct, via_q, "{:?}", d);
        }
    }

    #[test]
    fn skein_relations_on_trefoil() {
        let d = standard::left_trefoil();
        for k in 0..d.crossing_count() {
            let (pos, neg, zero) = skein_triple(&d, k);
            assert!(skein_relation_holds(&pos, &neg, &zero).unwrap());
            assert!(q_skein_relation_holds(&pos, &neg, &zero));
        }
    }

    #[test]
    fn mirror_inverts_jones() {
        for d in [standard::left_trefoil(), standard::figure_eight(), standard::hopf_link()] {
            let v = jones_polynomial(&d).unwrap();
            let vm = jones_polynomial(&d.mirror()).unwrap();
            assert_eq!(v.substitute(LaurentRule::Invert).unwrap(), vm);
        }
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let v = jones_polynomial(&standard::figure_eight()).unwrap();
        assert!(v.is_palindromic());
        // V(4₁) = t^-2 - t^-1 + 1 - t + t^2
        assert_eq!(v, poly_s(&[(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)]));
    }
}
