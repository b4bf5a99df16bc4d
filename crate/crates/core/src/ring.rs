//! Exact arithmetic in the universal coefficient ring
//! `R_U = Z[x, y, z, z^-1] / (x^2 = 1, y^2 = 1)`.
//!
//! Elements are finite integer combinations of monomials `x^a y^b z^c` with
//! `a, b ∈ {0, 1}` and `c ∈ Z`. The unit monomials `±x^a y^b z^c` form an
//! abelian group and carry the chronology-change coefficients; full ring
//! elements appear as entries of saddle maps and differentials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("specialization image of z is not a unit of the target ring")]
    NonUnitImage,
    #[error("substitution produces a fractional exponent at degree {0}")]
    FractionalExponent(i64),
    #[error("cannot parse {what}: {text:?}")]
    Parse { what: &'static str, text: String },
    #[error("inexact division of Laurent polynomials")]
    InexactDivision,
}

/// A monomial key `x^a y^b z^c` with the x- and y-exponents reduced mod 2.
pub type MonomialKey = (bool, bool, i64);

/// A unit of `R_U`: `±x^a y^b z^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitMonomial {
    /// `false` for `+1`, `true` for `-1`.
    pub negative: bool,
    pub xexp: bool,
    pub yexp: bool,
    pub zexp: i64,
}

impl UnitMonomial {
    pub const fn new(negative: bool, xexp: bool, yexp: bool, zexp: i64) -> Self {
        UnitMonomial { negative, xexp, yexp, zexp }
    }

    pub const fn one() -> Self {
        UnitMonomial::new(false, false, false, 0)
    }

    pub const fn x() -> Self {
        UnitMonomial::new(false, true, false, 0)
    }

    pub const fn y() -> Self {
        UnitMonomial::new(false, false, true, 0)
    }

    pub const fn z() -> Self {
        UnitMonomial::new(false, false, false, 1)
    }

    pub const fn z_inv() -> Self {
        UnitMonomial::new(false, false, false, -1)
    }

    pub const fn minus_one() -> Self {
        UnitMonomial::new(true, false, false, 0)
    }

    pub fn is_one(&self) -> bool {
        *self == UnitMonomial::one()
    }

    /// Group inverse: `x` and `y` are involutions, `z` inverts, the sign keeps.
    pub fn inverse(&self) -> Self {
        UnitMonomial::new(self.negative, self.xexp, self.yexp, -self.zexp)
    }

    pub fn negate(&self) -> Self {
        UnitMonomial::new(!self.negative, self.xexp, self.yexp, self.zexp)
    }

    pub fn zpow(c: i64) -> Self {
        UnitMonomial::new(false, false, false, c)
    }

    pub fn key(&self) -> MonomialKey {
        (self.xexp, self.yexp, self.zexp)
    }

    /// `x^a y^b z^c` without sign, from reduced exponents.
    pub fn from_exponents(a: i64, b: i64, c: i64) -> Self {
        UnitMonomial::new(false, a.rem_euclid(2) == 1, b.rem_euclid(2) == 1, c)
    }
}

impl Mul for UnitMonomial {
    type Output = UnitMonomial;

    fn mul(self, rhs: UnitMonomial) -> UnitMonomial {
        UnitMonomial::new(
            self.negative ^ rhs.negative,
            self.xexp ^ rhs.xexp,
            self.yexp ^ rhs.yexp,
            self.zexp + rhs.zexp,
        )
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.xexp {
            parts.push("x".into());
        }
        if self.yexp {
            parts.push("y".into());
        }
        if self.zexp != 0 {
            if self.zexp == 1 {
                parts.push("z".into());
            } else {
                parts.push(format!("z^{}", self.zexp));
            }
        }
        let body = if parts.is_empty() { "1".into() } else { parts.join("*") };
        if self.negative {
            write!(f, "-{}", body)
        } else {
            write!(f, "{}", body)
        }
    }
}

impl fmt::Debug for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An element of `R_U`, kept in canonical form: no zero coefficients stored,
/// keys ordered lexicographically on `(a, b, c)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RingElem {
    terms: BTreeMap<MonomialKey, BigInt>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        RingElem::from(UnitMonomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_int(n: i64) -> Self {
        let mut e = RingElem::zero();
        e.add_term((false, false, 0), BigInt::from(n));
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: MonomialKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, u: UnitMonomial) -> RingElem {
        let mut out = RingElem::zero();
        for (&(a, b, c), coeff) in &self.terms {
            let key = (a ^ u.xexp, b ^ u.yexp, c + u.zexp);
            let co = if u.negative { -coeff.clone() } else { coeff.clone() };
            out.add_term(key, co);
        }
        out
    }

    /// If `self` is exactly one term with coefficient `±1`, view it as a unit.
    pub fn as_unit(&self) -> Option<UnitMonomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b, c), coeff) = self.terms.iter().next().unwrap();
        if coeff.magnitude() == BigInt::one().magnitude() {
            Some(UnitMonomial::new(coeff.is_negative(), a, b, c))
        } else {
            None
        }
    }

    /// The unique unit `u` with `self = u * rhs`, if one exists.
    pub fn unit_ratio(&self, rhs: &RingElem) -> Option<UnitMonomial> {
        if self.is_zero() || rhs.is_zero() || self.terms.len() != rhs.terms.len() {
            return None;
        }
        // Scaling permutes the term order, so match the first term of self
        // against every term of rhs.
        let (&(a1, b1, c1), co1) = self.terms.iter().next().unwrap();
        for (&(a2, b2, c2), co2) in &rhs.terms {
            if co1.magnitude() != co2.magnitude() {
                continue;
            }
            let u = UnitMonomial::new(
                co1.is_negative() != co2.is_negative(),
                a1 ^ a2,
                b1 ^ b2,
                c1 - c2,
            );
            if *self == rhs.scale(u) {
                return Some(u);
            }
        }
        None
    }

    /// Apply a specialization, landing in plain integers. Fails with
    /// `NonUnitImage` unless the image of `z` is `±1`.
    pub fn specialize_int(&self, s: &Specialization) -> Result<BigInt, RingError> {
        match s {
            Specialization::Universal => Err(RingError::NonUnitImage),
            Specialization::Signs { x, y, z } => {
                let mut acc = BigInt::zero();
                for (&(a, b, c), coeff) in &self.terms {
                    let mut sign = 1i64;
                    if a && *x < 0 {
                        sign = -sign;
                    }
                    if b && *y < 0 {
                        sign = -sign;
                    }
                    if *z < 0 && c.rem_euclid(2) == 1 {
                        sign = -sign;
                    }
                    acc += coeff * BigInt::from(sign);
                }
                Ok(acc)
            }
        }
    }

    /// Apply a specialization inside `R_U` (the universal case is the identity).
    pub fn specialize(&self, s: &Specialization) -> RingElem {
        match s {
            Specialization::Universal => self.clone(),
            Specialization::Signs { .. } => {
                let n = self.specialize_int(s).expect("sign specialization is exact");
                let mut e = RingElem::zero();
                e.add_term((false, false, 0), n);
                e
            }
        }
    }

    pub fn render(&self) -> String {
        format!("{}", self)
    }

    /// Parse the textual rendering produced by `render` (round-trip exact).
    pub fn parse(text: &str) -> Result<RingElem, RingError> {
        let mut out = RingElem::zero();
        let cleaned = text.trim();
        if cleaned.is_empty() {
            return Err(RingError::Parse { what: "ring element", text: text.into() });
        }
        if cleaned == "0" {
            return Ok(out);
        }
        let terms = split_signed_terms(cleaned)
            .ok_or_else(|| RingError::Parse { what: "ring element", text: text.into() })?;
        for (neg, body) in terms {
            let (coeff, key) = parse_term(&body)
                .ok_or_else(|| RingError::Parse { what: "ring element", text: text.into() })?;
            out.add_term(key, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// Split `a - b + c` into signed term bodies; a `-` directly after `^` is an
/// exponent sign, not a separator.
fn split_signed_terms(text: &str) -> Option<Vec<(bool, String)>> {
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut last_glyph = ' ';
    for ch in text.chars() {
        let separator = matches!(ch, '+' | '-') && last_glyph != '^';
        if separator {
            if current.trim().is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                terms.push((negative, current.trim().to_string()));
                current = String::new();
                negative = ch == '-';
            }
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            last_glyph = ch;
        }
    }
    if !current.trim().is_empty() {
        terms.push((negative, current.trim().to_string()));
    }
    if terms.is_empty() {
        None
    } else {
        Some(terms)
    }
}

fn parse_term(body: &str) -> Option<(BigInt, MonomialKey)> {
    let mut coeff = BigInt::one();
    let mut key = (false, false, 0i64);
    for factor in body.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return None;
        }
        if f.chars().all(|c| c.is_ascii_digit()) {
            coeff *= f.parse::<BigInt>().ok()?;
        } else if f == "x" {
            key.0 = true;
        } else if f == "y" {
            key.1 = true;
        } else if f == "z" {
            key.2 += 1;
        } else if let Some(rest) = f.strip_prefix("z^") {
            key.2 += rest.parse::<i64>().ok()?;
        } else {
            return None;
        }
    }
    Some((coeff, key))
}

impl From<UnitMonomial> for RingElem {
    fn from(u: UnitMonomial) -> RingElem {
        let mut e = RingElem::zero();
        let coeff = if u.negative { -BigInt::one() } else { BigInt::one() };
        e.add_term(u.key(), coeff);
        e
    }
}

impl Add for &RingElem {
    type Output = RingElem;

    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (&key, coeff) in &rhs.terms {
            out.add_term(key, coeff.clone());
        }
        out
    }
}

impl Sub for &RingElem {
    type Output = RingElem;

    fn sub(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (&key, coeff) in &rhs.terms {
            out.add_term(key, -coeff.clone());
        }
        out
    }
}

impl Mul for &RingElem {
    type Output = RingElem;

    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (&(a1, b1, c1), co1) in &self.terms {
            for (&(a2, b2, c2), co2) in &rhs.terms {
                out.add_term((a1 ^ a2, b1 ^ b2, c1 + c2), co1 * co2);
            }
        }
        out
    }
}

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        let mut out = RingElem::zero();
        for (&key, coeff) in &self.terms {
            out.add_term(key, -coeff.clone());
        }
        out
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, c), coeff) in &self.terms {
            let neg = coeff.is_negative();
            let mag = coeff.magnitude();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            if a {
                parts.push("x".into());
            }
            if b {
                parts.push("y".into());
            }
            if c == 1 {
                parts.push("z".into());
            } else if c != 0 {
                parts.push(format!("z^{}", c));
            }
            let body = if parts.is_empty() { "1".into() } else { parts.join("*") };
            if first {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A ring homomorphism out of `R_U`, given by the images of `x`, `y`, `z`.
///
/// `Signs` sends each generator to `±1` and lands in `Z`; `Universal` is the
/// identity. The constraint `image(x)^2 = image(y)^2 = 1` restricts integer
/// images to `±1`, and `image(z)` must be a unit, hence also `±1` over `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    Universal,
    Signs { x: i8, y: i8, z: i8 },
}

impl Specialization {
    pub fn signs(x: i8, y: i8, z: i8) -> Result<Self, RingError> {
        if x.abs() != 1 || y.abs() != 1 {
            return Err(RingError::NonUnitImage);
        }
        if z.abs() != 1 {
            return Err(RingError::NonUnitImage);
        }
        Ok(Specialization::Signs { x, y, z })
    }

    /// The even theory `(1,1,1)`.
    pub fn even() -> Self {
        Specialization::Signs { x: 1, y: 1, z: 1 }
    }

    /// The odd theory `(1,-1,1)`.
    pub fn odd() -> Self {
        Specialization::Signs { x: 1, y: -1, z: 1 }
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, Specialization::Universal)
    }

    pub fn unit_sign(&self, u: UnitMonomial) -> i64 {
        match self {
            Specialization::Universal => panic!("unit_sign on universal specialization"),
            Specialization::Signs { x, y, z } => {
                let mut s = if u.negative { -1 } else { 1 };
                if u.xexp && *x < 0 {
                    s = -s;
                }
                if u.yexp && *y < 0 {
                    s = -s;
                }
                if *z < 0 && u.zexp.rem_euclid(2) == 1 {
                    s = -s;
                }
                s
            }
        }
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Universal => write!(f, "universal"),
            Specialization::Signs { x, y, z } => write!(f, "{},{},{}", x, y, z),
        }
    }
}

/// Variable tag of a Laurent polynomial. `S` stands for `t^(1/2)`, so Jones
/// polynomials keep integral exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    Q,
    S,
}

impl Var {
    pub fn symbol(&self) -> &'static str {
        match self {
            Var::A => "A",
            Var::Q => "q",
            Var::S => "s",
        }
    }
}

/// Substitution homomorphisms between the polynomial rings in `A`, `q`, `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentRule {
    /// `q -> -s`, used to pass from the graded Euler characteristic to Jones.
    QToNegS,
    /// `A -> s^(-1/2)`, i.e. `t = A^-4` with `s = t^(1/2)`. Exponents must
    /// stay integral, otherwise `FractionalExponent`.
    AToSNegHalf,
    /// `q -> q^-1` (or the same inversion in any variable).
    Invert,
}

/// A Laurent polynomial in a single tagged variable, canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub var: Var,
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        LaurentPoly::monomial(var, 0, 1)
    }

    pub fn monomial(var: Var, exp: i64, coeff: i64) -> Self {
        let mut p = LaurentPoly::zero(var);
        p.add_term(exp, BigInt::from(coeff));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `true` if `p(v) = p(v^-1)`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().all(|(&e, c)| self.coeff(-e) == *c)
    }

    pub fn substitute(&self, rule: LaurentRule) -> Result<LaurentPoly, RingError> {
        match rule {
            LaurentRule::QToNegS => {
                let mut out = LaurentPoly::zero(Var::S);
                for (&e, c) in &self.coeffs {
                    let co = if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
                    out.add_term(e, co);
                }
                Ok(out)
            }
            LaurentRule::AToSNegHalf => {
                let mut out = LaurentPoly::zero(Var::S);
                for (&e, c) in &self.coeffs {
                    if e.rem_euclid(2) != 0 {
                        return Err(RingError::FractionalExponent(e));
                    }
                    out.add_term(-e / 2, c.clone());
                }
                Ok(out)
            }
            LaurentRule::Invert => {
                let mut out = LaurentPoly::zero(self.var);
                for (&e, c) in &self.coeffs {
                    out.add_term(-e, c.clone());
                }
                Ok(out)
            }
        }
    }

    /// Exact division, used for the enhanced-state normalization and for
    /// dividing the unnormalized Jones polynomial by `-s - s^-1`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        if divisor.is_zero() {
            return Err(RingError::InexactDivision);
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.var);
        let (&dlead, dco) = divisor.coeffs.iter().next_back().unwrap();
        let dco = dco.clone();
        while !rem.is_zero() {
            let (&rlead, rco) = rem.coeffs.iter().next_back().unwrap();
            let rco = rco.clone();
            if (&rco % &dco) != BigInt::zero() {
                return Err(RingError::InexactDivision);
            }
            let c = &rco / &dco;
            let e = rlead - dlead;
            quot.add_term(e, c.clone());
            for (&de, dc) in &divisor.coeffs {
                rem.add_term(de + e, -(dc * &c));
            }
        }
        Ok(quot)
    }

    pub fn render(&self) -> String {
        format!("{}", self)
    }

    /// Render in the variable `t = s^2`; half-integer exponents appear as
    /// `t^(k/2)`. Only meaningful for `Var::S`.
    pub fn render_t(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.magnitude();
            let power = if e == 0 {
                String::new()
            } else if e.rem_euclid(2) == 0 {
                let k = e / 2;
                if k == 1 { "t".into() } else { format!("t^{}", k) }
            } else {
                format!("t^({}/2)", e)
            };
            let body = match (mag.is_one(), power.is_empty()) {
                (true, true) => "1".into(),
                (true, false) => power,
                (false, true) => mag.to_string(),
                (false, false) => format!("{}*{}", mag, power),
            };
            if first {
                out.push_str(if neg { "-" } else { "" });
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    pub fn parse(var: Var, text: &str) -> Result<LaurentPoly, RingError> {
        let cleaned = text.trim();
        if cleaned == "0" {
            return Ok(LaurentPoly::zero(var));
        }
        let mut out = LaurentPoly::zero(var);
        let terms = split_signed_terms(cleaned)
            .ok_or_else(|| RingError::Parse { what: "laurent polynomial", text: text.into() })?;
        let sym = var.symbol();
        for (neg, body) in terms {
            let mut coeff = BigInt::one();
            let mut exp = 0i64;
            for factor in body.split('*') {
                let f = factor.trim();
                if f.chars().all(|ch| ch.is_ascii_digit()) && !f.is_empty() {
                    coeff *= f.parse::<BigInt>().map_err(|_| RingError::Parse {
                        what: "laurent polynomial",
                        text: text.into(),
                    })?;
                } else if f == sym {
                    exp += 1;
                } else if let Some(rest) = f.strip_prefix(&format!("{}^", sym)) {
                    exp += rest.parse::<i64>().map_err(|_| RingError::Parse {
                        what: "laurent polynomial",
                        text: text.into(),
                    })?;
                } else {
                    return Err(RingError::Parse {
                        what: "laurent polynomial",
                        text: text.into(),
                    });
                }
            }
            out.add_term(exp, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for (&e, c) in &self.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let sym = self.var.symbol();
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.magnitude();
            let power = if e == 0 {
                String::new()
            } else if e == 1 {
                sym.to_string()
            } else {
                format!("{}^{}", sym, e)
            };
            let body = match (mag.is_one(), power.is_empty()) {
                (true, true) => "1".into(),
                (true, false) => power,
                (false, true) => mag.to_string(),
                (false, false) => format!("{}*{}", mag, power),
            };
            if first {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rand_unit(rng: &mut StdRng) -> UnitMonomial {
        UnitMonomial::new(rng.gen(), rng.gen(), rng.gen(), rng.gen_range(-5..=5))
    }

    fn rand_elem(rng: &mut StdRng) -> RingElem {
        let mut e = RingElem::zero();
        for _ in 0..rng.gen_range(0..4) {
            let u = rand_unit(rng);
            let mut t = RingElem::zero();
            t.add_term(u.key(), BigInt::from(rng.gen_range(-9i64..=9)));
            e = &e + &t;
        }
        e
    }

    #[test]
    fn unit_squares_are_one() {
        assert_eq!(UnitMonomial::x() * UnitMonomial::x(), UnitMonomial::one());
        assert_eq!(UnitMonomial::y() * UnitMonomial::y(), UnitMonomial::one());
        assert_eq!(UnitMonomial::z() * UnitMonomial::z_inv(), UnitMonomial::one());
    }

    #[test]
    fn unit_mul_example() {
        // (-x z) * (y z) = -x y z^2
        let a = UnitMonomial::new(true, true, false, 1);
        let b = UnitMonomial::new(false, false, true, 1);
        assert_eq!(a * b, UnitMonomial::new(true, true, true, 2));
    }

    #[test]
    fn unit_group_laws_random() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let (a, b, c) = (rand_unit(&mut rng), rand_unit(&mut rng), rand_unit(&mut rng));
            assert_eq!((a * b) * c, a * (b * c));
            assert_eq!(a * b, b * a);
            assert_eq!(a * a.inverse(), UnitMonomial::one());
        }
    }

    #[test]
    fn difference_of_squares_vanishes() {
        // (x + y)(x - y) = x^2 - y^2 = 0
        let x = RingElem::from(UnitMonomial::x());
        let y = RingElem::from(UnitMonomial::y());
        let p = &(&x + &y) * &(&x - &y);
        assert!(p.is_zero());
    }

    #[test]
    fn z_times_sum_cancels() {
        // z(x+y) + (-zx) = zy
        let zx = RingElem::from(UnitMonomial::x() * UnitMonomial::z());
        let zy = RingElem::from(UnitMonomial::y() * UnitMonomial::z());
        let sum = &(&zx + &zy) + &-&zx;
        assert_eq!(sum, zy);
    }

    #[test]
    fn xz_times_xzinv_is_one() {
        let a = RingElem::from(UnitMonomial::x() * UnitMonomial::z());
        let b = RingElem::from(UnitMonomial::x() * UnitMonomial::z_inv());
        assert_eq!(&a * &b, RingElem::one());
    }

    #[test]
    fn ring_axioms_random() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..400 {
            let (a, b, c) = (rand_elem(&mut rng), rand_elem(&mut rng), rand_elem(&mut rng));
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }

    #[test]
    fn specialize_examples() {
        // z(x+y) at (1,1,1) -> 2, at (1,-1,1) -> 0
        let zx = RingElem::from(UnitMonomial::x() * UnitMonomial::z());
        let zy = RingElem::from(UnitMonomial::y() * UnitMonomial::z());
        let t = &zx + &zy;
        assert_eq!(t.specialize_int(&Specialization::even()).unwrap(), BigInt::from(2));
        assert_eq!(t.specialize_int(&Specialization::odd()).unwrap(), BigInt::from(0));
        // x y z^3 at (1,-1,-1) -> 1
        let u = UnitMonomial::new(false, true, true, 3);
        let e = RingElem::from(u);
        let s = Specialization::signs(1, -1, -1).unwrap();
        assert_eq!(e.specialize_int(&s).unwrap(), BigInt::from(1));
    }

    #[test]
    fn specialize_is_homomorphism() {
        let mut rng = StdRng::seed_from_u64(7);
        let specs = [Specialization::even(), Specialization::odd(),
                     Specialization::signs(-1, 1, -1).unwrap()];
        for _ in 0..300 {
            let (a, b) = (rand_elem(&mut rng), rand_elem(&mut rng));
            for s in &specs {
                let lhs = (&a * &b).specialize_int(s).unwrap();
                let rhs = a.specialize_int(s).unwrap() * b.specialize_int(s).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn laurent_substitutions() {
        // q + q^-1 under q -> -s gives -s - s^-1
        let mut p = LaurentPoly::zero(Var::Q);
        p.add_term(1, BigInt::one());
        p.add_term(-1, BigInt::one());
        let q = p.substitute(LaurentRule::QToNegS).unwrap();
        let mut expect = LaurentPoly::zero(Var::S);
        expect.add_term(1, BigInt::from(-1));
        expect.add_term(-1, BigInt::from(-1));
        assert_eq!(q, expect);
        // A^-4 under A -> s^(-1/2) gives s^2
        let a = LaurentPoly::monomial(Var::A, -4, 1);
        assert_eq!(a.substitute(LaurentRule::AToSNegHalf).unwrap(),
                   LaurentPoly::monomial(Var::S, 2, 1));
        // constant is fixed
        let one = LaurentPoly::one(Var::Q);
        assert_eq!(one.substitute(LaurentRule::QToNegS).unwrap(), LaurentPoly::one(Var::S));
        // odd exponents refuse the A-substitution
        let odd = LaurentPoly::monomial(Var::A, 3, 1);
        assert_eq!(odd.substitute(LaurentRule::AToSNegHalf),
                   Err(RingError::FractionalExponent(3)));
    }

    #[test]
    fn substitution_distributes() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let mut a = LaurentPoly::zero(Var::Q);
            let mut b = LaurentPoly::zero(Var::Q);
            for _ in 0..3 {
                a.add_term(rng.gen_range(-4..=4), BigInt::from(rng.gen_range(-5i64..=5)));
                b.add_term(rng.gen_range(-4..=4), BigInt::from(rng.gen_range(-5i64..=5)));
            }
            let lhs = (&a * &b).substitute(LaurentRule::QToNegS).unwrap();
            let rhs = &a.substitute(LaurentRule::QToNegS).unwrap()
                * &b.substitute(LaurentRule::QToNegS).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = (&a + &b).substitute(LaurentRule::QToNegS).unwrap();
            let rhs = &a.substitute(LaurentRule::QToNegS).unwrap()
                + &b.substitute(LaurentRule::QToNegS).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exact_division() {
        // (q + q^-1)^3 / (q + q^-1) = (q + q^-1)^2
        let mut d = LaurentPoly::zero(Var::Q);
        d.add_term(1, BigInt::one());
        d.add_term(-1, BigInt::one());
        let cube = d.pow(3);
        assert_eq!(cube.div_exact(&d).unwrap(), d.pow(2));
        let bad = LaurentPoly::monomial(Var::Q, 0, 3);
        assert!(bad.div_exact(&LaurentPoly::monomial(Var::Q, 0, 2)).is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..300 {
            let e = rand_elem(&mut rng);
            let text = e.render();
            assert_eq!(RingElem::parse(&text).unwrap(), e, "text was {text}");
        }
        let mut p = LaurentPoly::zero(Var::Q);
        p.add_term(-1, BigInt::one());
        p.add_term(1, BigInt::one());
        assert_eq!(p.render(), "q^-1 + q");
        assert_eq!(LaurentPoly::parse(Var::Q, "q^-1 + q").unwrap(), p);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_unit() -> impl Strategy<Value = UnitMonomial> {
            (any::<bool>(), any::<bool>(), any::<bool>(), -8i64..=8)
                .prop_map(|(n, a, b, c)| UnitMonomial::new(n, a, b, c))
        }

        fn arb_elem() -> impl Strategy<Value = RingElem> {
            proptest::collection::vec((any::<bool>(), any::<bool>(), -4i64..=4, -9i64..=9), 0..5)
                .prop_map(|terms| {
                    let mut e = RingElem::zero();
                    for (a, b, c, coeff) in terms {
                        e.add_term((a, b, c), BigInt::from(coeff));
                    }
                    e
                })
        }

        proptest! {
            #[test]
            fn unit_group_laws(a in arb_unit(), b in arb_unit(), c in arb_unit()) {
                prop_assert_eq!((a * b) * c, a * (b * c));
                prop_assert_eq!(a * b, b * a);
                prop_assert_eq!(a * a.inverse(), UnitMonomial::one());
            }

            #[test]
            fn elem_round_trips_through_text(e in arb_elem()) {
                prop_assert_eq!(RingElem::parse(&e.render()).unwrap(), e);
            }

            #[test]
            fn distributivity(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            }
        }
    }

    #[test]
    fn unit_ratio_detects_units() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let e = rand_elem(&mut rng);
            if e.is_zero() {
                continue;
            }
            let u = rand_unit(&mut rng);
            let scaled = e.scale(u);
            assert_eq!(scaled.unit_ratio(&e), Some(u));
        }
        let x = RingElem::from(UnitMonomial::x());
        let y = RingElem::from(UnitMonomial::y());
        assert_eq!((&x + &y).unit_ratio(&(&x - &y)), None);
    }
}
