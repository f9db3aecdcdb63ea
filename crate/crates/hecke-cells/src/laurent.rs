//! Integer Laurent polynomials in `v` (and a two-variable variant in `v`, `v'`).
//!
//! Coefficients start life as `i64` and are promoted to `BigInt` on the first
//! overflow, so arithmetic never wraps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::Error;

/// Arbitrary-precision integer with an `i64` fast path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub fn zero() -> Self {
        Int::Small(0)
    }

    pub fn one() -> Self {
        Int::Small(1)
    }

    fn norm(b: BigInt) -> Self {
        match b.to_i64() {
            Some(x) => Int::Small(x),
            None => Int::Big(b),
        }
    }

    fn big(&self) -> BigInt {
        match self {
            Int::Small(x) => BigInt::from(*x),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(x) => *x < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(x) => Some(*x),
            Int::Big(_) => None,
        }
    }
}

impl From<i64> for Int {
    fn from(x: i64) -> Self {
        Int::Small(x)
    }
}

impl From<i32> for Int {
    fn from(x: i32) -> Self {
        Int::Small(x as i64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::norm(b)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() + rhs.big())
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() - rhs.big())
    }
}

impl Mul for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() * rhs.big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(a) => match a.checked_neg() {
                Some(c) => Int::Small(c),
                None => Int::norm(-BigInt::from(*a)),
            },
            Int::Big(b) => Int::norm(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(x) => write!(f, "{x}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Int {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let b: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
        Ok(Int::norm(b))
    }
}

/// Element of `Z[v, v^-1]`. Terms are kept sorted by exponent, zeros dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, Int)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    /// `zero()` usable in constant contexts.
    pub const fn zero_const() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::monomial_int(Int::from(c), e)
    }

    pub fn monomial_int(c: Int, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `v^e`.
    pub fn v(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `v^e - v^-e`.
    pub fn v_minus_inv(e: i32) -> Self {
        &Self::v(e) - &Self::v(-e)
    }

    /// `v^e + v^-e`.
    pub fn v_plus_inv(e: i32) -> Self {
        &Self::v(e) + &Self::v(-e)
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Int)>>(it: I) -> Self {
        let mut m: BTreeMap<i32, Int> = BTreeMap::new();
        for (e, c) in it {
            let slot = m.entry(e).or_insert_with(Int::zero);
            *slot = &*slot + &c;
        }
        LaurentPoly {
            terms: m.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_i64_terms(ts: &[(i32, i64)]) -> Self {
        Self::from_terms(ts.iter().map(|&(e, c)| (e, Int::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, Int::one())
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> &[(i32, Int)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, n: i32) -> Int {
        match self.terms.binary_search_by_key(&n, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    /// `(min exponent, max exponent)`, `None` for the zero polynomial.
    pub fn degree_window(&self) -> Option<(i32, i32)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    pub fn max_deg(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn min_deg(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    /// Highest term `(exponent, coefficient)`.
    pub fn leading(&self) -> Option<(i32, &Int)> {
        self.terms.last().map(|(e, c)| (*e, c))
    }

    /// Lowest term `(exponent, coefficient)`.
    pub fn trailing(&self) -> Option<(i32, &Int)> {
        self.terms.first().map(|(e, c)| (*e, c))
    }

    /// Every exponent is `< n`.
    pub fn all_below(&self, n: i32) -> bool {
        self.max_deg().map_or(true, |d| d < n)
    }

    /// Every exponent is `> n`.
    pub fn all_above(&self, n: i32) -> bool {
        self.min_deg().map_or(true, |d| d > n)
    }

    /// The terms with exponent `< n`.
    pub fn part_below(&self, n: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 < n).cloned().collect(),
        }
    }

    /// The terms with exponent `> n`.
    pub fn part_above(&self, n: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 > n).cloned().collect(),
        }
    }

    /// The involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// All coefficients are `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// `self += a * b` without building the intermediate product twice.
    pub fn add_mul(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a * b;
        *self += &prod;
    }

    fn merge(a: &[(i32, Int)], b: &[(i32, Int)], negate_b: bool) -> Vec<(i32, Int)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Evaluate the text form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        s.parse()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: LaurentPoly::merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: LaurentPoly::merge(&self.terms, &rhs.terms, true) }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            let mut r = self.shift(*e);
            if !c.is_one_int() {
                r = r.scale(c);
            }
            return r;
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let span = (hi - lo + 1) as usize;
        if span <= 4 * (self.terms.len() + rhs.terms.len()) + 16 {
            let mut acc = vec![Int::zero(); span];
            for (e1, c1) in &self.terms {
                for (e2, c2) in &rhs.terms {
                    let k = (e1 + e2 - lo) as usize;
                    acc[k] = &acc[k] + &(c1 * c2);
                }
            }
            LaurentPoly {
                terms: acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k as i32 + lo, c))
                    .collect(),
            }
        } else {
            LaurentPoly::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(e1, c1)| rhs.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
            )
        }
    }
}

impl Int {
    fn is_one_int(&self) -> bool {
        matches!(self, Int::Small(1))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        self.terms = LaurentPoly::merge(&self.terms, &rhs.terms, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = LaurentPoly::merge(&self.terms, &rhs.terms, true);
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents: `2*v^3 - v^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let unit = a == Int::one();
            match (*e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{a}*v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{a}*v^{e}")?,
            }
        }
        Ok(())
    }
}

fn parse_term(t: &str) -> Result<(i32, Int), Error> {
    let bad = || Error::Parse(format!("bad term {t:?}"));
    let t = t.trim();
    match t.find('v') {
        None => Ok((0, t.parse()?)),
        Some(pos) => {
            let coef = t[..pos].trim().trim_end_matches('*').trim();
            let c = if coef.is_empty() { Int::one() } else { coef.parse()? };
            let rest = t[pos + 1..].trim();
            let e = if rest.is_empty() {
                1
            } else {
                let r = rest.strip_prefix('^').ok_or_else(bad)?;
                let r = r.trim().trim_start_matches('(').trim_end_matches(')');
                r.trim().parse::<i32>().map_err(|_| bad())?
            };
            Ok((e, c))
        }
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split on '+'/'-' that are not part of an exponent.
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        let chars: Vec<char> = s.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let in_exp = i > 0 && {
                let prev = chars[..i].iter().rev().find(|c| !c.is_whitespace());
                matches!(prev, Some('^') | Some('('))
            };
            if (ch == '+' || ch == '-') && !in_exp {
                if !cur.trim().is_empty() {
                    let (e, c) = parse_term(&cur)?;
                    terms.push((e, if sign < 0 { -c } else { c }));
                }
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        let (e, c) = parse_term(&cur)?;
        terms.push((e, if sign < 0 { -c } else { c }));
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Element of `Z[v, v^-1, v', v'^-1]`; keys are `(exp of v, exp of v')`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiLaurentPoly {
    coeffs: BTreeMap<(i32, i32), Int>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: i32, j: i32) -> Int {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Int)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, key: (i32, i32), c: Int) {
        let slot = self.coeffs.entry(key).or_insert_with(Int::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// `self += p(v) * q(v')`.
    pub fn add_outer(&mut self, p: &LaurentPoly, q: &LaurentPoly) {
        for (i, a) in p.terms() {
            for (j, b) in q.terms() {
                self.add_term((*i, *j), a * b);
            }
        }
    }

    /// `p(v) * q(v')`.
    pub fn outer(p: &LaurentPoly, q: &LaurentPoly) -> Self {
        let mut r = Self::zero();
        r.add_outer(p, q);
        r
    }

    /// Coefficient of `v'^j`, as a polynomial in `v`.
    pub fn coeff_vprime(&self, j: i32) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs.iter().filter(|(k, _)| k.1 == j).map(|(k, c)| (k.0, c.clone())),
        )
    }
}

impl Add for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn add(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn sub(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        let mut r = self.clone();
        for (k, c) in &rhs.coeffs {
            r.add_term(*k, -c);
        }
        r
    }
}

impl AddAssign<&BiLaurentPoly> for BiLaurentPoly {
    fn add_assign(&mut self, rhs: &BiLaurentPoly) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, c.clone());
        }
    }
}

impl fmt::Display for BiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.coeffs.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*v^{i}*v'^{j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&p("v + v^-1") + &p("-v^-1"), p("v"));
        assert_eq!(&LaurentPoly::zero() + &p("3*v^2 - 1"), p("3*v^2 - 1"));
        assert_eq!(&p("v - v^-1") + &p("v - v^-1"), p("2*v - 2*v^-1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("v - v^-1") * &p("v + v^-1"), p("v^2 - v^-2"));
        // (x - v_s)(x + v_s^-1) at x = v_s.
        let vs = LaurentPoly::v(3);
        let f = &(&vs - &vs) * &(&vs + &LaurentPoly::v(-3));
        assert!(f.is_zero());
        assert_eq!(&LaurentPoly::one() * &p("2*v^5 - 7"), p("2*v^5 - 7"));
    }

    #[test]
    fn bar_and_coeff() {
        assert_eq!(p("v^3 - 2*v^-1").bar(), p("v^-3 - 2*v"));
        let a = LaurentPoly::v_minus_inv(2);
        assert_eq!(a.bar(), -&a);
        assert_eq!(p("v + 2").coeff(0), Int::from(2));
        assert_eq!(a.coeff(2), Int::one());
        assert_eq!(LaurentPoly::zero().coeff(4), Int::zero());
        assert_eq!(p("v^2 + v^-3").degree_window(), Some((-3, 2)));
        assert_eq!(p("5").degree_window(), Some((0, 0)));
        assert_eq!(LaurentPoly::zero().degree_window(), None);
    }

    #[test]
    fn display_round_trip() {
        let q = p("-v^4 + 3*v - 12 + v^-1 - 2*v^-7");
        assert_eq!(q.to_string(), "-v^4 + 3*v - 12 + v^-1 - 2*v^-7");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("v^(-2)"), LaurentPoly::v(-2));
        assert!(LaurentPoly::parse("v^").is_err());
    }

    #[test]
    fn overflow_promotes() {
        let big = LaurentPoly::monomial(i64::MAX, 0);
        let sq = &big * &big;
        let expect: BigInt = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        assert_eq!(sq.coeff(0), Int::from(expect));
        let back = &(&big + &big) - &big;
        assert_eq!(back, big);
        assert!(matches!(back.coeff(0), Int::Small(_)));
    }

    #[test]
    fn bivariate_outer() {
        let a = p("v + 1");
        let b = p("v^-2");
        let m = BiLaurentPoly::outer(&a, &b);
        assert_eq!(m.coeff(1, -2), Int::one());
        assert_eq!(m.coeff_vprime(-2), a);
        assert!((&m - &m).is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..6, -5i64..5), 0..6)
            .prop_map(|ts| LaurentPoly::from_i64_terms(&ts))
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!(a.bar().bar(), a.clone());
        }

        #[test]
        fn coeff_is_additive(a in arb_poly(), b in arb_poly(), n in -8i32..8) {
            prop_assert_eq!((&a + &b).coeff(n), &a.coeff(n) + &b.coeff(n));
        }

        #[test]
        fn degree_windows_add(a in arb_poly(), b in arb_poly()) {
            let prod = &a * &b;
            match (a.degree_window(), b.degree_window()) {
                (Some((a0, a1)), Some((b0, b1))) => {
                    prop_assert_eq!(prod.degree_window(), Some((a0 + b0, a1 + b1)));
                }
                _ => prop_assert!(prod.is_zero()),
            }
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
