//! Exact coefficient rings.
//!
//! [`LaurentScalar`] is the ring `Z[q, q^-1]` in which Grothendieck-group
//! coefficients live; the grading twist `{1}` acts on classes by `-q`.
//! [`BiGrade`] records direct-sum multiplicities of shifted objects as a
//! Laurent polynomial in `g` (the twist `{1}`) and `h` (the homological
//! shift `[1]`) with positive coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Integer Laurent polynomial in one variable `q`.
///
/// Stored densely: `coeffs[i]` is the coefficient of `q^(low + i)`. The first
/// and last stored coefficients are nonzero; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    low: i64,
    coeffs: Vec<i64>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: i64, exp: i64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { low: exp, coeffs: vec![c] }
        }
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let map: BTreeMap<i64, i64> = terms.into_iter().fold(BTreeMap::new(), |mut acc, (e, c)| {
            *acc.entry(e).or_insert(0) += c;
            acc
        });
        let Some((&lo, _)) = map.iter().find(|(_, c)| **c != 0) else {
            return Self::zero();
        };
        let hi = *map.iter().rev().find(|(_, c)| **c != 0).unwrap().0;
        let mut coeffs = vec![0; (hi - lo + 1) as usize];
        for (e, c) in map {
            if (lo..=hi).contains(&e) {
                coeffs[(e - lo) as usize] = c;
            }
        }
        Self { low: lo, coeffs }
    }

    fn normalized(mut low: i64, mut coeffs: Vec<i64>) -> Self {
        let lead = coeffs.iter().position(|&c| c != 0);
        let Some(start) = lead else {
            return Self::zero();
        };
        let end = coeffs.iter().rposition(|&c| c != 0).unwrap();
        coeffs.truncate(end + 1);
        if start > 0 {
            coeffs.drain(..start);
            low += start as i64;
        }
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(move |(i, &c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != 0).count()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => Self { low: -hi, coeffs: self.coeffs.iter().rev().copied().collect() },
        }
    }

    /// Evaluates at `q = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient in `Z[q, q^-1]`, or `None` when `divisor` does not
    /// divide `self` (or is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Long division from the top degree over the coefficient arrays.
        let d = &divisor.coeffs;
        let dlen = d.len();
        let lead = *d.last().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return None;
        }
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![0i64; qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dlen - 1];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            quot[i] = c;
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::normalized(self.low - divisor.low, quot))
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentScalar({self})")
    }
}

/// Canonical rendering, exponents ascending: `q^-2 + 2 + q^2`, `-q + 3q^4`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("q")?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentScalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new(0, "empty Laurent polynomial"));
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(ParseError::new(pos, "expected '+' or '-'"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff: Option<i64> = None;
            if pos > start {
                coeff =
                    Some(compact[start..pos].parse().map_err(|_| ParseError::new(start, "coefficient out of range"))?);
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let es = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = compact[es..pos].parse().map_err(|_| ParseError::new(es, "malformed exponent"))?;
                }
            } else if coeff.is_none() {
                return Err(ParseError::new(pos, "expected coefficient or 'q'"));
            }
            terms.push((exp, sign * coeff.unwrap_or(1)));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn add_into(a: &LaurentScalar, b: &LaurentScalar, sign: i64) -> LaurentScalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.scale(sign);
    }
    let low = a.low.min(b.low);
    let high = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut coeffs = vec![0i64; (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        coeffs[(b.low - low) as usize + i] += sign * c;
    }
    LaurentScalar::normalized(low, coeffs)
}

impl Add<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        add_into(self, rhs, 1)
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: LaurentScalar) -> LaurentScalar {
        add_into(&self, &rhs, 1)
    }
}

impl Sub<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        add_into(self, rhs, -1)
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        add_into(&self, &rhs, -1)
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        *self = add_into(self, rhs, 1);
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        *self = add_into(self, rhs, -1);
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(-1)
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(-1)
    }
}

impl Mul<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() || rhs.is_zero() {
            return LaurentScalar::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentScalar::normalized(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

/// Balanced quantum integer `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`,
/// extended by `[-n] = -[n]`.
pub fn qint(n: i64) -> LaurentScalar {
    let sign = n.signum();
    let m = n.abs();
    LaurentScalar::from_terms((0..m).map(|i| (m - 1 - 2 * i, sign)))
}

/// Quantum factorial `[1][2]...[n]`.
pub fn qfact(n: u32) -> LaurentScalar {
    (1..=n as i64).fold(LaurentScalar::one(), |acc, j| &acc * &qint(j))
}

/// Balanced quantum binomial `[n choose k]` for `0 <= k <= n`, computed as
/// `prod_i [n-k+i] / [i]` with an exact division at every step.
pub fn qbinom(n: i64, k: u32) -> LaurentScalar {
    assert!(n >= 0 && (k as i64) <= n, "qbinom({n}, {k}) outside 0 <= k <= n");
    let k = k.min((n - k as i64) as u32) as i64;
    (1..=k).fold(LaurentScalar::one(), |acc, i| {
        (&acc * &qint(n - k + i)).div_exact(&qint(i)).expect("partial products of quantum binomials divide exactly")
    })
}

/// Quantum binomial that vanishes outside `0 <= k <= n` (the range where the
/// divided-power commutation formulas use it).
pub fn qbinom_or_zero(n: i64, k: u32) -> LaurentScalar {
    if n < 0 || k as i64 > n {
        LaurentScalar::zero()
    } else {
        qbinom(n, k)
    }
}

/// Multiplicities of shifted objects: a Laurent polynomial in `g` (grading
/// twist `{1}`) and `h` (homological shift `[1]`) with positive coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BiGrade {
    terms: BTreeMap<(i64, i64), u64>,
}

impl BiGrade {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn g() -> Self {
        Self::monomial(1, 0)
    }

    pub fn h() -> Self {
        Self::monomial(0, 1)
    }

    /// `g^g_exp h^h_exp`.
    pub fn monomial(g_exp: i64, h_exp: i64) -> Self {
        Self::from_terms([((g_exp, h_exp), 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), u64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            if c > 0 {
                *out.terms.entry(k).or_insert(0) += c;
            }
        }
        out
    }

    /// Lifts a Laurent polynomial with nonnegative coefficients along
    /// `q^e -> g^e h^-e`, the section of [`decategorify`] used for balanced
    /// graded dimensions. Returns `None` if a coefficient is negative.
    pub fn lift(x: &LaurentScalar) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in x.terms() {
            if c < 0 {
                return None;
            }
            out.terms.insert((e, -e), c as u64);
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    /// Monomials `((g, h), multiplicity)` in ascending `(g, h)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn coeff(&self, g_exp: i64, h_exp: i64) -> u64 {
        self.terms.get(&(g_exp, h_exp)).copied().unwrap_or(0)
    }

    /// Total number of summands (sum of multiplicities).
    pub fn rank(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Removes `mult` copies of a monomial. Panics if fewer are present.
    pub fn remove(&mut self, g_exp: i64, h_exp: i64, mult: u64) {
        let entry = self.terms.get_mut(&(g_exp, h_exp)).expect("monomial present");
        assert!(*entry >= mult, "cannot remove more summands than present");
        *entry -= mult;
        if *entry == 0 {
            self.terms.remove(&(g_exp, h_exp));
        }
    }

    /// Multiplies by `g^dg h^dh`.
    pub fn shift(&self, dg: i64, dh: i64) -> Self {
        Self { terms: self.terms.iter().map(|((a, b), c)| ((a + dg, b + dh), *c)).collect() }
    }
}

impl Add<&BiGrade> for &BiGrade {
    type Output = BiGrade;
    fn add(self, rhs: &BiGrade) -> BiGrade {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BiGrade> for BiGrade {
    fn add_assign(&mut self, rhs: &BiGrade) {
        for (k, c) in &rhs.terms {
            *self.terms.entry(*k).or_insert(0) += c;
        }
    }
}

impl Mul<&BiGrade> for &BiGrade {
    type Output = BiGrade;
    fn mul(self, rhs: &BiGrade) -> BiGrade {
        let mut out = BiGrade::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &rhs.terms {
                *out.terms.entry((a + x, b + y)).or_insert(0) += c * d;
            }
        }
        out
    }
}

impl fmt::Debug for BiGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiGrade({self})")
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, g: i64, h: i64) -> fmt::Result {
    let mut parts = Vec::new();
    for (name, e) in [("g", g), ("h", h)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    f.write_str(&parts.join(" "))
}

/// Monomials ordered by descending `g`, then descending `h`:
/// `g h^-1 + g^-1 h`, `2 g^2 + 1`.
impl fmt::Display for BiGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, ((g, h), c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if *g == 0 && *h == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if *c != 1 {
                write!(f, "{c} ")?;
            }
            write_monomial(f, *g, *h)?;
        }
        Ok(())
    }
}

/// Graded dimension of `H*(P^r)`: `sum_{i=0..r} h^(r-2i) g^(-r+2i)`, zero for
/// `r = -1`.
pub fn p_graded_dim(r: i64) -> Result<BiGrade, crate::Error> {
    if r < -1 {
        return Err(crate::Error::InvalidArgument(format!("projective space dimension must be >= -1, got {r}")));
    }
    Ok(BiGrade::from_terms((0..=r).map(|i| ((-r + 2 * i, r - 2 * i), 1))))
}

/// The ring map `g -> -q`, `h -> -1`.
pub fn decategorify(x: &BiGrade) -> LaurentScalar {
    LaurentScalar::from_terms(x.terms().map(|((g, h), c)| {
        let sign = if (g + h).rem_euclid(2) == 0 { 1 } else { -1 };
        (g, sign * c as i64)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    #[test]
    fn qint_examples() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), LaurentScalar::one());
        assert_eq!(qint(2), lp("q^-1 + q"));
        assert_eq!(qint(-3), -qint(3));
        assert_eq!(qint(3).to_string(), "q^-2 + 1 + q^2");
    }

    #[test]
    fn qfact_and_qbinom_examples() {
        assert_eq!(qfact(0), LaurentScalar::one());
        assert_eq!(qfact(2), qint(2));
        assert_eq!(qbinom(2, 1), lp("q + q^-1"));
        assert_eq!(qbinom(4, 2), lp("q^4 + q^2 + 2 + q^-2 + q^-4"));
        assert_eq!(qbinom(5, 0), LaurentScalar::one());
    }

    /// Independent oracle: the balanced q-Pascal recurrence
    /// `[n,k] = q^k [n-1,k] + q^(k-n) [n-1,k-1]`.
    fn pascal(n: i64, k: i64) -> LaurentScalar {
        if k < 0 || k > n {
            return LaurentScalar::zero();
        }
        if k == 0 || k == n {
            return LaurentScalar::one();
        }
        &pascal(n - 1, k).shift(k) + &pascal(n - 1, k - 1).shift(k - n)
    }

    #[test]
    fn qbinom_matches_pascal_oracle() {
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(qbinom(n, k as u32), pascal(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn qbinom_symmetry() {
        for n in 0..=10 {
            for k in 0..=n as u32 {
                assert_eq!(qbinom(n, k), qbinom(n, n as u32 - k));
            }
        }
    }

    #[test]
    #[should_panic]
    fn qbinom_rejects_k_above_n() {
        qbinom(2, 3);
    }

    #[test]
    fn p_graded_dim_examples() {
        assert!(p_graded_dim(-1).unwrap().is_zero());
        assert!(p_graded_dim(0).unwrap().is_one());
        let two = p_graded_dim(2).unwrap();
        assert_eq!(two, BiGrade::from_terms([((-2, 2), 1), ((0, 0), 1), ((2, -2), 1)]));
        assert!(p_graded_dim(-2).is_err());
    }

    #[test]
    fn decategorify_generators() {
        assert_eq!(decategorify(&BiGrade::g()), lp("-q"));
        assert_eq!(decategorify(&BiGrade::h()), lp("-1"));
        for r in 0..=10 {
            assert_eq!(decategorify(&p_graded_dim(r).unwrap()), qint(r + 1), "r={r}");
        }
    }

    #[test]
    fn lift_is_a_section_of_decategorify() {
        let x = qbinom(6, 3);
        assert_eq!(decategorify(&BiGrade::lift(&x).unwrap()), x);
        assert!(BiGrade::lift(&lp("1 - q")).is_none());
        assert_eq!(BiGrade::lift(&qint(2)).unwrap(), p_graded_dim(1).unwrap());
    }

    #[test]
    fn rendering() {
        assert_eq!(lp("q^2 + 2 + q^-2").to_string(), "q^-2 + 2 + q^2");
        assert_eq!(lp("-q + 3*q^4").to_string(), "-q + 3q^4");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!(p_graded_dim(1).unwrap().to_string(), "g h^-1 + g^-1 h");
        assert_eq!(BiGrade::one().to_string(), "1");
        assert_eq!(BiGrade::from_terms([((2, 0), 2), ((0, 0), 1)]).to_string(), "2 g^2 + 1");
    }

    #[test]
    fn parse_errors_report_position() {
        let err = "q^ + 1".parse::<LaurentScalar>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!("".parse::<LaurentScalar>().is_err());
        assert!("2 x".parse::<LaurentScalar>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = &qint(3) * &qint(4);
        assert_eq!(a.div_exact(&qint(4)), Some(qint(3)));
        assert_eq!(qint(3).div_exact(&qint(2)), None);
        assert_eq!(qint(3).div_exact(&LaurentScalar::zero()), None);
        assert_eq!(lp("q^5").div_exact(&lp("q^-2")), Some(lp("q^7")));
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentScalar> {
        proptest::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(LaurentScalar::from_terms)
    }

    fn arb_bigrade() -> impl Strategy<Value = BiGrade> {
        proptest::collection::vec(((-4i64..4, -4i64..4), 1u64..4), 0..5).prop_map(BiGrade::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a + &(-&a), LaurentScalar::zero());
            prop_assert!(a.terms().all(|(_, c)| c != 0));
        }

        #[test]
        fn render_parse_round_trip(a in arb_laurent()) {
            prop_assert_eq!(a.to_string().parse::<LaurentScalar>().unwrap(), a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_laurent(), b in arb_laurent()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn qint_products_are_bar_invariant(n in -8i64..8, m in -8i64..8) {
            let p = &qint(n) * &qint(m);
            prop_assert_eq!(p.bar(), p);
        }

        #[test]
        fn decategorify_is_a_ring_map(x in arb_bigrade(), y in arb_bigrade()) {
            prop_assert_eq!(decategorify(&(&x * &y)), &decategorify(&x) * &decategorify(&y));
            prop_assert_eq!(decategorify(&(&x + &y)), &decategorify(&x) + &decategorify(&y));
        }

        #[test]
        fn bigrade_coefficients_stay_positive(x in arb_bigrade(), y in arb_bigrade()) {
            prop_assert!((&x * &y).terms().all(|(_, c)| c > 0));
        }
    }
}
