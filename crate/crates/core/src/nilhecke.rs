//! The nilHecke algebra acting on `Z[x_1..x_n]` by multiplication and
//! divided differences.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ParseError, Result};
use crate::report::Check;

/// Sparse integer polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// `x_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(nvars, 1, e)
    }

    pub fn monomial(nvars: usize, c: i64, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different numbers of variables");
    }

    /// Exchange `x_i` and `x_(i+1)`.
    pub fn swap(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.swap(i - 1, i);
            out.add_term(e, c);
        }
        out
    }

    /// Exact division by `x_i - x_(i+1)`, if possible.
    pub fn div_by_difference(&self, i: usize) -> Option<Self> {
        let (a, b) = (i - 1, i);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            let lead =
                rem.terms.iter().filter(|(e, _)| e[a] > 0).max_by_key(|(e, _)| e[a]).map(|(e, &c)| (e.clone(), c));
            let Some((e, c)) = lead else {
                break;
            };
            let mut q = e.clone();
            q[a] -= 1;
            quot.add_term(q.clone(), c);
            rem.add_term(e, -c);
            q[b] += 1;
            rem.add_term(q, c);
        }
        rem.is_zero().then_some(quot)
    }

    fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|x, y| {
            let dx: u32 = x.iter().sum();
            let dy: u32 = y.iter().sum();
            dy.cmp(&dx).then_with(|| y.cmp(x))
        });
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    _ => factors.push(format!("x{}^{}", v + 1, p)),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses the text format, with `nvars` variables.
    pub fn parse(nvars: usize, text: &str) -> std::result::Result<Self, ParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new(0, "empty polynomial"));
        }
        let bytes = compact.as_bytes();
        let mut out = Self::zero(nvars);
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
            let end = bytes[pos..].iter().position(|&b| b == b'+' || b == b'-').map_or(bytes.len(), |k| pos + k);
            if end == pos {
                return Err(ParseError::new(pos, "empty term"));
            }
            let (c, e) = parse_term(nvars, &compact[pos..end]).map_err(|err| err.offset(pos))?;
            out.add_term(e, sign * c);
            pos = end;
        }
        Ok(out)
    }
}

fn parse_term(nvars: usize, term: &str) -> std::result::Result<(i64, Vec<u32>), ParseError> {
    let mut coeff = 1i64;
    let mut exps = vec![0u32; nvars];
    let mut offset = 0;
    for (idx, factor) in term.split('*').enumerate() {
        if factor.is_empty() {
            return Err(ParseError::new(offset, "empty factor"));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (var, pow) = match rest.split_once('^') {
                Some((v, p)) => (v, p),
                None => (rest, "1"),
            };
            let var: usize =
                var.parse().map_err(|_| ParseError::new(offset + 1, format!("bad variable index '{var}'")))?;
            if var == 0 || var > nvars {
                return Err(ParseError::new(offset + 1, format!("variable x{var} outside x1..x{nvars}")));
            }
            let pow: u32 = pow.parse().map_err(|_| ParseError::new(offset + 1, format!("bad exponent '{pow}'")))?;
            exps[var - 1] += pow;
        } else if idx == 0 {
            coeff = factor.parse().map_err(|_| ParseError::new(offset, format!("bad coefficient '{factor}'")))?;
        } else {
            return Err(ParseError::new(offset, format!("unexpected factor '{factor}'")));
        }
        offset += factor.len() + 1;
    }
    Ok((coeff, exps))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]({})", self.nvars, self.to_text())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.same_ring(rhs);
        let mut out = IntPoly::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

fn check_index(i: usize, upper: usize) -> Result<()> {
    if i == 0 || i > upper {
        return Err(Error::NodeOutOfRange { node: i, max: upper });
    }
    Ok(())
}

/// `(p - s_i p) / (x_i - x_(i+1))`.
pub fn demazure(i: usize, p: &IntPoly) -> Result<IntPoly> {
    check_index(i, p.nvars().saturating_sub(1))?;
    let diff = p - &p.swap(i);
    Ok(diff.div_by_difference(i).expect("p - s_i(p) is always divisible by x_i - x_(i+1)"))
}

/// `x_i * p`.
pub fn mult_x(i: usize, p: &IntPoly) -> Result<IntPoly> {
    check_index(i, p.nvars())?;
    Ok(&IntPoly::var(p.nvars(), i) * p)
}

/// All monomials in `nvars` variables of total degree at most `max_degree`.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(v: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<IntPoly>) {
        if v == exps.len() {
            out.push(IntPoly::monomial(exps.len(), 1, exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[v] = e;
            rec(v + 1, left - e, exps, out);
        }
        exps[v] = 0;
    }
    rec(0, max_degree, &mut exps, &mut out);
    out
}

/// A random polynomial with up to `max_terms` terms of degree `<= max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, max_terms: usize) -> IntPoly {
    let mut p = IntPoly::zero(nvars);
    let count = rng.random_range(0..=max_terms);
    for _ in 0..count {
        let mut left = max_degree;
        let mut exps = vec![0u32; nvars];
        for e in exps.iter_mut() {
            let take = rng.random_range(0..=left);
            *e = take;
            left -= take;
        }
        let c = rng.random_range(-5i64..=5);
        p.add_term(exps, c);
    }
    p
}

/// The nilHecke relations on the monomial spanning set plus seeded samples.
pub fn nil_hecke_suite(n: usize, max_degree: u32, samples: usize, seed: u64) -> Result<Vec<Check>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("nilHecke suite needs n >= 2 variables, got {n}")));
    }
    let mut inputs = monomials_up_to(n, max_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        inputs.push(random_poly(&mut rng, n, max_degree, 6));
    }
    let params = |extra: &[(&str, i64)]| {
        let mut p = vec![("n".to_string(), n as i64), ("deg".to_string(), max_degree as i64)];
        p.extend(extra.iter().map(|(k, v)| (k.to_string(), *v)));
        p
    };
    let d = |i: usize, p: &IntPoly| demazure(i, p).expect("index checked");
    let x = |i: usize, p: &IntPoly| mult_x(i, p).expect("index checked");
    let first = |f: &dyn Fn(&IntPoly) -> Option<String>| inputs.iter().find_map(f);

    let mut checks = Vec::new();
    for i in 1..n {
        let fail = first(&|p| {
            let r = d(i, &d(i, p));
            (!r.is_zero()).then(|| format!("on {p}: got {r}"))
        });
        checks.push(Check::new("nilhecke T^2=0", params(&[("i", i as i64)]), fail));

        let fail = first(&|p| {
            let lhs = &x(i, &d(i, p)) - &d(i, &x(i + 1, p));
            (lhs != *p).then(|| format!("on {p}: got {lhs}"))
        });
        checks.push(Check::new("nilhecke (XI)T-T(IX)=I", params(&[("i", i as i64)]), fail));

        let fail = first(&|p| {
            let lhs = &d(i, &x(i, p)) - &x(i + 1, &d(i, p));
            (lhs != *p).then(|| format!("on {p}: got {lhs}"))
        });
        checks.push(Check::new("nilhecke -(IX)T+T(XI)=I", params(&[("i", i as i64)]), fail));

        if i + 1 < n {
            let fail = first(&|p| {
                let lhs = d(i, &d(i + 1, &d(i, p)));
                let rhs = d(i + 1, &d(i, &d(i + 1, p)));
                (lhs != rhs).then(|| format!("on {p}: {lhs} vs {rhs}"))
            });
            checks.push(Check::new("nilhecke braid", params(&[("i", i as i64)]), fail));
        }
        for j in i + 2..n {
            let fail = first(&|p| {
                let lhs = d(i, &d(j, p));
                let rhs = d(j, &d(i, p));
                (lhs != rhs).then(|| format!("on {p}: {lhs} vs {rhs}"))
            });
            checks.push(Check::new("nilhecke distant commute", params(&[("i", i as i64), ("j", j as i64)]), fail));
        }
    }
    Ok(checks)
}

impl FromStr for IntPoly {
    type Err = ParseError;

    /// Infers the number of variables from the largest index present.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let nvars = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|tok| tok.strip_prefix('x'))
            .filter_map(|v| v.parse::<usize>().ok())
            .max()
            .unwrap_or(1)
            .max(1);
        IntPoly::parse(nvars, s)
    }
}
