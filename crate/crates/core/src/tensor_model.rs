//! The quantum `sl_m` representation on the `N`-fold tensor power of the
//! vector representation, split into weight blocks.
//!
//! Basis vectors are words in the letters `1..=m`; the weight of a word is its
//! vector of letter counts. `E_i` turns one letter `i` into `i+1`, so with
//! `alpha_i = (0,..,-1,+1,..,0)` it maps the block of `lambda` into the block
//! of `lambda + alpha_i`. For `m = 2` the block of weight `(k, N-k)` has
//! `sl_2` weight `N - 2k`.
//!
//! Matrix entries come from the coproduct
//! `D(E_i) = E_i (x) K_i + 1 (x) E_i`, `D(F_i) = F_i (x) 1 + K_i^-1 (x) F_i`,
//! with `K_i` acting on a weight block by `q^<lambda, alpha_i>`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::report::Check;
use crate::scalars::{qfact, qint, LaurentScalar};

/// Default cap on the number of basis vectors `m^N`.
type Triple = (usize, usize, LaurentScalar);

pub const DEFAULT_MAX_BASIS: u128 = 1 << 20;

/// A weight written as a composition: entry `a` counts the letters `a+1`.
///
/// Entries may be negative for lattice points outside the model (the kernel
/// calculus needs those to detect words that leave the window).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Number of entries (the `m` of `sl_m`).
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_composition(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `<lambda, alpha_i> = lambda_(i+1) - lambda_i` for the 1-based node `i`.
    pub fn pair(&self, node: usize) -> i64 {
        self.0[node] - self.0[node - 1]
    }

    /// `lambda + r * alpha_i`.
    pub fn add_root(&self, node: usize, r: i64) -> Weight {
        let mut out = self.0.clone();
        out[node - 1] -= r;
        out[node] += r;
        Weight(out)
    }

    /// `s_i(lambda) = lambda - <lambda, alpha_i> alpha_i`, i.e. swap entries
    /// `i` and `i+1`.
    pub fn reflect(&self, node: usize) -> Weight {
        let mut out = self.0.clone();
        out.swap(node - 1, node);
        Weight(out)
    }

    /// The `sl_2` weight `lambda_2 - lambda_1` of a two-entry weight.
    pub fn sl2_value(&self) -> i64 {
        assert_eq!(self.rank(), 2, "sl2 value of a rank-{} weight", self.rank());
        self.pair(1)
    }

    /// The composition `(k, N-k)` of `sl_2` weight `lambda = N - 2k`, if it
    /// exists.
    pub fn from_sl2(n: usize, lambda: i64) -> Option<Weight> {
        let n = n as i64;
        if lambda.abs() > n || (n - lambda) % 2 != 0 {
            return None;
        }
        let k = (n - lambda) / 2;
        Some(Weight(vec![k, n - k]))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `E` raises along `alpha_i`, `F` lowers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    E,
    F,
}

impl Kind {
    /// Sign of the root shift.
    pub fn direction(self) -> i64 {
        match self {
            Kind::E => 1,
            Kind::F => -1,
        }
    }

    pub fn opposite(self) -> Kind {
        match self {
            Kind::E => Kind::F,
            Kind::F => Kind::E,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::E => "E",
            Kind::F => "F",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TensorModel {
    m: usize,
    n: usize,
    basis: Vec<Vec<u8>>,
    weight_of: Vec<Weight>,
    /// Index of each basis vector inside its weight block.
    slot: Vec<usize>,
    blocks: BTreeMap<Weight, Vec<usize>>,
}

impl TensorModel {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_limit(m, n, DEFAULT_MAX_BASIS)
    }

    /// Builds the model with basis in lexicographic order; fails if `m^N`
    /// exceeds `max_basis`.
    pub fn with_limit(m: usize, n: usize, max_basis: u128) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("rank parameter m must be >= 2, got {m}")));
        }
        if n < 1 {
            return Err(Error::InvalidArgument(format!("tensor length N must be >= 1, got {n}")));
        }
        let requested = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if requested > max_basis {
            return Err(Error::Capacity { requested, limit: max_basis });
        }
        let size = requested as usize;
        let mut basis = Vec::with_capacity(size);
        let mut word = vec![0u8; n];
        for _ in 0..size {
            basis.push(word.clone());
            // Increment as a base-m numeral, last position fastest.
            for pos in (0..n).rev() {
                word[pos] += 1;
                if (word[pos] as usize) < m {
                    break;
                }
                word[pos] = 0;
            }
        }
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let mut weight_of = Vec::with_capacity(size);
        let mut slot = Vec::with_capacity(size);
        for (idx, w) in basis.iter().enumerate() {
            let mut counts = vec![0i64; m];
            for &a in w {
                counts[a as usize] += 1;
            }
            let wt = Weight(counts);
            let entry = blocks.entry(wt.clone()).or_default();
            slot.push(entry.len());
            entry.push(idx);
            weight_of.push(wt);
        }
        Ok(Self { m, n, basis, weight_of, slot, blocks })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vector `idx` as letters `1..=m`.
    pub fn basis_word(&self, idx: usize) -> Vec<u8> {
        self.basis[idx].iter().map(|a| a + 1).collect()
    }

    pub fn weight_of(&self, idx: usize) -> &Weight {
        &self.weight_of[idx]
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> + '_ {
        self.blocks.keys()
    }

    pub fn block(&self, w: &Weight) -> Option<&[usize]> {
        self.blocks.get(w).map(Vec::as_slice)
    }

    pub fn block_size(&self, w: &Weight) -> usize {
        self.blocks.get(w).map_or(0, Vec::len)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.blocks.contains_key(w)
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node >= self.m {
            return Err(Error::NodeOutOfRange { node, max: self.m - 1 });
        }
        Ok(())
    }

    /// `E_i` or `F_i` on every block.
    pub fn chevalley(&self, node: usize, kind: Kind) -> Result<Operator> {
        self.check_node(node)?;
        let from = match kind {
            Kind::E => (node - 1) as u8,
            Kind::F => node as u8,
        };
        let to = match kind {
            Kind::E => node as u8,
            Kind::F => (node - 1) as u8,
        };
        // <wt(letter), alpha_i> for a single tensor factor.
        let pair = |a: u8| -> i64 {
            if a as usize == node {
                1
            } else if a as usize == node - 1 {
                -1
            } else {
                0
            }
        };
        let mut triples: BTreeMap<(Weight, Weight), Vec<Triple>> = BTreeMap::new();
        for (idx, word) in self.basis.iter().enumerate() {
            let src = &self.weight_of[idx];
            let tgt = src.add_root(node, kind.direction());
            for pos in 0..word.len() {
                if word[pos] != from {
                    continue;
                }
                let exp: i64 = match kind {
                    Kind::E => word[pos + 1..].iter().map(|&a| pair(a)).sum(),
                    Kind::F => -word[..pos].iter().map(|&a| pair(a)).sum::<i64>(),
                };
                let mut image = word.clone();
                image[pos] = to;
                let target_idx = self.index_of(&image);
                triples.entry((src.clone(), tgt.clone())).or_default().push((
                    self.slot[target_idx],
                    self.slot[idx],
                    LaurentScalar::monomial(1, exp),
                ));
            }
        }
        let mut op = Operator::zero();
        for ((src, tgt), t) in triples {
            let rows = self.block_size(&tgt);
            let cols = self.block_size(&src);
            op.insert(src, tgt, SparseMatrix::from_triples(rows, cols, t));
        }
        Ok(op)
    }

    fn index_of(&self, word: &[u8]) -> usize {
        word.iter().fold(0usize, |acc, &a| acc * self.m + a as usize)
    }

    /// `E_i^(r)` or `F_i^(r)`: the `r`-th power divided exactly by `[r]!`.
    pub fn divided_power(&self, node: usize, kind: Kind, r: u32) -> Result<Operator> {
        let gen = self.chevalley(node, kind)?;
        if r == 0 {
            return Ok(Operator::identity(self));
        }
        let mut power = gen.clone();
        for _ in 1..r {
            power = gen.compose(&power);
        }
        let denom = qfact(r);
        power.div_exact(&denom).ok_or_else(|| {
            Error::Integrity(format!("{kind}_{node}^{r} is not divisible by [{r}]! (coproduct convention defect)"))
        })
    }

    /// The relation checks (a)-(d) on every weight block.
    pub fn relation_suite(&self) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        let base = |extra: &[(&str, i64)]| -> Vec<(String, i64)> {
            let mut p = vec![("m".to_string(), self.m as i64), ("N".to_string(), self.n as i64)];
            p.extend(extra.iter().map(|(k, v)| (k.to_string(), *v)));
            p
        };
        let id = Operator::identity(self);
        for i in 1..self.m {
            let e = self.chevalley(i, Kind::E)?;
            let f = self.chevalley(i, Kind::F)?;

            // (a) X * X^(r) = [r+1] X^(r+1)
            for (kind, gen) in [(Kind::E, &e), (Kind::F, &f)] {
                let mut failure = None;
                let mut current = self.divided_power(i, kind, 0)?;
                for r in 0..=self.n as u32 {
                    let next = self.divided_power(i, kind, r + 1)?;
                    let lhs = gen.compose(&current);
                    let rhs = next.scale(&qint(r as i64 + 1));
                    if let Some(diff) = lhs.first_difference(&rhs) {
                        failure = Some(format!("r={r}: {diff}"));
                        break;
                    }
                    current = next;
                }
                checks.push(Check::new(format!("divided-power merge {kind}"), base(&[("i", i as i64)]), failure));
            }

            // (b) EF - FE = [<lambda, alpha_i>] on each block
            let comm = e.compose(&f).sub(&f.compose(&e));
            let expected = Operator::from_blocks(
                self.weights()
                    .map(|w| (w.clone(), w.clone(), SparseMatrix::scalar(self.block_size(w), &qint(w.pair(i))))),
            );
            checks.push(Check::new("commutator EF-FE", base(&[("i", i as i64)]), comm.first_difference(&expected)));
            let _ = &id;

            for j in 1..self.m {
                if i == j {
                    continue;
                }
                let ej = self.chevalley(j, Kind::E)?;
                let fj = self.chevalley(j, Kind::F)?;
                let params = base(&[("i", i as i64), ("j", j as i64)]);
                if i.abs_diff(j) == 1 {
                    // (c) quantum Serre
                    for (kind, xi, xj) in [(Kind::E, &e, &ej), (Kind::F, &f, &fj)] {
                        let lhs = xi
                            .compose(xi)
                            .compose(xj)
                            .sub(&xi.compose(xj).compose(xi).scale(&qint(2)))
                            .add(&xj.compose(xi).compose(xi));
                        checks.push(Check::new(
                            format!("serre {kind}"),
                            params.clone(),
                            lhs.first_difference(&Operator::zero()),
                        ));
                    }
                } else if i < j {
                    // (d) distant nodes commute
                    for (kind, xi, xj) in [(Kind::E, &e, &ej), (Kind::F, &f, &fj)] {
                        checks.push(Check::new(
                            format!("distant commute {kind}"),
                            params.clone(),
                            xi.compose(xj).first_difference(&xj.compose(xi)),
                        ));
                    }
                }
                // (d) F_j E_i = E_i F_j
                checks.push(Check::new(
                    "cross commute FE",
                    params.clone(),
                    fj.compose(&e).first_difference(&e.compose(&fj)),
                ));
            }
        }
        Ok(checks)
    }
}

/// A linear map assembled from blocks `source weight -> target weight`.
/// Missing blocks are zero; zero blocks are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Operator {
    blocks: BTreeMap<Weight, BTreeMap<Weight, SparseMatrix>>,
}

impl Operator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(model: &TensorModel) -> Self {
        Self::from_blocks(model.weights().map(|w| (w.clone(), w.clone(), SparseMatrix::identity(model.block_size(w)))))
    }

    pub fn from_blocks<I: IntoIterator<Item = (Weight, Weight, SparseMatrix)>>(blocks: I) -> Self {
        let mut op = Self::zero();
        for (s, t, m) in blocks {
            op.accumulate(s, t, m);
        }
        op
    }

    fn insert(&mut self, source: Weight, target: Weight, m: SparseMatrix) {
        if !m.is_zero() {
            self.blocks.entry(source).or_default().insert(target, m);
        }
    }

    fn accumulate(&mut self, source: Weight, target: Weight, m: SparseMatrix) {
        let row = self.blocks.entry(source.clone()).or_default();
        let merged = match row.remove(&target) {
            Some(prev) => prev.add(&m),
            None => m,
        };
        if !merged.is_zero() {
            row.insert(target, merged);
        }
        if row.is_empty() {
            self.blocks.remove(&source);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks as `(source, target, matrix)`, ordered by source then target.
    pub fn blocks(&self) -> impl Iterator<Item = (&Weight, &Weight, &SparseMatrix)> + '_ {
        self.blocks.iter().flat_map(|(s, row)| row.iter().map(move |(t, m)| (s, t, m)))
    }

    pub fn block(&self, source: &Weight, target: &Weight) -> Option<&SparseMatrix> {
        self.blocks.get(source).and_then(|row| row.get(target))
    }

    /// Targets reached from `source`.
    pub fn targets(&self, source: &Weight) -> Vec<&Weight> {
        self.blocks.get(source).map(|row| row.keys().collect()).unwrap_or_default()
    }

    /// `self . rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Operator) -> Operator {
        let mut out = Operator::zero();
        for (s, mid, b) in rhs.blocks() {
            if let Some(row) = self.blocks.get(mid) {
                for (t, a) in row {
                    out.accumulate(s.clone(), t.clone(), a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        for (s, t, m) in rhs.blocks() {
            out.accumulate(s.clone(), t.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Operator) -> Operator {
        self.add(&rhs.scale(&LaurentScalar::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentScalar) -> Operator {
        Operator::from_blocks(self.blocks().map(|(s, t, m)| (s.clone(), t.clone(), m.scale(c))))
    }

    pub fn div_exact(&self, c: &LaurentScalar) -> Option<Operator> {
        let mut out = Operator::zero();
        for (s, t, m) in self.blocks() {
            out.insert(s.clone(), t.clone(), m.div_exact(c)?);
        }
        Some(out)
    }

    /// Restriction to the blocks with the given source weight.
    pub fn restrict(&self, source: &Weight) -> Operator {
        let mut out = Operator::zero();
        if let Some(row) = self.blocks.get(source) {
            for (t, m) in row {
                out.insert(source.clone(), t.clone(), m.clone());
            }
        }
        out
    }

    /// Describes the first block where `self` and `other` differ.
    pub fn first_difference(&self, other: &Operator) -> Option<String> {
        let mut keys: Vec<(&Weight, &Weight)> = self.blocks().map(|(s, t, _)| (s, t)).collect();
        keys.extend(other.blocks().map(|(s, t, _)| (s, t)));
        keys.sort();
        keys.dedup();
        for (s, t) in keys {
            match (self.block(s, t), other.block(s, t)) {
                (Some(a), Some(b)) if a == b => {}
                (a, b) => {
                    let entry = match (a, b) {
                        (Some(a), Some(b)) => a
                            .triples()
                            .map(|(i, j, _)| (i, j))
                            .chain(b.triples().map(|(i, j, _)| (i, j)))
                            .find(|&(i, j)| a.get(i, j) != b.get(i, j))
                            .map(|(i, j)| format!(" at entry ({i},{j}): {} vs {}", a.get(i, j), b.get(i, j)))
                            .unwrap_or_default(),
                        (Some(_), None) => " (expected zero)".to_string(),
                        _ => " (unexpected zero)".to_string(),
                    };
                    return Some(format!("block {s} -> {t}{entry}"));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, t, m) in self.blocks() {
            writeln!(f, "{s} -> {t}: {m:?}")?;
        }
        Ok(())
    }
}
