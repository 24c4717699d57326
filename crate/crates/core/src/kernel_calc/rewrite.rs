//! Normal forms of kernel words with bigraded multiplicities.
//!
//! Rules, with `mu` the local weight where the rewritten pair starts:
//!
//! * `X^(a) X^(b) -> [a+b choose a] X^(a+b)`
//! * `E^(a) F^(b) 1_mu -> sum_j [n choose j] F^(b-j) E^(a-j)` when `n = a - b + mu >= 0`
//! * `F^(b) E^(a) 1_mu -> sum_j [-n choose j] E^(a-j) F^(b-j)` when `n < 0`
//! * `E_i F_j -> F_j E_i` and `E_i E_j -> E_j E_i` (distant, `i > j`) across nodes
//! * `E_i E_j E_i -> E_i^(2) E_j + E_j E_i^(2)` for adjacent nodes, and the same for `F`
//!
//! `n` is the midpoint of the pair's source and target weights, so a whole
//! `sl_2` sum is F-leading when the midpoint is `>= 0` and E-leading otherwise.
//! Quantum binomials enter through `q^e -> g^e h^-e`. Words that pass through
//! a weight outside the window are dropped as soon as they appear.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::word::{sl2_weight, Letter, Window, Word};
use crate::error::{Error, Result};
use crate::report::Check;
use crate::scalars::{decategorify, qbinom, qbinom_or_zero, BiGrade, LaurentScalar};
use crate::tensor_model::{Kind, Operator, TensorModel, Weight};

const STEP_LIMIT: usize = 1_000_000;

/// Normal-form words sharing a source and target, with positive bigraded
/// multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSum {
    source: Weight,
    target: Weight,
    terms: BTreeMap<Word, BiGrade>,
}

impl FormalSum {
    pub fn zero(source: Weight, target: Weight) -> Self {
        Self { source, target, terms: BTreeMap::new() }
    }

    /// `1 * word`, not normalised.
    pub fn from_word(source: Weight, word: Word) -> Self {
        let target = word.target(&source);
        let mut out = Self::zero(source, target);
        out.terms.insert(word, BiGrade::one());
        out
    }

    pub fn identity(source: Weight) -> Self {
        Self::from_word(source, Word::empty())
    }

    pub fn source(&self) -> &Weight {
        &self.source
    }

    pub fn target(&self) -> &Weight {
        &self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BiGrade)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> BiGrade {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, word: Word, mult: &BiGrade) {
        assert_eq!(word.target(&self.source), self.target, "summand {word} has the wrong target");
        if mult.is_zero() {
            return;
        }
        *self.terms.entry(word).or_default() += mult;
    }

    /// Removes `mult` copies of `g^a h^b * word`.
    pub fn remove_monomial(&mut self, word: &Word, g_exp: i64, h_exp: i64, mult: u64) {
        let entry = self.terms.get_mut(word).expect("word present");
        entry.remove(g_exp, h_exp, mult);
        if entry.is_zero() {
            self.terms.remove(word);
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        assert_eq!((&self.source, &self.target), (&other.source, &other.target), "incompatible sums");
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), m);
        }
        out
    }

    pub fn scale(&self, mult: &BiGrade) -> FormalSum {
        let mut out = Self::zero(self.source.clone(), self.target.clone());
        for (w, m) in &self.terms {
            out.add_term(w.clone(), &(m * mult));
        }
        out
    }

    /// `sum_w decategorify(mult_w) [w]` as a formal combination of words.
    pub fn euler_terms(&self) -> BTreeMap<Word, LaurentScalar> {
        self.terms.iter().map(|(w, m)| (w.clone(), decategorify(m))).collect()
    }

    fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut words: Vec<(&Word, &BiGrade)> = self.terms.iter().collect();
        words.sort_by(|(a, _), (b, _)| b.total_power().cmp(&a.total_power()).then_with(|| a.cmp(b)));
        words
            .into_iter()
            .map(|(w, m)| {
                let constant = m.terms().all(|((g, h), _)| g == 0 && h == 0);
                if constant {
                    format!("{}\u{b7}{w}", m.rank())
                } else {
                    format!("\u{27e8}{m}\u{27e9}\u{b7}{w}")
                }
            })
            .collect::<Vec<_>>()
            .join(" \u{2295} ")
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSum[{} -> {}]({})", self.source, self.target, self.render())
    }
}

/// Order in which redexes are rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Redex {
    Merge(usize),
    Commute(usize),
    Swap(usize),
    Serre(usize),
}

fn lift(x: &LaurentScalar) -> BiGrade {
    BiGrade::lift(x).expect("quantum binomials have positive coefficients")
}

/// Weight just before the letter at index `p` acts.
fn weight_before(weights: &[Weight], len: usize, p: usize) -> &Weight {
    &weights[len - 1 - p]
}

fn midpoint(weights: &[Weight], len: usize, p: usize, node: usize) -> i64 {
    let src = weight_before(weights, len, p + 1).pair(node);
    let tgt = weights[len - p].pair(node);
    (src + tgt) / 2
}

fn redexes(word: &Word, source: &Weight) -> Vec<Redex> {
    let ls = word.letters();
    let len = ls.len();
    if len < 2 {
        return Vec::new();
    }
    let weights = word.running_weights(source);
    let mut out = Vec::new();
    for p in 0..len - 1 {
        let (l, r) = (ls[p], ls[p + 1]);
        if l.kind == r.kind {
            if l.node == r.node {
                out.push(Redex::Merge(p));
            } else if l.node.abs_diff(r.node) > 1 && l.node > r.node {
                out.push(Redex::Swap(p));
            } else if p + 2 < len {
                let t = ls[p + 2];
                if l.node.abs_diff(r.node) == 1
                    && t.kind == l.kind
                    && t.node == l.node
                    && l.power == 1
                    && r.power == 1
                    && t.power == 1
                {
                    out.push(Redex::Serre(p));
                }
            }
        } else if l.node != r.node {
            if l.kind == Kind::E {
                out.push(Redex::Swap(p));
            }
        } else {
            let mid = midpoint(&weights, len, p, l.node);
            let wrong = match l.kind {
                Kind::E => mid >= 0,
                Kind::F => mid < 0,
            };
            if wrong {
                out.push(Redex::Commute(p));
            }
        }
    }
    out
}

fn splice(word: &Word, p: usize, width: usize, middle: &[Letter]) -> Word {
    let ls = word.letters();
    let mut out = Vec::with_capacity(ls.len() + middle.len());
    out.extend_from_slice(&ls[..p]);
    out.extend_from_slice(middle);
    out.extend_from_slice(&ls[p + width..]);
    Word::new(out)
}

fn letters(kind: Kind, node: usize, power: u32) -> Option<Letter> {
    (power > 0).then(|| Letter::new(kind, node, power))
}

fn expand(word: &Word, source: &Weight, redex: Redex) -> Vec<(Word, BiGrade)> {
    let ls = word.letters();
    match redex {
        Redex::Merge(p) => {
            let (l, r) = (ls[p], ls[p + 1]);
            let merged = Letter::new(l.kind, l.node, l.power + r.power);
            let coeff = lift(&qbinom((l.power + r.power) as i64, l.power));
            vec![(splice(word, p, 2, &[merged]), coeff)]
        }
        Redex::Swap(p) => vec![(splice(word, p, 2, &[ls[p + 1], ls[p]]), BiGrade::one())],
        Redex::Serre(p) => {
            let (i, j) = (ls[p], ls[p + 1]);
            let i2 = Letter::new(i.kind, i.node, 2);
            vec![(splice(word, p, 3, &[i2, j]), BiGrade::one()), (splice(word, p, 3, &[j, i2]), BiGrade::one())]
        }
        Redex::Commute(p) => {
            let (l, r) = (ls[p], ls[p + 1]);
            let node = l.node;
            let (a, b) = if l.kind == Kind::E { (l.power, r.power) } else { (r.power, l.power) };
            let weights = word.running_weights(source);
            let mu = weight_before(&weights, ls.len(), p + 1).pair(node);
            let n = a as i64 - b as i64 + mu;
            (0..=a.min(b))
                .filter_map(|j| {
                    let (coeff, middle) = if l.kind == Kind::E {
                        let c = qbinom_or_zero(n, j);
                        let m: Vec<Letter> = [letters(Kind::F, node, b - j), letters(Kind::E, node, a - j)]
                            .into_iter()
                            .flatten()
                            .collect();
                        (c, m)
                    } else {
                        let c = qbinom_or_zero(-n, j);
                        let m: Vec<Letter> = [letters(Kind::E, node, a - j), letters(Kind::F, node, b - j)]
                            .into_iter()
                            .flatten()
                            .collect();
                        (c, m)
                    };
                    (!coeff.is_zero()).then(|| (splice(word, p, 2, &middle), lift(&coeff)))
                })
                .collect()
        }
    }
}

fn is_live(word: &Word, source: &Weight, window: &Window) -> bool {
    word.running_weights(source).iter().all(|w| window.contains(w))
}

/// Same-kind runs in which a node repeats cannot be resolved without a
/// global PBW basis.
fn obstruction(word: &Word) -> Option<String> {
    let ls = word.letters();
    let mut start = 0;
    while start < ls.len() {
        let mut end = start + 1;
        while end < ls.len() && ls[end].kind == ls[start].kind {
            end += 1;
        }
        let run = &ls[start..end];
        for (x, a) in run.iter().enumerate() {
            if run[x + 1..].iter().any(|b| b.node == a.node) {
                let text = Word::new(run.to_vec()).render(true);
                let whole = word.render(true);
                let context = if text == whole { String::new() } else { format!(" of {whole}") };
                return Some(format!(
                    "node {} repeats in {text}{context}; only the Serre move E_iE_jE_i is available",
                    a.node
                ));
            }
        }
        start = end;
    }
    None
}

fn check_word(source: &Weight, word: &Word, window: &Window) -> Result<()> {
    if source.rank() < 2 {
        return Err(Error::InvalidArgument(format!("weight {source} has no nodes")));
    }
    let max = source.rank() - 1;
    if let Some(l) = word.letters().iter().find(|l| l.node > max) {
        return Err(Error::NodeOutOfRange { node: l.node, max });
    }
    window.validate(source)
}

/// Normal form with the leftmost-first strategy.
pub fn normal_form(source: &Weight, word: &Word, window: &Window) -> Result<FormalSum> {
    normal_form_with(source, word, window, Strategy::Leftmost)
}

pub fn normal_form_with(source: &Weight, word: &Word, window: &Window, strategy: Strategy) -> Result<FormalSum> {
    check_word(source, word, window)?;
    normalize_with(&FormalSum::from_word(source.clone(), word.clone()), window, strategy)
}

/// Normal form of every summand, multiplicities combined.
pub fn normalize(sum: &FormalSum, window: &Window) -> Result<FormalSum> {
    normalize_with(sum, window, Strategy::Leftmost)
}

pub fn normalize_with(sum: &FormalSum, window: &Window, strategy: Strategy) -> Result<FormalSum> {
    let source = sum.source().clone();
    for (w, _) in sum.terms() {
        check_word(&source, w, window)?;
    }
    if sum.is_zero() {
        window.validate(&source)?;
    }
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::Leftmost => None,
    };
    let mut pending: BTreeMap<Word, BiGrade> = BTreeMap::new();
    for (w, m) in sum.terms() {
        if is_live(w, &source, window) {
            *pending.entry(w.clone()).or_default() += m;
        }
    }
    let mut done = FormalSum::zero(source.clone(), sum.target().clone());
    let mut steps = 0;
    while !pending.is_empty() {
        steps += 1;
        if steps > STEP_LIMIT {
            return Err(Error::UnsupportedRewrite(format!("rewriting did not terminate within {STEP_LIMIT} steps")));
        }
        let key = match rng.as_mut() {
            Some(r) => {
                let idx = r.random_range(0..pending.len());
                pending.keys().nth(idx).cloned().expect("index in range")
            }
            None => pending.keys().next().cloned().expect("nonempty"),
        };
        let mult = pending.remove(&key).expect("present");
        let found = redexes(&key, &source);
        if found.is_empty() {
            if let Some(why) = obstruction(&key) {
                return Err(Error::UnsupportedRewrite(why));
            }
            done.add_term(key, &mult);
            continue;
        }
        let redex = match rng.as_mut() {
            Some(r) => found[r.random_range(0..found.len())],
            None => found[0],
        };
        for (w, c) in expand(&key, &source, redex) {
            if is_live(&w, &source, window) {
                *pending.entry(w).or_default() += &(&c * &mult);
            }
        }
    }
    Ok(done)
}

/// The window matching a model's nonzero weights.
pub fn model_window(model: &TensorModel) -> Window {
    if model.m() == 2 {
        Window::symmetric(model.n() as i64)
    } else {
        Window::Compositions
    }
}

/// Matrices of words in a fixed model, with divided powers cached.
pub struct Decategorifier<'a> {
    model: &'a TensorModel,
    cache: BTreeMap<Letter, Operator>,
}

impl<'a> Decategorifier<'a> {
    pub fn new(model: &'a TensorModel) -> Self {
        Self { model, cache: BTreeMap::new() }
    }

    pub fn model(&self) -> &TensorModel {
        self.model
    }

    /// The model block a word source refers to.
    pub fn block_weight(&self, source: &Weight) -> Result<Weight> {
        let model = self.model;
        let candidate = if source.rank() == 2 && model.m() == 2 && !model.contains(source) {
            Weight::from_sl2(model.n(), source.sl2_value())
        } else {
            Some(source.clone())
        };
        match candidate {
            Some(w) if model.contains(&w) => Ok(w),
            _ => Err(Error::WeightMismatch(format!(
                "weight {source} is not a weight of the m={} N={} model",
                model.m(),
                model.n()
            ))),
        }
    }

    fn letter(&mut self, l: Letter) -> Result<&Operator> {
        if !self.cache.contains_key(&l) {
            let op = self.model.divided_power(l.node, l.kind, l.power)?;
            self.cache.insert(l, op);
        }
        Ok(&self.cache[&l])
    }

    pub fn word(&mut self, source: &Weight, word: &Word) -> Result<Operator> {
        let block = self.block_weight(source)?;
        let mut op = Operator::identity(self.model).restrict(&block);
        for &l in word.letters().iter().rev() {
            op = self.letter(l)?.compose(&op);
        }
        Ok(op)
    }

    pub fn sum(&mut self, sum: &FormalSum) -> Result<Operator> {
        let mut out = Operator::zero();
        self.block_weight(sum.source())?;
        for (w, m) in sum.terms() {
            out = out.add(&self.word(sum.source(), w)?.scale(&decategorify(m)));
        }
        Ok(out)
    }
}

pub fn decategorify_word(source: &Weight, word: &Word, model: &TensorModel) -> Result<Operator> {
    Decategorifier::new(model).word(source, word)
}

pub fn decategorify_sum(sum: &FormalSum, model: &TensorModel) -> Result<Operator> {
    Decategorifier::new(model).sum(sum)
}

/// A random single-node word with divided powers up to `max_power`.
pub fn random_sl2_word<R: Rng>(rng: &mut R, max_len: usize, max_power: u32) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| {
                let kind = if rng.random_range(0..2) == 0 { Kind::E } else { Kind::F };
                Letter::new(kind, 1, rng.random_range(1..=max_power))
            })
            .collect(),
    )
}

/// Seeded random words checked against direct matrix products, plus a
/// randomized rewrite order checked against the leftmost one.
pub fn oracle_suite(samples: usize, max_len: usize, max_n: usize, seed: u64) -> Result<Vec<Check>> {
    if max_n < 1 {
        return Err(Error::InvalidArgument("oracle suite needs N >= 1".into()));
    }
    let models: Vec<TensorModel> = (1..=max_n).map(|n| TensorModel::new(2, n)).collect::<Result<_>>()?;
    let mut decats: Vec<Decategorifier> = models.iter().map(Decategorifier::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle_fail = None;
    let mut confluence_fail = None;
    for sample in 0..samples {
        let n = rng.random_range(1..=max_n);
        let lambda = n as i64 - 2 * rng.random_range(0..=n) as i64;
        let word = random_sl2_word(&mut rng, max_len, 2);
        let source = sl2_weight(lambda);
        let window = Window::symmetric(n as i64);
        let nf = normal_form(&source, &word, &window)?;
        let d = &mut decats[n - 1];
        let lhs = d.sum(&nf)?;
        let rhs = d.word(&source, &word)?;
        if oracle_fail.is_none() {
            if let Some(diff) = lhs.first_difference(&rhs) {
                oracle_fail = Some(format!("sample {sample}: {word} at {lambda}, N={n}: {diff}"));
            }
        }
        let other = normal_form_with(&source, &word, &window, Strategy::Random(seed ^ sample as u64))?;
        if confluence_fail.is_none() && other != nf {
            confluence_fail = Some(format!("sample {sample}: {word} at {lambda}: {nf} vs {other}"));
        }
    }
    let params = [("samples", samples as i64), ("len", max_len as i64), ("N", max_n as i64), ("seed", seed as i64)];
    Ok(vec![
        Check::new("rewrite oracle", params, oracle_fail),
        Check::new("rewrite confluence", params, confluence_fail),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::p_graded_dim;

    fn nf(word: &str, lambda: i64, window: &Window) -> FormalSum {
        normal_form(&sl2_weight(lambda), &Word::parse(word).unwrap(), window).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn merge_rule() {
        let out = nf("E E", 0, &Window::Unbounded);
        assert_eq!(out.len(), 1);
        assert_eq!(out.coeff(&w("E^(2)")), p_graded_dim(1).unwrap());
        assert_eq!(out.to_string(), "\u{27e8}g h^-1 + g^-1 h\u{27e9}\u{b7}E^(2)");
        let out = nf("E E E", 3, &Window::Unbounded);
        let expected = BiGrade::lift(&crate::scalars::qfact(3)).unwrap();
        assert_eq!(out.coeff(&w("E^(3)")), expected);
    }

    #[test]
    fn weight_zero_commutation() {
        // The midpoint is zero, so E F and F E agree and F leads.
        let window = Window::parse("{-2,0,2}").unwrap();
        let out = nf("F1 E1", 0, &window);
        assert_eq!(out.to_string(), "1\u{b7}F^(1)E^(1)");
        let out = nf("E1 F1", 0, &window);
        assert_eq!(out.to_string(), "1\u{b7}F^(1)E^(1)");
    }

    #[test]
    fn commutation_at_weight_two() {
        // E F 1_2 = F E 1_2 + [2] 1_2, the identity weighted by H*(P^1).
        let out = nf("E F", 2, &Window::Unbounded);
        assert_eq!(out.coeff(&w("F E")), BiGrade::one());
        assert_eq!(out.coeff(&Word::empty()), p_graded_dim(1).unwrap());
        assert_eq!(out.len(), 2);
        assert_eq!(out.to_string(), "1\u{b7}F^(1)E^(1) \u{2295} \u{27e8}g h^-1 + g^-1 h\u{27e9}\u{b7}id");
        // Negative side: F E 1_-2 = E F 1_-2 + [2] 1_-2.
        let out = nf("F E", -2, &Window::Unbounded);
        assert_eq!(out.coeff(&w("E F")), BiGrade::one());
        assert_eq!(out.coeff(&Word::empty()), p_graded_dim(1).unwrap());
    }

    #[test]
    fn dead_words() {
        let window = Window::symmetric(2);
        assert!(nf("E E", 0, &window).is_zero());
        assert!(nf("E^(2)", 0, &window).is_zero());
        // E F at 2 passes through 0 only; F E through 4, which is dead.
        let out = nf("E F", 2, &window);
        assert_eq!(out.coeff(&Word::empty()), p_graded_dim(1).unwrap());
        assert_eq!(out.len(), 1);
        assert!(nf("id", 4, &window).is_zero());
    }

    #[test]
    fn window_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let word = random_sl2_word(&mut rng, 5, 2);
            let lambda = 2 * rng.random_range(-2i64..=2);
            let small = nf(&word.to_string(), lambda, &Window::symmetric(4));
            let large = nf(&word.to_string(), lambda, &Window::symmetric(8));
            for (x, m) in small.terms() {
                let big = large.coeff(x);
                for ((g, h), c) in m.terms() {
                    assert!(big.coeff(g, h) >= c, "{word} at {lambda}");
                }
            }
        }
    }

    #[test]
    fn asymmetric_window_rejected() {
        let err = normal_form(&sl2_weight(0), &w("E"), &Window::Interval(-2, 4)).unwrap_err();
        assert!(matches!(err, Error::UnsupportedRewrite(_)));
    }

    /// All words of length <= 4 over E, F, E^(2), F^(2).
    fn short_words() -> Vec<Word> {
        let alphabet = [Letter::e(1), Letter::f(1), Letter::e(2), Letter::f(2)];
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for wd in &frontier {
                for l in alphabet {
                    next.push(wd.concat(&Word::new(vec![l])));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn oracle_on_all_short_words() {
        let words = short_words();
        assert_eq!(words.len(), 1 + 4 + 16 + 64 + 256);
        for n in 1..=5 {
            let model = TensorModel::new(2, n).unwrap();
            let window = model_window(&model);
            let mut d = Decategorifier::new(&model);
            for k in 0..=n {
                let source = sl2_weight(n as i64 - 2 * k as i64);
                for word in &words {
                    let sum = normal_form(&source, word, &window).unwrap();
                    assert_eq!(d.sum(&sum).unwrap(), d.word(&source, word).unwrap(), "{word} at {source:?}, N={n}");
                }
            }
        }
    }

    #[test]
    fn unbounded_window_agrees_with_model() {
        let model = TensorModel::new(2, 3).unwrap();
        let mut d = Decategorifier::new(&model);
        for word in short_words().iter().filter(|x| x.len() <= 3) {
            let source = sl2_weight(1);
            let sum = normal_form(&source, word, &Window::Unbounded).unwrap();
            assert_eq!(d.sum(&sum).unwrap(), d.word(&source, word).unwrap(), "{word}");
        }
    }

    #[test]
    fn strategies_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..500 {
            let word = random_sl2_word(&mut rng, 6, 3);
            let lambda = rng.random_range(-5i64..=5);
            let window = if i % 2 == 0 { Window::Unbounded } else { Window::symmetric(5) };
            let a = normal_form(&sl2_weight(lambda), &word, &window).unwrap();
            let b = normal_form_with(&sl2_weight(lambda), &word, &window, Strategy::Random(i)).unwrap();
            assert_eq!(a, b, "{word} at {lambda}");
        }
    }

    #[test]
    fn oracle_suite_passes() {
        for c in oracle_suite(200, 6, 5, 3).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn decategorify_basics() {
        let model = TensorModel::new(2, 3).unwrap();
        let id = decategorify_word(&sl2_weight(1), &Word::empty(), &model).unwrap();
        let block = Weight::new(vec![1, 2]);
        assert_eq!(id, Operator::identity(&model).restrict(&block));
        assert!(decategorify_word(&sl2_weight(1), &w("E E E"), &model).unwrap().is_zero());
        assert!(matches!(decategorify_word(&sl2_weight(0), &w("E"), &model), Err(Error::WeightMismatch(_))));
        assert!(decategorify_word(&Weight::new(vec![1, 2]), &w("E"), &model).is_ok());
    }

    #[test]
    fn multi_node_moves() {
        let src = Weight::new(vec![2, 2, 2]);
        let window = Window::Compositions;
        let out = normal_form(&src, &w("E1 E2 E1"), &window).unwrap();
        assert_eq!(out.to_string(), "1\u{b7}E1^(2)E2^(1) \u{2295} 1\u{b7}E2^(1)E1^(2)");
        let out = normal_form(&src, &w("E1 F2"), &window).unwrap();
        assert_eq!(out.to_string(), "1\u{b7}F2^(1)E1^(1)");
        let src = Weight::new(vec![1, 1, 1, 1]);
        let out = normal_form(&src, &w("E3 E1"), &window).unwrap();
        assert_eq!(out.to_string(), "1\u{b7}E1^(1)E3^(1)");
        let err = normal_form(&Weight::new(vec![3, 3, 3]), &w("E1 E2^(2) E1"), &window).unwrap_err();
        match err {
            Error::UnsupportedRewrite(msg) => assert!(msg.contains("node 1"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            normal_form(&Weight::new(vec![1, 1, 1]), &w("E3"), &window),
            Err(Error::NodeOutOfRange { node: 3, max: 2 })
        ));
    }

    #[test]
    fn multi_node_oracle() {
        let model = TensorModel::new(3, 3).unwrap();
        let mut d = Decategorifier::new(&model);
        let window = model_window(&model);
        let words = ["E1 E2 E1", "F1 F2 F1", "E1 F2", "F2 E1", "E1 F1", "F1 E1 E2", "E2 F1 E1", "E1 E1 F2"];
        for text in words {
            for src in model.weights() {
                let word = w(text);
                let sum = normal_form(src, &word, &window).unwrap();
                assert_eq!(d.sum(&sum).unwrap(), d.word(src, &word).unwrap(), "{text} at {src}");
            }
        }
    }
}
