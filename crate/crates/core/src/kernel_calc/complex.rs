//! Term content of complexes of kernels: Rickard complexes, their
//! compositions, and twist powers. Differentials are not modelled; a shape
//! records which summands sit in which homological position.

use std::collections::BTreeMap;
use std::fmt;

use super::rewrite::{normal_form, normalize, Decategorifier, FormalSum};
use super::word::{sl2_weight, Letter, Window, Word};
use crate::error::{Error, Result};
use crate::report::Check;
use crate::scalars::{p_graded_dim, qint, BiGrade, LaurentScalar};
use crate::tensor_model::{Operator, TensorModel, Weight};

#[derive(Clone, PartialEq, Eq)]
pub struct ComplexShape {
    source: Weight,
    target: Weight,
    window: Window,
    terms: BTreeMap<i64, FormalSum>,
}

impl ComplexShape {
    pub fn empty(source: Weight, target: Weight, window: Window) -> Self {
        Self { source, target, window, terms: BTreeMap::new() }
    }

    pub fn identity(source: Weight, window: Window) -> Result<Self> {
        window.validate(&source)?;
        let mut out = Self::empty(source.clone(), source.clone(), window);
        let id = normalize(&FormalSum::identity(source), &out.window)?;
        out.insert(0, id);
        Ok(out)
    }

    /// Adds a summand at `position`; zero sums are ignored.
    pub fn insert(&mut self, position: i64, sum: FormalSum) {
        assert_eq!((sum.source(), sum.target()), (&self.source, &self.target), "term has the wrong weights");
        if sum.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&position) {
            Some(prev) => prev.add(&sum),
            None => sum,
        };
        self.terms.insert(position, merged);
    }

    pub fn source(&self) -> &Weight {
        &self.source
    }

    pub fn target(&self) -> &Weight {
        &self.target
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FormalSum)> + '_ {
        self.terms.iter().map(|(p, s)| (*p, s))
    }

    pub fn term(&self, position: i64) -> Option<&FormalSum> {
        self.terms.get(&position)
    }

    pub fn positions(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Number of monomial summands, counted with multiplicity.
    pub fn summand_count(&self) -> u64 {
        self.terms.values().flat_map(|s| s.terms().map(|(_, m)| m.rank())).sum()
    }

    /// `sum_p (-1)^p [term_p]` as a formal combination of words.
    pub fn euler_terms(&self) -> BTreeMap<Word, LaurentScalar> {
        let mut out: BTreeMap<Word, LaurentScalar> = BTreeMap::new();
        for (p, sum) in &self.terms {
            for (w, c) in sum.euler_terms() {
                let c = if p.rem_euclid(2) == 0 { c } else { -c };
                *out.entry(w).or_default() += &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The Euler class as an operator on the model.
    pub fn euler_class(&self, model: &TensorModel) -> Result<Operator> {
        let mut d = Decategorifier::new(model);
        let mut out = Operator::zero();
        for (p, sum) in &self.terms {
            let op = d.sum(sum)?;
            out = if p.rem_euclid(2) == 0 { out.add(&op) } else { out.sub(&op) };
        }
        Ok(out)
    }

    fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(|(p, s)| format!("[{p}] {s}")).collect::<Vec<_>>().join("\n")
    }
}

impl fmt::Display for ComplexShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ComplexShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexShape[{} -> {}, {}]\n{}", self.source, self.target, self.window, self.render())
    }
}

fn word(letters: &[(Letter, u32)]) -> Word {
    Word::new(letters.iter().filter(|(_, p)| *p > 0).map(|(l, p)| Letter::new(l.kind, l.node, *p)).collect())
}

fn bounded(window: &Window, lambda: i64, upper: bool) -> Result<i64> {
    let bound = if upper { window.upper() } else { window.lower() };
    bound.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "the Rickard complex at weight {lambda} needs a window bounded {}",
            if upper { "above" } else { "below" }
        ))
    })
}

/// `Theta_s = F^(lambda+s) E^(s) [-s]{s}` at position `-s`; for
/// `lambda < 0` the mirror `E^(-lambda+s) F^(s)`.
pub fn rickard_complex(lambda: i64, window: &Window) -> Result<ComplexShape> {
    let source = sl2_weight(lambda);
    window.validate(&source)?;
    let mut out = ComplexShape::empty(source.clone(), sl2_weight(-lambda), window.clone());
    let a = lambda.unsigned_abs() as u32;
    let limit = if lambda >= 0 { bounded(window, lambda, true)? } else { -bounded(window, lambda, false)? };
    let mut s = 0u32;
    while a as i64 + 2 * s as i64 <= limit {
        let w = if lambda >= 0 {
            word(&[(Letter::f(1), a + s), (Letter::e(1), s)])
        } else {
            word(&[(Letter::e(1), a + s), (Letter::f(1), s)])
        };
        let sum = normal_form(&source, &w, window)?.scale(&BiGrade::monomial(s as i64, -(s as i64)));
        out.insert(-(s as i64), sum);
        s += 1;
    }
    Ok(out)
}

/// The left adjoint complex: `F^(s) E^(lambda+s) [s]{-s}` at position `s`,
/// from weight `-lambda` to `lambda` (mirrored for `lambda < 0`).
pub fn inverse_rickard_complex(lambda: i64, window: &Window) -> Result<ComplexShape> {
    let source = sl2_weight(-lambda);
    window.validate(&source)?;
    let mut out = ComplexShape::empty(source.clone(), sl2_weight(lambda), window.clone());
    let a = lambda.unsigned_abs() as u32;
    let limit = if lambda >= 0 { bounded(window, lambda, true)? } else { -bounded(window, lambda, false)? };
    let mut s = 0u32;
    while a as i64 + 2 * s as i64 <= limit {
        let w = if lambda >= 0 {
            word(&[(Letter::f(1), s), (Letter::e(1), a + s)])
        } else {
            word(&[(Letter::e(1), s), (Letter::f(1), a + s)])
        };
        let sum = normal_form(&source, &w, window)?.scale(&BiGrade::monomial(-(s as i64), s as i64));
        out.insert(s as i64, sum);
        s += 1;
    }
    Ok(out)
}

/// Positions paired for cancellation, nearest to zero first.
fn adjacent_pairs(shape: &ComplexShape) -> Vec<(i64, i64)> {
    let mut pairs: Vec<(i64, i64)> =
        shape.terms.keys().filter(|p| shape.terms.contains_key(&(**p + 1))).map(|&p| (p, p + 1)).collect();
    pairs.sort_by_key(|&(p, q)| (p.abs().min(q.abs()), p));
    pairs
}

/// Cancels identical monomial summands in adjacent positions until none
/// remain.
pub fn cancel(shape: &ComplexShape) -> ComplexShape {
    let mut out = shape.clone();
    loop {
        let mut changed = false;
        for (p, q) in adjacent_pairs(&out) {
            let (Some(a), Some(b)) = (out.terms.get(&p), out.terms.get(&q)) else {
                continue;
            };
            let mut matches = Vec::new();
            for (w, m) in a.terms() {
                let other = b.coeff(w);
                for ((g, h), c) in m.terms() {
                    let k = c.min(other.coeff(g, h));
                    if k > 0 {
                        matches.push((w.clone(), g, h, k));
                    }
                }
            }
            if matches.is_empty() {
                continue;
            }
            changed = true;
            for (w, g, h, k) in matches {
                for pos in [p, q] {
                    let sum = out.terms.get_mut(&pos).expect("position present");
                    sum.remove_monomial(&w, g, h, k);
                    if sum.is_zero() {
                        out.terms.remove(&pos);
                    }
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Termwise product `A o B` (B acts first), normal-formed, then cancelled.
pub fn compose_and_cancel(a: &ComplexShape, b: &ComplexShape) -> Result<ComplexShape> {
    if b.target != a.source {
        return Err(Error::WeightMismatch(format!(
            "cannot compose: target {} differs from source {}",
            b.target, a.source
        )));
    }
    if a.window != b.window {
        return Err(Error::InvalidArgument(format!("windows differ: {} vs {}", a.window, b.window)));
    }
    let window = &a.window;
    let mut product = ComplexShape::empty(b.source.clone(), a.target.clone(), window.clone());
    for (pa, sa) in &a.terms {
        for (pb, sb) in &b.terms {
            let mut raw = FormalSum::zero(b.source.clone(), a.target.clone());
            for (wa, ma) in sa.terms() {
                for (wb, mb) in sb.terms() {
                    raw.add_term(wa.concat(wb), &(ma * mb));
                }
            }
            product.insert(pa + pb, normalize(&raw, window)?);
        }
    }
    let reduced = cancel(&product);
    if reduced.euler_terms() != product.euler_terms() {
        return Err(Error::Integrity("cancellation changed the Euler class".into()));
    }
    Ok(reduced)
}

fn twist_window(n: u32) -> Window {
    Window::symmetric(n as i64 + 1)
}

fn check_twist_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("twist parameter n must be >= 1".into()));
    }
    Ok(())
}

/// `T(-n+1) o T(n-1)` at weight `n-1` in the window `{|lambda| <= n+1}`.
pub fn pn_twist_composition(n: u32) -> Result<ComplexShape> {
    check_twist_n(n)?;
    let window = twist_window(n);
    let lam = n as i64 - 1;
    compose_and_cancel(&rickard_complex(-lam, &window)?, &rickard_complex(lam, &window)?)
}

/// One step of the inverse twist: `T(n-1)^-1 o T(-n+1)^-1` at weight `n-1`.
pub fn inverse_twist_step(n: u32) -> Result<ComplexShape> {
    check_twist_n(n)?;
    let window = twist_window(n);
    let lam = n as i64 - 1;
    compose_and_cancel(&inverse_rickard_complex(lam, &window)?, &inverse_rickard_complex(-lam, &window)?)
}

fn fe() -> Word {
    Word::new(vec![Letter::f(1), Letter::e(1)])
}

/// `id` at 0, then `F E` with shift `(2j-1)(n+1) -+ 1` at positions
/// `2j-1, 2j` for `j = 1..ell`; the grade of shift `d` is `g^-d h^d`.
pub fn negative_twist_closed_form(ell: u32, n: u32) -> Result<ComplexShape> {
    check_twist_n(n)?;
    let window = twist_window(n);
    let source = sl2_weight(n as i64 - 1);
    let mut out = ComplexShape::identity(source.clone(), window)?;
    for j in 1..=ell as i64 {
        let centre = (2 * j - 1) * (n as i64 + 1);
        for (pos, shift) in [(2 * j - 1, centre - 1), (2 * j, centre + 1)] {
            let sum = FormalSum::from_word(source.clone(), fe()).scale(&BiGrade::monomial(-shift, shift));
            out.insert(pos, sum);
        }
    }
    Ok(out)
}

/// `T^-2ell` by iterated composition, checked against the closed form.
pub fn negative_twist_power(ell: u32, n: u32) -> Result<ComplexShape> {
    if ell < 1 {
        return Err(Error::InvalidArgument("twist power ell must be >= 1".into()));
    }
    let step = inverse_twist_step(n)?;
    let mut acc = step.clone();
    for _ in 1..ell {
        acc = compose_and_cancel(&acc, &step)?;
    }
    let closed = negative_twist_closed_form(ell, n)?;
    if acc != closed {
        return Err(Error::Integrity(format!(
            "iterated T^-{} for n={n} disagrees with the closed form:\n{acc}\nvs\n{closed}",
            2 * ell
        )));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStability {
    pub degree: i64,
    /// Smallest `ell` from which the term is constant up to `ell_max`.
    pub stable_from: u32,
    pub term: String,
}

/// Stabilization of `T^-2ell` in each degree `0..=max_degree` over
/// `ell = 1..=ell_max`. A degree passes when its term is already constant
/// before `ell_max`. `max_degree` defaults to `2(ell_max - 1)`.
pub fn stabilization_check(
    n: u32,
    ell_max: u32,
    max_degree: Option<i64>,
) -> Result<(Vec<DegreeStability>, Vec<Check>)> {
    if ell_max < 2 {
        return Err(Error::InvalidArgument("stabilization needs ell_max >= 2".into()));
    }
    let max_degree = max_degree.unwrap_or(2 * (ell_max as i64 - 1));
    let shapes: Vec<ComplexShape> = (1..=ell_max).map(|l| negative_twist_power(l, n)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for d in 0..=max_degree {
        let at = |l: usize| shapes[l].term(d).map(|s| s.to_string()).unwrap_or_else(|| "0".into());
        let last = at(shapes.len() - 1);
        let mut stable_from = ell_max;
        while stable_from > 1 && at(stable_from as usize - 2) == last {
            stable_from -= 1;
        }
        let failure = (stable_from >= ell_max).then(|| format!("degree {d} still changing at ell={ell_max}: {last}"));
        checks.push(Check::new(
            "twist stabilization",
            [("n", n as i64), ("ell_max", ell_max as i64), ("d", d), ("stable_from", stable_from as i64)],
            failure,
        ));
        rows.push(DegreeStability { degree: d, stable_from, term: last });
    }
    Ok((rows, checks))
}

/// `E^(N-2) F^(N-2)` at weight `N-2` equals `id + [N-2] F E`, both in the
/// rewrite engine and as matrices on `(C^2)^N`.
pub fn ef_expansion_check(n: usize) -> Result<Vec<Check>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("EF expansion check needs N >= 2, got {n}")));
    }
    let model = TensorModel::new(2, n)?;
    let window = Window::symmetric(n as i64);
    let lam = n as i64 - 2;
    let source = sl2_weight(lam);
    let a = (n - 2) as u32;
    let w = word(&[(Letter::e(1), a), (Letter::f(1), a)]);
    let got = normal_form(&source, &w, &window)?;
    let mut expected = FormalSum::identity(source.clone());
    expected.add_term(fe(), &p_graded_dim(lam - 1)?);
    let params = [("N", n as i64), ("lambda", lam)];
    let rewrite_fail = (got != expected).then(|| format!("got {got}, expected {expected}"));

    let mut d = Decategorifier::new(&model);
    let lhs = d.word(&source, &w)?;
    let block = d.block_weight(&source)?;
    let id = Operator::identity(&model).restrict(&block);
    let rhs = id.add(&d.word(&source, &fe())?.scale(&qint(lam)));
    Ok(vec![
        Check::new("EF expansion rewrite", params, rewrite_fail),
        Check::new("EF expansion matrix", params, lhs.first_difference(&rhs)),
    ])
}

/// Abstract summands of a twist: the identity and the counit source `P P_R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AbstractTerm {
    Id,
    PPR,
}

impl fmt::Display for AbstractTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbstractTerm::Id => "id",
            AbstractTerm::PPR => "P\u{b7}P_R",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractShape {
    /// `(position, term, grade)`, ascending positions.
    pub terms: Vec<(i64, AbstractTerm, BiGrade)>,
}

impl AbstractShape {
    /// `Cone(P P_R -> id)`.
    pub fn spherical() -> Self {
        Self { terms: vec![(-1, AbstractTerm::PPR, BiGrade::one()), (0, AbstractTerm::Id, BiGrade::one())] }
    }

    /// `(P P_R)[-2] -> P P_R -> id`.
    pub fn projective() -> Self {
        Self {
            terms: vec![
                (-2, AbstractTerm::PPR, BiGrade::monomial(2, -2)),
                (-1, AbstractTerm::PPR, BiGrade::one()),
                (0, AbstractTerm::Id, BiGrade::one()),
            ],
        }
    }

    /// Realises `P = F(n-1)`, so `P P_R = g^n h^-n F E` at weight `n-1` in
    /// the window `{|lambda| <= n+1}`.
    pub fn instantiate(&self, n: u32) -> Result<ComplexShape> {
        check_twist_n(n)?;
        let window = twist_window(n);
        let source = sl2_weight(n as i64 - 1);
        window.validate(&source)?;
        let mut out = ComplexShape::empty(source.clone(), source.clone(), window.clone());
        for (pos, term, grade) in &self.terms {
            let sum = match term {
                AbstractTerm::Id => FormalSum::identity(source.clone()).scale(grade),
                AbstractTerm::PPR => FormalSum::from_word(source.clone(), fe())
                    .scale(&(grade * &BiGrade::monomial(n as i64, -(n as i64)))),
            };
            out.insert(*pos, normalize(&sum, &window)?);
        }
        Ok(out)
    }
}

impl fmt::Display for AbstractShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(
                |(p, t, g)| {
                    if g.is_one() {
                        format!("[{p}] {t}")
                    } else {
                        format!("[{p}] \u{27e8}{g}\u{27e9}\u{b7}{t}")
                    }
                },
            )
            .collect();
        f.write_str(&parts.join("\n"))
    }
}

/// The `P^n` shape, or the spherical one for `spherical = true`.
pub fn pn_twist_shape(spherical: bool) -> AbstractShape {
    if spherical {
        AbstractShape::spherical()
    } else {
        AbstractShape::projective()
    }
}
