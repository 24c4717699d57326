//! Batch verification: named suites over parameter grids, with
//! deterministic JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel_calc::{
    ef_expansion_check, negative_twist_closed_form, negative_twist_power, normal_form, oracle_suite, parse_weight,
    pn_twist_composition, stabilization_check, AbstractShape, Window, Word,
};
use crate::nilhecke::nil_hecke_suite;
use crate::reflection::{braid_suite, invertibility_check, reflection_operator};
use crate::report::Check;
use crate::strata::{binomial, component_table, equidimensionality_identity, fixed_point_count};
use crate::tensor_model::{Kind, TensorModel, Weight, DEFAULT_MAX_BASIS};

pub const SUITES: [&str; 7] = ["tensor", "braid", "nilhecke", "kernel-oracle", "twists", "strata", "all"];

pub const DEFAULT_SEED: u64 = 20111;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_pass() { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    fn from_check(c: &Check, elapsed_ms: Option<u64>) -> Self {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        Self {
            name: format!("{} [{}]", c.relation, params.join(",")),
            status: Status::from_bool(c.passed),
            detail: c.counterexample.clone().unwrap_or_else(|| "ok".into()),
            elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, i64>,
    pub checks: Vec<CheckRecord>,
    pub status: Status,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> + '_ {
        self.checks.iter().filter(|c| !c.status.is_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report: {e}")))
    }

    pub fn to_table(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("suite {} ({})\n", self.suite, params.join(", "));
        for c in &self.checks {
            out.push_str(&format!("{} {}", c.status, c.name));
            if !c.status.is_pass() {
                out.push_str(&format!(": {}", c.detail));
            }
            if let Some(ms) = c.elapsed_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!("{}: {} checks, {} failed\n", self.status, self.checks.len(), failed));
        out
    }
}

/// Suite parameters. Unset values fall back to per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub m: Option<usize>,
    pub n_big: Option<usize>,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub ell: Option<u32>,
    pub deg: Option<u32>,
    pub seed: Option<u64>,
    pub max_basis: Option<u128>,
    pub timings: bool,
}

impl Params {
    /// Fills unset values from `other`.
    pub fn or(self, other: &Params) -> Params {
        Params {
            m: self.m.or(other.m),
            n_big: self.n_big.or(other.n_big),
            k: self.k.or(other.k),
            n: self.n.or(other.n),
            ell: self.ell.or(other.ell),
            deg: self.deg.or(other.deg),
            seed: self.seed.or(other.seed),
            max_basis: self.max_basis.or(other.max_basis),
            timings: self.timings || other.timings,
        }
    }

    /// Reads `key = value` lines; `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Params> {
        let mut p = Params::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("config line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || Error::InvalidArgument(format!("config line {}: bad value '{value}' for {key}", lineno + 1));
            match key {
                "m" => p.m = Some(value.parse().map_err(|_| bad())?),
                "N" => p.n_big = Some(value.parse().map_err(|_| bad())?),
                "k" => p.k = Some(value.parse().map_err(|_| bad())?),
                "n" => p.n = Some(value.parse().map_err(|_| bad())?),
                "ell" => p.ell = Some(value.parse().map_err(|_| bad())?),
                "deg" => p.deg = Some(value.parse().map_err(|_| bad())?),
                "seed" => p.seed = Some(value.parse().map_err(|_| bad())?),
                "max-basis" | "max_basis" => p.max_basis = Some(value.parse().map_err(|_| bad())?),
                "timings" => p.timings = value.parse().map_err(|_| bad())?,
                _ => return Err(Error::InvalidArgument(format!("config line {}: unknown key '{key}'", lineno + 1))),
            }
        }
        Ok(p)
    }
}

struct Collector {
    timings: bool,
    records: Vec<CheckRecord>,
}

impl Collector {
    fn run(&mut self, f: impl FnOnce() -> Result<Vec<Check>>) -> Result<()> {
        let start = Instant::now();
        let checks = f()?;
        let ms = self.timings.then(|| start.elapsed().as_millis() as u64);
        self.records.extend(checks.iter().map(|c| CheckRecord::from_check(c, ms)));
        Ok(())
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn model(m: usize, n: usize, limit: u128) -> Result<TensorModel> {
    TensorModel::with_limit(m, n, limit)
}

fn tensor_checks(m: usize, n: usize, limit: u128) -> Result<Vec<Check>> {
    let model = model(m, n, limit)?;
    let mut checks = model.relation_suite()?;
    for i in 1..m {
        for kind in [Kind::E, Kind::F] {
            let mut failure = None;
            for r in 1..=(n as u32).min(5) {
                if let Err(e) = model.divided_power(i, kind, r) {
                    failure = Some(format!("r={r}: {e}"));
                    break;
                }
            }
            checks.push(Check::new(
                format!("divided-power exact {kind}"),
                [("m", m as i64), ("N", n as i64), ("i", i as i64)],
                failure,
            ));
        }
    }
    Ok(checks)
}

fn braid_checks(m: usize, n: usize, limit: u128) -> Result<Vec<Check>> {
    let model = model(m, n, limit)?;
    let mut checks = braid_suite(&model)?;
    for i in 1..m {
        checks.push(invertibility_check(&model, i)?);
    }
    Ok(checks)
}

fn twist_checks(n: u32) -> Result<Vec<Check>> {
    let got = pn_twist_composition(n)?;
    let expected = AbstractShape::projective().instantiate(n)?;
    let params = [("n", n as i64)];
    let shape_fail = (got != expected).then(|| format!("got\n{got}\nexpected\n{expected}"));
    let big_n = n as usize + 1;
    let model = TensorModel::new(2, big_n)?;
    let t = reflection_operator(&model, 1)?;
    let block = Weight::from_sl2(big_n, n as i64 - 1).expect("n-1 is a weight of (C^2)^(n+1)");
    let tt = t.operator().compose(&t.operator().restrict(&block));
    let euler_fail = got.euler_class(&model)?.first_difference(&tt);
    Ok(vec![Check::new("pn twist shape", params, shape_fail), Check::new("pn twist euler class", params, euler_fail)])
}

fn negative_twist_checks(n: u32, ell: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for l in 1..=ell {
        let failure = match negative_twist_power(l, n) {
            Ok(shape) => {
                let closed = negative_twist_closed_form(l, n)?;
                (shape != closed).then(|| format!("got\n{shape}"))
            }
            Err(Error::Integrity(msg)) => Some(msg),
            Err(e) => return Err(e),
        };
        checks.push(Check::new("negative twist power", [("n", n as i64), ("ell", l as i64)], failure));
    }
    Ok(checks)
}

fn strata_checks(k_max: u32, n_max: u32) -> Result<Vec<Check>> {
    let mut checks = vec![Check::new(
        "strata symbolic identity",
        Vec::<(String, i64)>::new(),
        (!equidimensionality_identity()).then(|| "dimension defect is not identically zero".to_string()),
    )];
    for n in 2..=n_max {
        for k in 1..=(n / 2).min(k_max) {
            let t = component_table(k, n)?;
            let params = [("k", k as i64), ("N", n as i64)];
            let count_fail = (t.rows.len() as u32 != k + 1).then(|| format!("{} components", t.rows.len()));
            checks.push(Check::new("strata components", params, count_fail));
            let dim_fail = t
                .rows
                .iter()
                .find(|r| r.total_dim != t.expected_dim())
                .map(|r| format!("s={} has dimension {}, expected {}", r.s, r.total_dim, t.expected_dim()));
            checks.push(Check::new("strata equidimensional", params, dim_fail));
            let total: u64 =
                (0..=k).map(|s| fixed_point_count(k, n, s, true)).collect::<Result<Vec<_>>>()?.into_iter().sum();
            let c = binomial(n as u64, k as u64);
            let part_fail = (total != c * c).then(|| format!("sum of strict counts {total}, expected {}", c * c));
            checks.push(Check::new("strata fixed-point partition", params, part_fail));
        }
    }
    Ok(checks)
}

fn record(params: &mut BTreeMap<String, i64>, key: &str, value: i64) {
    params.insert(key.to_string(), value);
}

fn run_into(name: &str, p: &Params, params: &mut BTreeMap<String, i64>, c: &mut Collector) -> Result<()> {
    let seed = p.seed.unwrap_or(DEFAULT_SEED);
    let limit = p.max_basis.unwrap_or(DEFAULT_MAX_BASIS);
    match name {
        "tensor" | "braid" => {
            let (dm, dn) = if name == "tensor" { (2, 8) } else { (3, 4) };
            let m = p.m.unwrap_or(dm);
            let n = p.n_big.unwrap_or(dn);
            if m < 2 {
                return Err(usage(format!("{name} suite needs m >= 2, got {m}")));
            }
            if n < 1 {
                return Err(usage(format!("{name} suite needs N >= 1, got {n}")));
            }
            (m as u128)
                .checked_pow(n as u32)
                .filter(|d| *d <= limit)
                .ok_or_else(|| usage(format!("m^N = {m}^{n} exceeds the basis limit {limit}")))?;
            record(params, "m", m as i64);
            record(params, "N", n as i64);
            for nn in 1..=n {
                if name == "tensor" {
                    c.run(|| tensor_checks(m, nn, limit))?;
                } else {
                    c.run(|| braid_checks(m, nn, limit))?;
                }
            }
        }
        "nilhecke" => {
            let n = p.n.unwrap_or(4) as usize;
            let deg = p.deg.unwrap_or(8);
            if n < 2 {
                return Err(usage(format!("nilhecke suite needs n >= 2, got {n}")));
            }
            record(params, "n", n as i64);
            record(params, "deg", deg as i64);
            record(params, "seed", seed as i64);
            for nn in 2..=n {
                c.run(|| nil_hecke_suite(nn, deg, 50, seed))?;
            }
        }
        "kernel-oracle" => {
            let n = p.n_big.unwrap_or(5);
            if n < 1 {
                return Err(usage(format!("kernel-oracle suite needs N >= 1, got {n}")));
            }
            record(params, "N", n as i64);
            record(params, "seed", seed as i64);
            c.run(|| oracle_suite(500, 6, n, seed))?;
        }
        "twists" => {
            let n = p.n.unwrap_or(3);
            let ell = p.ell.unwrap_or(6);
            let deg = p.deg.unwrap_or(12);
            if n < 1 || ell < 1 {
                return Err(usage(format!("twists suite needs n >= 1 and ell >= 1, got n={n}, ell={ell}")));
            }
            record(params, "n", n as i64);
            record(params, "ell", ell as i64);
            record(params, "deg", deg as i64);
            for nn in 1..=n {
                c.run(|| twist_checks(nn))?;
                c.run(|| negative_twist_checks(nn, ell))?;
                c.run(|| Ok(stabilization_check(nn, deg / 2 + 1, Some(deg as i64))?.1))?;
            }
            for big_n in 2..=5 {
                c.run(|| ef_expansion_check(big_n))?;
            }
        }
        "strata" => {
            let k = p.k.unwrap_or(4);
            let n = p.n_big.unwrap_or(10);
            if k < 1 || n < 2 || 2 * k > n as u32 {
                return Err(usage(format!("strata suite needs 1 <= k and 2k <= N, got k={k}, N={n}")));
            }
            record(params, "k", k as i64);
            record(params, "N", n as i64);
            c.run(|| strata_checks(k, n as u32))?;
        }
        "all" => {
            for sub in &SUITES[..SUITES.len() - 1] {
                let mut sub_params = BTreeMap::new();
                let scoped =
                    Params { seed: Some(seed), max_basis: p.max_basis, timings: p.timings, ..Params::default() };
                let before = c.records.len();
                run_into(sub, &scoped, &mut sub_params, c)?;
                for r in &mut c.records[before..] {
                    r.name = format!("{sub}: {}", r.name);
                }
            }
            record(params, "seed", seed as i64);
        }
        other => return Err(usage(format!("unknown suite '{other}'; expected one of {}", SUITES.join(", ")))),
    }
    Ok(())
}

/// Runs a named suite. Bad names or parameters give
/// `Error::InvalidArgument`; failing checks are reported, not raised.
pub fn run_suite(name: &str, params: &Params) -> Result<SuiteReport> {
    let mut recorded = BTreeMap::new();
    let mut c = Collector { timings: params.timings, records: Vec::new() };
    run_into(name, params, &mut recorded, &mut c)?;
    let mut checks = c.records;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let status = Status::from_bool(checks.iter().all(|r| r.status.is_pass()));
    Ok(SuiteReport { suite: name.to_string(), params: recorded, checks, status })
}

/// Normal form of `word` at `weight`; `window` defaults to unbounded.
pub fn simplify_command(word: &str, weight: &str, window: Option<&str>) -> Result<String> {
    let word = Word::parse(word)?;
    let weight = parse_weight(weight)?;
    let window = match window {
        Some(w) => Window::parse(w)?,
        None => Window::Unbounded,
    };
    Ok(normal_form(&weight, &word, &window)?.to_string())
}
