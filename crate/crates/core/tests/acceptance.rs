//! Acceptance criteria, all exact. Each criterion prints one PASS/FAIL line.

use std::process::ExitCode;

use catsl::harness::{run_suite, Params};
use catsl::kernel_calc::{
    ef_expansion_check, negative_twist_power, oracle_suite, pn_twist_composition, stabilization_check, Letter, Word,
};
use catsl::nilhecke::nil_hecke_suite;
use catsl::reflection::{braid_suite, inverse_reflection, invertibility_check, reflection_operator};
use catsl::report::{first_failure, Check};
use catsl::scalars::{qfact, BiGrade};
use catsl::strata::{binomial, component_table, equidimensionality_identity, fixed_point_count};
use catsl::tensor_model::{Kind, Operator, TensorModel, Weight};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_pass(checks: &[Check]) -> Result<usize, String> {
    match first_failure(checks) {
        Some(c) => Err(c.to_string()),
        None => Ok(checks.len()),
    }
}

fn suite(name: &str, p: Params) -> Result<usize, String> {
    let r = run_suite(name, &p).map_err(|e| e.to_string())?;
    let first = r.failures().next().map(|c| format!("{}: {}", c.name, c.detail));
    match first {
        Some(msg) => Err(msg),
        None => Ok(r.checks.len()),
    }
}

const GRID: [(usize, usize); 3] = [(2, 8), (3, 6), (4, 5)];

fn relation_suite() -> Outcome {
    let mut total = 0;
    for (m, n) in GRID {
        total += suite("tensor", Params { m: Some(m), n_big: Some(n), ..Params::default() })?;
    }
    Ok(format!("{total} relation checks"))
}

fn divided_power_exactness() -> Outcome {
    let mut count = 0;
    for (m, n_max) in GRID {
        for n in 1..=n_max {
            let model = TensorModel::new(m, n).map_err(|e| e.to_string())?;
            for i in 1..m {
                for kind in [Kind::E, Kind::F] {
                    let x = model.chevalley(i, kind).map_err(|e| e.to_string())?;
                    let mut power = Operator::identity(&model);
                    for r in 1..=(n as u32).min(5) {
                        power = x.compose(&power);
                        let divided = power
                            .div_exact(&qfact(r))
                            .ok_or_else(|| format!("{kind}_{i}^{r} not divisible by [{r}]! (m={m}, N={n})"))?;
                        let direct = model.divided_power(i, kind, r).map_err(|e| e.to_string())?;
                        if divided != direct {
                            return Err(format!("{kind}_{i}^({r}) disagrees (m={m}, N={n})"));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} divided powers"))
}

fn rickard_operator() -> Outcome {
    for n in 1..=8 {
        let model = TensorModel::new(2, n).map_err(|e| e.to_string())?;
        let t = reflection_operator(&model, 1).map_err(|e| e.to_string())?;
        let inv = inverse_reflection(&model, 1).map_err(|e| e.to_string())?;
        let id = Operator::identity(&model);
        if let Some(d) = inv.operator().compose(t.operator()).first_difference(&id) {
            return Err(format!("N={n}: inverse * t != id: {d}"));
        }
        for w in model.weights() {
            let targets = t.operator().targets(w);
            let expected = Weight::new(vec![w.entries()[1], w.entries()[0]]);
            if targets != vec![&expected] {
                return Err(format!("N={n}: block {w} maps to {targets:?}"));
            }
        }
        all_pass(&[invertibility_check(&model, 1).map_err(|e| e.to_string())?])?;
    }
    Ok("N = 1..8".into())
}

fn braid_relations() -> Outcome {
    let mut total = 0;
    for (m, n_max) in [(3, 5), (4, 4)] {
        for n in 1..=n_max {
            let model = TensorModel::new(m, n).map_err(|e| e.to_string())?;
            total += all_pass(&braid_suite(&model).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(format!("{total} braid checks"))
}

fn nil_hecke() -> Outcome {
    let mut total = 0;
    for n in 2..=4 {
        total += all_pass(&nil_hecke_suite(n, 8, 0, 1).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{total} checks on all monomials of degree <= 8"))
}

fn rewrite_oracle() -> Outcome {
    let checks = oracle_suite(500, 6, 5, 0xC0FFEE).map_err(|e| e.to_string())?;
    all_pass(&checks)?;
    Ok("500 random words".into())
}

fn ef_expansion() -> Outcome {
    for n in 2..=5 {
        all_pass(&ef_expansion_check(n).map_err(|e| e.to_string())?)?;
    }
    Ok("N = 2..5, rewrite and matrix".into())
}

fn fe() -> Word {
    Word::new(vec![Letter::f(1), Letter::e(1)])
}

fn pn_twist() -> Outcome {
    for n in 1..=3u32 {
        let got = pn_twist_composition(n).map_err(|e| e.to_string())?;
        let ni = n as i64;
        let shape_ok = got.positions() == vec![-2, -1, 0]
            && got.term(-2).map(|s| s.len() == 1 && s.coeff(&fe()) == BiGrade::monomial(ni + 2, -ni - 2)) == Some(true)
            && got.term(-1).map(|s| s.len() == 1 && s.coeff(&fe()) == BiGrade::monomial(ni, -ni)) == Some(true)
            && got.term(0).map(|s| s.len() == 1 && s.coeff(&Word::empty()).is_one()) == Some(true);
        if !shape_ok {
            return Err(format!("n={n}: unexpected shape\n{got}"));
        }
        let model = TensorModel::new(2, n as usize + 1).map_err(|e| e.to_string())?;
        let t = reflection_operator(&model, 1).map_err(|e| e.to_string())?;
        let block = Weight::from_sl2(n as usize + 1, ni - 1).unwrap();
        let tt = t.operator().compose(&t.operator().restrict(&block));
        if let Some(d) = got.euler_class(&model).map_err(|e| e.to_string())?.first_difference(&tt) {
            return Err(format!("n={n}: Euler class differs from t*t: {d}"));
        }
    }
    Ok("n = 1..3".into())
}

fn expect_prefix(n: u32, ell: u32, shifts: &[i64]) -> Result<(), String> {
    let got = negative_twist_power(ell, n).map_err(|e| e.to_string())?;
    if !got.term(0).is_some_and(|s| s.len() == 1 && s.coeff(&Word::empty()).is_one()) {
        return Err(format!("n={n}, ell={ell}: no identity in degree 0"));
    }
    for (i, d) in shifts.iter().enumerate() {
        let pos = i as i64 + 1;
        let ok = got.term(pos).is_some_and(|s| s.len() == 1 && s.coeff(&fe()) == BiGrade::monomial(-d, *d));
        if !ok {
            return Err(format!("n={n}, ell={ell}: degree {pos} is not F*E[{d}]\n{got}"));
        }
    }
    Ok(())
}

fn infinite_twist() -> Outcome {
    for ell in 1..=6u32 {
        let shifts: Vec<i64> = (0..2 * ell as i64).map(|i| 2 * i + 1).collect();
        expect_prefix(1, ell, &shifts)?;
    }
    for n in [2u32, 3] {
        let ni = n as i64;
        expect_prefix(n, 2, &[ni, ni + 2, 3 * ni + 2, 3 * ni + 4])?;
    }
    for n in 1..=3 {
        let (rows, checks) = stabilization_check(n, 7, Some(12)).map_err(|e| e.to_string())?;
        all_pass(&checks)?;
        if rows.len() != 13 {
            return Err(format!("n={n}: {} degrees checked", rows.len()));
        }
    }
    Ok("prefixes match, degrees 0..12 stable".into())
}

fn strata() -> Outcome {
    if !equidimensionality_identity() {
        return Err("symbolic identity fails".into());
    }
    let mut cases = 0;
    for n in 2..=12u32 {
        for k in 1..=n / 2 {
            let t = component_table(k, n).map_err(|e| e.to_string())?;
            if t.rows.len() as u32 != k + 1 {
                return Err(format!("k={k} N={n}: {} components", t.rows.len()));
            }
            if let Some(r) = t.rows.iter().find(|r| r.total_dim != 2 * (k * (n - k)) as u64) {
                return Err(format!("k={k} N={n}: component {} has dimension {}", r.s, r.total_dim));
            }
            let strict: u64 = (0..=k).map(|s| fixed_point_count(k, n, s, true).unwrap()).sum();
            let c = binomial(n as u64, k as u64);
            if strict != c * c {
                return Err(format!("k={k} N={n}: strict counts sum to {strict}, not {}", c * c));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, N) pairs"))
}

fn determinism() -> Outcome {
    let p = Params { seed: Some(42), ..Params::default() };
    let a = run_suite("all", &p).map_err(|e| e.to_string())?.to_json();
    let b = run_suite("all", &p).map_err(|e| e.to_string())?.to_json();
    if a != b {
        return Err("reports differ".into());
    }
    Ok(format!("{} bytes, identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("relation suite", relation_suite),
        ("divided-power exactness", divided_power_exactness),
        ("Rickard operator", rickard_operator),
        ("braid relations", braid_relations),
        ("nilHecke relations", nil_hecke),
        ("rewrite oracle", rewrite_oracle),
        ("EF expansion", ef_expansion),
        ("P^n twist shape", pn_twist),
        ("infinite twist", infinite_twist),
        ("strata", strata),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail}", i + 1);
                failed.push(*name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", criteria.len(), criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
