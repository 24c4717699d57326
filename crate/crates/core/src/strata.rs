//! Components of the flop correspondence `Z(k,N)`: dimensions, incidence,
//! the open locus and torus fixed-point counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentRow {
    pub s: u32,
    pub base_dim: u64,
    pub fiber_dim: u64,
    pub total_dim: u64,
    pub chi: u64,
    pub chi_strict: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataDescriptor {
    pub k: u32,
    pub n: u32,
    pub rows: Vec<ComponentRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Incidence {
    #[serde(rename = "self")]
    SelfIntersection,
    Divisor,
    Deeper,
}

impl fmt::Display for Incidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Incidence::SelfIntersection => "self",
            Incidence::Divisor => "divisor",
            Incidence::Deeper => "deeper",
        })
    }
}

fn check_kn(k: u32, n: u32) -> Result<()> {
    if k < 1 || 2 * k > n {
        return Err(Error::InvalidArgument(format!("strata need 1 <= k and 2k <= N, got k={k}, N={n}")));
    }
    Ok(())
}

fn check_s(k: u32, s: u32) -> Result<()> {
    if s > k {
        return Err(Error::InvalidArgument(format!("component index s={s} outside 0..={k}")));
    }
    Ok(())
}

/// Dimension of the square-zero orbit of rank `r` in `gl_N`.
pub fn square_zero_orbit_dim(r: u32, n: u32) -> u64 {
    2 * r as u64 * (n - r) as u64
}

pub fn base_dim(k: u32, n: u32, s: u32) -> u64 {
    square_zero_orbit_dim(k - s, n)
}

/// Twice the dimension of the Grassmannian fibre `Gr(s, N-2k+2s)`.
pub fn fiber_dim(k: u32, n: u32, s: u32) -> u64 {
    2 * s as u64 * (n - 2 * k + s) as u64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Coordinate pairs `(S, S')`, `|S| = k`, `|S'| = N-k`, with
/// `|S n S'| >= k-s` (or `= k-s` when `strict`).
pub fn fixed_point_count(k: u32, n: u32, s: u32, strict: bool) -> Result<u64> {
    check_kn(k, n)?;
    check_s(k, s)?;
    let (k, n) = (k as u64, n as u64);
    let lo = k - s as u64;
    let hi = if strict { lo } else { k };
    Ok((lo..=hi).map(|j| binomial(n, k) * binomial(k, j) * binomial(n - k, n - k - j)).sum())
}

pub fn component_table(k: u32, n: u32) -> Result<StrataDescriptor> {
    check_kn(k, n)?;
    let rows = (0..=k)
        .map(|s| {
            let base = base_dim(k, n, s);
            let fiber = fiber_dim(k, n, s);
            Ok(ComponentRow {
                s,
                base_dim: base,
                fiber_dim: fiber,
                total_dim: base + fiber,
                chi: fixed_point_count(k, n, s, false)?,
                chi_strict: fixed_point_count(k, n, s, true)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrataDescriptor { k, n, rows })
}

pub fn incidence(k: u32, n: u32, s: u32, t: u32) -> Result<Incidence> {
    check_kn(k, n)?;
    check_s(k, s)?;
    check_s(k, t)?;
    Ok(match s.abs_diff(t) {
        0 => Incidence::SelfIntersection,
        1 => Incidence::Divisor,
        _ => Incidence::Deeper,
    })
}

pub fn open_locus(dim_ker: u32, dim_intersect: u32, k: u32, n: u32) -> Result<bool> {
    check_kn(k, n)?;
    if dim_intersect > k {
        return Err(Error::InvalidArgument(format!("dim(V n V')={dim_intersect} exceeds k={k}")));
    }
    if dim_ker < n - k || dim_ker > n {
        return Err(Error::InvalidArgument(format!("dim(ker X)={dim_ker} outside {}..={n}", n - k)));
    }
    Ok(dim_ker + dim_intersect <= n + 1)
}

/// `2(k-s)(N-k+s) + 2s(N-2k+s) - 2k(N-k)` as a polynomial in `(k, N, s)`.
fn dimension_defect(k: i64, n: i64, s: i64) -> i64 {
    2 * (k - s) * (n - k + s) + 2 * s * (n - 2 * k + s) - 2 * k * (n - k)
}

/// The defect has degree at most 2 in each variable, so vanishing on
/// `{0,1,2}^3` makes it the zero polynomial.
pub fn equidimensionality_identity() -> bool {
    (0..3).all(|k| (0..3).all(|n| (0..3).all(|s| dimension_defect(k, n, s) == 0)))
}

impl StrataDescriptor {
    pub fn expected_dim(&self) -> u64 {
        2 * self.k as u64 * (self.n - self.k) as u64
    }

    pub fn is_equidimensional(&self) -> bool {
        self.rows.iter().all(|r| r.total_dim == self.expected_dim())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn to_table(&self) -> String {
        let header = ["s", "baseDim", "fiberDim", "totalDim", "chi", "chiStrict"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.s.to_string(),
                    r.base_dim.to_string(),
                    r.fiber_dim.to_string(),
                    r.total_dim.to_string(),
                    r.chi.to_string(),
                    r.chi_strict.to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> =
            (0..6).map(|c| cells.iter().map(|row| row[c].len()).chain([header[c].len()]).max().unwrap_or(0)).collect();
        let mut out = format!(
            "Z(k={}, N={}): {} components, dimension {}\n",
            self.k,
            self.n,
            self.rows.len(),
            self.expected_dim()
        );
        let line =
            |vals: Vec<&str>| vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect::<Vec<_>>().join("  ");
        out.push_str(&line(header.to_vec()));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(k: u32, n: u32, s: u32, strict: bool) -> u64 {
        let mut count = 0;
        for a in 0u32..(1 << n) {
            if a.count_ones() != k {
                continue;
            }
            for b in 0u32..(1 << n) {
                if b.count_ones() != n - k {
                    continue;
                }
                let j = (a & b).count_ones();
                if (strict && j == k - s) || (!strict && j >= k - s) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn table_examples() {
        let t = component_table(1, 2).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows.iter().all(|r| r.total_dim == 2));
        let t = component_table(2, 4).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.rows.iter().all(|r| r.total_dim == 8));
        let row = component_table(2, 5).unwrap().rows[1];
        assert_eq!((row.base_dim, row.fiber_dim, row.total_dim), (8, 4, 12));
        assert!(component_table(0, 4).is_err());
        assert!(component_table(3, 5).is_err());
    }

    #[test]
    fn equidimensional_everywhere() {
        for n in 2..=12 {
            for k in 1..=n / 2 {
                let t = component_table(k, n).unwrap();
                assert_eq!(t.rows.len() as u32, k + 1);
                assert!(t.is_equidimensional(), "k={k} N={n}");
                assert_eq!(t.rows[0].base_dim, t.expected_dim());
            }
        }
    }

    #[test]
    fn symbolic_identity() {
        assert!(equidimensionality_identity());
        assert_eq!(dimension_defect(7, -3, 11), 0);
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence(2, 4, 0, 1).unwrap(), Incidence::Divisor);
        assert_eq!(incidence(2, 4, 0, 2).unwrap(), Incidence::Deeper);
        assert_eq!(incidence(2, 4, 1, 1).unwrap(), Incidence::SelfIntersection);
        assert!(incidence(2, 4, 0, 3).is_err());
    }

    #[test]
    fn open_locus_examples() {
        assert!(open_locus(3, 0, 1, 4).unwrap());
        assert!(!open_locus(4, 2, 2, 4).unwrap());
        assert!(open_locus(4, 1, 2, 4).unwrap());
        assert!(open_locus(1, 0, 2, 4).is_err());
        assert!(open_locus(4, 3, 2, 4).is_err());
    }

    #[test]
    fn fixed_points_match_enumeration() {
        assert_eq!(fixed_point_count(1, 2, 1, false).unwrap(), 4);
        assert_eq!(fixed_point_count(1, 2, 0, false).unwrap(), 2);
        for n in 2..=8 {
            for k in 1..=n / 2 {
                for s in 0..=k {
                    for strict in [false, true] {
                        assert_eq!(fixed_point_count(k, n, s, strict).unwrap(), brute_force(k, n, s, strict));
                    }
                }
            }
        }
    }

    #[test]
    fn strict_counts_partition() {
        for n in 2..=10 {
            for k in 1..=(n / 2).min(4) {
                let total: u64 = (0..=k).map(|s| fixed_point_count(k, n, s, true).unwrap()).sum();
                let c = binomial(n as u64, k as u64);
                assert_eq!(total, c * c);
                let chis: Vec<u64> = (0..=k).map(|s| fixed_point_count(k, n, s, false).unwrap()).collect();
                assert!(chis.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn json_rows() {
        let t = component_table(1, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["baseDim"], 2);
        assert_eq!(v[1]["chiStrict"], 2);
        assert_eq!(v[0].as_object().unwrap().keys().cloned().collect::<Vec<_>>().len(), 6);
        assert!(t.to_table().contains("chiStrict"));
    }
}
