//! Kernel words, weight windows, and their text syntax.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::tensor_model::{Kind, Weight};

/// A divided-power letter `E_i^(a)` or `F_i^(a)`, `a >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: Kind,
    pub node: usize,
    pub power: u32,
}

impl Letter {
    pub fn new(kind: Kind, node: usize, power: u32) -> Self {
        assert!(power >= 1, "letters carry a positive divided power");
        assert!(node >= 1, "nodes are 1-based");
        Self { kind, node, power }
    }

    pub fn e(power: u32) -> Self {
        Self::new(Kind::E, 1, power)
    }

    pub fn f(power: u32) -> Self {
        Self::new(Kind::F, 1, power)
    }

    /// Weight after applying the letter to `w`.
    pub fn apply(&self, w: &Weight) -> Weight {
        w.add_root(self.node, self.kind.direction() * self.power as i64)
    }

    fn render(&self, with_node: bool) -> String {
        if with_node {
            format!("{}{}^({})", self.kind, self.node, self.power)
        } else {
            format!("{}^({})", self.kind, self.power)
        }
    }
}

/// Letters as written: the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the divided powers.
    pub fn total_power(&self) -> u32 {
        self.0.iter().map(|l| l.power).sum()
    }

    pub fn max_node(&self) -> usize {
        self.0.iter().map(|l| l.node).max().unwrap_or(0)
    }

    pub fn is_single_node(&self) -> bool {
        self.0.iter().all(|l| l.node == 1)
    }

    /// `self` followed on the right by `rhs` (so `rhs` acts first).
    pub fn concat(&self, rhs: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&rhs.0);
        Word(out)
    }

    /// Weights visited, from the source to the target.
    pub fn running_weights(&self, source: &Weight) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut w = source.clone();
        out.push(w.clone());
        for l in self.0.iter().rev() {
            w = l.apply(&w);
            out.push(w.clone());
        }
        out
    }

    pub fn target(&self, source: &Weight) -> Weight {
        self.0.iter().rev().fold(source.clone(), |w, l| l.apply(&w))
    }

    /// Rendering; `with_node` switches between `E^(2)` and `E1^(2)`.
    pub fn render(&self, with_node: bool) -> String {
        if self.0.is_empty() {
            return "id".to_string();
        }
        self.0.iter().map(|l| l.render(with_node)).collect()
    }

    /// Parses `"F2^(3) E1 E1"`, `"E^(2)F"`, or `"id"`.
    pub fn parse(text: &str) -> std::result::Result<Word, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut letters = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        let rest: String = chars[pos..].iter().collect();
        if rest.trim() == "id" || rest.trim().is_empty() {
            return Ok(Word::empty());
        }
        while pos < chars.len() {
            let kind = match chars[pos] {
                'E' => Kind::E,
                'F' => Kind::F,
                c => return Err(ParseError::new(pos, format!("expected 'E' or 'F', found '{c}'"))),
            };
            pos += 1;
            let node = read_number(&chars, &mut pos)?.unwrap_or(1);
            let node = usize::try_from(node).map_err(|_| ParseError::new(pos, "node too large"))?;
            if node == 0 {
                return Err(ParseError::new(pos - 1, "nodes start at 1"));
            }
            let mut power = 1u64;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let paren = pos < chars.len() && chars[pos] == '(';
                if paren {
                    pos += 1;
                }
                power =
                    read_number(&chars, &mut pos)?.ok_or_else(|| ParseError::new(pos, "expected a divided power"))?;
                if paren {
                    if pos >= chars.len() || chars[pos] != ')' {
                        return Err(ParseError::new(pos, "expected ')'"));
                    }
                    pos += 1;
                }
                if power == 0 {
                    return Err(ParseError::new(pos - 1, "divided powers must be positive"));
                }
            }
            let power = u32::try_from(power).map_err(|_| ParseError::new(pos, "divided power too large"))?;
            letters.push(Letter::new(kind, node, power));
            skip_ws(&mut pos);
        }
        Ok(Word(letters))
    }
}

fn read_number(chars: &[char], pos: &mut usize) -> std::result::Result<Option<u64>, ParseError> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return Ok(None);
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse().map(Some).map_err(|_| ParseError::new(start, "number too large"))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(!self.is_single_node()))
    }
}

/// The `sl_2` weight `lambda` as a rank-2 lattice point.
/// The lattice point `(a, b)` with `b - a = lambda` and `a + b` in `{0, 1}`;
/// roots move between these points, so equal weights compare equal.
pub fn sl2_weight(lambda: i64) -> Weight {
    let p = lambda.rem_euclid(2);
    Weight::new(vec![(p - lambda) / 2, (p + lambda) / 2])
}

/// Parses `"-2"` (an `sl_2` weight) or `"(2,1,0)"` (a composition).
pub fn parse_weight(text: &str) -> std::result::Result<Weight, ParseError> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    if let Some(inner) = t.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(|| ParseError::new(lead + t.len(), "expected ')'"))?;
        let mut entries = Vec::new();
        let mut offset = lead + 1;
        for part in inner.split(',') {
            let v: i64 = part
                .trim()
                .parse()
                .map_err(|_| ParseError::new(offset, format!("bad weight entry '{}'", part.trim())))?;
            entries.push(v);
            offset += part.len() + 1;
        }
        if entries.len() < 2 {
            return Err(ParseError::new(lead, "a composition needs at least two entries"));
        }
        Ok(Weight::new(entries))
    } else {
        t.parse::<i64>().map(sl2_weight).map_err(|_| ParseError::new(lead, format!("bad weight '{t}'")))
    }
}

/// The set of weights with nonzero categories. Words visiting a weight
/// outside the window are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Window {
    Unbounded,
    /// `sl_2` weights in `lo..=hi`.
    Interval(i64, i64),
    /// An explicit set of `sl_2` weights.
    Set(BTreeSet<i64>),
    /// Nonnegative compositions (any rank).
    Compositions,
}

impl Window {
    /// `{|lambda| <= r}`.
    pub fn symmetric(r: i64) -> Self {
        Window::Interval(-r, r)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        match self {
            Window::Unbounded => true,
            Window::Interval(lo, hi) => {
                let v = w.sl2_value();
                *lo <= v && v <= *hi
            }
            Window::Set(s) => s.contains(&w.sl2_value()),
            Window::Compositions => w.is_composition(),
        }
    }

    /// Largest `sl_2` weight in the window, `None` if unbounded above.
    pub fn upper(&self) -> Option<i64> {
        match self {
            Window::Unbounded | Window::Compositions => None,
            Window::Interval(_, hi) => Some(*hi),
            Window::Set(s) => Some(s.iter().next_back().copied().unwrap_or(i64::MIN)),
        }
    }

    pub fn lower(&self) -> Option<i64> {
        match self {
            Window::Unbounded | Window::Compositions => None,
            Window::Interval(lo, _) => Some(*lo),
            Window::Set(s) => Some(s.iter().next().copied().unwrap_or(i64::MAX)),
        }
    }

    /// Windows must be the weight support of some representation: on the
    /// parity class of `source` an `sl_2` window has to be a symmetric
    /// string `-L, -L+2, .., L` (or empty).
    pub fn validate(&self, source: &Weight) -> Result<()> {
        let rank_two = source.rank() == 2;
        match self {
            Window::Unbounded | Window::Compositions => Ok(()),
            _ if !rank_two => Err(Error::InvalidArgument(format!(
                "sl2 window {self} used with rank-{} weight {source}",
                source.rank()
            ))),
            _ => {
                let parity = source.sl2_value().rem_euclid(2);
                let members: Vec<i64> = match self {
                    Window::Interval(lo, hi) => (*lo..=*hi).filter(|v| v.rem_euclid(2) == parity).collect(),
                    Window::Set(s) => s.iter().copied().filter(|v| v.rem_euclid(2) == parity).collect(),
                    _ => unreachable!(),
                };
                let (Some(&lo), Some(&hi)) = (members.first(), members.last()) else {
                    return Ok(());
                };
                let contiguous = members.windows(2).all(|p| p[1] - p[0] == 2);
                if lo == -hi && contiguous {
                    Ok(())
                } else {
                    Err(Error::UnsupportedRewrite(format!(
                        "window {self} is not a symmetric weight string on the parity class of {}",
                        source.sl2_value()
                    )))
                }
            }
        }
    }

    pub fn parse(text: &str) -> std::result::Result<Window, ParseError> {
        let t = text.trim();
        let lead = text.len() - text.trim_start().len();
        match t {
            "" | "none" => return Ok(Window::Unbounded),
            "compositions" => return Ok(Window::Compositions),
            _ => {}
        }
        let (open, close) = (t.chars().next().unwrap(), t.chars().next_back().unwrap());
        let inner = if t.len() >= 2 { &t[1..t.len() - 1] } else { "" };
        let numbers = |inner: &str| -> std::result::Result<Vec<i64>, ParseError> {
            let mut offset = lead + 1;
            let mut out = Vec::new();
            for part in inner.split(',') {
                if part.trim().is_empty() && inner.trim().is_empty() {
                    break;
                }
                let p = part.trim().replace('\u{2212}', "-");
                out.push(
                    p.parse().map_err(|_| ParseError::new(offset, format!("bad window entry '{}'", part.trim())))?,
                );
                offset += part.len() + 1;
            }
            Ok(out)
        };
        match (open, close) {
            ('{', '}') => Ok(Window::Set(numbers(inner)?.into_iter().collect())),
            ('[', ']') => {
                let v = numbers(inner)?;
                if v.len() != 2 || v[0] > v[1] {
                    return Err(ParseError::new(lead, "interval window needs '[lo,hi]' with lo <= hi"));
                }
                Ok(Window::Interval(v[0], v[1]))
            }
            _ => Err(ParseError::new(lead, format!("unrecognised window '{t}'"))),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Unbounded => f.write_str("none"),
            Window::Interval(lo, hi) => write!(f, "[{lo},{hi}]"),
            Window::Set(s) => {
                let parts: Vec<String> = s.iter().map(i64::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            Window::Compositions => f.write_str("compositions"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_syntax() {
        let w = Word::parse("F2^(3) E1 E1").unwrap();
        assert_eq!(w.letters(), &[Letter::new(Kind::F, 2, 3), Letter::new(Kind::E, 1, 1), Letter::new(Kind::E, 1, 1)]);
        assert_eq!(w.to_string(), "F2^(3)E1^(1)E1^(1)");
        let w = Word::parse("F^(1)E^(1)").unwrap();
        assert_eq!(w, Word::new(vec![Letter::f(1), Letter::e(1)]));
        assert_eq!(w.to_string(), "F^(1)E^(1)");
        assert_eq!(Word::parse("E^2").unwrap(), Word::new(vec![Letter::e(2)]));
        assert_eq!(Word::parse("id").unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "id");
        assert_eq!(Word::parse("E^(x)").unwrap_err().position, 3);
        assert_eq!(Word::parse("E G").unwrap_err().position, 2);
        assert!(Word::parse("E^(0)").is_err());
        assert!(Word::parse("E0").is_err());
        assert!(Word::parse("E^(2").is_err());
    }

    #[test]
    fn running_weights_shift_by_roots() {
        let w = Word::parse("F E E").unwrap();
        let ws: Vec<i64> = w.running_weights(&sl2_weight(0)).iter().map(Weight::sl2_value).collect();
        assert_eq!(ws, vec![0, 2, 4, 2]);
        let w = Word::parse("E2 E1").unwrap();
        let src = Weight::new(vec![2, 1, 0]);
        assert_eq!(w.target(&src), Weight::new(vec![1, 1, 1]));
    }

    #[test]
    fn weight_syntax() {
        assert_eq!(parse_weight("-2").unwrap(), sl2_weight(-2));
        assert_eq!(parse_weight("(2,1,0)").unwrap(), Weight::new(vec![2, 1, 0]));
        assert!(parse_weight("(2,x)").is_err());
        assert!(parse_weight("(2").is_err());
        assert!(parse_weight("two").is_err());
    }

    #[test]
    fn window_syntax_and_validation() {
        assert_eq!(Window::parse("none").unwrap(), Window::Unbounded);
        assert_eq!(Window::parse("[-2,2]").unwrap(), Window::Interval(-2, 2));
        let set = Window::parse("{-2,0,2}").unwrap();
        assert_eq!(set, Window::Set([-2, 0, 2].into_iter().collect()));
        assert_eq!(set.to_string(), "{-2,0,2}");
        assert!(Window::parse("{−2,0,2}").is_ok());
        assert!(Window::parse("[2,-2]").is_err());
        assert!(Window::parse("(1,2)").is_err());
        assert!(set.validate(&sl2_weight(0)).is_ok());
        // Odd weights see an empty window.
        assert!(set.validate(&sl2_weight(1)).is_ok());
        assert!(Window::Interval(-3, 3).validate(&sl2_weight(1)).is_ok());
        assert!(matches!(Window::Interval(-2, 4).validate(&sl2_weight(0)), Err(Error::UnsupportedRewrite(_))));
        assert!(Window::Set([0, 4].into_iter().collect()).validate(&sl2_weight(0)).is_err());
        assert!(Window::Interval(-2, 2).validate(&Weight::new(vec![1, 1, 1])).is_err());
        assert!(set.contains(&sl2_weight(2)) && !set.contains(&sl2_weight(4)));
        assert!(Window::Compositions.contains(&Weight::new(vec![0, 3, 1])));
        assert!(!Window::Compositions.contains(&Weight::new(vec![-1, 3, 1])));
    }
}
