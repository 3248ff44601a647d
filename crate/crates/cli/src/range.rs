use std::fmt;
use std::str::FromStr;

/// A list of integers written as `a..b` (inclusive), `a`, or `a,b,c`.
/// Items may be mixed: `2,5..7` is `2, 5, 6, 7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange(Vec<u64>);

impl IntRange {
    pub fn inclusive(lo: u64, hi: u64) -> Self {
        IntRange((lo..=hi).collect())
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn min(&self) -> u64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut values = Vec::new();
        for item in s.split(',').map(str::trim) {
            let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad integer `{t}` in `{s}`"));
            match item.split_once("..") {
                Some((lo, hi)) => {
                    let hi = hi.strip_prefix('=').unwrap_or(hi);
                    let (lo, hi) = (parse(lo)?, parse(hi)?);
                    if lo > hi {
                        return Err(format!("empty range `{item}`"));
                    }
                    values.extend(lo..=hi);
                }
                None => values.push(parse(item)?),
            }
        }
        if values.is_empty() {
            return Err("empty list".into());
        }
        Ok(IntRange(values))
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}
