use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition of `d`: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; rejects zero parts and empty input.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition(parts))
    }

    /// The one-part partition `(d)`.
    pub fn trivial(d: u32) -> Self {
        Partition(vec![d])
    }

    /// A partition of `d` with at most two parts that contains `part`.
    pub fn containing(d: u32, part: u32) -> Option<Self> {
        match part.cmp(&d) {
            std::cmp::Ordering::Equal => Some(Self::trivial(d)),
            std::cmp::Ordering::Less if part > 0 => Self::new(vec![part, d - part]),
            _ => None,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `d` with at most `n` parts, largest first part first, then
/// by the remaining parts in the same order.
pub fn partitions_leq(d: u32, n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, slots: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 && n > 0 {
        go(d, d, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Part sizes `m ≥ 2` occurring in some partition of `d` of length `≤ n`.
///
/// Every `m ≤ d` occurs once two parts are allowed (`(m, d−m)`), so this is
/// `{d}` for `n = 1` and `{2, …, d}` otherwise.
pub fn nontrivial_part_sizes(d: u32, n: u32) -> Vec<u32> {
    if d < 2 || n == 0 {
        Vec::new()
    } else if n == 1 {
        vec![d]
    } else {
        (2..=d).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(xs: &[&[u32]]) -> Vec<Partition> {
        xs.iter().map(|p| Partition(p.to_vec())).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(partitions_leq(3, 2), ps(&[&[3], &[2, 1]]));
        assert_eq!(partitions_leq(4, 2), ps(&[&[4], &[3, 1], &[2, 2]]));
        assert_eq!(partitions_leq(5, 1), ps(&[&[5]]));
        assert_eq!(partitions_leq(5, 7).len(), 7);
    }

    #[test]
    fn part_sizes_match_enumeration() {
        for d in 1..=10 {
            for n in 1..=10 {
                let mut seen: Vec<u32> = partitions_leq(d, n)
                    .iter()
                    .flat_map(|p| p.parts().to_vec())
                    .filter(|&m| m >= 2)
                    .collect();
                seen.sort_unstable();
                seen.dedup();
                assert_eq!(seen, nontrivial_part_sizes(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn containing() {
        assert_eq!(Partition::containing(5, 2).unwrap().parts(), &[3, 2]);
        assert_eq!(Partition::containing(5, 5).unwrap().parts(), &[5]);
        assert!(Partition::containing(5, 6).is_none());
        assert!(Partition::new(vec![]).is_none());
    }
}
