use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{wsum, RealWeight, Weight};

/// Tolerance used for the "sums to a full circle" check.
pub const NORMALIZED_TOLERANCE: f64 = 1e-9;

/// Drawing case: which of the ordering and the sub-wedge flips are free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// Unordered tree, even sub-wedges.
    C1,
    /// Semi-ordered tree (circular order fixed), flexible uneven sub-wedges.
    C2,
    /// Unordered tree, fixed uneven sub-wedges.
    C3,
    /// Unordered tree, flexible uneven sub-wedges.
    C4,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::C1, Case::C2, Case::C3, Case::C4];

    /// Whether the circular order of the children is a free parameter.
    pub fn ordering_free(self) -> bool {
        !matches!(self, Case::C2)
    }

    /// Whether the flip bits are a free parameter. For C1 flips exist but
    /// are no-ops, so they are treated as fixed.
    pub fn flips_free(self) -> bool {
        matches!(self, Case::C2 | Case::C4)
    }

    pub fn description(self) -> &'static str {
        match self {
            Case::C1 => "unordered tree with even sub-wedges",
            Case::C2 => "semi-ordered tree with flexible uneven sub-wedges",
            Case::C3 => "unordered tree with fixed uneven sub-wedges",
            Case::C4 => "unordered tree with flexible uneven sub-wedges",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(Case::C1),
            "C2" => Ok(Case::C2),
            "C3" => Ok(Case::C3),
            "C4" => Ok(Case::C4),
            _ => Err(Error::invalid(format!("unknown case {s:?}"))),
        }
    }
}

/// The aesthetic criterion being optimized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    /// Maximize the smallest angle (angular resolution).
    Re,
    /// Minimize largest / smallest angle (aspect ratio).
    Ra,
    /// Minimize the standard deviation of the angles.
    De,
    /// Minimize the sum of products of adjacent sub-wedges.
    Sop,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::Re, Problem::Ra, Problem::De, Problem::Sop];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Re => "RE",
            Problem::Ra => "RA",
            Problem::De => "DE",
            Problem::Sop => "SOP",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "re" => Ok(Problem::Re),
            "ra" => Ok(Problem::Ra),
            "de" => Ok(Problem::De),
            "sop" => Ok(Problem::Sop),
            _ => Err(Error::invalid(format!("unknown problem {s:?}"))),
        }
    }
}

/// The two sub-wedges a child's ray splits its wedge into.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubWedgePair<W> {
    pub w0: W,
    pub w1: W,
}

impl<W: Weight> SubWedgePair<W> {
    pub fn new(w0: W, w1: W) -> Self {
        SubWedgePair { w0, w1 }
    }

    pub fn even(half: W) -> Self {
        SubWedgePair { w0: half, w1: half }
    }

    /// Sub-wedge by index (`false` = 0, `true` = 1).
    #[inline]
    pub fn side(&self, one: bool) -> W {
        if one {
            self.w1
        } else {
            self.w0
        }
    }

    pub fn total(&self) -> W {
        self.w0 + self.w1
    }

    pub fn is_even(&self) -> bool {
        self.w0 == self.w1
    }

    pub fn map<V: Weight>(self, f: impl Fn(W) -> V) -> SubWedgePair<V> {
        SubWedgePair {
            w0: f(self.w0),
            w1: f(self.w1),
        }
    }
}

/// One internal node together with the sub-wedges of its children.
#[derive(Clone, Debug, PartialEq)]
pub struct StarInstance<W> {
    children: Vec<SubWedgePair<W>>,
    case: Case,
}

impl<W: Weight> StarInstance<W> {
    pub fn new(children: Vec<SubWedgePair<W>>, case: Case) -> Result<Self> {
        if children.is_empty() {
            return Err(Error::invalid("a star instance needs at least one child"));
        }
        for (i, c) in children.iter().enumerate() {
            if c.w0.is_negative() || c.w1.is_negative() {
                return Err(Error::invalid(format!(
                    "child {i} has a negative sub-wedge"
                )));
            }
            if c.w0.partial_cmp(&c.w0).is_none() || c.w1.partial_cmp(&c.w1).is_none() {
                return Err(Error::invalid(format!("child {i} has a NaN sub-wedge")));
            }
        }
        if case == Case::C1 {
            if let Some(i) = children.iter().position(|c| !c.is_even()) {
                return Err(Error::invalid(format!(
                    "case C1 requires even sub-wedges, child {i} is uneven"
                )));
            }
        }
        Ok(StarInstance { children, case })
    }

    /// Builds an instance from `(w0, w1)` tuples.
    pub fn from_pairs(pairs: &[(W, W)], case: Case) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(a, b)| SubWedgePair::new(a, b))
                .collect(),
            case,
        )
    }

    /// Builds an even instance from whole-wedge sizes (each split in half).
    pub fn even_from_wedges(wedges: &[W]) -> Result<Self> {
        let two = W::two();
        Self::new(
            wedges
                .iter()
                .map(|&w| SubWedgePair::even(w / two))
                .collect(),
            Case::C1,
        )
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self) -> &[SubWedgePair<W>] {
        &self.children
    }

    pub fn child(&self, i: usize) -> SubWedgePair<W> {
        self.children[i]
    }

    pub fn case(&self) -> Case {
        self.case
    }

    /// Same sub-wedges, different case tag.
    pub fn with_case(&self, case: Case) -> Result<Self> {
        Self::new(self.children.clone(), case)
    }

    pub fn total(&self) -> W {
        wsum(self.children.iter().map(|c| c.total()))
    }

    pub fn is_even(&self) -> bool {
        self.children.iter().all(|c| c.is_even())
    }

    /// Whether the sub-wedges add up to a full circle (within 1e-9).
    pub fn is_normalized(&self) -> bool {
        (self.total().as_f64() - std::f64::consts::TAU).abs() <= NORMALIZED_TOLERANCE
    }

    /// Sum of squares of all `2n` sub-wedges.
    pub fn sum_of_squares(&self) -> W {
        wsum(self.children.iter().map(|c| c.w0 * c.w0 + c.w1 * c.w1))
    }

    pub fn map<V: Weight>(&self, f: impl Fn(W) -> V) -> StarInstance<V> {
        StarInstance {
            children: self.children.iter().map(|c| c.map(&f)).collect(),
            case: self.case,
        }
    }

    /// Uniformly scales every sub-wedge.
    pub fn scaled(&self, factor: W) -> StarInstance<W> {
        self.map(|w| w * factor)
    }
}

impl<W: RealWeight> StarInstance<W> {
    /// Rescales so the sub-wedges sum to `2π`.
    ///
    /// Uniform scaling keeps the argmin/argmax of every criterion, so any
    /// optimal ordering of the input stays optimal. Already-normalized
    /// instances are returned unchanged.
    pub fn normalize(&self) -> Result<StarInstance<W>> {
        let total = self.total();
        if total <= W::zero() {
            return Err(Error::Degenerate("sub-wedges sum to zero".into()));
        }
        if self.is_normalized() {
            return Ok(self.clone());
        }
        Ok(self.scaled(W::tau() / total))
    }
}

/// A circular permutation of the children `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CircularOrdering(Vec<usize>);

impl CircularOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n {
                return Err(Error::invalid(format!(
                    "ordering entry {c} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::invalid(format!("ordering repeats child {c}")));
            }
        }
        Ok(CircularOrdering(order))
    }

    pub fn identity(n: usize) -> Self {
        CircularOrdering((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Child at circular position `i` (wraps around).
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.0[i % self.0.len()]
    }

    /// Rotated so that `child` comes first.
    pub fn rotated_to(&self, child: usize) -> Self {
        let k = self.0.iter().position(|&c| c == child).unwrap_or(0);
        let mut v = self.0.clone();
        v.rotate_left(k);
        CircularOrdering(v)
    }

    /// The mirror image (clockwise traversal), still starting at the same child.
    pub fn reflected(&self) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = Vec::with_capacity(self.0.len());
        v.push(self.0[0]);
        v.extend(self.0[1..].iter().rev());
        CircularOrdering(v)
    }

    /// Position of every child.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            pos[c] = i;
        }
        pos
    }
}

impl TryFrom<Vec<usize>> for CircularOrdering {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        CircularOrdering::new(v)
    }
}

impl From<CircularOrdering> for Vec<usize> {
    fn from(o: CircularOrdering) -> Self {
        o.0
    }
}

/// Sub-wedge assignment: `t[c]` is the index of the sub-wedge of child `c`
/// met first in a counterclockwise traversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u8>", into = "Vec<u8>")]
pub struct FlipAssignment(Vec<bool>);

impl FlipAssignment {
    pub fn new(bits: Vec<bool>) -> Self {
        FlipAssignment(bits)
    }

    pub fn zeros(n: usize) -> Self {
        FlipAssignment(vec![false; n])
    }

    /// Bits taken from the low `n` bits of `mask` (child 0 is the most
    /// significant, so numeric order is lexicographic order).
    pub fn from_mask(mask: u64, n: usize) -> Self {
        FlipAssignment((0..n).map(|c| (mask >> (n - 1 - c)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, child: usize) -> bool {
        self.0[child]
    }

    pub fn set(&mut self, child: usize, bit: bool) {
        self.0[child] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn complemented(&self) -> Self {
        FlipAssignment(self.0.iter().map(|b| !b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }
}

impl From<Vec<u8>> for FlipAssignment {
    fn from(v: Vec<u8>) -> Self {
        FlipAssignment(v.into_iter().map(|b| b != 0).collect())
    }
}

impl From<FlipAssignment> for Vec<u8> {
    fn from(t: FlipAssignment) -> Self {
        t.0.into_iter().map(u8::from).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_instances() {
        assert!(StarInstance::<f64>::from_pairs(&[], Case::C4).is_err());
        assert!(StarInstance::from_pairs(&[(1.0, -1.0)], Case::C4).is_err());
        assert!(StarInstance::from_pairs(&[(1.0, 2.0)], Case::C1).is_err());
        assert!(StarInstance::from_pairs(&[(2.0, 2.0)], Case::C1).is_ok());
    }

    #[test]
    fn normalize_examples() {
        let s = StarInstance::from_pairs(&[(1.0, 1.0), (1.0, 1.0)], Case::C1).unwrap();
        let n = s.normalize().unwrap();
        for c in n.children() {
            assert!((c.w0 - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
            assert!((c.w1 - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        }
        assert!(n.is_normalized());
        assert_eq!(n.normalize().unwrap(), n);

        let fig =
            StarInstance::from_pairs(&[(2.0, 3.0), (1.0, 7.0), (6.0, 2.0), (4.0, 2.0)], Case::C4)
                .unwrap();
        let nf = fig.normalize().unwrap();
        let k = std::f64::consts::TAU / 27.0;
        for (a, b) in fig.children().iter().zip(nf.children()) {
            assert!((a.w0 * k - b.w0).abs() < 1e-15);
            assert!((a.w1 * k - b.w1).abs() < 1e-15);
        }

        let zero = StarInstance::from_pairs(&[(0.0, 0.0)], Case::C1).unwrap();
        assert!(matches!(zero.normalize(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn ordering_validation() {
        assert!(CircularOrdering::new(vec![2, 0, 1]).is_ok());
        assert!(CircularOrdering::new(vec![0, 0, 1]).is_err());
        assert!(CircularOrdering::new(vec![0, 3, 1]).is_err());
        let o = CircularOrdering::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(o.rotated_to(0).as_slice(), &[0, 3, 1, 2]);
        assert_eq!(o.reflected().as_slice(), &[2, 1, 3, 0]);
        assert_eq!(o.at(5), 0);
    }

    #[test]
    fn flip_masks_are_lexicographic() {
        assert_eq!(
            FlipAssignment::from_mask(0b100, 3).bits(),
            &[true, false, false]
        );
        assert_eq!(
            FlipAssignment::from_mask(0b001, 3).bits(),
            &[false, false, true]
        );
    }
}
