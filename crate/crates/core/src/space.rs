//! Finite probability spaces and random variables over them.
//!
//! A space is a list of atoms together with a strictly positive
//! reference probability vector. Any strictly positive probability
//! vector represents the same equivalence class of measures, so "equal
//! null sets" degenerates to "all weights strictly positive".

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rat::Rat;

/// A finite probability space: `n` atoms carrying a strictly positive
/// reference probability vector that sums to one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct FiniteProbSpace {
    p: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    p: Vec<Rat>,
}

impl TryFrom<SpaceRepr> for FiniteProbSpace {
    type Error = CoreError;
    fn try_from(repr: SpaceRepr) -> Result<Self, CoreError> {
        FiniteProbSpace::new(repr.p)
    }
}

impl From<FiniteProbSpace> for SpaceRepr {
    fn from(space: FiniteProbSpace) -> Self {
        SpaceRepr { p: space.p }
    }
}

impl FiniteProbSpace {
    pub fn new(p: Vec<Rat>) -> Result<Self, CoreError> {
        if p.is_empty() {
            return Err(CoreError::NotAProbability);
        }
        if !p.iter().all(Rat::is_positive) {
            return Err(CoreError::NotAProbability);
        }
        if p.iter().sum::<Rat>() != Rat::one() {
            return Err(CoreError::NotAProbability);
        }
        Ok(FiniteProbSpace { p })
    }

    pub fn uniform(n: usize) -> Self {
        let w = Rat::new(1, n as i64).expect("n >= 1");
        FiniteProbSpace { p: vec![w; n] }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &[Rat] {
        &self.p
    }
}

/// A random variable: one exact rational value per atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rv(pub Vec<Rat>);

impl fmt::Debug for Rv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Rv {
    pub fn from_ints(values: &[i64]) -> Self {
        Rv(values.iter().map(|&v| Rat::from_int(v)).collect())
    }

    /// Parses a comma-separated list of rationals, e.g. `"1/10,1,10"`.
    pub fn parse_list(s: &str) -> Result<Self, CoreError> {
        s.split(',')
            .map(Rat::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(Rv)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn constant(n: usize, value: Rat) -> Self {
        Rv(vec![value; n])
    }

    pub fn ones(n: usize) -> Self {
        Rv::constant(n, Rat::one())
    }

    pub fn zeros(n: usize) -> Self {
        Rv::constant(n, Rat::zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Rv) -> bool {
        self.len() == other.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn scale(&self, factor: &Rat) -> Rv {
        Rv(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn add(&self, other: &Rv) -> Rv {
        debug_assert_eq!(self.len(), other.len());
        Rv(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Rv) -> Rv {
        debug_assert_eq!(self.len(), other.len());
        Rv(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Largest absolute coordinate; zero for the empty vector.
    pub fn sup_norm(&self) -> Rat {
        self.0
            .iter()
            .map(Rat::abs)
            .fold(Rat::zero(), |acc, v| acc.max(v))
    }

    fn check_len(&self, other: usize) -> Result<(), CoreError> {
        if self.len() != other {
            return Err(CoreError::DimensionMismatch {
                expected: other,
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// The convergence-in-probability metric `E_q[min(|f - h|, 1)]`.
///
/// Symmetric, bounded by 1, and zero exactly when `f = h` (the
/// reference vector is strictly positive, so nothing hides on a null
/// set).
pub fn dist_q(f: &Rv, h: &Rv, q: &FiniteProbSpace) -> Result<Rat, CoreError> {
    f.check_len(q.len())?;
    h.check_len(q.len())?;
    let one = Rat::one();
    let mut total = Rat::zero();
    for ((a, b), w) in f.0.iter().zip(&h.0).zip(q.weights()) {
        let d = (a - b).abs().min(one.clone());
        total += &(d * w);
    }
    Ok(total)
}

/// A nonnegative measure on the atoms. "Equivalent" to the reference
/// probability means all weights strictly positive; integration is the
/// weighted sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Measure(pub Vec<Rat>);

impl Measure {
    pub fn new(weights: Vec<Rat>) -> Result<Self, CoreError> {
        if weights.iter().any(Rat::is_negative) {
            return Err(CoreError::NegativeWeight);
        }
        Ok(Measure(weights))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_equivalent(&self) -> bool {
        self.0.iter().all(Rat::is_positive)
    }

    /// `∫ f dμ = Σ fᵢ wᵢ`.
    pub fn integrate(&self, f: &Rv) -> Result<Rat, CoreError> {
        f.check_len(self.len())?;
        Ok(f.0.iter().zip(&self.0).map(|(v, w)| v * w).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn space_validation() {
        assert!(FiniteProbSpace::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(FiniteProbSpace::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(FiniteProbSpace::new(vec![rat(1, 1), rat(0, 1)]).is_err());
        assert!(FiniteProbSpace::new(vec![]).is_err());
    }

    #[test]
    fn dist_q_identity_case() {
        let q = FiniteProbSpace::uniform(3);
        let f = Rv::from_ints(&[7, 0, 2]);
        assert_eq!(dist_q(&f, &f, &q).unwrap(), Rat::zero());
    }

    #[test]
    fn dist_q_hand_values() {
        // f=(0,0), h=(2,1/2), q=(1/2,1/2): 1/2*min(2,1) + 1/2*min(1/2,1) = 3/4
        let q = FiniteProbSpace::uniform(2);
        let f = Rv::from_ints(&[0, 0]);
        let h = Rv(vec![rat(2, 1), rat(1, 2)]);
        assert_eq!(dist_q(&f, &h, &q).unwrap(), rat(3, 4));

        // f=(1,1), h=(1,0), q=(1/3,2/3): 2/3
        let q = FiniteProbSpace::new(vec![rat(1, 3), rat(2, 3)]).unwrap();
        let f = Rv::from_ints(&[1, 1]);
        let h = Rv::from_ints(&[1, 0]);
        assert_eq!(dist_q(&f, &h, &q).unwrap(), rat(2, 3));
    }

    #[test]
    fn dist_q_dimension_mismatch() {
        let q = FiniteProbSpace::uniform(2);
        let f = Rv::from_ints(&[1, 1, 1]);
        let h = Rv::from_ints(&[1, 1]);
        assert!(dist_q(&f, &h, &q).is_err());
    }

    #[test]
    fn measure_integration() {
        let mu = Measure::new(vec![rat(1, 4), rat(1, 2)]).unwrap();
        let g = Rv::from_ints(&[2, 0]);
        assert_eq!(mu.integrate(&g).unwrap(), rat(1, 2));
    }

    #[test]
    fn json_shapes() {
        let space = FiniteProbSpace::uniform(2);
        assert_eq!(
            serde_json::to_string(&space).unwrap(),
            r#"{"p":["1/2","1/2"]}"#
        );
        let rv = Rv(vec![rat(1, 2), rat(3, 1)]);
        assert_eq!(serde_json::to_string(&rv).unwrap(), r#"["1/2","3"]"#);
        let bad: Result<FiniteProbSpace, _> = serde_json::from_str(r#"{"p":["1/2","1/3"]}"#);
        assert!(bad.is_err());
    }
}
