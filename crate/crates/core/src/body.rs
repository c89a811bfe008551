//! Polyhedral convex subsets of the nonnegative orthant in
//! V-representation: the convex hull of finitely many points plus the
//! conic hull of finitely many rays.
//!
//! Membership is an exact LP feasibility question, pruning removes
//! redundant generators, and boundedness is simply "no rays" once the
//! body is pruned (on a finite space, boundedness in probability, norm
//! boundedness and a trivial recession cone all coincide).

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rat::Rat;
use crate::ratlp::{solve, Constraint, LinearProgram, LpOutcome, Relation, Sense};
use crate::space::Rv;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub struct ConvexBody {
    points: Vec<Rv>,
    rays: Vec<Rv>,
}

#[derive(Serialize, Deserialize)]
struct BodyRepr {
    points: Vec<Rv>,
    #[serde(default)]
    rays: Vec<Rv>,
}

impl TryFrom<BodyRepr> for ConvexBody {
    type Error = CoreError;
    fn try_from(repr: BodyRepr) -> Result<Self, CoreError> {
        ConvexBody::new(repr.points, repr.rays)
    }
}

impl From<ConvexBody> for BodyRepr {
    fn from(body: ConvexBody) -> Self {
        BodyRepr {
            points: body.points,
            rays: body.rays,
        }
    }
}

impl ConvexBody {
    /// Builds `conv(points) + cone(rays)`.
    ///
    /// Requires at least one point (the set `{0}` is allowed but the
    /// empty set is not), all generators nonnegative, rays nonzero, and
    /// consistent dimensions.
    pub fn new(points: Vec<Rv>, rays: Vec<Rv>) -> Result<Self, CoreError> {
        let Some(first) = points.first() else {
            return Err(CoreError::EmptyBody);
        };
        let n = first.len();
        for p in &points {
            if p.len() != n {
                return Err(CoreError::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
            if !p.is_nonnegative() {
                return Err(CoreError::BodyOutsideOrthant);
            }
        }
        for r in &rays {
            if r.len() != n {
                return Err(CoreError::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            if !r.is_nonnegative() || r.is_zero() {
                return Err(CoreError::BadRay);
            }
        }
        Ok(ConvexBody { points, rays })
    }

    pub fn from_points(points: Vec<Rv>) -> Result<Self, CoreError> {
        ConvexBody::new(points, Vec::new())
    }

    pub fn singleton(point: Rv) -> Result<Self, CoreError> {
        ConvexBody::new(vec![point], Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Rv] {
        &self.points
    }

    pub fn rays(&self) -> &[Rv] {
        &self.rays
    }

    /// True once no rays remain; call on pruned bodies.
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Exact membership: is `f = Σ λ_j p_j + Σ μ_k r_k` solvable with
    /// `λ >= 0`, `Σλ = 1`, `μ >= 0`?
    pub fn contains(&self, f: &Rv) -> Result<bool, CoreError> {
        Ok(self.express(f)?.is_some())
    }

    /// Like [`ConvexBody::contains`], but returns the convex/conic
    /// weights `(λ, μ)` when the element belongs to the body.
    pub fn express(&self, f: &Rv) -> Result<Option<(Vec<Rat>, Vec<Rat>)>, CoreError> {
        if f.len() != self.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim(),
                got: f.len(),
            });
        }
        let np = self.points.len();
        let nr = self.rays.len();
        let nv = np + nr;
        let mut constraints = Vec::with_capacity(self.dim() + 1 + nv);
        for atom in 0..self.dim() {
            let mut coeffs = Vec::with_capacity(nv);
            for p in &self.points {
                coeffs.push(p.0[atom].clone());
            }
            for r in &self.rays {
                coeffs.push(r.0[atom].clone());
            }
            constraints.push(Constraint::new(coeffs, Relation::Eq, f.0[atom].clone()));
        }
        let mut ones = vec![Rat::zero(); nv];
        for v in ones.iter_mut().take(np) {
            *v = Rat::one();
        }
        constraints.push(Constraint::new(ones, Relation::Eq, Rat::one()));
        for j in 0..nv {
            let mut e = vec![Rat::zero(); nv];
            e[j] = Rat::one();
            constraints.push(Constraint::new(e, Relation::Ge, Rat::zero()));
        }
        let lp = LinearProgram {
            num_vars: nv,
            constraints,
            objective: vec![Rat::zero(); nv],
            sense: Sense::Minimize,
        };
        match solve(&lp)? {
            LpOutcome::Optimal { x, .. } => {
                let (lambda, mu) = x.split_at(np);
                Ok(Some((lambda.to_vec(), mu.to_vec())))
            }
            LpOutcome::Infeasible { .. } => Ok(None),
            LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
        }
    }

    /// Removes redundant generators without changing the represented
    /// set, and sorts what remains lexicographically so equal bodies
    /// print identically.
    ///
    /// Rays are first normalized to unit coordinate sum, which makes
    /// "same direction" literal equality. The body lies in the
    /// nonnegative orthant, hence is pointed, so the surviving
    /// generators are exactly the extreme points and extreme rays.
    pub fn prune(&self) -> ConvexBody {
        let mut rays: Vec<Rv> = self
            .rays
            .iter()
            .map(|r| {
                let total: Rat = r.0.iter().sum();
                r.scale(&total.recip().expect("rays are nonzero"))
            })
            .collect();
        rays.sort();
        rays.dedup();
        // A ray is redundant when it is a nonnegative combination of
        // the others.
        let mut keep_rays: Vec<Rv> = Vec::with_capacity(rays.len());
        for i in 0..rays.len() {
            let others: Vec<Rv> = keep_rays
                .iter()
                .chain(rays[i + 1..].iter())
                .cloned()
                .collect();
            if others.is_empty() || !in_cone(&rays[i], &others) {
                keep_rays.push(rays[i].clone());
            }
        }

        let mut points = self.points.clone();
        points.sort();
        points.dedup();
        let mut keep_points: Vec<Rv> = Vec::with_capacity(points.len());
        for i in 0..points.len() {
            let others: Vec<Rv> = keep_points
                .iter()
                .chain(points[i + 1..].iter())
                .cloned()
                .collect();
            if others.is_empty() {
                keep_points.push(points[i].clone());
                continue;
            }
            let reduced = ConvexBody {
                points: others,
                rays: keep_rays.clone(),
            };
            if !reduced
                .contains(&points[i])
                .expect("dimensions agree within one body")
            {
                keep_points.push(points[i].clone());
            }
        }
        ConvexBody {
            points: keep_points,
            rays: keep_rays,
        }
    }
}

/// Is `r` a nonnegative combination of `gens`?
fn in_cone(r: &Rv, gens: &[Rv]) -> bool {
    let n = r.len();
    let k = gens.len();
    let mut constraints = Vec::with_capacity(n + k);
    for atom in 0..n {
        let coeffs: Vec<Rat> = gens.iter().map(|g| g.0[atom].clone()).collect();
        constraints.push(Constraint::new(coeffs, Relation::Eq, r.0[atom].clone()));
    }
    for j in 0..k {
        let mut e = vec![Rat::zero(); k];
        e[j] = Rat::one();
        constraints.push(Constraint::new(e, Relation::Ge, Rat::zero()));
    }
    let lp = LinearProgram {
        num_vars: k,
        constraints,
        objective: vec![Rat::zero(); k],
        sense: Sense::Minimize,
    };
    matches!(solve(&lp), Ok(LpOutcome::Optimal { .. }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn body(points: &[&[i64]]) -> ConvexBody {
        ConvexBody::from_points(points.iter().map(|p| Rv::from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn membership_segment() {
        let c = body(&[&[1, 1], &[2, 0]]);
        let mid = Rv(vec![rat(3, 2), rat(1, 2)]);
        assert!(c.contains(&mid).unwrap());
        assert!(!c.contains(&Rv::from_ints(&[2, 1])).unwrap());
    }

    #[test]
    fn membership_with_ray() {
        let c = ConvexBody::new(
            vec![Rv::from_ints(&[1, 1])],
            vec![Rv::from_ints(&[1, 0])],
        )
        .unwrap();
        assert!(c.contains(&Rv::from_ints(&[5, 1])).unwrap());
        assert!(!c.contains(&Rv::from_ints(&[5, 2])).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let c = body(&[&[1, 1]]);
        assert!(c.contains(&Rv::from_ints(&[1, 1, 1])).is_err());
    }

    #[test]
    fn prune_removes_midpoint_and_duplicates() {
        let c = ConvexBody::from_points(vec![
            Rv::from_ints(&[1, 1]),
            Rv::from_ints(&[1, 1]),
            Rv(vec![rat(3, 2), rat(1, 2)]),
            Rv::from_ints(&[2, 0]),
        ])
        .unwrap();
        let pruned = c.prune();
        assert_eq!(
            pruned.points(),
            &[Rv::from_ints(&[1, 1]), Rv::from_ints(&[2, 0])]
        );
        assert!(pruned.rays().is_empty());
    }

    #[test]
    fn prune_normalizes_parallel_rays() {
        let c = ConvexBody::new(
            vec![Rv::from_ints(&[0, 0])],
            vec![Rv::from_ints(&[1, 0]), Rv::from_ints(&[2, 0])],
        )
        .unwrap();
        let pruned = c.prune();
        assert_eq!(pruned.rays(), &[Rv::from_ints(&[1, 0])]);
    }

    #[test]
    fn prune_drops_conically_redundant_ray() {
        let c = ConvexBody::new(
            vec![Rv::from_ints(&[0, 0])],
            vec![
                Rv::from_ints(&[1, 0]),
                Rv::from_ints(&[0, 1]),
                Rv::from_ints(&[1, 1]),
            ],
        )
        .unwrap();
        let pruned = c.prune();
        assert_eq!(
            pruned.rays(),
            &[
                Rv(vec![rat(0, 1), rat(1, 1)]),
                Rv(vec![rat(1, 1), rat(0, 1)])
            ]
        );
    }

    #[test]
    fn prune_is_idempotent_on_minimal_body() {
        let c = body(&[&[1, 1], &[2, 0]]);
        let once = c.prune();
        assert_eq!(once, once.prune());
        assert_eq!(once.points(), c.points());
    }

    #[test]
    fn boundedness() {
        assert!(body(&[&[1, 1], &[2, 0]]).prune().is_bounded());
        assert!(body(&[&[0, 0]]).prune().is_bounded());
        let with_ray =
            ConvexBody::new(vec![Rv::from_ints(&[1, 1])], vec![Rv::from_ints(&[1, 0])]).unwrap();
        assert!(!with_ray.prune().is_bounded());
    }

    #[test]
    fn empty_body_rejected() {
        assert!(ConvexBody::from_points(vec![]).is_err());
    }

    #[test]
    fn negative_generators_rejected() {
        assert!(ConvexBody::from_points(vec![Rv::from_ints(&[-1, 0])]).is_err());
        assert!(
            ConvexBody::new(vec![Rv::from_ints(&[0, 0])], vec![Rv::from_ints(&[0, 0])]).is_err()
        );
    }

    #[test]
    fn json_round_trip() {
        let c = ConvexBody::new(
            vec![Rv(vec![rat(1, 2), rat(1, 1)])],
            vec![Rv::from_ints(&[1, 0])],
        )
        .unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"points":[["1/2","1"]],"rays":[["1","0"]]}"#);
        let back: ConvexBody = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    // Brute-force grid oracle: every grid combination of the generators
    // (λ on a 1/64 mesh of the simplex, μ on a coarse grid for rays)
    // must be contained; this is the sound direction, exercised on
    // small instances.
    #[test]
    fn grid_combinations_are_members() {
        let c = ConvexBody::new(
            vec![
                Rv(vec![rat(1, 2), rat(0, 1), rat(1, 4)]),
                Rv::from_ints(&[2, 1, 0]),
                Rv::from_ints(&[0, 0, 3]),
            ],
            vec![Rv::from_ints(&[1, 0, 1])],
        )
        .unwrap();
        let mesh = 8; // coarse sub-mesh of 1/64 for runtime; values stay on the 1/64 grid
        for a in 0..=mesh {
            for b in 0..=(mesh - a) {
                let cw = mesh - a - b;
                for mu in [0i64, 1, 7] {
                    let l = [rat(a, mesh), rat(b, mesh), rat(cw, mesh)];
                    let mut f = Rv::zeros(3);
                    for (w, p) in l.iter().zip(c.points()) {
                        f = f.add(&p.scale(w));
                    }
                    f = f.add(&c.rays()[0].scale(&rat(mu, 4)));
                    assert!(c.contains(&f).unwrap(), "grid point {f:?} must be inside");
                }
            }
        }
    }
}
