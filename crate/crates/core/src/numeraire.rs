//! The numeraire test and its dual measures.
//!
//! `g` in a convex body `C` of nonnegative vectors is a numeraire when
//! it is strictly positive on `C` (nothing in `C` lives where `g`
//! vanishes) and some strictly positive probability `q` satisfies the
//! conditional-expectation inequality `E_q[f/g | g>0] <= 1` for every
//! `f` in `C`. On generators the inequality reads
//!
//! ```text
//!   Σ_{i: g_i>0} q_i f_i / g_i  <=  Σ_{i: g_i>0} q_i        (points)
//!   Σ_{i: g_i>0} q_i r_i / g_i  <=  0                       (rays)
//! ```
//!
//! which is a strict-feasibility LP over `q`. Feasible instances yield
//! a [`NumeraireCertificate`]; infeasible ones a multiplier certificate
//! from [`crate::ratlp`]. The measure constructions translate a
//! certificate into an equivalent measure `mu` with
//! `∫ g dmu = sup_C ∫ f dmu` and back, exactly.

use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::CoreError;
use crate::rat::Rat;
use crate::ratlp::{
    solve, solve_strict, Constraint, LinearProgram, LpOutcome, Relation, Sense, StrictCertificate,
    StrictFeasibilityProblem, StrictOutcome,
};
use crate::space::{Measure, Rv};

/// Witness that `q` certifies `g` as a numeraire: strictly positive,
/// sums to one, and every generator inequality holds, with the tight
/// point-generator indices recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeraireCertificate {
    pub q: Vec<Rat>,
    pub epsilon: Rat,
    #[serde(rename = "binding")]
    pub binding_generators: Vec<usize>,
}

impl NumeraireCertificate {
    /// Exact re-verification against the instance; no solver involved.
    pub fn verify(&self, g: &Rv, body: &ConvexBody) -> bool {
        if self.q.len() != g.len() || !self.q.iter().all(Rat::is_positive) {
            return false;
        }
        if self.q.iter().sum::<Rat>() != Rat::one() {
            return false;
        }
        let mass: Rat = mass_on_support(&self.q, g);
        let mut binding = Vec::new();
        for (idx, p) in body.points().iter().enumerate() {
            let Some(lhs) = conditional_sum(&self.q, g, p) else {
                return false;
            };
            if lhs > mass {
                return false;
            }
            if lhs == mass {
                binding.push(idx);
            }
        }
        for r in body.rays() {
            let Some(lhs) = conditional_sum(&self.q, g, r) else {
                return false;
            };
            if lhs.is_positive() {
                return false;
            }
        }
        binding == self.binding_generators
    }
}

/// `Σ_{g_i>0} q_i f_i / g_i`, or `None` when `f` is positive somewhere
/// `g` vanishes (then `f/g` is undefined and the inequality fails).
fn conditional_sum(q: &[Rat], g: &Rv, f: &Rv) -> Option<Rat> {
    let mut total = Rat::zero();
    for ((qi, gi), fi) in q.iter().zip(&g.0).zip(&f.0) {
        if gi.is_positive() {
            total += &(&(qi * fi) / gi);
        } else if !fi.is_zero() {
            return None;
        }
    }
    Some(total)
}

/// `Σ_{g_i>0} q_i = Q[g > 0]`.
fn mass_on_support(q: &[Rat], g: &Rv) -> Rat {
    q.iter()
        .zip(&g.0)
        .filter(|(_, gi)| gi.is_positive())
        .map(|(qi, _)| qi)
        .sum()
}

/// Where strict positivity fails: a generator with mass on `{g = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorRef {
    Point(usize),
    Ray(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NumeraireVerdict {
    /// `g` is a numeraire; the certificate re-verifies by substitution.
    Numeraire(NumeraireCertificate),
    /// The strict-feasibility LP is empty: no strictly positive `q`
    /// satisfies every generator inequality.
    NotNumeraire { farkas: StrictCertificate },
    /// Some element of `C` is positive where `g` vanishes.
    NotStrictlyPositive {
        generator: GeneratorRef,
        atom: usize,
    },
    /// `C = {0}` and `g = 0`: the excluded degenerate case.
    TrivialCase,
}

impl NumeraireVerdict {
    pub fn is_numeraire(&self) -> bool {
        matches!(self, NumeraireVerdict::Numeraire(_))
    }

    pub fn certificate(&self) -> Option<&NumeraireCertificate> {
        match self {
            NumeraireVerdict::Numeraire(cert) => Some(cert),
            _ => None,
        }
    }
}

/// Checks that every generator of `C` vanishes wherever `g` does.
/// By convexity and the conic structure it is enough to look at
/// generators. Errors when `g` is not an element of `C`.
pub fn is_strictly_positive_on(g: &Rv, body: &ConvexBody) -> Result<bool, CoreError> {
    if !body.contains(g)? {
        return Err(CoreError::NotInBody);
    }
    Ok(strict_positivity_violation(g, body).is_none())
}

fn strict_positivity_violation(g: &Rv, body: &ConvexBody) -> Option<(GeneratorRef, usize)> {
    let zero_atoms: Vec<usize> = (0..g.len()).filter(|&i| g.0[i].is_zero()).collect();
    for &atom in &zero_atoms {
        for (idx, p) in body.points().iter().enumerate() {
            if !p.0[atom].is_zero() {
                return Some((GeneratorRef::Point(idx), atom));
            }
        }
        for (idx, r) in body.rays().iter().enumerate() {
            if !r.0[atom].is_zero() {
                return Some((GeneratorRef::Ray(idx), atom));
            }
        }
    }
    None
}

/// A dominating element: `dominator >= f`, `dominator != f`, inside `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityWitness {
    pub dominator: Rv,
}

/// Is `f` maximal in `C`? Solves `max Σ_i h_i` over `h ∈ C`, `h >= f`;
/// `f` is maximal exactly when the optimum equals `Σ_i f_i` (domination
/// plus equal coordinate sums forces `h = f`). Otherwise the optimizer
/// — or a feasible ray step, when the program is unbounded — dominates.
pub fn is_maximal(
    f: &Rv,
    body: &ConvexBody,
) -> Result<(bool, Option<MaximalityWitness>), CoreError> {
    if !body.contains(f)? {
        return Err(CoreError::NotInBody);
    }
    let np = body.points().len();
    let nr = body.rays().len();
    let nv = np + nr;
    let n = body.dim();

    let mut constraints = Vec::with_capacity(n + 1 + nv);
    for atom in 0..n {
        let mut coeffs = Vec::with_capacity(nv);
        for p in body.points() {
            coeffs.push(p.0[atom].clone());
        }
        for r in body.rays() {
            coeffs.push(r.0[atom].clone());
        }
        constraints.push(Constraint::new(coeffs, Relation::Ge, f.0[atom].clone()));
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
    // Objective: total mass of the dominating payoff.
    let mut objective = Vec::with_capacity(nv);
    for p in body.points() {
        objective.push(p.0.iter().sum());
    }
    for r in body.rays() {
        objective.push(r.0.iter().sum());
    }
    let lp = LinearProgram {
        num_vars: nv,
        constraints,
        objective,
        sense: Sense::Maximize,
    };
    let payoff = |weights: &[Rat]| -> Rv {
        let mut h = Rv::zeros(n);
        for (w, p) in weights[..np].iter().zip(body.points()) {
            if !w.is_zero() {
                h = h.add(&p.scale(w));
            }
        }
        for (w, r) in weights[np..].iter().zip(body.rays()) {
            if !w.is_zero() {
                h = h.add(&r.scale(w));
            }
        }
        h
    };
    match solve(&lp)? {
        LpOutcome::Optimal { x, value } => {
            let total: Rat = f.0.iter().sum();
            if value == total {
                Ok((true, None))
            } else {
                Ok((
                    false,
                    Some(MaximalityWitness {
                        dominator: payoff(&x),
                    }),
                ))
            }
        }
        LpOutcome::Unbounded { x, ray } => {
            let dominator = payoff(&x).add(&payoff(&ray));
            Ok((false, Some(MaximalityWitness { dominator })))
        }
        LpOutcome::Infeasible { .. } => unreachable!("f itself is feasible"),
    }
}

/// The strict-feasibility program behind the numeraire test, exposed so
/// that certificates can be re-derived and re-checked independently.
pub fn numeraire_problem(g: &Rv, body: &ConvexBody) -> StrictFeasibilityProblem {
    let n = g.len();
    let support: Vec<bool> = g.0.iter().map(Rat::is_positive).collect();
    let mut constraints = Vec::with_capacity(body.points().len() + body.rays().len() + 1);
    constraints.push(Constraint::new(
        vec![Rat::one(); n],
        Relation::Eq,
        Rat::one(),
    ));
    for p in body.points() {
        // Σ_{g_i>0} q_i (f_i/g_i - 1) <= 0
        let coeffs: Vec<Rat> = (0..n)
            .map(|i| {
                if support[i] {
                    &(&p.0[i] / &g.0[i]) - &Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        constraints.push(Constraint::new(coeffs, Relation::Le, Rat::zero()));
    }
    for r in body.rays() {
        let coeffs: Vec<Rat> = (0..n)
            .map(|i| {
                if support[i] {
                    &r.0[i] / &g.0[i]
                } else {
                    Rat::zero()
                }
            })
            .collect();
        constraints.push(Constraint::new(coeffs, Relation::Le, Rat::zero()));
    }
    StrictFeasibilityProblem {
        num_vars: n,
        constraints,
        strict_vars: (0..n).collect(),
    }
}

/// Decides whether `g` is a numeraire of `C`.
///
/// `g` must belong to `C` (error otherwise); failing strict positivity
/// and the degenerate `C = {0}` case are reported as structured
/// verdicts rather than errors.
pub fn is_numeraire(g: &Rv, body: &ConvexBody) -> Result<NumeraireVerdict, CoreError> {
    if !body.contains(g)? {
        return Err(CoreError::NotInBody);
    }
    if let Some((generator, atom)) = strict_positivity_violation(g, body) {
        return Ok(NumeraireVerdict::NotStrictlyPositive { generator, atom });
    }
    if g.is_zero() {
        // Strict positivity of g on C plus g = 0 forces C = {0}.
        return Ok(NumeraireVerdict::TrivialCase);
    }
    let problem = numeraire_problem(g, body);
    match solve_strict(&problem)? {
        StrictOutcome::Feasible { x, epsilon } => {
            let mass = mass_on_support(&x, g);
            let mut binding = Vec::new();
            for (idx, p) in body.points().iter().enumerate() {
                if conditional_sum(&x, g, p) == Some(mass.clone()) {
                    binding.push(idx);
                }
            }
            Ok(NumeraireVerdict::Numeraire(NumeraireCertificate {
                q: x,
                epsilon,
                binding_generators: binding,
            }))
        }
        StrictOutcome::Infeasible { certificate } => Ok(NumeraireVerdict::NotNumeraire {
            farkas: certificate,
        }),
    }
}

/// The measure dual to a certificate: `w_i = q_i / g_i` on `{g > 0}`
/// and `w_i = q_i` on `{g = 0}`. Strictly positive whenever `q` is.
pub fn measure_from_certificate(q: &[Rat], g: &Rv) -> Result<Measure, CoreError> {
    check_probability(q)?;
    if q.len() != g.len() {
        return Err(CoreError::DimensionMismatch {
            expected: g.len(),
            got: q.len(),
        });
    }
    let weights = q
        .iter()
        .zip(&g.0)
        .map(|(qi, gi)| if gi.is_positive() { qi / gi } else { qi.clone() })
        .collect();
    Ok(Measure(weights))
}

/// The certificate dual to an equivalent measure: the mixture of
/// `g · mu` on the support of `g` and `mu` on `{g = 0}`, normalized by
/// `∫ g dmu + mu[{g = 0}]`. Inverts [`measure_from_certificate`]
/// exactly, and for any `mu` witnessing the support identity the result
/// satisfies every conditional-expectation inequality.
pub fn certificate_from_measure(mu: &Measure, g: &Rv) -> Result<Vec<Rat>, CoreError> {
    if mu.len() != g.len() {
        return Err(CoreError::DimensionMismatch {
            expected: g.len(),
            got: mu.len(),
        });
    }
    if !mu.is_equivalent() {
        return Err(CoreError::NegativeWeight);
    }
    if g.is_zero() {
        return Err(CoreError::ZeroNumeraire);
    }
    let raw: Vec<Rat> = mu
        .0
        .iter()
        .zip(&g.0)
        .map(|(wi, gi)| if gi.is_positive() { gi * wi } else { wi.clone() })
        .collect();
    let total: Rat = raw.iter().sum();
    let inv = total.recip()?;
    Ok(raw.into_iter().map(|v| v * &inv).collect())
}

/// The support identity `∫ g dmu = sup_{f ∈ C} ∫ f dmu`: true iff the
/// best point-generator integral equals `∫ g dmu` and no ray has a
/// positive integral (under an equivalent `mu`, any nonzero nonnegative
/// ray integrates positively, so bodies with rays always fail).
pub fn check_sup_identity(mu: &Measure, g: &Rv, body: &ConvexBody) -> Result<bool, CoreError> {
    let target = mu.integrate(g)?;
    let mut best: Option<Rat> = None;
    for p in body.points() {
        let v = mu.integrate(p)?;
        best = Some(match best {
            None => v,
            Some(b) => b.max(v),
        });
    }
    if best != Some(target) {
        return Ok(false);
    }
    for r in body.rays() {
        if mu.integrate(r)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the bounding superset
/// `K = {h >= 0 : h = 0 on {g=0}, E_q[h/g | g>0] <= 1}`.
pub fn in_superset_k(q: &[Rat], g: &Rv, h: &Rv) -> Result<bool, CoreError> {
    check_probability(q)?;
    if h.len() != g.len() || q.len() != g.len() {
        return Err(CoreError::DimensionMismatch {
            expected: g.len(),
            got: h.len(),
        });
    }
    match conditional_sum(q, g, h) {
        None => Ok(false),
        Some(lhs) => Ok(lhs <= mass_on_support(q, g)),
    }
}

fn check_probability(q: &[Rat]) -> Result<(), CoreError> {
    if q.is_empty() || !q.iter().all(Rat::is_positive) || q.iter().sum::<Rat>() != Rat::one() {
        return Err(CoreError::NotAProbability);
    }
    Ok(())
}
