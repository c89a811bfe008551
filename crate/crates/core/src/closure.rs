//! The minimal short-sales enlargement of a convex body.
//!
//! For `g ∈ C`, the enlargement `cs_g(C)` is the smallest closed convex
//! superset of `C` that also contains `(1+δ)f − δg` whenever that
//! combination stays nonnegative (a leveraged long position in `f`
//! financed by shorting `g`). The headline equivalence: `g` is a
//! numeraire of `C` exactly when `cs_g(C)` is bounded.
//!
//! Certification is asymmetric by design. A bounded verdict rides on
//! the numeraire certificate `q` — the superset
//! `K = {h : h = 0 on {g=0}, E_q[h/g|g>0] <= 1}` is stable under the
//! extension and bounded, so the iteration below can only produce an
//! inner approximation of `cs_g(C)` and every iterate must stay inside
//! `K`. An unbounded verdict carries a derivation chain: convex
//! combinations and extensions of known members ending in an element
//! that dominates `g`, whence the recession ray `h − g`. The chain
//! re-verifies by plain arithmetic. When the search stalls the result
//! is inconclusive, never guessed.

use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::CoreError;
use crate::numeraire::{
    in_superset_k, is_numeraire, NumeraireCertificate, NumeraireVerdict,
};
use crate::rat::Rat;
use crate::ratlp::{solve, Constraint, LinearProgram, LpOutcome, Relation, Sense};
use crate::space::Rv;

/// `sup{δ >= 0 : (1+δ)f − δg >= 0}`: the largest admissible leverage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaMax {
    Finite(Rat),
    Infinite,
}

/// Computes the leverage cap: `min f_i/(g_i − f_i)` over atoms where
/// `g_i > f_i`, infinite when `f` dominates `g`.
pub fn delta_max(f: &Rv, g: &Rv) -> DeltaMax {
    let mut best: Option<Rat> = None;
    for (fi, gi) in f.0.iter().zip(&g.0) {
        if gi > fi {
            let bound = fi / &(gi - fi);
            best = Some(match best {
                None => bound,
                Some(b) => b.min(bound),
            });
        }
    }
    match best {
        Some(b) => DeltaMax::Finite(b),
        None => DeltaMax::Infinite,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExtensionResult {
    /// `δ_max = 0`, or `f = g`: the extension adds nothing.
    Fixed,
    /// The extreme admissible outcome `(1+δ_max)f − δ_max g`; it gains
    /// a zero coordinate at the binding atom.
    Point { point: Rv, delta_max: Rat },
    /// `f >= g`, `f != g`: leverage is unlimited in direction `f − g`.
    Ray { ray: Rv },
}

/// Extends `f` by the maximal short position in `g`.
pub fn cs3_extend(f: &Rv, g: &Rv) -> ExtensionResult {
    match delta_max(f, g) {
        DeltaMax::Infinite => {
            if f == g {
                ExtensionResult::Fixed
            } else {
                ExtensionResult::Ray { ray: f.sub(g) }
            }
        }
        DeltaMax::Finite(delta) => {
            if delta.is_zero() {
                ExtensionResult::Fixed
            } else {
                let one_plus = Rat::one() + &delta;
                let point = f.scale(&one_plus).sub(&g.scale(&delta));
                ExtensionResult::Point {
                    point,
                    delta_max: delta,
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureConfig {
    /// Iteration budget for the witness search.
    pub max_rounds: usize,
    /// Stop once an iterate generator exceeds `norm_cap_factor` times
    /// the largest generator sup-norm of the input body.
    pub norm_cap_factor: Rat,
    /// How many times per round the pairwise-midpoint pool is deepened
    /// before extension. Depth 1 takes midpoints of generator pairs.
    pub midpoint_depth: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_rounds: 50,
            norm_cap_factor: Rat::from_int(1 << 20),
            midpoint_depth: 1,
        }
    }
}

/// How one chain element arises from earlier ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "lowercase")]
pub enum Derivation {
    /// Point generator `index` of the input body.
    Generator { index: usize },
    /// Convex combination of earlier chain elements.
    Convex { combo: Vec<(Rat, usize)> },
    /// CS3 extension `(1+delta)·chain[source] − delta·g`.
    Extension { source: usize, delta: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainElement {
    pub element: Rv,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "from", rename_all = "lowercase")]
pub enum RaySource {
    /// The input body already carries this ray.
    BodyRay { index: usize },
    /// `chain[index] >= g` strictly somewhere; the ray is
    /// `chain[index] − g`.
    Dominator { index: usize },
}

/// A machine-checkable derivation that `cs_g(C)` is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnboundedWitness {
    pub chain: Vec<ChainElement>,
    pub ray: Rv,
    pub source: RaySource,
}

impl UnboundedWitness {
    /// Replays the chain with plain arithmetic: generators must match
    /// the body, combinations must recombine exactly, extensions must
    /// recompute and stay nonnegative, and the terminal ray must be the
    /// dominator gap (or a native ray). No solver involved.
    pub fn verify(&self, g: &Rv, body: &ConvexBody) -> bool {
        for (pos, link) in self.chain.iter().enumerate() {
            let ok = match &link.derivation {
                Derivation::Generator { index } => body
                    .points()
                    .get(*index)
                    .is_some_and(|p| *p == link.element),
                Derivation::Convex { combo } => {
                    if combo.is_empty()
                        || combo.iter().any(|(w, i)| w.is_negative() || *i >= pos)
                    {
                        false
                    } else if combo.iter().map(|(w, _)| w).sum::<Rat>() != Rat::one() {
                        false
                    } else {
                        let mut acc = Rv::zeros(g.len());
                        for (w, i) in combo {
                            acc = acc.add(&self.chain[*i].element.scale(w));
                        }
                        acc == link.element
                    }
                }
                Derivation::Extension { source, delta } => {
                    if *source >= pos || delta.is_negative() {
                        false
                    } else {
                        let base = &self.chain[*source].element;
                        let expect =
                            base.scale(&(Rat::one() + delta)).sub(&g.scale(delta));
                        expect == link.element && link.element.is_nonnegative()
                    }
                }
            };
            if !ok {
                return false;
            }
        }
        if !self.ray.is_nonnegative() || self.ray.is_zero() {
            return false;
        }
        match &self.source {
            RaySource::BodyRay { index } => {
                body.rays().get(*index).is_some_and(|r| *r == self.ray)
            }
            RaySource::Dominator { index } => {
                let Some(link) = self.chain.get(*index) else {
                    return false;
                };
                link.element.dominates(g)
                    && link.element != *g
                    && link.element.sub(g) == self.ray
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconclusiveDiagnostics {
    pub rounds: usize,
    pub max_norm: Rat,
    /// The iterates outgrew the norm cap: unboundedness is suspected
    /// but not certified.
    pub norm_cap_exceeded: bool,
    /// The iteration reached a fixed point without finding a witness.
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ClosureVerdict {
    Bounded {
        body: ConvexBody,
        certificate: NumeraireCertificate,
        rounds: usize,
        /// Every generator of every iterate passed the `K` containment
        /// check with the certificate.
        containment_checked: bool,
    },
    Unbounded {
        witness: UnboundedWitness,
        rounds: usize,
    },
    Inconclusive(InconclusiveDiagnostics),
}

impl ClosureVerdict {
    pub fn is_bounded(&self) -> bool {
        matches!(self, ClosureVerdict::Bounded { .. })
    }
}

/// Computes a verdict on `cs_g(C)`.
///
/// Runs the numeraire LP first. Feasible: iterate extensions to the
/// fixed point inside `K` and return it with the certificate.
/// Infeasible: search for an unbounded witness by extending generators,
/// midpoints of generator pairs, and LP-found dominators of `g`.
pub fn cs_closure(
    g: &Rv,
    body: &ConvexBody,
    config: &ClosureConfig,
) -> Result<ClosureVerdict, CoreError> {
    let verdict = is_numeraire(g, body)?;
    cs_closure_with_verdict(g, body, &verdict, config)
}

/// Same as [`cs_closure`] but reuses an already-computed LP verdict.
pub fn cs_closure_with_verdict(
    g: &Rv,
    body: &ConvexBody,
    verdict: &NumeraireVerdict,
    config: &ClosureConfig,
) -> Result<ClosureVerdict, CoreError> {
    match verdict {
        NumeraireVerdict::NotStrictlyPositive { .. } => Err(CoreError::NotStrictlyPositive),
        NumeraireVerdict::TrivialCase => Err(CoreError::ZeroNumeraire),
        NumeraireVerdict::Numeraire(cert) => {
            Ok(Iteration::new(g, body, config).run_bounded(cert))
        }
        NumeraireVerdict::NotNumeraire { .. } => {
            Ok(Iteration::new(g, body, config).run_unbounded_search())
        }
    }
}

struct Iteration<'a> {
    g: &'a Rv,
    body: &'a ConvexBody,
    config: &'a ClosureConfig,
    chain: Vec<ChainElement>,
    active: Vec<usize>,
    norm_cap: Rat,
    max_norm: Rat,
}

impl<'a> Iteration<'a> {
    fn new(g: &'a Rv, body: &'a ConvexBody, config: &'a ClosureConfig) -> Self {
        let chain: Vec<ChainElement> = body
            .points()
            .iter()
            .enumerate()
            .map(|(index, p)| ChainElement {
                element: p.clone(),
                derivation: Derivation::Generator { index },
            })
            .collect();
        let active = (0..chain.len()).collect();
        let base_norm = body
            .points()
            .iter()
            .map(Rv::sup_norm)
            .fold(Rat::zero(), Rat::max);
        let max_norm = base_norm.clone();
        let norm_cap = &config.norm_cap_factor * &base_norm;
        Iteration {
            g,
            body,
            config,
            chain,
            active,
            norm_cap,
            max_norm,
        }
    }

    fn push(&mut self, element: Rv, derivation: Derivation) -> usize {
        self.chain.push(ChainElement {
            element,
            derivation,
        });
        self.chain.len() - 1
    }

    fn active_elements(&self) -> Vec<Rv> {
        self.active
            .iter()
            .map(|&i| self.chain[i].element.clone())
            .collect()
    }

    /// Prunes `old actives ∪ additions` and remaps the survivors to
    /// chain indices. Returns whether the active set changed.
    fn merge(&mut self, additions: &[usize]) -> bool {
        let mut pool: Vec<usize> = self.active.clone();
        pool.extend_from_slice(additions);
        let pruned = ConvexBody::new(
            pool.iter().map(|&i| self.chain[i].element.clone()).collect(),
            Vec::new(),
        )
        .expect("pool is nonempty")
        .prune();
        let next: Vec<usize> = pruned
            .points()
            .iter()
            .map(|p| {
                *pool
                    .iter()
                    .find(|&&i| self.chain[i].element == *p)
                    .expect("pruned generator came from the pool")
            })
            .collect();
        let changed = {
            let mut old: Vec<&Rv> = self.active.iter().map(|&i| &self.chain[i].element).collect();
            let mut new: Vec<&Rv> = next.iter().map(|&i| &self.chain[i].element).collect();
            old.sort();
            new.sort();
            old != new
        };
        self.active = next;
        for &i in &self.active {
            let norm = self.chain[i].element.sup_norm();
            if norm > self.max_norm {
                self.max_norm = norm;
            }
        }
        changed
    }

    fn witness(&self, dominator_index: usize) -> UnboundedWitness {
        let ray = self.chain[dominator_index].element.sub(self.g);
        let (chain, root) = self.compact_chain(dominator_index);
        UnboundedWitness {
            chain,
            ray,
            source: RaySource::Dominator { index: root },
        }
    }

    /// Restricts the chain to the ancestors of `target`, preserving
    /// order, and returns the reindexed chain plus the new position of
    /// `target`.
    fn compact_chain(&self, target: usize) -> (Vec<ChainElement>, usize) {
        let mut needed = vec![false; self.chain.len()];
        let mut stack = vec![target];
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            match &self.chain[i].derivation {
                Derivation::Generator { .. } => {}
                Derivation::Convex { combo } => stack.extend(combo.iter().map(|(_, j)| *j)),
                Derivation::Extension { source, .. } => stack.push(*source),
            }
        }
        let mut remap = vec![usize::MAX; self.chain.len()];
        let mut chain = Vec::new();
        for (i, link) in self.chain.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            let derivation = match &link.derivation {
                Derivation::Generator { index } => Derivation::Generator { index: *index },
                Derivation::Convex { combo } => Derivation::Convex {
                    combo: combo.iter().map(|(w, j)| (w.clone(), remap[*j])).collect(),
                },
                Derivation::Extension { source, delta } => Derivation::Extension {
                    source: remap[*source],
                    delta: delta.clone(),
                },
            };
            remap[i] = chain.len();
            chain.push(ChainElement {
                element: link.element.clone(),
                derivation,
            });
        }
        (chain, remap[target])
    }

    /// Feasible branch: extensions only. The fixed point arrives within
    /// a couple of rounds because every extension point acquires a zero
    /// coordinate on the support of `g` and is therefore itself fixed.
    fn run_bounded(mut self, cert: &NumeraireCertificate) -> ClosureVerdict {
        let mut containment = self.check_containment(cert);
        let mut rounds = 0;
        while rounds < self.config.max_rounds {
            rounds += 1;
            let mut additions = Vec::new();
            for pos in 0..self.active.len() {
                let idx = self.active[pos];
                match cs3_extend(&self.chain[idx].element, self.g) {
                    ExtensionResult::Fixed => {}
                    ExtensionResult::Point { point, delta_max } => {
                        let at = self.push(
                            point,
                            Derivation::Extension {
                                source: idx,
                                delta: delta_max,
                            },
                        );
                        additions.push(at);
                    }
                    ExtensionResult::Ray { .. } => {
                        unreachable!(
                            "a numeraire certificate bounds the enlargement; \
                             a dominator of g contradicts it"
                        )
                    }
                }
            }
            let changed = self.merge(&additions);
            containment &= self.check_containment(cert);
            if !changed {
                let body = ConvexBody::new(self.active_elements(), Vec::new())
                    .expect("active set is nonempty")
                    .prune();
                return ClosureVerdict::Bounded {
                    body,
                    certificate: cert.clone(),
                    rounds,
                    containment_checked: containment,
                };
            }
        }
        ClosureVerdict::Inconclusive(InconclusiveDiagnostics {
            rounds: self.config.max_rounds,
            max_norm: self.max_norm.clone(),
            norm_cap_exceeded: false,
            stabilized: false,
        })
    }

    fn check_containment(&self, cert: &NumeraireCertificate) -> bool {
        self.active.iter().all(|&i| {
            in_superset_k(&cert.q, self.g, &self.chain[i].element).unwrap_or(false)
        })
    }

    /// Infeasible branch: hunt for a dominator of `g`. Native rays win
    /// immediately; otherwise extend generators, then midpoints of
    /// pairs (the extension map is not convexity-preserving, so
    /// generator-only iteration can stall), and finally probe the whole
    /// iterate for a convex combination dominating `g`.
    fn run_unbounded_search(mut self) -> ClosureVerdict {
        if let Some((index, ray)) = self.body.rays().first().map(|r| (0, r.clone())) {
            return ClosureVerdict::Unbounded {
                witness: UnboundedWitness {
                    chain: Vec::new(),
                    ray,
                    source: RaySource::BodyRay { index },
                },
                rounds: 0,
            };
        }
        let mut rounds = 0;
        while rounds < self.config.max_rounds {
            rounds += 1;
            let mut additions = Vec::new();

            for pos in 0..self.active.len() {
                let idx = self.active[pos];
                match self.extend_tracked(idx, &mut additions) {
                    Some(witness_at) => {
                        return ClosureVerdict::Unbounded {
                            witness: self.witness(witness_at),
                            rounds,
                        };
                    }
                    None => {}
                }
            }

            // Midpoint pool, deepened `midpoint_depth` times.
            let mut pool = self.active.clone();
            for _ in 0..self.config.midpoint_depth {
                let mut mids = Vec::new();
                for a in 0..pool.len() {
                    for b in (a + 1)..pool.len() {
                        let (ia, ib) = (pool[a], pool[b]);
                        let half = Rat::new(1, 2).expect("2 != 0");
                        let mid = self.chain[ia]
                            .element
                            .scale(&half)
                            .add(&self.chain[ib].element.scale(&half));
                        if self.chain.iter().any(|l| l.element == mid) {
                            continue;
                        }
                        let at = self.push(
                            mid,
                            Derivation::Convex {
                                combo: vec![(half.clone(), ia), (half, ib)],
                            },
                        );
                        mids.push(at);
                    }
                }
                for &m in &mids {
                    if let Some(witness_at) = self.extend_tracked(m, &mut additions) {
                        return ClosureVerdict::Unbounded {
                            witness: self.witness(witness_at),
                            rounds,
                        };
                    }
                }
                pool = mids;
                if pool.is_empty() {
                    break;
                }
            }

            let changed = self.merge(&additions);

            if let Some(witness_at) = self.probe_dominator() {
                return ClosureVerdict::Unbounded {
                    witness: self.witness(witness_at),
                    rounds,
                };
            }

            if self.max_norm > self.norm_cap {
                return ClosureVerdict::Inconclusive(InconclusiveDiagnostics {
                    rounds,
                    max_norm: self.max_norm.clone(),
                    norm_cap_exceeded: true,
                    stabilized: false,
                });
            }
            if !changed {
                return ClosureVerdict::Inconclusive(InconclusiveDiagnostics {
                    rounds,
                    max_norm: self.max_norm.clone(),
                    norm_cap_exceeded: false,
                    stabilized: true,
                });
            }
        }
        ClosureVerdict::Inconclusive(InconclusiveDiagnostics {
            rounds,
            max_norm: self.max_norm.clone(),
            norm_cap_exceeded: false,
            stabilized: false,
        })
    }

    /// Extends `chain[idx]`; pushes a point extension into `additions`,
    /// or returns the chain index of a dominator when a ray appears.
    fn extend_tracked(&mut self, idx: usize, additions: &mut Vec<usize>) -> Option<usize> {
        match cs3_extend(&self.chain[idx].element, self.g) {
            ExtensionResult::Fixed => None,
            ExtensionResult::Point { point, delta_max } => {
                if self.chain.iter().any(|l| l.element == point) {
                    return None;
                }
                let at = self.push(
                    point,
                    Derivation::Extension {
                        source: idx,
                        delta: delta_max,
                    },
                );
                additions.push(at);
                None
            }
            ExtensionResult::Ray { .. } => Some(idx),
        }
    }

    /// LP probe: `max Σ_i h_i` over `h` in the convex hull of the
    /// active elements with `h >= g`. A value above `Σ g_i` exhibits a
    /// dominator of `g`, recorded as a convex combination.
    fn probe_dominator(&mut self) -> Option<usize> {
        let k = self.active.len();
        let n = self.g.len();
        let elements: Vec<&Rv> = self.active.iter().map(|&i| &self.chain[i].element).collect();
        let mut constraints = Vec::with_capacity(n + 1 + k);
        for atom in 0..n {
            let coeffs: Vec<Rat> = elements.iter().map(|e| e.0[atom].clone()).collect();
            constraints.push(Constraint::new(coeffs, Relation::Ge, self.g.0[atom].clone()));
        }
        constraints.push(Constraint::new(
            vec![Rat::one(); k],
            Relation::Eq,
            Rat::one(),
        ));
        for j in 0..k {
            let mut e = vec![Rat::zero(); k];
            e[j] = Rat::one();
            constraints.push(Constraint::new(e, Relation::Ge, Rat::zero()));
        }
        let objective: Vec<Rat> = elements.iter().map(|e| e.0.iter().sum()).collect();
        let lp = LinearProgram {
            num_vars: k,
            constraints,
            objective,
            sense: Sense::Maximize,
        };
        match solve(&lp) {
            Ok(LpOutcome::Optimal { x, value }) => {
                let total: Rat = self.g.0.iter().sum();
                if value <= total {
                    return None;
                }
                let mut h = Rv::zeros(n);
                let mut combo = Vec::new();
                for (w, &idx) in x.iter().zip(&self.active) {
                    if !w.is_zero() {
                        h = h.add(&self.chain[idx].element.scale(w));
                        combo.push((w.clone(), idx));
                    }
                }
                Some(self.push(h, Derivation::Convex { combo }))
            }
            // g need not lie in the hull of the active elements alone
            // when the input body had rays, but that case never reaches
            // the probe; infeasible LPs here mean no dominator.
            _ => None,
        }
    }
}

/// How the two verdicts line up on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Consistency {
    /// Feasible+Bounded (with containment) or Infeasible+Unbounded.
    Consistent,
    /// Infeasible LP but the witness search stalled; not a
    /// contradiction, just unfinished.
    Unresolved,
    /// Anything else; indicates an implementation defect.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub lp_verdict: NumeraireVerdict,
    pub closure: ClosureVerdict,
    pub consistency: Consistency,
}

/// Runs both sides of the equivalence and reports whether they agree.
pub fn verify_theorem(
    g: &Rv,
    body: &ConvexBody,
    config: &ClosureConfig,
) -> Result<ConsistencyReport, CoreError> {
    let lp_verdict = is_numeraire(g, body)?;
    let closure = cs_closure_with_verdict(g, body, &lp_verdict, config)?;
    let consistency = match (&lp_verdict, &closure) {
        (
            NumeraireVerdict::Numeraire(cert),
            ClosureVerdict::Bounded {
                containment_checked,
                certificate,
                ..
            },
        ) => {
            if *containment_checked && certificate == cert {
                Consistency::Consistent
            } else {
                Consistency::Inconsistent
            }
        }
        (NumeraireVerdict::NotNumeraire { .. }, ClosureVerdict::Unbounded { witness, .. }) => {
            if witness.verify(g, body) {
                Consistency::Consistent
            } else {
                Consistency::Inconsistent
            }
        }
        (NumeraireVerdict::NotNumeraire { .. }, ClosureVerdict::Inconclusive(_)) => {
            Consistency::Unresolved
        }
        _ => Consistency::Inconsistent,
    };
    Ok(ConsistencyReport {
        lp_verdict,
        closure,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn body(points: &[&[i64]]) -> ConvexBody {
        ConvexBody::from_points(points.iter().map(|p| Rv::from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn delta_max_examples() {
        let g = Rv::from_ints(&[1, 1]);
        assert_eq!(
            delta_max(&Rv::from_ints(&[2, 0]), &g),
            DeltaMax::Finite(Rat::zero())
        );
        assert_eq!(
            delta_max(&Rv(vec![rat(3, 2), rat(1, 2)]), &g),
            DeltaMax::Finite(Rat::one())
        );
        assert_eq!(delta_max(&Rv::from_ints(&[2, 1]), &g), DeltaMax::Infinite);
    }

    #[test]
    fn cs3_extension_cases() {
        let g = Rv::from_ints(&[1, 1]);
        assert_eq!(cs3_extend(&Rv::from_ints(&[2, 0]), &g), ExtensionResult::Fixed);
        assert_eq!(
            cs3_extend(&Rv(vec![rat(3, 2), rat(1, 2)]), &g),
            ExtensionResult::Point {
                point: Rv::from_ints(&[2, 0]),
                delta_max: Rat::one(),
            }
        );
        assert_eq!(
            cs3_extend(&Rv::from_ints(&[2, 1]), &g),
            ExtensionResult::Ray {
                ray: Rv::from_ints(&[1, 0])
            }
        );
        assert_eq!(cs3_extend(&g, &g), ExtensionResult::Fixed);
    }

    #[test]
    fn bounded_segment_is_its_own_fixed_point() {
        let g = Rv::from_ints(&[1, 1]);
        let c = body(&[&[1, 1], &[2, 0]]);
        match cs_closure(&g, &c, &ClosureConfig::default()).unwrap() {
            ClosureVerdict::Bounded {
                body: fixed,
                certificate,
                containment_checked,
                ..
            } => {
                assert_eq!(fixed.points(), c.points());
                assert!(containment_checked);
                assert!(certificate.verify(&g, &c));
            }
            other => panic!("expected bounded, got {other:?}"),
        }
    }

    #[test]
    fn singleton_is_fixed() {
        let g = Rv::from_ints(&[2, 3]);
        let c = ConvexBody::singleton(g.clone()).unwrap();
        match cs_closure(&g, &c, &ClosureConfig::default()).unwrap() {
            ClosureVerdict::Bounded { body: fixed, .. } => {
                assert_eq!(fixed.points(), &[g.clone()]);
            }
            other => panic!("expected bounded, got {other:?}"),
        }
    }

    #[test]
    fn dominated_g_gives_immediate_ray() {
        let g = Rv::from_ints(&[1, 1]);
        let c = body(&[&[1, 1], &[2, 1]]);
        match cs_closure(&g, &c, &ClosureConfig::default()).unwrap() {
            ClosureVerdict::Unbounded { witness, rounds } => {
                assert_eq!(rounds, 1);
                assert_eq!(witness.ray, Rv::from_ints(&[1, 0]));
                assert_eq!(witness.chain.len(), 1);
                assert_eq!(
                    witness.chain[0].derivation,
                    Derivation::Generator { index: 1 }
                );
                assert!(witness.verify(&g, &c));
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn native_ray_is_the_witness() {
        let g = Rv::from_ints(&[1, 1]);
        let c = ConvexBody::new(
            vec![Rv::from_ints(&[1, 1])],
            vec![Rv::from_ints(&[0, 1])],
        )
        .unwrap();
        match cs_closure(&g, &c, &ClosureConfig::default()).unwrap() {
            ClosureVerdict::Unbounded { witness, rounds } => {
                assert_eq!(rounds, 0);
                assert_eq!(witness.source, RaySource::BodyRay { index: 0 });
                assert!(witness.verify(&g, &c));
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn closure_requires_strict_positivity() {
        let g = Rv::from_ints(&[2, 0]);
        let c = body(&[&[2, 0], &[1, 1]]);
        assert_eq!(
            cs_closure(&g, &c, &ClosureConfig::default()),
            Err(CoreError::NotStrictlyPositive)
        );
    }

    #[test]
    fn theorem_report_consistent_both_ways() {
        let g = Rv::from_ints(&[1, 1]);
        let cfg = ClosureConfig::default();

        let report = verify_theorem(&g, &body(&[&[1, 1], &[2, 0]]), &cfg).unwrap();
        assert_eq!(report.consistency, Consistency::Consistent);
        assert!(report.lp_verdict.is_numeraire());

        let report = verify_theorem(&g, &body(&[&[1, 1], &[2, 1]]), &cfg).unwrap();
        assert_eq!(report.consistency, Consistency::Consistent);
        assert!(!report.lp_verdict.is_numeraire());
    }

    #[test]
    fn deterministic_runs() {
        let g = Rv::from_ints(&[1, 1, 1]);
        let c = body(&[&[1, 1, 1], &[2, 0, 1], &[0, 2, 1]]);
        let cfg = ClosureConfig::default();
        let a = cs_closure(&g, &c, &cfg).unwrap();
        let b = cs_closure(&g, &c, &cfg).unwrap();
        assert_eq!(a, b);
    }

    // A dominator that only appears as a convex combination: neither
    // (3,0) nor (0,3) dominates the all-ones g, but their midpoint
    // (3/2,3/2) does.
    #[test]
    fn combination_dominator_is_found() {
        let g = Rv::from_ints(&[1, 1]);
        let c = ConvexBody::from_points(vec![
            g.clone(),
            Rv::from_ints(&[3, 0]),
            Rv::from_ints(&[0, 3]),
        ])
        .unwrap();
        match cs_closure(&g, &c, &ClosureConfig::default()).unwrap() {
            ClosureVerdict::Unbounded { witness, .. } => {
                assert!(witness.verify(&g, &c));
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }
}
