//! Ring-property decision procedures and the characterization-check
//! harness.
//!
//! The property side decides Cohen-Macaulayness (depth against dimension),
//! Gorensteinness (type one), and sequential Cohen-Macaulayness (every
//! dimension-filtration quotient Cohen-Macaulay), and computes the socle
//! invariants r_j as the types of the filtration quotients. The harness
//! side replays known characterizations of these properties on a presented
//! ring: each check is identified by a stable id, constructs witness
//! parameter ideals, computes both sides of the claimed identity, and
//! reports a verdict. Checks are empirical, never proofs: a `confirmed`
//! verdict means every tested witness satisfied the conclusion while the
//! ring satisfied the hypothesis, and `refuted_as_expected` means a ring
//! that fails the hypothesis produced a witness that fails the conclusion.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{dimension_filtration, distinguished_sop, ParameterSystem};
use crate::parse::parse_polynomial;
use crate::ring::{random_form, RIdeal, RingPresentation, SubquotientModule};
use crate::socle_hilbert::{
    check_socle_stability, check_stable_socle_square, hilbert_coefficients,
    index_of_reducibility, noetherian_coefficients, socle_function_values, socle_ideal,
};

/// Ids accepted by [`verify_theorem`].
pub const THEOREM_IDS: [&str; 13] = [
    "thm_6_1",
    "thm_6_2",
    "thm_6_3",
    "thm_6_7",
    "thm_6_8",
    "prop_P2_7",
    "lemma_3_700",
    "prop_coe",
    "thm_3_800",
    "thm_T5_3_ii",
    "thm_5800_ii",
    "lemma_5_1",
    "fact_F2_5_4",
];

const DEPTH_TRIALS: usize = 3;
const DEPTH_DEGREES: [u32; 2] = [1, 2];

/// Dimension, depth, Cohen-Macaulay type and related flags for one
/// filtration quotient C_i = D_i / D_{i-1}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientDetail {
    pub step: usize,
    pub dimension: usize,
    pub depth: usize,
    pub is_cm: bool,
    pub cm_type: Option<u64>,
}

/// A distinguished parameter system deep enough that its socle index
/// equals the sum of the socle invariants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeepWitness {
    pub generators: Vec<String>,
    pub degree: u32,
    pub socle_index: u64,
}

/// Everything the property pipeline decides about one ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyReport {
    pub ring_id: String,
    pub dimension: usize,
    pub depth: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
    pub is_seq_cm: bool,
    pub cm_type: Option<u64>,
    pub socle_invariants: Option<BTreeMap<usize, u64>>,
    pub quotients: Vec<QuotientDetail>,
    pub deep_witness: Option<DeepWitness>,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    RefutedAsExpected,
    Inconclusive,
}

/// One witness comparison: the predicted and computed sides of the
/// conclusion for a single constructed ideal or index.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub witness: String,
    pub predicted: String,
    pub computed: String,
    pub holds: bool,
    pub first_failing_n: Option<u32>,
}

/// Outcome of replaying one characterization on one ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub ring_id: String,
    pub hypothesis_holds: bool,
    pub verdict: Verdict,
    pub seed: u64,
    pub sop_degree: u32,
    pub sops_requested: usize,
    pub n_cap: u32,
    pub checks: Vec<WitnessCheck>,
    pub notes: Vec<String>,
}

/// Knobs for the verification harness.
#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    pub seed: u64,
    pub sops: usize,
    pub n_cap: u32,
    pub degree: u32,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            seed: 0,
            sops: 5,
            n_cap: 12,
            degree: 2,
        }
    }
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9) ^ a.rotate_left(17);
    h = h.wrapping_mul(0x94d0_49bb_1331_11eb) ^ b.rotate_left(31);
    h ^ (h >> 27)
}

fn alt(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn binom_u64(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as u64
}

/// Depth of R as a module over itself, then the CM decision depth = dim.
pub fn is_cohen_macaulay(ring: &Arc<RingPresentation>, seed: u64) -> Result<(bool, usize)> {
    let full = SubquotientModule::full_ring(ring)?;
    let depth = full.depth(DEPTH_TRIALS, &DEPTH_DEGREES, mix(seed, 0, 0))?;
    Ok((depth == ring.dimension(), depth))
}

/// Socle length of a module modulo a randomly drawn parameter ideal of the
/// module. For Cohen-Macaulay modules the answer is independent of the
/// draw, so this computes the Cohen-Macaulay type.
fn module_socle_type(
    ring: &Arc<RingPresentation>,
    module: &SubquotientModule,
    dim: usize,
    seed: u64,
) -> Result<u64> {
    if dim == 0 {
        return index_of_reducibility(&RIdeal::zero(ring), module);
    }
    for attempt in 0..60u64 {
        let degree = if attempt < 30 { 1 } else { 2 };
        let mut elements = Vec::with_capacity(dim);
        for j in 0..dim {
            elements.push(random_form(ring, degree, None, mix(seed, attempt, j as u64))?);
        }
        let j = RIdeal::new(ring, elements)?;
        let cut = j.product(module.top())?.sum(module.bottom())?;
        let quotient = SubquotientModule::new(module.top().clone(), cut)?;
        if quotient.dimension()? != Some(0) {
            continue;
        }
        return index_of_reducibility(&j, module);
    }
    Err(Error::SopConstruction {
        attempts: 60,
        context: "random draws never cut the module down to finite length".into(),
    })
}

/// Cohen-Macaulay type r(R), the socle length modulo any parameter ideal.
pub fn cm_type(ring: &Arc<RingPresentation>, seed: u64) -> Result<u64> {
    let (cm, _) = is_cohen_macaulay(ring, seed)?;
    if !cm {
        return Err(Error::InvalidArgument(
            "Cohen-Macaulay type is only defined here for Cohen-Macaulay rings".into(),
        ));
    }
    let full = SubquotientModule::full_ring(ring)?;
    module_socle_type(ring, &full, ring.dimension(), mix(seed, 1, 0))
}

/// Cohen-Macaulay of type one.
pub fn is_gorenstein(ring: &Arc<RingPresentation>, seed: u64) -> Result<bool> {
    let (cm, _) = is_cohen_macaulay(ring, seed)?;
    if !cm {
        return Ok(false);
    }
    Ok(cm_type(ring, seed)? == 1)
}

/// Runs the full property pipeline on one ring: depth, CM and Gorenstein
/// decisions, the per-quotient filtration detail behind the sequentially
/// CM decision, the socle invariants when they are defined, and a deep
/// distinguished witness system.
///
/// Non-monomial defining ideals need their dimension filtration seeded
/// beforehand from a supplied decomposition.
pub fn property_report(
    ring: &Arc<RingPresentation>,
    ring_id: &str,
    seed: u64,
) -> Result<PropertyReport> {
    let d = ring.dimension();
    let full = SubquotientModule::full_ring(ring)?;
    let depth = full.depth(DEPTH_TRIALS, &DEPTH_DEGREES, mix(seed, 2, 0))?;
    let is_cm = depth == d;
    let cm_type_value = if is_cm {
        Some(module_socle_type(ring, &full, d, mix(seed, 2, 1))?)
    } else {
        None
    };
    let is_gorenstein = is_cm && cm_type_value == Some(1);

    let filt = dimension_filtration(ring, None)?;
    let steps = filt.steps();
    let mut quotients = Vec::with_capacity(steps);
    let mut all_quotients_cm = true;
    for i in 1..=steps {
        let d_i = filt.dims[i - 1];
        let module = SubquotientModule::new(filt.ideals[i].clone(), filt.ideals[i - 1].clone())?;
        let module_dim = module.dimension()?.unwrap_or(0);
        let module_depth = module.depth(DEPTH_TRIALS, &DEPTH_DEGREES, mix(seed, 3, i as u64))?;
        let quotient_cm = module_dim == d_i && module_depth == d_i;
        let quotient_type = if quotient_cm {
            Some(module_socle_type(ring, &module, d_i, mix(seed, 4, i as u64))?)
        } else {
            None
        };
        all_quotients_cm &= quotient_cm;
        quotients.push(QuotientDetail {
            step: i,
            dimension: d_i,
            depth: module_depth,
            is_cm: quotient_cm,
            cm_type: quotient_type,
        });
    }
    let is_seq_cm = all_quotients_cm;

    let socle_invariants: Option<BTreeMap<usize, u64>> = if is_seq_cm {
        Some(
            quotients
                .iter()
                .map(|q| (q.dimension, q.cm_type.unwrap_or(0)))
                .collect(),
        )
    } else {
        None
    };

    let deep_witness = match &socle_invariants {
        Some(inv) => deep_distinguished(ring, inv, mix(seed, 5, 0))
            .ok()
            .map(|(ps, socle_index, degree)| DeepWitness {
                generators: ps.elements.iter().map(|e| e.render()).collect(),
                degree,
                socle_index,
            }),
        None => None,
    };

    Ok(PropertyReport {
        ring_id: ring_id.to_string(),
        dimension: d,
        depth,
        is_cm,
        is_gorenstein,
        is_seq_cm,
        cm_type: cm_type_value,
        socle_invariants,
        quotients,
        deep_witness,
        seed,
    })
}

/// The socle invariants r_j alone; errors on rings where they are not
/// computed.
pub fn socle_invariants(
    ring: &Arc<RingPresentation>,
    seed: u64,
) -> Result<BTreeMap<usize, u64>> {
    let report = property_report(ring, "ring", seed)?;
    report.socle_invariants.ok_or(Error::NotSequentiallyCm)
}

/// Escalates the generator degree of a distinguished parameter system
/// until its socle index N(q; R) equals the sum of the socle invariants,
/// returning the system, the index, and the degree used.
pub fn deep_distinguished(
    ring: &Arc<RingPresentation>,
    invariants: &BTreeMap<usize, u64>,
    seed: u64,
) -> Result<(ParameterSystem, u64, u32)> {
    let target: u64 = invariants.values().sum();
    let full = SubquotientModule::full_ring(ring)?;
    if ring.dimension() == 0 {
        let ps = distinguished_sop(ring, 2, seed, 10)?;
        let n0 = index_of_reducibility(&ps.ideal()?, &full)?;
        if n0 == target {
            return Ok((ps, n0, 0));
        }
        return Err(Error::SopConstruction {
            attempts: 1,
            context: format!("socle length {n0} does not match the invariant sum {target}"),
        });
    }
    for degree in 2..=6u32 {
        let ps = match distinguished_sop(ring, degree, mix(seed, degree as u64, 0), 80) {
            Ok(ps) => ps,
            Err(_) => continue,
        };
        let n0 = index_of_reducibility(&ps.ideal()?, &full)?;
        if n0 == target {
            return Ok((ps, n0, degree));
        }
    }
    Err(Error::SopConstruction {
        attempts: 5,
        context: format!(
            "no distinguished system up to degree 6 reached socle index {target}"
        ),
    })
}

/// Rebuilds the deep witness system recorded in a property report.
fn deep_system(
    ring: &Arc<RingPresentation>,
    props: &PropertyReport,
) -> Result<Option<(ParameterSystem, RIdeal)>> {
    let Some(witness) = &props.deep_witness else {
        return Ok(None);
    };
    let mut elements = Vec::with_capacity(witness.generators.len());
    for g in &witness.generators {
        elements.push(parse_polynomial(ring.ambient(), g)?);
    }
    let ps = ParameterSystem::from_elements(ring, elements)?;
    if !ps.distinguished {
        return Ok(None);
    }
    let q = ps.ideal()?;
    Ok(Some((ps, q)))
}

/// Draws `count` systems of parameters with generators of the given
/// degree. For zero-dimensional rings the only parameter ideal is (0).
fn sample_sops(
    ring: &Arc<RingPresentation>,
    degree: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<RIdeal>> {
    let d = ring.dimension();
    if d == 0 {
        return Ok(vec![RIdeal::zero(ring)]);
    }
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0u64;
    while out.len() < count && attempt < 40 * count as u64 {
        let mut elements = Vec::with_capacity(d);
        for j in 0..d {
            elements.push(random_form(ring, degree, None, mix(seed, attempt, j as u64))?);
        }
        attempt += 1;
        let q = RIdeal::new(ring, elements)?;
        if q.is_primary_to_max()? {
            out.push(q);
        }
    }
    if out.len() < count {
        return Err(Error::SopConstruction {
            attempts: attempt as usize,
            context: format!("only {} of {count} degree-{degree} draws were parameter systems", out.len()),
        });
    }
    Ok(out)
}

fn settle(hypothesis: bool, checks: &[WitnessCheck], notes: &mut Vec<String>) -> Verdict {
    let tested = !checks.is_empty();
    let all_hold = tested && checks.iter().all(|c| c.holds);
    let any_violation = checks.iter().any(|c| !c.holds);
    match (hypothesis, all_hold, any_violation) {
        (true, true, _) => Verdict::Confirmed,
        (true, _, true) => {
            notes.push(
                "a witness violated the conclusion although the hypothesis holds; \
                 this contradicts the statement and points at a computation problem"
                    .into(),
            );
            Verdict::Inconclusive
        }
        (false, _, true) => Verdict::RefutedAsExpected,
        (false, _, false) if tested => {
            notes.push(
                "the hypothesis fails but every sampled witness satisfied the conclusion; \
                 sampling cannot decide the universally quantified direction"
                    .into(),
            );
            Verdict::Inconclusive
        }
        _ => Verdict::Inconclusive,
    }
}

/// Compares N(q^(n+1); R) against a predicted formula on the stabilized
/// window of the fitted socle polynomial.
fn socle_window_check(
    witness: String,
    q: &RIdeal,
    full: &SubquotientModule,
    n_cap: u32,
    predict: impl Fn(u32) -> u64,
) -> Result<WitnessCheck> {
    let fit = noetherian_coefficients(q, full, n_cap)?;
    let s = fit.stabilization_index;
    let mut predicted = Vec::new();
    let mut computed = Vec::new();
    let mut first_fail = None;
    for &(n, v) in fit.values.iter().filter(|(n, _)| *n >= s) {
        let p = predict(n);
        predicted.push(p);
        computed.push(v);
        if v != p && first_fail.is_none() {
            first_fail = Some(n);
        }
    }
    Ok(WitnessCheck {
        witness,
        predicted: format!("n = {}..{}: {:?}", s, fit.window_used, predicted),
        computed: format!("n = {}..{}: {:?}", s, fit.window_used, computed),
        holds: first_fail.is_none(),
        first_failing_n: first_fail,
    })
}

struct Harness<'a> {
    ring: &'a Arc<RingPresentation>,
    props: &'a PropertyReport,
    params: VerifyParams,
    checks: Vec<WitnessCheck>,
    notes: Vec<String>,
    blocked: Option<String>,
}

impl<'a> Harness<'a> {
    fn new(ring: &'a Arc<RingPresentation>, props: &'a PropertyReport, params: VerifyParams) -> Self {
        Harness {
            ring,
            props,
            params,
            checks: Vec::new(),
            notes: Vec::new(),
            blocked: None,
        }
    }

    fn block(&mut self, reason: impl Into<String>) {
        if self.blocked.is_none() {
            self.blocked = Some(reason.into());
        }
    }

    fn invariant(&self, j: usize) -> i64 {
        self.props
            .socle_invariants
            .as_ref()
            .and_then(|m| m.get(&j))
            .copied()
            .unwrap_or(0) as i64
    }

    fn square_degree(&mut self) -> u32 {
        if self.params.degree < 2 {
            self.notes.push(
                "generator degree raised to 2 so witnesses lie inside the square of the maximal ideal"
                    .into(),
            );
            2
        } else {
            self.params.degree
        }
    }

    fn sops_in_square(&mut self) -> Result<Vec<RIdeal>> {
        let degree = self.square_degree();
        match sample_sops(self.ring, degree, self.params.sops, self.params.seed) {
            Ok(sops) => Ok(sops),
            Err(Error::SopConstruction { attempts, context }) => {
                self.block(format!(
                    "parameter sampling exhausted {attempts} attempts: {context}"
                ));
                Ok(Vec::new())
            }
            Err(e) => Err(e),
        }
    }

    fn deep(&mut self) -> Result<Option<RIdeal>> {
        if !self.props.is_seq_cm {
            self.block(
                "the statement's setting needs a sequentially Cohen-Macaulay ring and a deep \
                 distinguished witness; the socle invariants are not computed here",
            );
            return Ok(None);
        }
        match deep_system(self.ring, self.props)? {
            Some((_, q)) => Ok(Some(q)),
            None => {
                self.block(
                    "no deep distinguished witness was recorded for this ring; degree \
                     escalation stopped at its cap",
                );
                Ok(None)
            }
        }
    }

    fn hilbert_pair(&mut self, q: &RIdeal) -> Result<Option<(Vec<i64>, Vec<i64>, String)>> {
        let full = SubquotientModule::full_ring(self.ring)?;
        let socle = socle_ideal(q)?;
        let eq = match hilbert_coefficients(q, &full, self.params.n_cap) {
            Ok(fit) => fit,
            Err(Error::Unstabilized { .. }) => {
                self.block(format!(
                    "length values of ({}) did not stabilize below n = {}",
                    q.render(),
                    self.params.n_cap
                ));
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        let ei = match hilbert_coefficients(&socle, &full, self.params.n_cap) {
            Ok(fit) => fit,
            Err(Error::Unstabilized { .. }) => {
                self.block(format!(
                    "length values of the socle of ({}) did not stabilize below n = {}",
                    q.render(),
                    self.params.n_cap
                ));
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        Ok(Some((eq.coefficients, ei.coefficients, socle.render())))
    }

    fn noether(&mut self, q: &RIdeal) -> Result<Option<Vec<i64>>> {
        let full = SubquotientModule::full_ring(self.ring)?;
        match noetherian_coefficients(q, &full, self.params.n_cap) {
            Ok(fit) => Ok(Some(fit.coefficients)),
            Err(Error::Unstabilized { .. }) => {
                self.block(format!(
                    "socle values of ({}) did not stabilize below n = {}",
                    q.render(),
                    self.params.n_cap
                ));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn finish(mut self, theorem: &str, hypothesis: bool) -> VerificationReport {
        let verdict = match self.blocked.take() {
            Some(reason) => {
                self.notes.push(reason);
                Verdict::Inconclusive
            }
            None => settle(hypothesis, &self.checks, &mut self.notes),
        };
        VerificationReport {
            theorem: theorem.to_string(),
            ring_id: self.props.ring_id.clone(),
            hypothesis_holds: hypothesis,
            verdict,
            seed: self.params.seed,
            sop_degree: self.params.degree,
            sops_requested: self.params.sops,
            n_cap: self.params.n_cap,
            checks: self.checks,
            notes: self.notes,
        }
    }

    fn finish_confirmed_vacuous(mut self, theorem: &str, note: &str) -> VerificationReport {
        self.notes.push(note.to_string());
        VerificationReport {
            theorem: theorem.to_string(),
            ring_id: self.props.ring_id.clone(),
            hypothesis_holds: true,
            verdict: Verdict::Confirmed,
            seed: self.params.seed,
            sop_degree: self.params.degree,
            sops_requested: self.params.sops,
            n_cap: self.params.n_cap,
            checks: self.checks,
            notes: self.notes,
        }
    }
}

fn is_unmixed(ring: &Arc<RingPresentation>) -> Result<bool> {
    Ok(dimension_filtration(ring, None)?.steps() == 1)
}

fn is_regular(ring: &Arc<RingPresentation>) -> bool {
    ring.defining().generators().is_empty()
}

/// Replays the characterization named by `theorem` on one ring, using the
/// already-computed property report for hypothesis decisions and socle
/// invariants.
pub fn verify_theorem(
    theorem: &str,
    ring: &Arc<RingPresentation>,
    props: &PropertyReport,
    params: VerifyParams,
) -> Result<VerificationReport> {
    if !THEOREM_IDS.contains(&theorem) {
        return Err(Error::UnknownTheorem(theorem.to_string()));
    }
    let d = ring.dimension();
    let mut h = Harness::new(ring, props, params);

    if d == 0 && theorem != "thm_3_800" {
        h.block("the statement needs positive dimension");
        return Ok(h.finish(theorem, false));
    }

    match theorem {
        "thm_6_1" => {
            let hypothesis = is_regular(ring);
            if !is_unmixed(ring)? {
                h.block("the statement assumes an unmixed ring and this ring is mixed");
                return Ok(h.finish(theorem, hypothesis));
            }
            let m = RIdeal::maximal(ring);
            if let Some(f) = h.noether(&m)? {
                let f0 = f[0];
                h.checks.push(WitnessCheck {
                    witness: "maximal ideal".into(),
                    predicted: if hypothesis {
                        "f_0(m) = 1".into()
                    } else {
                        "f_0(m) different from 1".into()
                    },
                    computed: format!("f_0(m) = {f0}"),
                    holds: f0 == 1,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "thm_6_2" => {
            let hypothesis = props.is_gorenstein;
            if !is_unmixed(ring)? {
                h.block("the statement assumes an unmixed ring and this ring is mixed");
                return Ok(h.finish(theorem, hypothesis));
            }
            let sops = h.sops_in_square()?;
            for q in &sops {
                let Some((eq, ei, socle_render)) = h.hilbert_pair(q)? else {
                    break;
                };
                let diff = ei[1] - eq[1];
                h.checks.push(WitnessCheck {
                    witness: format!("q = ({}), q : m = ({})", q.render(), socle_render),
                    predicted: "e_1(q : m) - e_1(q) <= 1".into(),
                    computed: format!("e_1 difference = {diff}"),
                    holds: diff <= 1,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "thm_6_3" => {
            let hypothesis = props.is_cm;
            if !is_unmixed(ring)? {
                h.block("the statement assumes an unmixed ring and this ring is mixed");
                return Ok(h.finish(theorem, hypothesis));
            }
            if !hypothesis {
                h.notes.push(
                    "ring is not Cohen-Macaulay, so the type is read per witness as the socle \
                     length N(q; R), the quantity that equals the type in the Cohen-Macaulay case"
                        .into(),
                );
            }
            let full = SubquotientModule::full_ring(ring)?;
            let sops = h.sops_in_square()?;
            for q in &sops {
                let target: i64 = match props.cm_type {
                    Some(t) => t as i64,
                    None => index_of_reducibility(q, &full)? as i64,
                };
                let Some(f) = h.noether(q)? else {
                    break;
                };
                let f0 = f[0];
                h.checks.push(WitnessCheck {
                    witness: format!("q = ({})", q.render()),
                    predicted: format!("f_0(q) = {target}"),
                    computed: format!("f_0(q) = {f0}"),
                    holds: f0 == target,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "thm_6_7" => {
            let hypothesis = props.is_gorenstein;
            let full = SubquotientModule::full_ring(ring)?;
            let sops = h.sops_in_square()?;
            for q in &sops {
                match socle_window_check(
                    format!("q = ({})", q.render()),
                    q,
                    &full,
                    h.params.n_cap,
                    |n| binom_u64(n as i64 + d as i64 - 1, d as i64 - 1),
                ) {
                    Ok(check) => h.checks.push(check),
                    Err(Error::Unstabilized { .. }) => {
                        h.block(format!(
                            "socle values of ({}) did not stabilize below n = {}",
                            q.render(),
                            h.params.n_cap
                        ));
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "thm_6_8" => {
            let hypothesis = props.is_cm;
            if !hypothesis {
                h.notes.push(
                    "ring is not Cohen-Macaulay, so the type is read per witness as the socle \
                     length N(q; R), the quantity that equals the type in the Cohen-Macaulay case"
                        .into(),
                );
            }
            let full = SubquotientModule::full_ring(ring)?;
            let sops = h.sops_in_square()?;
            for q in &sops {
                let target: u64 = match props.cm_type {
                    Some(t) => t,
                    None => index_of_reducibility(q, &full)?,
                };
                match socle_window_check(
                    format!("q = ({})", q.render()),
                    q,
                    &full,
                    h.params.n_cap,
                    |n| target * binom_u64(n as i64 + d as i64 - 1, d as i64 - 1),
                ) {
                    Ok(check) => h.checks.push(check),
                    Err(Error::Unstabilized { .. }) => {
                        h.block(format!(
                            "socle values of ({}) did not stabilize below n = {}",
                            q.render(),
                            h.params.n_cap
                        ));
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "prop_P2_7" => {
            let hypothesis = props.is_seq_cm;
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            let full = SubquotientModule::full_ring(ring)?;
            let n_max = h.params.n_cap.min(6);
            let values = socle_function_values(&q, &full, n_max)?;
            let predict = |n: u32| -> u64 {
                let mut acc = h.invariant(0) as u64;
                for i in 1..=d {
                    acc += h.invariant(i) as u64
                        * binom_u64(n as i64 + i as i64 - 1, i as i64 - 1);
                }
                acc
            };
            let mut first_fail = None;
            let mut predicted = Vec::new();
            let mut computed = Vec::new();
            for n in 1..=n_max {
                let p = predict(n);
                let v = values[n as usize];
                predicted.push(p);
                computed.push(v);
                if p != v && first_fail.is_none() {
                    first_fail = Some(n);
                }
            }
            h.checks.push(WitnessCheck {
                witness: format!("q = ({})", q.render()),
                predicted: format!("n = 1..{n_max}: {predicted:?}"),
                computed: format!("n = 1..{n_max}: {computed:?}"),
                holds: first_fail.is_none(),
                first_failing_n: first_fail,
            });
            Ok(h.finish(theorem, hypothesis))
        }
        "lemma_3_700" => {
            let hypothesis = props.is_seq_cm;
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            let n_max = h.params.n_cap.min(4);
            let report = check_socle_stability(&q, n_max)?;
            h.checks.push(WitnessCheck {
                witness: format!("q = ({})", q.render()),
                predicted: format!("q^(n+1) : m = q^n (q : m) for n = 0..{n_max}"),
                computed: match report.first_failure {
                    None => "equal at every checked n".into(),
                    Some(n) => format!("first differs at n = {n}"),
                },
                holds: report.holds,
                first_failing_n: report.first_failure,
            });
            Ok(h.finish(theorem, hypothesis))
        }
        "prop_coe" => {
            let hypothesis = props.is_seq_cm;
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            if d == 1 {
                h.notes.push(
                    "at dimension one the two branch formulas coincide; the top-degree branch \
                     is the one tested"
                        .into(),
                );
            }
            let Some((eq, ei, socle_render)) = h.hilbert_pair(&q)? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            let Some(f) = h.noether(&q)? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            for j in 1..=d {
                let lhs = ei[j] - eq[j];
                let mid = f[j - 1];
                let rhs = if j == d {
                    alt(d - 1) * (h.invariant(1) + h.invariant(0))
                } else {
                    alt(j - 1) * h.invariant(d - j + 1)
                };
                h.checks.push(WitnessCheck {
                    witness: format!("q = ({}), q : m = ({}), j = {j}", q.render(), socle_render),
                    predicted: format!("e_j(q : m) - e_j(q) = f_(j-1)(q) = {rhs}"),
                    computed: format!("e_j difference = {lhs}, f_(j-1)(q) = {mid}"),
                    holds: lhs == mid && mid == rhs,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "thm_3_800" => {
            if !props.is_seq_cm {
                h.block(
                    "the socle invariants on the right side are only computed for sequentially \
                     Cohen-Macaulay rings here",
                );
                return Ok(h.finish(theorem, true));
            }
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, true));
            };
            let full = SubquotientModule::full_ring(ring)?;
            let target: u64 = props
                .socle_invariants
                .as_ref()
                .map(|m| m.values().sum())
                .unwrap_or(0);
            let n0 = index_of_reducibility(&q, &full)?;
            let degree = props.deep_witness.as_ref().map(|w| w.degree).unwrap_or(0);
            h.notes.push(format!(
                "witness found by escalating the generator degree; degree {degree} sufficed"
            ));
            h.checks.push(WitnessCheck {
                witness: format!("q = ({})", q.render()),
                predicted: format!("N(q; R) = sum of socle invariants = {target}"),
                computed: format!("N(q; R) = {n0}"),
                holds: n0 == target,
                first_failing_n: None,
            });
            Ok(h.finish(theorem, true))
        }
        "thm_T5_3_ii" => {
            let hypothesis = props.is_seq_cm;
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            let Some((eq, ei, socle_render)) = h.hilbert_pair(&q)? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            for i in 0..d {
                let lhs = h.invariant(d - i + 1);
                let rhs = alt(i + 1) * (ei[i] - eq[i]);
                h.checks.push(WitnessCheck {
                    witness: format!("q = ({}), q : m = ({}), i = {i}", q.render(), socle_render),
                    predicted: format!("r_(d-i+1) = {lhs}"),
                    computed: format!("(-1)^(i+1) (e_i(q : m) - e_i(q)) = {rhs}"),
                    holds: lhs == rhs,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "thm_5800_ii" => {
            let hypothesis = props.is_seq_cm;
            if hypothesis && d == 1 {
                return Ok(h.finish_confirmed_vacuous(
                    theorem,
                    "the index range j = 0..d-2 is empty at dimension one, so the conclusion \
                     is vacuous",
                ));
            }
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            let Some(f) = h.noether(&q)? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            for j in 0..=d.saturating_sub(2) {
                let lhs = alt(j) * f[j];
                let rhs = h.invariant(d - j);
                h.checks.push(WitnessCheck {
                    witness: format!("q = ({}), j = {j}", q.render()),
                    predicted: format!("r_(d-j) = {rhs}"),
                    computed: format!("(-1)^j f_j(q) = {lhs}"),
                    holds: lhs == rhs,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "lemma_5_1" => {
            let m = RIdeal::maximal(ring);
            let full = SubquotientModule::full_ring(ring)?;
            let e0m = match hilbert_coefficients(&m, &full, h.params.n_cap) {
                Ok(fit) => fit.coefficients[0],
                Err(Error::Unstabilized { .. }) => {
                    h.block("multiplicity of the maximal ideal did not stabilize");
                    return Ok(h.finish(theorem, false));
                }
                Err(e) => return Err(e),
            };
            let hypothesis = e0m > 1;
            h.notes.push(
                "the bound is read as the irreducible multiplicity f_0(q) of the witness ideal"
                    .into(),
            );
            let sops = h.sops_in_square()?;
            for q in &sops {
                let Some((eq, ei, socle_render)) = h.hilbert_pair(q)? else {
                    break;
                };
                let Some(f) = h.noether(q)? else {
                    break;
                };
                let diff = ei[1] - eq[1];
                let f0 = f[0];
                h.checks.push(WitnessCheck {
                    witness: format!("q = ({}), q : m = ({})", q.render(), socle_render),
                    predicted: format!("e_1(q : m) - e_1(q) <= f_0(q) = {f0}"),
                    computed: format!("e_1 difference = {diff}"),
                    holds: diff <= f0,
                    first_failing_n: None,
                });
            }
            Ok(h.finish(theorem, hypothesis))
        }
        "fact_F2_5_4" => {
            let hypothesis = props.is_seq_cm;
            let Some(q) = h.deep()? else {
                return Ok(h.finish(theorem, hypothesis));
            };
            match check_stable_socle_square(&q) {
                Ok(holds) => {
                    h.checks.push(WitnessCheck {
                        witness: format!("q = ({})", q.render()),
                        predicted: "(q : m)^2 = q (q : m)".into(),
                        computed: if holds { "equal".into() } else { "not equal".into() },
                        holds,
                        first_failing_n: None,
                    });
                }
                Err(Error::InvalidArgument(msg)) => h.block(msg),
                Err(e) => return Err(e),
            }
            Ok(h.finish(theorem, hypothesis))
        }
        _ => Err(Error::UnknownTheorem(theorem.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ideal::Ideal;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_generators;
    use crate::poly::PolyRing;
    use crate::ring::make_ring;

    fn quotient(vars: &[&str], defining: &str) -> Arc<RingPresentation> {
        let p = PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldSpec::Rationals,
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let gens = if defining.is_empty() {
            Vec::new()
        } else {
            parse_generators(&p, defining).unwrap()
        };
        make_ring(&p, Ideal::new(&p, gens).unwrap()).unwrap()
    }

    #[test]
    fn polynomial_ring_is_regular_in_every_sense() {
        let r = quotient(&["x", "y"], "");
        let report = property_report(&r, "r2", 11).unwrap();
        assert_eq!(report.dimension, 2);
        assert_eq!(report.depth, 2);
        assert!(report.is_cm && report.is_gorenstein && report.is_seq_cm);
        assert_eq!(report.cm_type, Some(1));
        let inv = report.socle_invariants.unwrap();
        assert_eq!(inv.get(&2), Some(&1));
        assert_eq!(inv.len(), 1);
        assert_eq!(report.quotients.len(), 1);
        assert!(report.deep_witness.is_some());
    }

    #[test]
    fn artinian_type_two_ring_is_cm_not_gorenstein() {
        let r = quotient(&["x", "y"], "x^2, x*y, y^2");
        let report = property_report(&r, "art2", 13).unwrap();
        assert_eq!(report.dimension, 0);
        assert_eq!(report.depth, 0);
        assert!(report.is_cm && report.is_seq_cm);
        assert!(!report.is_gorenstein);
        assert_eq!(report.cm_type, Some(2));
        let inv = report.socle_invariants.unwrap();
        assert_eq!(inv.get(&0), Some(&2));
    }

    #[test]
    fn line_plane_ring_is_sequentially_cm_with_unit_invariants() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let report = property_report(&r, "lp", 17).unwrap();
        assert_eq!(report.dimension, 2);
        assert_eq!(report.depth, 1);
        assert!(!report.is_cm);
        assert!(report.is_seq_cm);
        assert_eq!(report.cm_type, None);
        let inv = report.socle_invariants.clone().unwrap();
        assert_eq!(inv.get(&1), Some(&1));
        assert_eq!(inv.get(&2), Some(&1));
        let witness = report.deep_witness.unwrap();
        assert_eq!(witness.socle_index, 2);
    }

    #[test]
    fn two_planes_ring_is_neither_cm_nor_sequentially_cm() {
        let r = quotient(&["x", "y", "z", "w"], "x*z, x*w, y*z, y*w");
        let report = property_report(&r, "tp", 19).unwrap();
        assert_eq!(report.dimension, 2);
        assert_eq!(report.depth, 1);
        assert!(!report.is_cm);
        assert!(!report.is_seq_cm);
        assert!(report.socle_invariants.is_none());
        assert!(report.deep_witness.is_none());
    }

    #[test]
    fn cm_type_rejects_non_cm_rings() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        assert!(matches!(cm_type(&r, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn regularity_check_confirms_and_refutes() {
        let r2 = quotient(&["x", "y"], "");
        let props = property_report(&r2, "r2", 23).unwrap();
        let report = verify_theorem("thm_6_1", &r2, &props, VerifyParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed);

        let tp = quotient(&["x", "y", "z", "w"], "x*z, x*w, y*z, y*w");
        let tprops = property_report(&tp, "tp", 23).unwrap();
        let report = verify_theorem("thm_6_1", &tp, &tprops, VerifyParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::RefutedAsExpected);
        assert!(!report.hypothesis_holds);
    }

    #[test]
    fn coefficient_identity_confirms_on_the_plane() {
        let r = quotient(&["x", "y"], "");
        let props = property_report(&r, "r2", 29).unwrap();
        let report = verify_theorem("prop_coe", &r, &props, VerifyParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed);
        assert_eq!(report.checks.len(), 2);
    }

    #[test]
    fn gorenstein_socle_polynomial_confirms_on_the_plane() {
        let r = quotient(&["x", "y"], "");
        let props = property_report(&r, "r2", 31).unwrap();
        let params = VerifyParams {
            sops: 2,
            ..VerifyParams::default()
        };
        let report = verify_theorem("thm_6_7", &r, &props, params).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed);
        for check in &report.checks {
            assert!(check.holds);
        }
    }

    #[test]
    fn socle_power_identity_confirms_on_line_plane() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let props = property_report(&r, "lp", 37).unwrap();
        let report = verify_theorem("lemma_3_700", &r, &props, VerifyParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed);
    }

    #[test]
    fn stable_socle_square_confirms_on_the_plane() {
        let r = quotient(&["x", "y"], "");
        let props = property_report(&r, "r2", 41).unwrap();
        let report = verify_theorem("fact_F2_5_4", &r, &props, VerifyParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed);
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let r = quotient(&["x"], "");
        let props = property_report(&r, "r1", 1).unwrap();
        assert!(matches!(
            verify_theorem("thm_nonsense", &r, &props, VerifyParams::default()),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn mixed_rings_block_the_unmixed_statements() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let props = property_report(&r, "lp", 43).unwrap();
        let report = verify_theorem("thm_6_2", &r, &props, VerifyParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.notes.iter().any(|n| n.contains("mixed")));
    }
}
