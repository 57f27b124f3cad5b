//! Graded quotient rings R = P/I presented by a homogeneous defining
//! ideal, ideals of R carried by their preimages, and finitely generated
//! graded subquotient modules a/b. This is the bridge from raw ideal
//! arithmetic to module-level statements: finite length, regular elements,
//! and randomized depth.
//!
//! Everything is graded. For ideals primary to the irrelevant maximal
//! ideal, graded lengths agree with lengths after localization, so the
//! local statements the checkers need are exercised faithfully here.

use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filtration::DimensionFiltration;
use crate::ideal::Ideal;
use crate::parse::parse_generators;
use crate::poly::{PolyRing, Polynomial};

pub struct RingPresentation {
    ambient: Arc<PolyRing>,
    defining: Ideal,
    dimension: usize,
    maximal: Ideal,
    pub(crate) filtration: Mutex<Option<Arc<DimensionFiltration>>>,
}

impl std::fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}[{}]/({})",
            self.ambient.field().render(),
            self.ambient.vars().join(","),
            self.defining.render()
        )
    }
}

/// Builds a graded quotient presentation, caching the Krull dimension.
pub fn make_ring(ambient: &Arc<PolyRing>, defining: Ideal) -> Result<Arc<RingPresentation>> {
    if !Arc::ptr_eq(defining.ring(), ambient) && **defining.ring() != **ambient {
        return Err(Error::RingMismatch);
    }
    if !defining.is_homogeneous() {
        return Err(Error::NotHomogeneous("defining ideal"));
    }
    let dimension = defining
        .dimension()?
        .ok_or_else(|| Error::InvalidArgument("defining ideal is the unit ideal".into()))?;
    let maximal = Ideal::maximal(ambient)?;
    Ok(Arc::new(RingPresentation {
        ambient: ambient.clone(),
        defining,
        dimension,
        maximal,
        filtration: Mutex::new(None),
    }))
}

impl RingPresentation {
    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Preimage of the irrelevant maximal ideal: all the variables.
    pub fn maximal_preimage(&self) -> &Ideal {
        &self.maximal
    }

    fn same_as(&self, other: &RingPresentation) -> bool {
        std::ptr::eq(self, other)
            || (**self.ambient() == **other.ambient()
                && self.defining.generators() == other.defining.generators())
    }
}

/// An ideal of the quotient ring, carried by its generator list (taken in
/// the ambient ring) together with the full preimage.
#[derive(Clone)]
pub struct RIdeal {
    ring: Arc<RingPresentation>,
    gens: Vec<Polynomial>,
    pre: Ideal,
}

impl std::fmt::Debug for RIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.pre.render())
    }
}

impl RIdeal {
    pub fn new(ring: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Self> {
        let lifted = Ideal::new(ring.ambient(), gens)?;
        let pre = lifted.sum(ring.defining())?;
        Ok(RIdeal {
            ring: ring.clone(),
            gens: lifted.generators().to_vec(),
            pre,
        })
    }

    pub fn from_strings(ring: &Arc<RingPresentation>, input: &str) -> Result<Self> {
        RIdeal::new(ring, parse_generators(ring.ambient(), input)?)
    }

    /// Wraps an ambient ideal as the ideal of R it generates.
    pub fn from_preimage(ring: &Arc<RingPresentation>, ideal: &Ideal) -> Result<Self> {
        RIdeal::new(ring, ideal.generators().to_vec())
    }

    /// Adopts an ideal already known to contain the defining ideal as a
    /// preimage, skipping the summation.
    pub(crate) fn wrap(ring: &Arc<RingPresentation>, pre: Ideal) -> RIdeal {
        RIdeal {
            ring: ring.clone(),
            gens: pre.generators().to_vec(),
            pre,
        }
    }

    pub fn zero(ring: &Arc<RingPresentation>) -> Self {
        RIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
            pre: ring.defining().clone(),
        }
    }

    pub fn maximal(ring: &Arc<RingPresentation>) -> Self {
        RIdeal {
            ring: ring.clone(),
            gens: ring.maximal_preimage().generators().to_vec(),
            pre: ring.maximal_preimage().clone(),
        }
    }

    pub fn unit(ring: &Arc<RingPresentation>) -> Result<Self> {
        RIdeal::new(ring, vec![Polynomial::one(ring.ambient())])
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    /// Generators as elements of R (represented in the ambient ring),
    /// without the defining ideal mixed in.
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn preimage(&self) -> &Ideal {
        &self.pre
    }

    pub fn render(&self) -> String {
        if self.gens.is_empty() {
            "0".to_string()
        } else {
            self.gens.iter().map(|g| g.render()).collect::<Vec<_>>().join(", ")
        }
    }

    fn check_ring(&self, other: &RIdeal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn equals(&self, other: &RIdeal) -> Result<bool> {
        self.check_ring(other)?;
        self.pre.equals(&other.pre)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.pre.contains(f)
    }

    pub fn is_subideal_of(&self, other: &RIdeal) -> Result<bool> {
        self.check_ring(other)?;
        self.pre.is_subideal_of(&other.pre)
    }

    pub fn is_zero_in_quotient(&self) -> Result<bool> {
        self.pre.equals(self.ring.defining())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        self.pre.is_unit_ideal()
    }

    pub fn sum(&self, other: &RIdeal) -> Result<RIdeal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        RIdeal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &RIdeal) -> Result<RIdeal> {
        self.check_ring(other)?;
        let a = Ideal::new(self.ring.ambient(), self.gens.clone())?;
        let b = Ideal::new(self.ring.ambient(), other.gens.clone())?;
        RIdeal::from_preimage(&self.ring, &a.product(&b)?)
    }

    /// J^k as an ideal of R; the preimage is (generator ideal)^k plus the
    /// defining ideal, since cross terms of (J + I)^k land in I.
    pub fn power(&self, k: u32) -> Result<RIdeal> {
        if k == 0 {
            return RIdeal::unit(&self.ring);
        }
        let base = Ideal::new(self.ring.ambient(), self.gens.clone())?;
        RIdeal::from_preimage(&self.ring, &base.power(k)?)
    }

    /// Colon of ideals of R, computed on preimages: both sides contain the
    /// defining ideal, so the ambient colon is exactly the preimage of the
    /// quotient-level colon.
    pub fn colon(&self, other: &RIdeal) -> Result<RIdeal> {
        self.check_ring(other)?;
        if other.gens.is_empty() {
            return Err(Error::ColonByZero);
        }
        let divisor = Ideal::new(self.ring.ambient(), other.gens.clone())?;
        let pre = self.pre.colon(&divisor)?;
        Ok(RIdeal {
            ring: self.ring.clone(),
            gens: pre.generators().to_vec(),
            pre,
        })
    }

    pub fn intersect(&self, other: &RIdeal) -> Result<RIdeal> {
        self.check_ring(other)?;
        let pre = self.pre.intersect(&other.pre)?;
        Ok(RIdeal {
            ring: self.ring.clone(),
            gens: pre.generators().to_vec(),
            pre,
        })
    }

    /// Krull dimension of R/J, `None` when J is the unit ideal.
    pub fn dimension(&self) -> Result<Option<usize>> {
        self.pre.dimension()
    }

    pub fn is_primary_to_max(&self) -> Result<bool> {
        self.pre.is_primary_to_max()
    }
}

/// The graded R-module a/b for ideals b ⊆ a of R.
#[derive(Clone)]
pub struct SubquotientModule {
    ring: Arc<RingPresentation>,
    top: RIdeal,
    bottom: RIdeal,
}

impl std::fmt::Debug for SubquotientModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})/({})", self.top.render(), self.bottom.render())
    }
}

impl SubquotientModule {
    pub fn new(top: RIdeal, bottom: RIdeal) -> Result<Self> {
        top.check_ring(&bottom)?;
        if !bottom.is_subideal_of(&top)? {
            return Err(Error::NotSubmodule);
        }
        Ok(SubquotientModule {
            ring: top.ring().clone(),
            top,
            bottom,
        })
    }

    /// R itself, as (1)/(0).
    pub fn full_ring(ring: &Arc<RingPresentation>) -> Result<Self> {
        SubquotientModule::new(RIdeal::unit(ring)?, RIdeal::zero(ring))
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn top(&self) -> &RIdeal {
        &self.top
    }

    pub fn bottom(&self) -> &RIdeal {
        &self.bottom
    }

    pub fn is_full_ring(&self) -> Result<bool> {
        Ok(self.top.is_unit_ideal()? && self.bottom.is_zero_in_quotient()?)
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.top.is_subideal_of(&self.bottom)
    }

    /// Ann(a/b) = (b : a), an ideal of R.
    pub fn annihilator(&self) -> Result<RIdeal> {
        let pre = self.bottom.preimage().colon(self.top.preimage())?;
        Ok(RIdeal {
            ring: self.ring.clone(),
            gens: pre.generators().to_vec(),
            pre,
        })
    }

    /// dim of the module: dim R/Ann, `None` for the zero module.
    pub fn dimension(&self) -> Result<Option<usize>> {
        self.annihilator()?.dimension()
    }

    /// Graded length of a/b: the sum over all degrees of
    /// HF(P/b-preimage, e) − HF(P/a-preimage, e); errors unless finite.
    pub fn length(&self) -> Result<u64> {
        let ann = self.annihilator()?;
        match ann.dimension()? {
            None => return Ok(0),
            Some(0) => {}
            Some(_) => return Err(Error::InfiniteLength),
        }
        let ann_pre = ann.preimage();
        let mut stop = 0u32;
        loop {
            if ann_pre.hilbert_function(stop)? == 0 {
                break;
            }
            stop += 1;
        }
        let top_deg = self
            .top
            .preimage()
            .generators()
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0);
        let mut total = 0u64;
        for e in 0..=(stop + top_deg) {
            let below = self.bottom.preimage().hilbert_function(e)?;
            let above = self.top.preimage().hilbert_function(e)?;
            total += below - above;
        }
        Ok(total)
    }

    /// True iff multiplication by x is injective on a/b, i.e.
    /// (b : x) ∩ a = b on preimages.
    pub fn is_regular_on(&self, x: &Polynomial) -> Result<bool> {
        if x.is_zero() || !x.is_homogeneous() || x.total_degree() == Some(0) {
            return Err(Error::InvalidArgument(
                "regular-element test requires a nonzero homogeneous form of positive degree"
                    .into(),
            ));
        }
        if self.is_zero()? {
            return Ok(true);
        }
        let xi = Ideal::principal(x)?;
        let kernel_pre = self.bottom.preimage().colon(&xi)?;
        if self.top.is_unit_ideal()? {
            return kernel_pre.equals(self.bottom.preimage());
        }
        let meet = kernel_pre.intersect(self.top.preimage())?;
        meet.equals(self.bottom.preimage())
    }

    /// The quotient module M/xM = a/(b + x·a).
    pub fn quotient_by_form(&self, x: &Polynomial) -> Result<SubquotientModule> {
        let xa = Ideal::principal(x)?.product(&Ideal::new(
            self.ring.ambient(),
            self.top.preimage().generators().to_vec(),
        )?)?;
        let bottom = self.bottom.sum(&RIdeal::from_preimage(&self.ring, &xa)?)?;
        SubquotientModule::new(self.top.clone(), bottom)
    }

    /// Randomized greedy depth: repeatedly look for a regular homogeneous
    /// form among `trials` draws in each candidate degree; quotient and
    /// continue until the module has dimension zero or no draw is regular.
    pub fn depth(&self, trials: usize, degrees: &[u32], seed: u64) -> Result<usize> {
        if self.is_zero()? {
            return Err(Error::ZeroModule);
        }
        let mut current = self.clone();
        let mut found = 0usize;
        loop {
            match current.dimension()? {
                None => unreachable!("regular quotients of a nonzero module stay nonzero"),
                Some(0) => return Ok(found),
                Some(_) => {}
            }
            let mut advanced = false;
            'search: for (di, &deg) in degrees.iter().enumerate() {
                for t in 0..trials {
                    let s = mix_seed(seed, found as u64, di as u64, t as u64);
                    let x = random_form(&self.ring, deg, None, s)?;
                    if current.is_regular_on(&x)? {
                        current = current.quotient_by_form(&x)?;
                        found += 1;
                        advanced = true;
                        break 'search;
                    }
                }
            }
            if !advanced {
                return Ok(found);
            }
        }
    }
}

fn mix_seed(seed: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for v in [a, b, c] {
        h ^= v.wrapping_add(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    }
    h
}

/// Draws a random homogeneous form of the given positive degree. With a
/// constraint ideal, the draw is a random combination of degree-matched
/// multiples of the constraint's generators, so membership holds by
/// construction.
pub fn random_form(
    ring: &Arc<RingPresentation>,
    degree: u32,
    constraint: Option<&RIdeal>,
    seed: u64,
) -> Result<Polynomial> {
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "random forms must have positive degree".into(),
        ));
    }
    let ambient = ring.ambient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match constraint {
        None => {
            for _ in 0..1000 {
                let f = dense_form(ambient, degree, &mut rng)?;
                if !f.is_zero() {
                    return Ok(f);
                }
            }
            Err(Error::InvalidArgument(
                "failed to draw a nonzero random form".into(),
            ))
        }
        Some(c) => {
            let usable: Vec<&Polynomial> = c
                .generators()
                .iter()
                .filter(|g| g.is_homogeneous() && g.total_degree().unwrap_or(u32::MAX) <= degree)
                .collect();
            if usable.is_empty() {
                return Err(Error::ConstraintDegree(degree));
            }
            for _ in 0..1000 {
                let mut f = Polynomial::zero(ambient);
                for g in &usable {
                    let need = degree - g.total_degree().unwrap_or(0);
                    let factor = if need == 0 {
                        Polynomial::constant(
                            ambient,
                            ambient.field().random_coefficient(&mut rng),
                        )
                    } else {
                        dense_form(ambient, need, &mut rng)?
                    };
                    f = f.add(&factor.mul(g)?)?;
                }
                if !f.is_zero() {
                    return Ok(f);
                }
            }
            Err(Error::ConstraintDegree(degree))
        }
    }
}

fn dense_form<R: Rng>(ambient: &Arc<PolyRing>, degree: u32, rng: &mut R) -> Result<Polynomial> {
    let mut f = Polynomial::zero(ambient);
    for m in ambient.monomials_of_degree(degree) {
        let c = ambient.field().random_coefficient(rng);
        if !c.is_zero() {
            f = f.add(&Polynomial::from_monomial(ambient, m).mul_scalar(&c)?)?;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;

    fn ambient(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldSpec::Rationals,
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn quotient(vars: &[&str], defining: &str) -> Arc<RingPresentation> {
        let p = ambient(vars);
        let i = Ideal::from_strings(&p, defining).unwrap();
        make_ring(&p, i).unwrap()
    }

    #[test]
    fn make_ring_caches_dimension_and_validates() {
        assert_eq!(quotient(&["x", "y", "z"], "x*y, x*z").dimension(), 2);
        assert_eq!(quotient(&["x", "y"], "").dimension(), 2);
        let p = ambient(&["x", "y"]);
        let bad = Ideal::from_strings(&p, "x^2 + y").unwrap();
        assert!(matches!(
            make_ring(&p, bad),
            Err(Error::NotHomogeneous("defining ideal"))
        ));
        let unit = Ideal::unit(&p).unwrap();
        assert!(matches!(make_ring(&p, unit), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn length_of_basic_subquotients() {
        let r = quotient(&["x", "y"], "");
        let a = RIdeal::from_strings(&r, "x, y").unwrap();
        let b = RIdeal::from_strings(&r, "x^2, x*y, y^2").unwrap();
        let m = SubquotientModule::new(a.clone(), b.clone()).unwrap();
        assert_eq!(m.length().unwrap(), 2);
        let zero = SubquotientModule::new(a.clone(), a.clone()).unwrap();
        assert_eq!(zero.length().unwrap(), 0);
        let residue =
            SubquotientModule::new(RIdeal::unit(&r).unwrap(), RIdeal::from_strings(&r, "x, y").unwrap())
                .unwrap();
        assert_eq!(residue.length().unwrap(), 1);
    }

    #[test]
    fn infinite_length_is_detected() {
        let r = quotient(&["x", "y"], "");
        let m = SubquotientModule::full_ring(&r).unwrap();
        assert!(matches!(m.length(), Err(Error::InfiniteLength)));
    }

    #[test]
    fn submodule_containment_is_enforced() {
        let r = quotient(&["x", "y"], "");
        let a = RIdeal::from_strings(&r, "x^2").unwrap();
        let b = RIdeal::from_strings(&r, "x").unwrap();
        assert!(matches!(
            SubquotientModule::new(a, b),
            Err(Error::NotSubmodule)
        ));
    }

    #[test]
    fn regular_element_tests_match_hand_analysis() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let full = SubquotientModule::full_ring(&r).unwrap();
        let xy = parse_polynomial(r.ambient(), "x + y").unwrap();
        assert!(full.is_regular_on(&xy).unwrap());
        let x = parse_polynomial(r.ambient(), "x").unwrap();
        assert!(!full.is_regular_on(&x).unwrap());

        let s = quotient(&["y", "z"], "y^2, y*z");
        let sfull = SubquotientModule::full_ring(&s).unwrap();
        let y = parse_polynomial(s.ambient(), "y").unwrap();
        assert!(!sfull.is_regular_on(&y).unwrap());
        let z = parse_polynomial(s.ambient(), "z").unwrap();
        assert!(!sfull.is_regular_on(&z).unwrap());

        let h = quotient(&["y", "z"], "y^2");
        let hfull = SubquotientModule::full_ring(&h).unwrap();
        let hy = parse_polynomial(h.ambient(), "y").unwrap();
        assert!(!hfull.is_regular_on(&hy).unwrap());
        let hz = parse_polynomial(h.ambient(), "z").unwrap();
        assert!(hfull.is_regular_on(&hz).unwrap());
    }

    #[test]
    fn zero_module_is_vacuously_regular() {
        let r = quotient(&["x", "y"], "");
        let a = RIdeal::from_strings(&r, "x").unwrap();
        let zero = SubquotientModule::new(a.clone(), a).unwrap();
        let x = parse_polynomial(r.ambient(), "x").unwrap();
        assert!(zero.is_regular_on(&x).unwrap());
    }

    #[test]
    fn depth_of_polynomial_ring_is_dimension() {
        let r = quotient(&["x", "y"], "");
        let full = SubquotientModule::full_ring(&r).unwrap();
        assert_eq!(full.depth(6, &[1, 2], 7).unwrap(), 2);
    }

    #[test]
    fn depth_of_line_plane_ring_is_one() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let full = SubquotientModule::full_ring(&r).unwrap();
        assert_eq!(full.depth(6, &[1, 2], 7).unwrap(), 1);
    }

    #[test]
    fn depth_of_two_planes_ring_is_one() {
        let r = quotient(&["x", "y", "z", "w"], "x*z, x*w, y*z, y*w");
        let full = SubquotientModule::full_ring(&r).unwrap();
        assert_eq!(full.depth(6, &[1, 2], 7).unwrap(), 1);
    }

    #[test]
    fn random_form_honors_constraint_membership() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let c = RIdeal::from_strings(&r, "y, z").unwrap();
        for seed in 0..5 {
            let f = random_form(&r, 2, Some(&c), seed).unwrap();
            assert!(f.is_homogeneous());
            assert_eq!(f.total_degree(), Some(2));
            assert!(c.preimage().contains(&f).unwrap());
        }
        assert!(matches!(
            random_form(&r, 0, None, 1),
            Err(Error::InvalidArgument(_))
        ));
        let high = RIdeal::from_strings(&r, "y^3").unwrap();
        assert!(matches!(
            random_form(&r, 2, Some(&high), 1),
            Err(Error::ConstraintDegree(2))
        ));
    }

    #[test]
    fn ideal_power_matches_preimage_arithmetic() {
        let r = quotient(&["x", "y"], "");
        let q = RIdeal::from_strings(&r, "x^2, y^2").unwrap();
        let q2 = q.power(2).unwrap();
        let expected = RIdeal::from_strings(&r, "x^4, x^2*y^2, y^4").unwrap();
        assert!(q2.equals(&expected).unwrap());
        assert!(q.power(0).unwrap().is_unit_ideal().unwrap());
    }
}
